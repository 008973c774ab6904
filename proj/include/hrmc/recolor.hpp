#pragma once

#include <string>
#include <vector>

#include "hrmc/grammar.hpp"
#include "hrmc/logic.hpp"

namespace hrmc {

struct RecolorStats {
    std::string formula;
    std::string color;
    int automaton_states = 0;
    std::size_t classes = 0;
    std::size_t pass1_rules = 0;
    std::size_t refined_nonterminals = 0;
    std::size_t refined_rules = 0;
    std::size_t minimized_nonterminals = 0;
    std::size_t minimized_rules = 0;
};

// Colors every rule-body node v with `color` iff v satisfies m in every member.
// The result is the refined grammar (nonterminals "A#k").
Grammar recolor_buchi(const Grammar& g, const BuchiAutomaton& m, const std::string& color,
                      RecolorStats* stats = nullptr);
// `color` then means: all infinite traces satisfy psi.
Grammar recolor_ltl(const Grammar& g, const FormulaPtr& psi, const std::string& color,
                    RecolorStats* stats = nullptr);

struct RecolorOptions {
    bool minimize = true;
};

struct Recolored {
    Grammar grammar;
    std::string color;  // denotes the whole formula
    std::vector<RecolorStats> stages;
};

// Handles ¬, ∧, ∨, →, A, E (as ¬A¬), and qualitative P operators (via their
// CTL* embedding). A top-level path formula is read as A ψ.
Recolored recolor_ctlstar(const Grammar& g, const FormulaPtr& phi, RecolorOptions opts = {});

std::string fresh_color(const Grammar& g);
Grammar delete_color(const Grammar& g, const std::string& color);

}  // namespace hrmc
