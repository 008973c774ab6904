#pragma once

#include <map>
#include <string>
#include <vector>

#include "hrmc/behaviour.hpp"
#include "hrmc/grammar.hpp"

namespace hrmc {

// One derivable (rule, child classes) combination and the language class it yields.
struct Pass1Rule {
    int rule;
    std::vector<int> children;  // language class per hyperedge
    int cls;
};

struct Pass1 {
    std::vector<Pass1Rule> rules;
    std::map<std::string, std::vector<int>> classes;  // nonterminal -> language classes, discovery order
    int rounds = 0;
};

Pass1 annotate1(Engine& e, const Grammar& g);

struct AnnotatedNT {
    std::string base;
    int lang = -1;
    int ctx = -1;
    auto operator<=>(const AnnotatedNT&) const = default;
};

struct AnnotatedRule {
    int rule;  // index into the base grammar
    int lhs;   // index into Refined::nts
    std::vector<int> children;
};

struct Refined {
    std::vector<AnnotatedNT> nts;
    std::vector<AnnotatedRule> rules;
    std::vector<int> start;

    int find(const AnnotatedNT& a) const;
};

Refined annotate2(Engine& e, const Grammar& g, const Pass1& p1);

// Both passes.
Refined refine(Engine& e, const Grammar& g);

std::string annotated_name(const Refined& r, int nt);

// The refined grammar as a plain HRG over nonterminals named "A#k"; rule
// bodies are copied verbatim and keep their base rule as origin.
Grammar to_grammar(const Grammar& g, const Refined& r);

// Tree-automaton style picture: states = annotated nonterminals, transitions = rules.
std::string refined_dot(const Engine& e, const Grammar& g, const Refined& r);

}  // namespace hrmc
