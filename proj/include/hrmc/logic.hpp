#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hrmc/hypergraph.hpp"

namespace hrmc {

// ---------------------------------------------------------------- formulas

enum class Op {
    True, False, Atom,
    Not, And, Or, Implies,
    Next, Finally, Globally, Until, Release,
    ForAll, Exists,
    ProbPos, ProbOne,  // P>0[ψ], P=1[ψ]
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    Op op;
    std::string atom;
    FormulaPtr lhs, rhs;  // unary operators use lhs only
};

namespace fml {
FormulaPtr tt();
FormulaPtr ff();
FormulaPtr atom(std::string name);
FormulaPtr neg(FormulaPtr a);
FormulaPtr conj(FormulaPtr a, FormulaPtr b);
FormulaPtr disj(FormulaPtr a, FormulaPtr b);
FormulaPtr implies(FormulaPtr a, FormulaPtr b);
FormulaPtr next(FormulaPtr a);
FormulaPtr eventually(FormulaPtr a);
FormulaPtr always(FormulaPtr a);
FormulaPtr until(FormulaPtr a, FormulaPtr b);
FormulaPtr release(FormulaPtr a, FormulaPtr b);
FormulaPtr forall(FormulaPtr a);
FormulaPtr exists(FormulaPtr a);
FormulaPtr prob_pos(FormulaPtr a);
FormulaPtr prob_one(FormulaPtr a);
}  // namespace fml

std::string to_string(const FormulaPtr& f);
bool equal(const FormulaPtr& a, const FormulaPtr& b);

// True for formulas evaluated at a node (atoms, booleans over state formulas, A/E/P).
bool is_state_formula(const FormulaPtr& f);
bool has_path_quantifier(const FormulaPtr& f);
bool has_probabilistic(const FormulaPtr& f);
std::set<std::string> atoms_of(const FormulaPtr& f);

// Throws Error(syntax | undeclared_atom | unsupported_bound). An empty universe accepts any atom.
FormulaPtr parse_formula(const std::string& text, const std::vector<std::string>& universe = {});

// Removes ¬¬ pairs.
FormulaPtr simplify_negations(const FormulaPtr& f);

// P>0 / P=1 operators replaced by their CTL* counterparts over finite chains.
FormulaPtr qpctl_to_ctlstar(const FormulaPtr& f);

// Path formula → negation normal form over {true,false,atom,¬atom,∧,∨,X,U,R}.
FormulaPtr to_nnf(const FormulaPtr& f);

// ---------------------------------------------------------------- automata

using Letter = std::uint32_t;  // bit i set iff atoms[i] holds
using Word = std::vector<Letter>;

struct BuchiAutomaton {
    std::vector<std::string> atoms;  // sorted
    int states = 0;
    std::vector<std::string> state_names;
    std::vector<std::vector<std::uint64_t>> delta;  // delta[q][letter] = successor mask
    std::uint64_t initial = 0;
    std::uint64_t final = 0;

    static BuchiAutomaton over(std::vector<std::string> atoms, int states);
    int letters() const { return 1 << atoms.size(); }
    Letter letter_of(const ColorSet& cs) const;
    void add(int p, Letter a, int q) { delta[p][a] |= std::uint64_t{1} << q; }
    bool is_final(int q) const { return (final >> q) & 1; }
    std::string name(int q) const;
    std::size_t transition_count() const;
};

inline constexpr int max_states = 64;

BuchiAutomaton ltl_to_buchi(const FormulaPtr& path_formula);

// Removes useless states and merges bisimilar ones.
BuchiAutomaton reduce(const BuchiAutomaton& m);

bool accepts_lasso(const BuchiAutomaton& m, const Word& prefix, const Word& loop);

// Direct LTL semantics on prefix·loop^ω, independent of any automaton.
bool holds_on_lasso(const FormulaPtr& path_formula, const std::vector<std::string>& atoms, const Word& prefix,
                    const Word& loop);

}  // namespace hrmc
