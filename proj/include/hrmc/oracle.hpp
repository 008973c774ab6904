#pragma once

#include <string>
#include <vector>

#include "hrmc/grammar.hpp"
#include "hrmc/logic.hpp"

namespace hrmc {

// Explicit-state checks on a finite LTS (no hyperedges, no abstract nodes).
// Nothing here touches summaries or behaviours.

// Every infinite trace starting at v (v's own colors first) is accepted by m.
bool check_buchi(const Hypergraph& lts, NodeId v, const BuchiAutomaton& m);

// Per-node labeling. A/E go through ltl_to_buchi + check_buchi; P>0/P=1 are
// decided directly by qualitative graph analysis. A bare path formula is read as A ψ.
std::vector<bool> label_ctlstar(const Hypergraph& lts, const FormulaPtr& phi);
bool check_ctlstar(const Hypergraph& lts, NodeId v, const FormulaPtr& phi);

// Qualitative PCTL on the Markov chain with positive probability on every edge.
// Requires every node to have a successor.
std::vector<bool> label_qpctl(const Hypergraph& lts, const FormulaPtr& phi);
bool check_qpctl(const Hypergraph& lts, NodeId v, const FormulaPtr& phi);

struct DiffReport {
    std::size_t members = 0;
    std::size_t nodes = 0;
    std::size_t mismatches = 0;
    bool capped = false;
    bool structure_ok = true;  // recolored members are exactly the base members
    std::string first;         // description of the first problem found
    std::string color;

    bool ok() const { return mismatches == 0 && structure_ok; }
    std::string str() const;
};

struct DiffOptions {
    int depth = 5;
    std::size_t cap = 10000;
    int jobs = 1;
};

// Recolors g for phi and compares the colors of every member up to the depth
// with the oracle's labeling of the same member.
DiffReport differential(const Grammar& g, const FormulaPtr& phi, DiffOptions opts = {});
// Same comparison for an already recolored grammar (used for fault injection).
DiffReport compare_recolored(const Grammar& base, const Grammar& recolored, const std::string& color,
                             const FormulaPtr& phi, DiffOptions opts = {});

// Erase every color listed in the registry.
Hypergraph strip_registered(const Grammar& g, Hypergraph h);

}  // namespace hrmc
