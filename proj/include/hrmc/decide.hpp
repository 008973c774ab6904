#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hrmc/grammar.hpp"

namespace hrmc {

struct Verdict {
    Count sat;
    Count fal;
    std::optional<DerivationTree> sat_witness;
    std::optional<DerivationTree> fal_witness;

    bool holds_for_all() const { return fal.kind == Count::Zero; }
    bool exists_member() const { return sat.kind != Count::Zero; }
    bool finitely_many_violations() const { return fal.kind != Count::Infinite; }
    std::string str() const { return "sat=" + sat.str() + " fal=" + fal.str(); }
};

// A rule is good iff every init-colored node of its body carries `color`.
std::vector<bool> good_rules(const Grammar& g, const std::string& init, const std::string& color);

// Flag product: nonterminal "A|1" derives exactly the trees of A that use a bad rule.
Grammar violation_grammar(const Grammar& g, const std::vector<bool>& good);

std::optional<DerivationTree> shortest_tree(const Grammar& g, const std::vector<std::string>& roots,
                                            const std::vector<bool>& allowed);

Verdict classify(const Grammar& g, const std::string& init, const std::string& color,
                 std::uint64_t cap = default_count_cap);

}  // namespace hrmc
