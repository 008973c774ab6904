#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hrmc/hypergraph.hpp"

namespace hrmc {

struct Rule {
    std::string name;
    std::string lhs;
    Hypergraph body;
    int origin = -1;  // index of the user-grammar rule this one descends from
    bool operator==(const Rule&) const = default;
};

struct Grammar {
    std::vector<std::string> colors;
    std::vector<std::string> actions;
    std::map<std::string, int> nonterminals;  // name -> arity
    std::vector<std::string> start;
    std::vector<Rule> rules;
    std::vector<std::pair<std::string, std::string>> registry;  // color -> formula text

    int arity(const std::string& nt) const;
    bool has_color(const std::string& c) const;
    void declare_color(const std::string& c);
    // origin of rule r, falling back to r itself for user grammars
    int origin_of(int r) const;
    bool operator==(const Grammar&) const = default;
};

struct DerivationTree {
    std::string nonterminal;
    int rule = -1;  // -1 marks a leaf (premature stop)
    std::vector<DerivationTree> children;

    bool is_leaf() const { return rule < 0; }
    bool complete() const;
    int height() const;
    int holes() const;
    std::string str(const Grammar& g) const;
    bool operator==(const DerivationTree&) const = default;
};

Hypergraph assemble(const Grammar& g, const DerivationTree& t);
// Maps a complete tree of a derived grammar (recolored, minimized) back to the
// base grammar through rule origins.
DerivationTree to_base(const Grammar& base, const Grammar& derived, const DerivationTree& t);

struct Member {
    DerivationTree tree;
    Hypergraph graph;
};

std::vector<DerivationTree> enumerate_trees(const Grammar& g, const std::string& nt, int max_depth,
                                            std::size_t cap = 10000);
std::vector<Member> enumerate_members(const Grammar& g, int max_depth, std::size_t cap = 10000);

Grammar prune(const Grammar& g);
Grammar restrict_rules(const Grammar& g, const std::vector<bool>& allowed);

struct Count {
    enum Kind { Zero, Finite, Infinite } kind = Zero;
    std::uint64_t n = 0;
    bool capped = false;  // FINITE beyond the cap

    std::string str() const;
    bool operator==(const Count&) const = default;
};

inline constexpr std::uint64_t default_count_cap = 1000000;

Count count_trees(const Grammar& g, const std::vector<bool>& allowed, std::uint64_t cap = default_count_cap);
Count count_trees(const Grammar& g, std::uint64_t cap = default_count_cap);

std::vector<std::string> validate(const Grammar& g);

}  // namespace hrmc
