#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hrmc {

using Color = std::string;
using ColorSet = std::vector<Color>;  // sorted, duplicate-free

// Concrete nodes are 0..V-1. Abstract node i (1-based) is encoded as -i so
// both kinds share one integer space without collisions.
using NodeId = int;

constexpr bool is_abstract(NodeId v) { return v < 0; }
constexpr NodeId abstract_node(int i) { return -i; }
constexpr int abstract_index(NodeId v) { return -v; }

struct Edge {
    NodeId src;
    NodeId dst;
    std::string action;
    auto operator<=>(const Edge&) const = default;
};

struct Hyperedge {
    std::string label;
    std::vector<NodeId> att;
    auto operator<=>(const Hyperedge&) const = default;
};

class Hypergraph {
public:
    int abstract_count = 0;
    std::vector<ColorSet> colors;       // one entry per concrete node
    std::vector<std::string> names;     // display names, parallel to colors
    std::vector<Edge> edges;            // sorted, unique
    std::vector<Hyperedge> hyperedges;  // HyperedgeId = index

    int node_count() const { return static_cast<int>(colors.size()); }
    bool valid_node(NodeId v) const;
    bool is_lts() const { return hyperedges.empty() && abstract_count == 0; }

    NodeId add_node(ColorSet cs = {}, std::string name = {});
    void add_edge(NodeId src, NodeId dst, std::string action = {});
    int add_hyperedge(std::string label, std::vector<NodeId> att);

    bool has_color(NodeId v, const Color& c) const;
    void add_color(NodeId v, const Color& c);
    void remove_color(NodeId v, const Color& c);

    // Successor lists over all nodes; abstract node i lives at index V+i-1.
    std::vector<std::vector<NodeId>> adjacency() const;
    std::vector<NodeId> unattached() const;
    std::string node_name(NodeId v) const;

    // Structural identity; display names are ignored.
    bool operator==(const Hypergraph& o) const;
};

ColorSet make_colors(std::initializer_list<const char*> cs);
void normalize(ColorSet& cs);

Hypergraph handle(const std::string& label, int arity);

// H[K̄]: every hyperedge of host is replaced by assignment[e]. Concrete nodes of
// the host keep their ids; plugged nodes are appended in hyperedge order.
Hypergraph replace(const Hypergraph& host, std::span<const Hypergraph> assignment);
Hypergraph replace(const Hypergraph& host, const std::map<int, Hypergraph>& assignment);

struct HypergraphView {
    Hypergraph graph;
    std::vector<NodeId> view;  // subset of unattached concrete nodes

    std::vector<NodeId> exposed() const;
    bool valid() const;
};

HypergraphView replace_view(const HypergraphView& host, std::span<const HypergraphView> assignment);

// η pairs view nodes, μ maps hyperedge ids; ν is derived or the coupling rejected.
struct Coupling {
    std::vector<std::pair<NodeId, NodeId>> eta;
    std::vector<int> mu;
};

std::optional<std::map<NodeId, NodeId>> coupling_nodes(const HypergraphView& a, const HypergraphView& b,
                                                       const Coupling& c);

using Trace = std::vector<ColorSet>;

std::set<Trace> finite_traces(const Hypergraph& g, NodeId u, NodeId v, int max_len);

// The pinning must be a bijection between all nodes of a and all nodes of b.
bool pinned_isomorphic(const Hypergraph& a, const Hypergraph& b,
                       const std::vector<std::pair<NodeId, NodeId>>& pinning);
std::vector<std::pair<NodeId, NodeId>> identity_pinning(const Hypergraph& g);

}  // namespace hrmc
