#include "hrmc/hypergraph.hpp"

#include <algorithm>
#include <functional>

#include "hrmc/error.hpp"

namespace hrmc {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::replacement_arity: return "replacement-arity";
        case Errc::incomplete_assignment: return "incomplete-assignment";
        case Errc::node_not_found: return "node-not-found";
        case Errc::invalid_pinning: return "invalid-pinning";
        case Errc::tree_shape: return "tree-shape";
        case Errc::syntax: return "syntax";
        case Errc::undeclared_atom: return "undeclared-atom";
        case Errc::unsupported_bound: return "unsupported-bound";
        case Errc::not_an_lts: return "not-an-lts";
        case Errc::unknown_color: return "unknown-color";
        case Errc::arity_mismatch: return "arity-mismatch";
        case Errc::invalid_grammar: return "invalid-grammar";
        case Errc::too_many_states: return "too-many-states";
        case Errc::io: return "io";
    }
    return "error";
}

void normalize(ColorSet& cs) {
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
}

ColorSet make_colors(std::initializer_list<const char*> cs) {
    ColorSet out(cs.begin(), cs.end());
    normalize(out);
    return out;
}

bool Hypergraph::valid_node(NodeId v) const {
    if (is_abstract(v)) return abstract_index(v) <= abstract_count;
    return v < node_count();
}

NodeId Hypergraph::add_node(ColorSet cs, std::string name) {
    normalize(cs);
    colors.push_back(std::move(cs));
    names.push_back(std::move(name));
    return node_count() - 1;
}

void Hypergraph::add_edge(NodeId src, NodeId dst, std::string action) {
    if (!valid_node(src) || !valid_node(dst))
        throw Error(Errc::node_not_found, "edge endpoint outside graph");
    Edge e{src, dst, std::move(action)};
    auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it == edges.end() || *it != e) edges.insert(it, std::move(e));
}

int Hypergraph::add_hyperedge(std::string label, std::vector<NodeId> att) {
    for (NodeId v : att)
        if (!valid_node(v)) throw Error(Errc::node_not_found, "attachment outside graph");
    hyperedges.push_back({std::move(label), std::move(att)});
    return static_cast<int>(hyperedges.size()) - 1;
}

bool Hypergraph::has_color(NodeId v, const Color& c) const {
    if (is_abstract(v)) return false;
    const auto& cs = colors.at(v);
    return std::binary_search(cs.begin(), cs.end(), c);
}

void Hypergraph::add_color(NodeId v, const Color& c) {
    auto& cs = colors.at(v);
    auto it = std::lower_bound(cs.begin(), cs.end(), c);
    if (it == cs.end() || *it != c) cs.insert(it, c);
}

void Hypergraph::remove_color(NodeId v, const Color& c) {
    auto& cs = colors.at(v);
    auto it = std::lower_bound(cs.begin(), cs.end(), c);
    if (it != cs.end() && *it == c) cs.erase(it);
}

std::vector<std::vector<NodeId>> Hypergraph::adjacency() const {
    std::vector<std::vector<NodeId>> adj(node_count() + abstract_count);
    auto idx = [&](NodeId v) { return is_abstract(v) ? node_count() + abstract_index(v) - 1 : v; };
    for (const auto& e : edges) {
        auto& out = adj[idx(e.src)];
        if (out.empty() || out.back() != e.dst) out.push_back(e.dst);
    }
    for (auto& out : adj) {
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    return adj;
}

std::vector<NodeId> Hypergraph::unattached() const {
    std::vector<bool> att(node_count(), false);
    for (const auto& h : hyperedges)
        for (NodeId v : h.att)
            if (!is_abstract(v)) att[v] = true;
    std::vector<NodeId> out;
    for (NodeId v = 0; v < node_count(); ++v)
        if (!att[v]) out.push_back(v);
    return out;
}

std::string Hypergraph::node_name(NodeId v) const {
    if (is_abstract(v)) return "$" + std::to_string(abstract_index(v));
    if (v < static_cast<int>(names.size()) && !names[v].empty()) return names[v];
    return "n" + std::to_string(v);
}

bool Hypergraph::operator==(const Hypergraph& o) const {
    return abstract_count == o.abstract_count && colors == o.colors && edges == o.edges &&
           hyperedges == o.hyperedges;
}

Hypergraph handle(const std::string& label, int arity) {
    Hypergraph h;
    h.abstract_count = arity;
    std::vector<NodeId> att;
    for (int i = 1; i <= arity; ++i) att.push_back(abstract_node(i));
    h.add_hyperedge(label, std::move(att));
    return h;
}

Hypergraph replace(const Hypergraph& host, std::span<const Hypergraph> assignment) {
    if (assignment.size() != host.hyperedges.size())
        throw Error(Errc::incomplete_assignment,
                    "expected " + std::to_string(host.hyperedges.size()) + " graphs, got " +
                        std::to_string(assignment.size()));
    for (std::size_t e = 0; e < assignment.size(); ++e)
        if (static_cast<int>(host.hyperedges[e].att.size()) != assignment[e].abstract_count)
            throw Error(Errc::replacement_arity, "hyperedge " + std::to_string(e) + " labeled " +
                                                     host.hyperedges[e].label);

    Hypergraph out;
    out.abstract_count = host.abstract_count;
    out.colors = host.colors;
    out.names = host.names;
    out.names.resize(out.colors.size());
    std::vector<Edge> edges = host.edges;

    for (std::size_t e = 0; e < assignment.size(); ++e) {
        const Hypergraph& k = assignment[e];
        const auto& att = host.hyperedges[e].att;
        const NodeId offset = out.node_count();
        auto f = [&](NodeId v) { return is_abstract(v) ? att[abstract_index(v) - 1] : v + offset; };
        for (NodeId v = 0; v < k.node_count(); ++v) {
            out.colors.push_back(k.colors[v]);
            out.names.push_back(v < static_cast<int>(k.names.size()) ? k.names[v] : std::string());
        }
        for (const auto& ed : k.edges) edges.push_back({f(ed.src), f(ed.dst), ed.action});
        for (const auto& h : k.hyperedges) {
            Hyperedge nh{h.label, {}};
            for (NodeId v : h.att) nh.att.push_back(f(v));
            out.hyperedges.push_back(std::move(nh));
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    out.edges = std::move(edges);
    return out;
}

Hypergraph replace(const Hypergraph& host, const std::map<int, Hypergraph>& assignment) {
    std::vector<Hypergraph> full;
    for (int e = 0; e < static_cast<int>(host.hyperedges.size()); ++e) {
        auto it = assignment.find(e);
        if (it == assignment.end())
            throw Error(Errc::incomplete_assignment, "no graph for hyperedge " + std::to_string(e));
        full.push_back(it->second);
    }
    if (assignment.size() != full.size())
        throw Error(Errc::incomplete_assignment, "assignment names unknown hyperedges");
    return replace(host, full);
}

std::vector<NodeId> HypergraphView::exposed() const {
    std::set<NodeId> x(view.begin(), view.end());
    for (int i = 1; i <= graph.abstract_count; ++i) x.insert(abstract_node(i));
    for (const auto& h : graph.hyperedges) x.insert(h.att.begin(), h.att.end());
    return {x.begin(), x.end()};
}

bool HypergraphView::valid() const {
    auto ua = graph.unattached();
    return std::all_of(view.begin(), view.end(),
                       [&](NodeId v) { return std::binary_search(ua.begin(), ua.end(), v); });
}

HypergraphView replace_view(const HypergraphView& host, std::span<const HypergraphView> assignment) {
    std::vector<Hypergraph> graphs;
    for (const auto& a : assignment) graphs.push_back(a.graph);
    HypergraphView out{replace(host.graph, graphs), host.view};
    NodeId offset = host.graph.node_count();
    for (const auto& a : assignment) {
        for (NodeId v : a.view) out.view.push_back(v + offset);
        offset += a.graph.node_count();
    }
    std::sort(out.view.begin(), out.view.end());
    return out;
}

std::optional<std::map<NodeId, NodeId>> coupling_nodes(const HypergraphView& a, const HypergraphView& b,
                                                       const Coupling& c) {
    if (a.graph.abstract_count != b.graph.abstract_count) return std::nullopt;
    if (c.mu.size() != a.graph.hyperedges.size() || a.graph.hyperedges.size() != b.graph.hyperedges.size())
        return std::nullopt;
    std::map<NodeId, NodeId> nu, back;
    auto bind = [&](NodeId x, NodeId y) {
        auto [it, fresh] = nu.emplace(x, y);
        if (!fresh && it->second != y) return false;
        auto [jt, fresh2] = back.emplace(y, x);
        return fresh2 || jt->second == x;
    };
    for (int i = 1; i <= a.graph.abstract_count; ++i)
        if (!bind(abstract_node(i), abstract_node(i))) return std::nullopt;
    for (auto [x, y] : c.eta)
        if (!bind(x, y)) return std::nullopt;
    std::vector<bool> used(c.mu.size(), false);
    for (std::size_t e = 0; e < c.mu.size(); ++e) {
        int f = c.mu[e];
        if (f < 0 || f >= static_cast<int>(used.size()) || used[f]) return std::nullopt;
        used[f] = true;
        const auto& ae = a.graph.hyperedges[e].att;
        const auto& be = b.graph.hyperedges[f].att;
        if (ae.size() != be.size()) return std::nullopt;
        for (std::size_t i = 0; i < ae.size(); ++i)
            if (!bind(ae[i], be[i])) return std::nullopt;
    }
    return nu;
}

std::set<Trace> finite_traces(const Hypergraph& g, NodeId u, NodeId v, int max_len) {
    if (!g.valid_node(u) || !g.valid_node(v)) throw Error(Errc::node_not_found, "trace endpoint");
    const auto adj = g.adjacency();
    auto idx = [&](NodeId x) { return is_abstract(x) ? g.node_count() + abstract_index(x) - 1 : x; };
    std::set<Trace> out;
    Trace cur;
    std::function<void(NodeId, int)> walk = [&](NodeId x, int interior) {
        // x has just been appended to the path (not yet interior)
        if (x == v) out.insert(cur);
        if (is_abstract(x) || interior + 1 > max_len) return;
        for (NodeId y : adj[idx(x)]) {
            if (!is_abstract(y)) cur.push_back(g.colors[y]);
            walk(y, interior + 1);
            if (!is_abstract(y)) cur.pop_back();
        }
    };
    if (!is_abstract(u)) cur.push_back(g.colors[u]);
    if (u == v) out.insert(cur);
    for (NodeId y : adj[idx(u)]) {
        if (!is_abstract(y)) cur.push_back(g.colors[y]);
        walk(y, 0);
        if (!is_abstract(y)) cur.pop_back();
    }
    return out;
}

std::vector<std::pair<NodeId, NodeId>> identity_pinning(const Hypergraph& g) {
    std::vector<std::pair<NodeId, NodeId>> p;
    for (int i = 1; i <= g.abstract_count; ++i) p.emplace_back(abstract_node(i), abstract_node(i));
    for (NodeId v = 0; v < g.node_count(); ++v) p.emplace_back(v, v);
    return p;
}

bool pinned_isomorphic(const Hypergraph& a, const Hypergraph& b,
                       const std::vector<std::pair<NodeId, NodeId>>& pinning) {
    std::map<NodeId, NodeId> f, back;
    for (auto [x, y] : pinning) {
        if (!a.valid_node(x) || !b.valid_node(y))
            throw Error(Errc::invalid_pinning, "pinned node outside graph");
        if (!f.emplace(x, y).second || !back.emplace(y, x).second)
            throw Error(Errc::invalid_pinning, "pinning is not injective");
    }
    if (static_cast<int>(f.size()) != a.node_count() + a.abstract_count ||
        static_cast<int>(back.size()) != b.node_count() + b.abstract_count)
        throw Error(Errc::invalid_pinning, "pinning must cover every node of both graphs");
    if (a.abstract_count != b.abstract_count) return false;
    for (auto [x, y] : f) {
        if (is_abstract(x) != is_abstract(y)) return false;
        if (!is_abstract(x) && a.colors[x] != b.colors[y]) return false;
    }
    std::vector<Edge> ea;
    for (const auto& e : a.edges) ea.push_back({f[e.src], f[e.dst], e.action});
    std::sort(ea.begin(), ea.end());
    if (ea != b.edges) return false;
    std::vector<Hyperedge> ha, hb = b.hyperedges;
    for (const auto& h : a.hyperedges) {
        Hyperedge m{h.label, {}};
        for (NodeId v : h.att) m.att.push_back(f[v]);
        ha.push_back(std::move(m));
    }
    std::sort(ha.begin(), ha.end());
    std::sort(hb.begin(), hb.end());
    return ha == hb;
}

}  // namespace hrmc
