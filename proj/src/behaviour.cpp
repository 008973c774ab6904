#include "hrmc/behaviour.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <sstream>

#include "hrmc/error.hpp"

namespace hrmc {

namespace {

template <class F>
void for_bits(std::uint64_t m, F f) {
    while (m) {
        f(std::countr_zero(m));
        m &= m - 1;
    }
}

}  // namespace

bool StepSummary::empty() const {
    return std::all_of(rows.begin(), rows.end(), [](auto r) { return r == 0; });
}

std::set<std::tuple<int, int, bool>> StepSummary::triples() const {
    std::set<std::tuple<int, int, bool>> out;
    for (int p = 0; p < states(); ++p)
        for (int b = 0; b < 2; ++b) for_bits(rows[2 * p + b], [&](int q) { out.emplace(p, q, b == 1); });
    return out;
}

StepSummary empty_summary(int states) { return {std::vector<std::uint64_t>(2 * states, 0)}; }

StepSummary identity_summary(int states) {
    auto s = empty_summary(states);
    for (int p = 0; p < states; ++p) s.add(p, p, false);
    return s;
}

StepSummary step_summary(const BuchiAutomaton& m, Letter a) {
    auto s = empty_summary(m.states);
    for (int p = 0; p < m.states; ++p)
        for_bits(m.delta[p][a], [&](int q) { s.add(p, q, m.is_final(q)); });
    return s;
}

StepSummary step_summary(const BuchiAutomaton& m, const ColorSet& letter) {
    return step_summary(m, m.letter_of(letter));
}

StepSummary compose(const StepSummary& f, const StepSummary& g) {
    const int n = f.states();
    auto out = empty_summary(n);
    for (int p = 0; p < n; ++p) {
        std::uint64_t F = 0, T = 0;
        for_bits(f.rows[2 * p], [&](int r) {
            F |= g.rows[2 * r];
            T |= g.rows[2 * r + 1];
        });
        for_bits(f.rows[2 * p + 1], [&](int r) { T |= g.rows[2 * r] | g.rows[2 * r + 1]; });
        out.rows[2 * p] = F;
        out.rows[2 * p + 1] = T;
    }
    return out;
}

StepSummary clos(const StepSummary& f) {
    StepSummary acc = f;
    for (;;) {
        StepSummary next = acc;
        auto more = compose(acc, f);
        for (std::size_t i = 0; i < next.rows.size(); ++i) next.rows[i] |= more.rows[i];
        if (next == acc) return acc;
        acc = std::move(next);
    }
}

OmegaSummary omega_extend(const StepSummary& f, OmegaSummary h) {
    OmegaSummary out = 0;
    for (int p = 0; p < f.states(); ++p)
        if ((f.rows[2 * p] | f.rows[2 * p + 1]) & h) out |= std::uint64_t{1} << p;
    return out;
}

OmegaSummary loop_omega(const StepSummary& g) {
    auto c = clos(g);
    OmegaSummary good = 0;
    for (int q = 0; q < c.states(); ++q)
        if (c.has(q, q, true)) good |= std::uint64_t{1} << q;
    return omega_extend(c, good);
}

std::string format_summary(const BuchiAutomaton& m, const StepSummary& s) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (auto [p, q, b] : s.triples()) {
        os << (first ? "" : ",") << "(" << m.name(p) << "," << m.name(q) << "," << (b ? "T" : "F") << ")";
        first = false;
    }
    os << "}";
    return os.str();
}

std::string format_omega(const BuchiAutomaton& m, OmegaSummary h) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for_bits(h, [&](int p) {
        os << (first ? "" : ",") << m.name(p);
        first = false;
    });
    os << "}";
    return os.str();
}

// ---------------------------------------------------------------- engine

Engine::Engine(BuchiAutomaton m) : m_(std::move(m)) {
    if (m_.states > max_states) throw Error(Errc::too_many_states, "automaton too large");
    identity_ = intern(identity_summary(m_.states));
    steps_.assign(m_.letters(), -1);
}

int Engine::intern(const StepSummary& s) {
    auto [it, fresh] = summary_ids_.emplace(s.rows, static_cast<int>(summaries_.size()));
    if (fresh) summaries_.push_back(s);
    return it->second;
}

int Engine::step(Letter a) {
    a &= static_cast<Letter>(m_.letters() - 1);
    if (steps_[a] < 0) steps_[a] = intern(step_summary(m_, a));
    return steps_[a];
}

int Engine::compose(int a, int b) {
    if (a == identity_) return b;
    if (b == identity_) return a;
    const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
    if (auto it = compose_memo_.find(key); it != compose_memo_.end()) return it->second;
    const int r = intern(hrmc::compose(summaries_[a], summaries_[b]));
    compose_memo_.emplace(key, r);
    return r;
}

OmegaSummary Engine::extend(int s, OmegaSummary h) { return omega_extend(summaries_[s], h); }

OmegaSummary Engine::repeat(int e) {
    const auto& s = summaries_[e];
    OmegaSummary good = 0;
    for (int q = 0; q < m_.states; ++q)
        if (s.has(q, q, true)) good |= std::uint64_t{1} << q;
    return omega_extend(s, good);
}

int Engine::intern_class(const InterfaceBehaviour& b) {
    auto [it, fresh] = class_ids_.emplace(b, static_cast<int>(classes_.size()));
    if (fresh) classes_.push_back(b);
    return it->second;
}

// ---------------------------------------------------------------- saturation

int SummaryGraph::add_node(bool pass) {
    passable.push_back(pass);
    out.emplace_back();
    omega.emplace_back();
    return size() - 1;
}

void SummaryGraph::add_edge(int u, int v, int s) {
    auto& o = out[u];
    std::pair<int, int> e{v, s};
    auto it = std::lower_bound(o.begin(), o.end(), e);
    if (it == o.end() || *it != e) o.insert(it, e);
}

void SummaryGraph::add_omega(int u, OmegaSummary h) {
    auto& o = omega[u];
    if (std::find(o.begin(), o.end(), h) == o.end()) o.push_back(h);
}

std::vector<int> Saturation::between(int u, int v) const {
    std::vector<int> out;
    const auto& p = paths[u];
    for (auto it = p.lower_bound({v, INT_MIN}); it != p.end() && it->first == v; ++it) out.push_back(it->second);
    return out;
}

Saturation saturate(Engine& e, const SummaryGraph& g) {
    const int n = g.size();
    Saturation s;
    s.paths.resize(n);
    s.omega.resize(n);
    for (int u = 0; u < n; ++u) {
        auto& reach = s.paths[u];
        std::vector<std::pair<int, int>> todo;
        for (const auto& edge : g.out[u])
            if (reach.insert(edge).second) todo.push_back(edge);
        while (!todo.empty()) {
            auto [v, f] = todo.back();
            todo.pop_back();
            if (!g.passable[v]) continue;
            for (const auto& [w, t] : g.out[v]) {
                std::pair<int, int> next{w, e.compose(f, t)};
                if (reach.insert(next).second) todo.push_back(next);
            }
        }
    }
    // Infinite paths either end inside an ω-piece or revisit some passable
    // junction forever; by Ramsey the latter is s·e^ω with e idempotent.
    std::vector<std::set<OmegaSummary>> local(n);
    for (int x = 0; x < n; ++x) {
        if (!g.passable[x]) continue;
        local[x].insert(g.omega[x].begin(), g.omega[x].end());
        for (int f : s.between(x, x))
            if (e.idempotent(f)) local[x].insert(e.repeat(f));
    }
    for (int u = 0; u < n; ++u) {
        auto& w = s.omega[u];
        w.insert(g.omega[u].begin(), g.omega[u].end());
        w.insert(local[u].begin(), local[u].end());
        for (const auto& [x, f] : s.paths[u])
            for (OmegaSummary h : local[x]) w.insert(e.extend(f, h));
    }
    return s;
}

// ---------------------------------------------------------------- plugging

MBehaviour plug(Engine& e, const Hypergraph& body, const std::vector<int>& children, int context) {
    MBehaviour b;
    b.source = body;
    b.children = children;
    b.children.resize(body.hyperedges.size(), -1);
    b.context = context;
    auto& g = b.graph;
    for (int v = 0; v < body.node_count(); ++v) b.node.push_back(g.add_node(true));
    for (int i = 1; i <= body.abstract_count; ++i) {
        if (context < 0) {
            int a = g.add_node(false);
            b.in.push_back(a);
            b.out.push_back(a);
        } else {
            b.in.push_back(g.add_node(true));
            b.out.push_back(g.add_node(true));
        }
    }
    auto from = [&](NodeId x) { return is_abstract(x) ? b.out[abstract_index(x) - 1] : b.node[x]; };
    auto to = [&](NodeId x) { return is_abstract(x) ? b.in[abstract_index(x) - 1] : b.node[x]; };
    auto land = [&](NodeId x) { return is_abstract(x) ? e.identity() : e.step(body.colors[x]); };

    for (const auto& edge : body.edges) g.add_edge(from(edge.src), to(edge.dst), land(edge.dst));

    for (std::size_t h = 0; h < body.hyperedges.size(); ++h) {
        if (b.children[h] < 0) continue;
        const InterfaceBehaviour k = e.cls(b.children[h]);
        const auto& att = body.hyperedges[h].att;
        if (k.size() != static_cast<int>(att.size()))
            throw Error(Errc::arity_mismatch, "class of size " + std::to_string(k.size()) + " plugged into " +
                                                  body.hyperedges[h].label + "/" + std::to_string(att.size()));
        for (int s = 0; s < k.size(); ++s) {
            for (int t = 0; t < k.size(); ++t)
                for (int f : k.between(s, t)) g.add_edge(from(att[s]), to(att[t]), e.compose(f, land(att[t])));
            for (OmegaSummary w : k.omega[s]) g.add_omega(from(att[s]), w);
        }
    }
    if (context >= 0) {
        const InterfaceBehaviour j = e.cls(context);
        if (j.size() != body.abstract_count)
            throw Error(Errc::arity_mismatch, "context of size " + std::to_string(j.size()) + " around body with " +
                                                  std::to_string(body.abstract_count) + " abstract nodes");
        for (int s = 0; s < j.size(); ++s) {
            for (int t = 0; t < j.size(); ++t)
                for (int f : j.between(s, t)) g.add_edge(b.in[s], b.out[t], f);
            for (OmegaSummary w : j.omega[s]) g.add_omega(b.in[s], w);
        }
    }
    b.sat = saturate(e, g);
    return b;
}

MBehaviour behaviour(Engine& e, const Hypergraph& g) { return plug(e, g, {}, -1); }

std::vector<NodeId> interface_nodes(const MBehaviour& b, const std::vector<NodeId>& view) {
    std::vector<NodeId> out;
    auto add = [&](NodeId v) {
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    };
    for (int i = 1; i <= b.source.abstract_count; ++i) add(abstract_node(i));
    for (std::size_t h = 0; h < b.source.hyperedges.size(); ++h)
        if (b.children[h] < 0)
            for (NodeId v : b.source.hyperedges[h].att) add(v);
    for (NodeId v : view) add(v);
    return out;
}

int restrict_to(Engine& e, const MBehaviour& b, const std::vector<NodeId>& positions) {
    struct Port {
        int src, tgt, pre;
    };
    std::vector<Port> ports;
    InterfaceBehaviour ib;
    for (NodeId x : positions) {
        if (!b.source.valid_node(x)) throw Error(Errc::node_not_found, "interface node " + std::to_string(x));
        if (is_abstract(x)) {
            const int i = abstract_index(x) - 1;
            ports.push_back({b.in[i], b.out[i], -1});
            ib.concrete.push_back(b.context >= 0);
        } else {
            ports.push_back({b.node[x], b.node[x], e.step(b.source.colors[x])});
            ib.concrete.push_back(true);
        }
    }
    const int k = static_cast<int>(ports.size());
    ib.fin.resize(static_cast<std::size_t>(k) * k);
    ib.omega.resize(k);
    for (int i = 0; i < k; ++i) {
        const Port& p = ports[i];
        for (int j = 0; j < k; ++j) {
            std::set<int> acc;
            for (int f : b.sat.between(p.src, ports[j].tgt)) acc.insert(p.pre < 0 ? f : e.compose(p.pre, f));
            if (p.pre >= 0 && p.src == ports[j].tgt) acc.insert(p.pre);
            ib.fin[i * k + j].assign(acc.begin(), acc.end());
        }
        std::set<OmegaSummary> w;
        for (OmegaSummary h : b.sat.omega[p.src]) w.insert(p.pre < 0 ? h : e.extend(p.pre, h));
        ib.omega[i].assign(w.begin(), w.end());
    }
    return e.intern_class(ib);
}

int restrict(Engine& e, const MBehaviour& b, const std::vector<NodeId>& view) {
    return restrict_to(e, b, interface_nodes(b, view));
}

int hole_class(Engine& e, const MBehaviour& b, int hole) {
    if (hole < 0 || hole >= static_cast<int>(b.source.hyperedges.size()) || b.children[hole] >= 0)
        throw Error(Errc::arity_mismatch, "hyperedge " + std::to_string(hole) + " is not open");
    return restrict_to(e, b, b.source.hyperedges[hole].att);
}

std::set<OmegaSummary> omega_at(Engine& e, const MBehaviour& b, NodeId v) {
    if (is_abstract(v) || !b.source.valid_node(v)) throw Error(Errc::node_not_found, "node " + std::to_string(v));
    const int pre = e.step(b.source.colors[v]);
    std::set<OmegaSummary> out;
    for (OmegaSummary h : b.sat.omega[b.node[v]]) out.insert(e.extend(pre, h));
    return out;
}

bool satisfies(Engine& e, const MBehaviour& b, NodeId v) {
    for (OmegaSummary h : omega_at(e, b, v))
        if (!e.accepting(h)) return false;
    return true;
}

std::string behaviour_dot(const Engine& e, const InterfaceBehaviour& b, const std::string& name) {
    std::ostringstream os;
    os << "digraph \"" << name << "\" {\n  node [shape=circle];\n";
    for (int i = 0; i < b.size(); ++i)
        os << "  p" << i << " [label=\"" << (b.concrete[i] ? "v" : "$") << i + 1 << "\"];\n";
    os << "  star [label=\"*\", shape=plaintext];\n";
    for (int i = 0; i < b.size(); ++i) {
        for (int j = 0; j < b.size(); ++j)
            for (int f : b.between(i, j))
                os << "  p" << i << " -> p" << j << " [label=\"" << e.format(f) << "\"];\n";
        for (OmegaSummary h : b.omega[i])
            os << "  p" << i << " -> star [style=dashed, label=\"" << format_omega(e.automaton(), h) << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace hrmc
