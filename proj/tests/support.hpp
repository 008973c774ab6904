#pragma once

#include <random>
#include <string>
#include <vector>

#include "hrmc/behaviour.hpp"
#include "hrmc/grammar.hpp"
#include "hrmc/io.hpp"
#include "hrmc/logic.hpp"

namespace fixtures {

using namespace hrmc;

inline std::string bench_path(const std::string& name) { return std::string(HRMC_BENCH_DIR) + "/" + name; }
inline Grammar bench(const std::string& name) { return load_grammar(bench_path(name)); }

// The list grammar; rules R3 (start), R2 (extend), R1 (close).
inline Grammar dll() { return bench("dll.hrg"); }
inline int rule_index(const Grammar& g, const std::string& name) {
    for (int r = 0; r < static_cast<int>(g.rules.size()); ++r)
        if (g.rules[r].name == name) return r;
    return -1;
}

// Hand-coded automaton for "red U blue": p initial, q accepting sink after
// blue, r rejecting sink otherwise.
inline BuchiAutomaton red_until_blue() {
    auto m = BuchiAutomaton::over({"blue", "red"}, 3);
    m.state_names = {"p", "q", "r"};
    m.initial = 1;
    m.final = 2;
    for (Letter a = 0; a < 4; ++a) {
        const bool blue = a & 1, red = a & 2;
        m.add(0, a, blue ? 1 : red ? 0 : 2);
        m.add(1, a, 1);
        m.add(2, a, 2);
    }
    return m;
}

// Minimal automaton for "F blue": s waits, t accepts forever.
inline BuchiAutomaton f_blue() {
    auto m = BuchiAutomaton::over({"blue"}, 2);
    m.state_names = {"s", "t"};
    m.initial = 1;
    m.final = 2;
    m.add(0, 0, 0);
    m.add(0, 1, 1);
    m.add(1, 0, 1);
    m.add(1, 1, 1);
    return m;
}

struct Stretch {
    Hypergraph h, j;
    NodeId h_v1, h_v2, j_v1, j_v2;
};

// H has two green nodes before v1, J has one; otherwise identical.
inline Stretch stretch() {
    Stretch f;
    Hypergraph& H = f.h;
    const NodeId t0 = H.add_node({"green"}, "t0"), t1 = H.add_node({"green"}, "t1");
    f.h_v1 = H.add_node({"red"}, "v1");
    f.h_v2 = H.add_node({"red"}, "v2");
    const NodeId hb = H.add_node({"blue"}, "b");
    H.add_edge(t0, t1), H.add_edge(t1, t0), H.add_edge(t1, f.h_v1), H.add_edge(f.h_v1, t1);
    H.add_edge(f.h_v2, hb), H.add_edge(hb, f.h_v2);
    H.add_hyperedge("A", {f.h_v1, f.h_v2});

    Hypergraph& J = f.j;
    const NodeId s0 = J.add_node({"green"}, "t0");
    f.j_v1 = J.add_node({"red"}, "v1");
    f.j_v2 = J.add_node({"red"}, "v2");
    const NodeId jb = J.add_node({"blue"}, "b");
    J.add_edge(s0, f.j_v1), J.add_edge(f.j_v1, s0), J.add_edge(f.j_v2, jb), J.add_edge(jb, f.j_v2);
    J.add_hyperedge("A", {f.j_v1, f.j_v2});
    return f;
}

// ---------------------------------------------------------------- random instances

using Rng = std::mt19937_64;

inline ColorSet random_colors(Rng& rng, const std::vector<std::string>& palette) {
    ColorSet cs;
    for (const auto& c : palette)
        if (rng() % 2) cs.push_back(c);
    normalize(cs);
    return cs;
}

// Random hypergraph with n concrete nodes, k abstract nodes and hyperedges
// of the given arities attached to arbitrary nodes.
inline Hypergraph random_graph(Rng& rng, int n, int k, const std::vector<int>& arities,
                               const std::vector<std::string>& palette = {"red", "blue"}, int edges = -1,
                               const std::string& label = "A") {
    Hypergraph g;
    g.abstract_count = k;
    for (int i = 0; i < n; ++i) g.add_node(random_colors(rng, palette));
    auto any_node = [&]() -> NodeId {
        const int r = static_cast<int>(rng() % (n + k));
        return r < n ? r : abstract_node(r - n + 1);
    };
    if (n + k == 0) return g;
    if (edges < 0) edges = static_cast<int>(rng() % (2 * (n + k) + 1));
    for (int e = 0; e < edges; ++e) g.add_edge(any_node(), any_node());
    for (int a : arities) {
        std::vector<NodeId> att;
        for (int i = 0; i < a; ++i) att.push_back(any_node());
        g.add_hyperedge(label, att);
    }
    return g;
}

// Random LTS where every node has a successor.
inline Hypergraph random_lts(Rng& rng, int n, const std::vector<std::string>& palette = {"red", "blue"}) {
    Hypergraph g;
    for (int i = 0; i < n; ++i) g.add_node(random_colors(rng, palette));
    for (int v = 0; v < n; ++v) {
        g.add_edge(v, static_cast<NodeId>(rng() % n));
        if (rng() % 2) g.add_edge(v, static_cast<NodeId>(rng() % n));
    }
    return g;
}

// Brute-force isomorphism fixing abstract nodes (test-only oracle).
bool isomorphic(const Hypergraph& a, const Hypergraph& b);

// Every word over `letters` of length in [lo, hi].
std::vector<Word> words(int letters, int lo, int hi);

// Simulates m on a finite word from every state: the set of (p, q, saw-final) triples.
StepSummary simulate(const BuchiAutomaton& m, const Word& w);

}  // namespace fixtures
