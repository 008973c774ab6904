#include "support.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace fixtures {

bool isomorphic(const Hypergraph& a, const Hypergraph& b) {
    if (a.abstract_count != b.abstract_count || a.node_count() != b.node_count() || a.edges.size() != b.edges.size() ||
        a.hyperedges.size() != b.hyperedges.size())
        return false;
    const int n = a.node_count();
    std::vector<NodeId> f(n, -1);
    std::vector<bool> used(n, false);
    std::function<bool(int)> go = [&](int v) {
        if (v == n) {
            std::vector<std::pair<NodeId, NodeId>> pin;
            for (int i = 1; i <= a.abstract_count; ++i) pin.emplace_back(abstract_node(i), abstract_node(i));
            for (int x = 0; x < n; ++x) pin.emplace_back(x, f[x]);
            return pinned_isomorphic(a, b, pin);
        }
        for (int w = 0; w < n; ++w) {
            if (used[w] || a.colors[v] != b.colors[w]) continue;
            used[w] = true;
            f[v] = w;
            if (go(v + 1)) return true;
            used[w] = false;
        }
        return false;
    };
    return go(0);
}

std::vector<Word> words(int letters, int lo, int hi) {
    std::vector<Word> out;
    Word w;
    std::function<void()> go = [&] {
        if (static_cast<int>(w.size()) >= lo) out.push_back(w);
        if (static_cast<int>(w.size()) == hi) return;
        for (int a = 0; a < letters; ++a) {
            w.push_back(static_cast<Letter>(a));
            go();
            w.pop_back();
        }
    };
    go();
    return out;
}

StepSummary simulate(const BuchiAutomaton& m, const Word& w) {
    StepSummary s = empty_summary(m.states);
    for (int p = 0; p < m.states; ++p) {
        std::set<std::pair<int, bool>> cur{{p, false}};
        for (Letter a : w) {
            std::set<std::pair<int, bool>> next;
            for (auto [q, b] : cur)
                for (int r = 0; r < m.states; ++r)
                    if ((m.delta[q][a] >> r) & 1) next.insert({r, b || m.is_final(r)});
            cur = std::move(next);
        }
        for (auto [q, b] : cur) s.add(p, q, b);
    }
    return s;
}

}  // namespace fixtures
