#include "hrmc/minimize.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace hrmc {

namespace {

using BodyKey = std::tuple<int, std::vector<ColorSet>, std::vector<Edge>, std::vector<Hyperedge>>;

BodyKey key_of(const Hypergraph& h) { return {h.abstract_count, h.colors, h.edges, h.hyperedges}; }

}  // namespace

Grammar minimize(const Grammar& input) {
    Grammar g = prune(input);
    std::vector<std::string> names;
    std::map<std::string, int> idx;
    for (const auto& [n, ar] : g.nonterminals) {
        idx[n] = static_cast<int>(names.size());
        names.push_back(n);
    }
    const int n = static_cast<int>(names.size());
    std::set<std::string> starts(g.start.begin(), g.start.end());

    std::vector<int> block(n);
    {
        std::map<std::pair<int, bool>, int> init;
        for (int a = 0; a < n; ++a)
            block[a] = init.emplace(std::make_pair(g.nonterminals.at(names[a]), starts.count(names[a]) > 0),
                                    static_cast<int>(init.size()))
                           .first->second;
    }
    auto relabel = [&](Hypergraph body, const std::vector<int>& blk) {
        for (auto& h : body.hyperedges) h.label = std::to_string(blk[idx.at(h.label)]);
        return body;
    };
    int blocks = static_cast<int>(std::set<int>(block.begin(), block.end()).size());
    for (;;) {
        std::vector<std::set<std::pair<int, BodyKey>>> sig(n);
        for (const auto& r : g.rules) sig[idx.at(r.lhs)].emplace(r.origin, key_of(relabel(r.body, block)));
        std::map<std::pair<int, std::set<std::pair<int, BodyKey>>>, int> ids;
        std::vector<int> next(n);
        for (int a = 0; a < n; ++a)
            next[a] = ids.emplace(std::make_pair(block[a], std::move(sig[a])), static_cast<int>(ids.size()))
                          .first->second;
        block = std::move(next);
        const int now = static_cast<int>(ids.size());
        if (now == blocks) break;
        blocks = now;
    }

    // lowest-index member names each block
    std::map<int, std::string> rep;
    for (int a = 0; a < n; ++a) rep.emplace(block[a], names[a]);
    auto rename = [&](const std::string& nt) { return rep.at(block[idx.at(nt)]); };

    Grammar out;
    out.colors = g.colors;
    out.actions = g.actions;
    out.registry = g.registry;
    for (const auto& [b, name] : rep) out.nonterminals.emplace(name, g.nonterminals.at(name));
    for (const auto& s : g.start) {
        auto r = rename(s);
        if (std::find(out.start.begin(), out.start.end(), r) == out.start.end()) out.start.push_back(r);
    }
    std::set<std::tuple<std::string, int, BodyKey>> seen;
    for (const auto& r : g.rules) {
        Rule nr = r;
        nr.lhs = rename(r.lhs);
        for (auto& h : nr.body.hyperedges) h.label = rename(h.label);
        if (seen.emplace(nr.lhs, nr.origin, key_of(nr.body)).second) out.rules.push_back(std::move(nr));
    }
    return out;
}

}  // namespace hrmc
