#include "hrmc/decide.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "hrmc/error.hpp"

namespace hrmc {

std::vector<bool> good_rules(const Grammar& g, const std::string& init, const std::string& color) {
    if (!g.has_color(init)) throw Error(Errc::unknown_color, init);
    if (!g.has_color(color)) throw Error(Errc::unknown_color, color);
    std::vector<bool> good;
    for (const auto& r : g.rules) {
        bool ok = true;
        for (int v = 0; v < r.body.node_count(); ++v)
            if (r.body.has_color(v, init) && !r.body.has_color(v, color)) ok = false;
        good.push_back(ok);
    }
    return good;
}

namespace {

std::string flagged(const std::string& nt, int bad) { return nt + "|" + std::to_string(bad); }

}  // namespace

Grammar violation_grammar(const Grammar& g, const std::vector<bool>& good) {
    Grammar out;
    out.colors = g.colors;
    out.actions = g.actions;
    for (const auto& [n, ar] : g.nonterminals) {
        out.nonterminals.emplace(flagged(n, 0), ar);
        out.nonterminals.emplace(flagged(n, 1), ar);
    }
    for (const auto& s : g.start) out.start.push_back(flagged(s, 1));
    for (int r = 0; r < static_cast<int>(g.rules.size()); ++r) {
        const Rule& rule = g.rules[r];
        const std::size_t k = rule.body.hyperedges.size();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
            Rule nr = rule;
            nr.origin = r;  // index into g, used to map trees back
            const bool bad = !good[r] || mask != 0;
            nr.lhs = flagged(rule.lhs, bad);
            for (std::size_t h = 0; h < k; ++h) nr.body.hyperedges[h].label = flagged(rule.body.hyperedges[h].label, (mask >> h) & 1);
            nr.name = rule.name + "|" + std::to_string(mask);
            out.rules.push_back(std::move(nr));
        }
    }
    return out;
}

std::optional<DerivationTree> shortest_tree(const Grammar& g, const std::vector<std::string>& roots,
                                            const std::vector<bool>& allowed) {
    std::map<std::string, std::pair<int, int>> best;  // nt -> (height, rule)
    for (bool changed = true; changed;) {
        changed = false;
        for (int r = 0; r < static_cast<int>(g.rules.size()); ++r) {
            if (r >= static_cast<int>(allowed.size()) || !allowed[r]) continue;
            const Rule& rule = g.rules[r];
            int h = 0;
            bool ok = true;
            for (const auto& he : rule.body.hyperedges) {
                auto it = best.find(he.label);
                if (it == best.end()) {
                    ok = false;
                    break;
                }
                h = std::max(h, it->second.first);
            }
            if (!ok) continue;
            auto it = best.find(rule.lhs);
            if (it == best.end() || h + 1 < it->second.first) {
                best[rule.lhs] = {h + 1, r};
                changed = true;
            }
        }
    }
    std::function<DerivationTree(const std::string&)> build = [&](const std::string& nt) {
        const int r = best.at(nt).second;
        DerivationTree t{nt, r, {}};
        for (const auto& he : g.rules[r].body.hyperedges) t.children.push_back(build(he.label));
        return t;
    };
    std::optional<DerivationTree> out;
    int h = 0;
    for (const auto& s : roots) {
        auto it = best.find(s);
        if (it != best.end() && (!out || it->second.first < h)) {
            out = build(s);
            h = it->second.first;
        }
    }
    return out;
}

namespace {

DerivationTree unflag(const Grammar& g, const Grammar& product, const DerivationTree& t) {
    const int r = product.rules[t.rule].origin;
    DerivationTree out{g.rules[r].lhs, r, {}};
    for (const auto& c : t.children) out.children.push_back(unflag(g, product, c));
    return out;
}

}  // namespace

Verdict classify(const Grammar& g, const std::string& init, const std::string& color, std::uint64_t cap) {
    const auto good = good_rules(g, init, color);
    Verdict v;
    v.sat = count_trees(g, good, cap);
    v.sat_witness = shortest_tree(g, g.start, good);
    const Grammar product = violation_grammar(g, good);
    v.fal = count_trees(product, cap);
    if (auto t = shortest_tree(product, product.start, std::vector<bool>(product.rules.size(), true)))
        v.fal_witness = unflag(g, product, *t);
    return v;
}

}  // namespace hrmc
