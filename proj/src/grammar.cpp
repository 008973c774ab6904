#include "hrmc/grammar.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "hrmc/error.hpp"

namespace hrmc {

int Grammar::arity(const std::string& nt) const {
    auto it = nonterminals.find(nt);
    if (it == nonterminals.end()) throw Error(Errc::invalid_grammar, "undeclared nonterminal " + nt);
    return it->second;
}

bool Grammar::has_color(const std::string& c) const {
    return std::find(colors.begin(), colors.end(), c) != colors.end();
}

void Grammar::declare_color(const std::string& c) {
    if (!has_color(c)) colors.push_back(c);
}

int Grammar::origin_of(int r) const {
    const int o = rules.at(r).origin;
    return o < 0 ? r : o;
}

bool DerivationTree::complete() const {
    if (is_leaf()) return false;
    return std::all_of(children.begin(), children.end(), [](const auto& c) { return c.complete(); });
}

int DerivationTree::height() const {
    if (is_leaf()) return 0;
    int h = 0;
    for (const auto& c : children) h = std::max(h, c.height());
    return h + 1;
}

int DerivationTree::holes() const {
    if (is_leaf()) return 1;
    int n = 0;
    for (const auto& c : children) n += c.holes();
    return n;
}

std::string DerivationTree::str(const Grammar& g) const {
    if (is_leaf()) return nonterminal + "?";
    std::string s = g.rules.at(rule).name;
    if (children.empty()) return s;
    s += "(";
    for (std::size_t i = 0; i < children.size(); ++i) {
        if (i) s += ",";
        s += children[i].str(g);
    }
    return s + ")";
}

DerivationTree to_base(const Grammar& base, const Grammar& derived, const DerivationTree& t) {
    const int o = derived.origin_of(t.rule);
    DerivationTree out{base.rules.at(o).lhs, o, {}};
    for (const auto& c : t.children) out.children.push_back(to_base(base, derived, c));
    return out;
}

Hypergraph assemble(const Grammar& g, const DerivationTree& t) {
    if (t.is_leaf()) return handle(t.nonterminal, g.arity(t.nonterminal));
    if (t.rule >= static_cast<int>(g.rules.size())) throw Error(Errc::tree_shape, "unknown rule");
    const Rule& r = g.rules[t.rule];
    if (r.lhs != t.nonterminal) throw Error(Errc::tree_shape, "rule " + r.name + " does not derive " + t.nonterminal);
    if (t.children.size() != r.body.hyperedges.size())
        throw Error(Errc::tree_shape, "rule " + r.name + " needs " + std::to_string(r.body.hyperedges.size()) +
                                          " children");
    std::vector<Hypergraph> parts;
    for (std::size_t e = 0; e < t.children.size(); ++e) {
        if (t.children[e].nonterminal != r.body.hyperedges[e].label)
            throw Error(Errc::tree_shape, "child label mismatch under " + r.name);
        parts.push_back(assemble(g, t.children[e]));
    }
    return replace(r.body, parts);
}

namespace {

std::vector<std::vector<int>> rules_by_lhs(const Grammar& g, std::map<std::string, int>& index) {
    index.clear();
    int i = 0;
    for (const auto& [name, ar] : g.nonterminals) index[name] = i++;
    std::vector<std::vector<int>> by(index.size());
    for (int r = 0; r < static_cast<int>(g.rules.size()); ++r) {
        auto it = index.find(g.rules[r].lhs);
        if (it != index.end()) by[it->second].push_back(r);
    }
    return by;
}

}  // namespace

std::vector<DerivationTree> enumerate_trees(const Grammar& g, const std::string& nt, int max_depth,
                                            std::size_t cap) {
    std::map<std::pair<std::string, int>, std::vector<DerivationTree>> memo;
    std::function<const std::vector<DerivationTree>&(const std::string&, int)> trees =
        [&](const std::string& a, int d) -> const std::vector<DerivationTree>& {
        auto key = std::make_pair(a, d);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        std::vector<DerivationTree> out;
        if (d > 0) {
            for (int r = 0; r < static_cast<int>(g.rules.size()) && out.size() < cap; ++r) {
                const Rule& rule = g.rules[r];
                if (rule.lhs != a) continue;
                const auto& hes = rule.body.hyperedges;
                std::vector<const std::vector<DerivationTree>*> opts;
                bool empty = false;
                for (const auto& h : hes) {
                    opts.push_back(&trees(h.label, d - 1));
                    if (opts.back()->empty()) empty = true;
                }
                if (empty) continue;
                std::vector<std::size_t> pick(hes.size(), 0);
                while (out.size() < cap) {
                    DerivationTree t{a, r, {}};
                    for (std::size_t i = 0; i < hes.size(); ++i) t.children.push_back((*opts[i])[pick[i]]);
                    out.push_back(std::move(t));
                    // odometer over child choices, last hyperedge fastest
                    int i = static_cast<int>(hes.size()) - 1;
                    while (i >= 0 && ++pick[i] == opts[i]->size()) pick[i--] = 0;
                    if (i < 0) break;
                }
            }
        }
        return memo.emplace(key, std::move(out)).first->second;
    };
    return trees(nt, max_depth);
}

std::vector<Member> enumerate_members(const Grammar& g, int max_depth, std::size_t cap) {
    std::vector<Member> out;
    for (const auto& s : g.start) {
        for (auto& t : enumerate_trees(g, s, max_depth, cap)) {
            if (out.size() >= cap) return out;
            Hypergraph h = assemble(g, t);
            out.push_back({std::move(t), std::move(h)});
        }
    }
    return out;
}

Grammar restrict_rules(const Grammar& g, const std::vector<bool>& allowed) {
    Grammar out = g;
    out.rules.clear();
    for (std::size_t r = 0; r < g.rules.size(); ++r)
        if (r < allowed.size() && allowed[r]) out.rules.push_back(g.rules[r]);
    return out;
}

Grammar prune(const Grammar& g) {
    std::set<std::string> productive;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& r : g.rules) {
            if (productive.count(r.lhs)) continue;
            bool ok = std::all_of(r.body.hyperedges.begin(), r.body.hyperedges.end(),
                                  [&](const auto& h) { return productive.count(h.label) > 0; });
            if (ok) productive.insert(r.lhs), changed = true;
        }
    }
    auto rule_ok = [&](const Rule& r) {
        return productive.count(r.lhs) &&
               std::all_of(r.body.hyperedges.begin(), r.body.hyperedges.end(),
                           [&](const auto& h) { return productive.count(h.label) > 0; });
    };
    std::set<std::string> reachable;
    std::vector<std::string> todo;
    for (const auto& s : g.start)
        if (productive.count(s) && reachable.insert(s).second) todo.push_back(s);
    while (!todo.empty()) {
        std::string a = todo.back();
        todo.pop_back();
        for (const auto& r : g.rules)
            if (r.lhs == a && rule_ok(r))
                for (const auto& h : r.body.hyperedges)
                    if (reachable.insert(h.label).second) todo.push_back(h.label);
    }
    Grammar out = g;
    out.rules.clear();
    out.nonterminals.clear();
    out.start.clear();
    for (const auto& [n, ar] : g.nonterminals)
        if (reachable.count(n)) out.nonterminals.emplace(n, ar);
    for (const auto& s : g.start)
        if (reachable.count(s)) out.start.push_back(s);
    for (std::size_t r = 0; r < g.rules.size(); ++r)
        if (reachable.count(g.rules[r].lhs) && rule_ok(g.rules[r])) out.rules.push_back(g.rules[r]);
    return out;
}

std::string Count::str() const {
    switch (kind) {
        case Zero: return "0";
        case Infinite: return "INF";
        case Finite: return capped ? ">" + std::to_string(n) : std::to_string(n);
    }
    return "?";
}

Count count_trees(const Grammar& g, const std::vector<bool>& allowed, std::uint64_t cap) {
    Grammar p = prune(restrict_rules(g, allowed));
    if (p.start.empty()) return {};
    std::map<std::string, int> idx;
    auto by = rules_by_lhs(p, idx);
    const int n = static_cast<int>(idx.size());

    // recursion check on the nonterminal dependency graph
    std::vector<int> state(n, 0);
    bool cyclic = false;
    std::function<void(int)> dfs = [&](int a) {
        state[a] = 1;
        for (int r : by[a])
            for (const auto& h : p.rules[r].body.hyperedges) {
                int b = idx.at(h.label);
                if (state[b] == 1) cyclic = true;
                else if (state[b] == 0) dfs(b);
            }
        state[a] = 2;
    };
    for (int a = 0; a < n; ++a)
        if (state[a] == 0) dfs(a);
    if (cyclic) return {Count::Infinite, 0, false};

    std::vector<std::optional<std::uint64_t>> memo(n);
    bool over = false;
    auto sat_add = [&](std::uint64_t a, std::uint64_t b) {
        if (a > cap - std::min(cap, b)) return over = true, cap;
        return a + b;
    };
    auto sat_mul = [&](std::uint64_t a, std::uint64_t b) {
        if (a != 0 && b > cap / a) return over = true, cap;
        return a * b;
    };
    std::function<std::uint64_t(int)> cnt = [&](int a) -> std::uint64_t {
        if (memo[a]) return *memo[a];
        std::uint64_t total = 0;
        for (int r : by[a]) {
            std::uint64_t prod = 1;
            for (const auto& h : p.rules[r].body.hyperedges) prod = sat_mul(prod, cnt(idx.at(h.label)));
            total = sat_add(total, prod);
        }
        memo[a] = total;
        return total;
    };
    std::uint64_t total = 0;
    for (const auto& s : p.start) total = sat_add(total, cnt(idx.at(s)));
    if (total == 0) return {};
    return {Count::Finite, total, over};
}

Count count_trees(const Grammar& g, std::uint64_t cap) {
    return count_trees(g, std::vector<bool>(g.rules.size(), true), cap);
}

std::vector<std::string> validate(const Grammar& g) {
    std::vector<std::string> v;
    for (const auto& s : g.start) {
        auto it = g.nonterminals.find(s);
        if (it == g.nonterminals.end()) v.push_back("start symbol " + s + " is not declared");
        else if (it->second != 0) v.push_back("start symbol " + s + " has arity " + std::to_string(it->second) + ", expected 0");
    }
    std::set<std::string> acts(g.actions.begin(), g.actions.end());
    for (const auto& r : g.rules) {
        auto it = g.nonterminals.find(r.lhs);
        if (it == g.nonterminals.end()) {
            v.push_back("rule " + r.name + ": left-hand side " + r.lhs + " is not declared");
            continue;
        }
        if (it->second != r.body.abstract_count)
            v.push_back("rule " + r.name + ": (i) body has " + std::to_string(r.body.abstract_count) +
                        " abstract nodes but " + r.lhs + " has arity " + std::to_string(it->second));
        for (const auto& h : r.body.hyperedges) {
            auto jt = g.nonterminals.find(h.label);
            if (jt == g.nonterminals.end())
                v.push_back("rule " + r.name + ": (ii) hyperedge label " + h.label + " is not a nonterminal");
            else if (jt->second != static_cast<int>(h.att.size()))
                v.push_back("rule " + r.name + ": (ii) hyperedge " + h.label + " attaches " +
                            std::to_string(h.att.size()) + " nodes, arity is " + std::to_string(jt->second));
        }
        for (const auto& cs : r.body.colors)
            for (const auto& c : cs)
                if (!g.has_color(c)) v.push_back("rule " + r.name + ": color " + c + " is not declared");
        for (const auto& e : r.body.edges)
            if (!e.action.empty() && !acts.count(e.action))
                v.push_back("rule " + r.name + ": action " + e.action + " is not declared");
    }
    return v;
}

}  // namespace hrmc
