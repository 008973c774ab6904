#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <queue>

#include "hrmc/error.hpp"
#include "hrmc/logic.hpp"

namespace hrmc {

BuchiAutomaton BuchiAutomaton::over(std::vector<std::string> atoms, int states) {
    if (states > max_states) throw Error(Errc::too_many_states, std::to_string(states) + " states");
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    BuchiAutomaton m;
    m.atoms = std::move(atoms);
    m.states = states;
    m.delta.assign(states, std::vector<std::uint64_t>(m.letters(), 0));
    for (int q = 0; q < states; ++q) m.state_names.push_back("q" + std::to_string(q));
    return m;
}

Letter BuchiAutomaton::letter_of(const ColorSet& cs) const {
    Letter a = 0;
    for (std::size_t i = 0; i < atoms.size(); ++i)
        if (std::binary_search(cs.begin(), cs.end(), atoms[i])) a |= Letter{1} << i;
    return a;
}

std::string BuchiAutomaton::name(int q) const {
    return q < static_cast<int>(state_names.size()) ? state_names[q] : "q" + std::to_string(q);
}

std::size_t BuchiAutomaton::transition_count() const {
    std::size_t n = 0;
    for (const auto& row : delta)
        for (auto m : row) n += std::popcount(m);
    return n;
}

// ---------------------------------------------------------------- raw automata

namespace {

// Unbounded-size automaton used during construction.
struct Raw {
    int letters = 1;
    std::vector<std::vector<std::vector<int>>> succ;  // succ[p][a]
    std::vector<bool> init, fin;

    int add_state(bool i, bool f) {
        succ.emplace_back(letters);
        init.push_back(i);
        fin.push_back(f);
        return static_cast<int>(succ.size()) - 1;
    }
    int size() const { return static_cast<int>(succ.size()); }
};

Raw to_raw(const BuchiAutomaton& m) {
    Raw r;
    r.letters = m.letters();
    for (int q = 0; q < m.states; ++q) r.add_state((m.initial >> q) & 1, m.is_final(q));
    for (int p = 0; p < m.states; ++p)
        for (int a = 0; a < r.letters; ++a)
            for (int q = 0; q < m.states; ++q)
                if ((m.delta[p][a] >> q) & 1) r.succ[p][a].push_back(q);
    return r;
}

std::vector<bool> reach_from(const Raw& r, const std::vector<int>& seeds, bool backward) {
    std::vector<std::vector<int>> adj(r.size());
    for (int p = 0; p < r.size(); ++p)
        for (const auto& qs : r.succ[p])
            for (int q : qs) backward ? adj[q].push_back(p) : adj[p].push_back(q);
    std::vector<bool> seen(r.size(), false);
    std::vector<int> todo;
    for (int s : seeds)
        if (!seen[s]) seen[s] = true, todo.push_back(s);
    while (!todo.empty()) {
        int p = todo.back();
        todo.pop_back();
        for (int q : adj[p])
            if (!seen[q]) seen[q] = true, todo.push_back(q);
    }
    return seen;
}

Raw trim(const Raw& r) {
    std::vector<int> inits;
    for (int q = 0; q < r.size(); ++q)
        if (r.init[q]) inits.push_back(q);
    auto reachable = reach_from(r, inits, false);
    std::vector<int> good;
    for (int f = 0; f < r.size(); ++f) {
        if (!r.fin[f] || !reachable[f]) continue;
        std::vector<int> succs;
        for (const auto& qs : r.succ[f]) succs.insert(succs.end(), qs.begin(), qs.end());
        if (succs.empty()) continue;
        auto fwd = reach_from(r, succs, false);
        if (fwd[f]) good.push_back(f);
    }
    auto useful = reach_from(r, good, true);
    std::vector<int> map(r.size(), -1);
    Raw out;
    out.letters = r.letters;
    for (int q = 0; q < r.size(); ++q)
        if (reachable[q] && useful[q]) map[q] = out.add_state(r.init[q], r.fin[q]);
    for (int p = 0; p < r.size(); ++p) {
        if (map[p] < 0) continue;
        for (int a = 0; a < r.letters; ++a)
            for (int q : r.succ[p][a])
                if (map[q] >= 0) out.succ[map[p]][a].push_back(map[q]);
    }
    if (out.size() == 0) out.add_state(true, false);  // empty language
    return out;
}

// Quotient by the coarsest bisimulation respecting finality.
Raw bisim_quotient(const Raw& r) {
    const int n = r.size();
    std::vector<int> block(n);
    for (int q = 0; q < n; ++q) block[q] = r.fin[q] ? 1 : 0;
    int blocks = static_cast<int>(std::set<int>(block.begin(), block.end()).size());
    for (;;) {
        std::map<std::pair<int, std::vector<std::vector<int>>>, int> ids;
        std::vector<int> next(n);
        for (int q = 0; q < n; ++q) {
            std::vector<std::vector<int>> sig(r.letters);
            for (int a = 0; a < r.letters; ++a) {
                for (int t : r.succ[q][a]) sig[a].push_back(block[t]);
                std::sort(sig[a].begin(), sig[a].end());
                sig[a].erase(std::unique(sig[a].begin(), sig[a].end()), sig[a].end());
            }
            auto key = std::make_pair(block[q], std::move(sig));
            auto it = ids.emplace(std::move(key), static_cast<int>(ids.size())).first;
            next[q] = it->second;
        }
        const int after = static_cast<int>(ids.size());
        block = std::move(next);
        if (after == blocks) break;
        blocks = after;
    }
    // renumber blocks by first occurrence for determinism
    std::map<int, int> order;
    for (int q = 0; q < n; ++q) order.emplace(block[q], static_cast<int>(order.size()));
    Raw out;
    out.letters = r.letters;
    for (std::size_t b = 0; b < order.size(); ++b) out.add_state(false, false);
    for (int q = 0; q < n; ++q) {
        int b = order[block[q]];
        if (r.init[q]) out.init[b] = true;
        out.fin[b] = r.fin[q];
        for (int a = 0; a < r.letters; ++a)
            for (int t : r.succ[q][a]) {
                auto& v = out.succ[b][a];
                int tb = order[block[t]];
                if (std::find(v.begin(), v.end(), tb) == v.end()) v.push_back(tb);
            }
    }
    return out;
}

// States without incoming transitions are visited at most once, so their
// finality is irrelevant; pick whichever lets the quotient merge more.
Raw shrink(Raw r) {
    for (;;) {
        const int before = r.size();
        r = bisim_quotient(trim(r));
        std::vector<bool> entered(r.size(), false);
        for (const auto& row : r.succ)
            for (const auto& qs : row)
                for (int q : qs) entered[q] = true;
        for (int q = 0; q < r.size(); ++q) {
            if (entered[q]) continue;
            Raw alt = r;
            alt.fin[q] = !alt.fin[q];
            alt = bisim_quotient(alt);
            if (alt.size() < r.size()) {
                r = std::move(alt);
                break;
            }
        }
        if (r.size() == before) return r;
    }
}

BuchiAutomaton from_raw(const Raw& r, std::vector<std::string> atoms) {
    auto m = BuchiAutomaton::over(std::move(atoms), r.size());
    for (int q = 0; q < r.size(); ++q) {
        if (r.init[q]) m.initial |= std::uint64_t{1} << q;
        if (r.fin[q]) m.final |= std::uint64_t{1} << q;
        for (int a = 0; a < r.letters; ++a)
            for (int t : r.succ[q][a]) m.add(q, a, t);
    }
    return m;
}

}  // namespace

BuchiAutomaton reduce(const BuchiAutomaton& m) {
    return from_raw(shrink(to_raw(m)), m.atoms);
}

// ---------------------------------------------------------------- LTL tableau

namespace {

// before reduction; anything larger cannot shrink below max_states in practice
constexpr std::size_t kTableauLimit = 1024;

struct TableauNode {
    std::set<int> incoming;  // -1 is the initial pseudo-node
    std::set<std::string> fresh, old, next;
};

class Tableau {
public:
    explicit Tableau(const FormulaPtr& f) : root_(intern(f)) {}

    BuchiAutomaton build(const std::vector<std::string>& atoms) {
        expand_all();
        // acceptance sets, one per until-subformula
        std::vector<std::string> untils;
        for (const auto& [k, f] : pool_)
            if (f->op == Op::Until) untils.push_back(k);
        const int n = static_cast<int>(done_.size());
        std::vector<std::vector<bool>> acc(untils.size(), std::vector<bool>(n + 1, false));
        for (std::size_t i = 0; i < untils.size(); ++i) {
            const std::string rhs = key(pool_[untils[i]]->rhs);
            for (int q = 0; q < n; ++q)
                acc[i][q] = !done_[q].old.count(untils[i]) || done_[q].old.count(rhs);
        }
        const int letters = 1 << atoms.size();
        std::vector<std::vector<bool>> reads(n, std::vector<bool>(letters, true));
        for (int q = 0; q < n; ++q)
            for (const auto& k : done_[q].old) {
                const auto& f = pool_[k];
                for (int a = 0; a < letters; ++a) {
                    if (f->op == Op::False) reads[q][a] = false;
                    if (f->op == Op::Atom && !(a >> index_of(atoms, f->atom) & 1)) reads[q][a] = false;
                    if (f->op == Op::Not && (a >> index_of(atoms, f->lhs->atom) & 1)) reads[q][a] = false;
                }
            }

        // degeneralize: (node, counter); node n is the initial pseudo-node
        const int k = std::max<int>(1, static_cast<int>(untils.size()));
        auto in_acc = [&](int q, int i) { return untils.empty() ? q < n : static_cast<bool>(acc[i][q]); };
        Raw raw;
        raw.letters = letters;
        std::map<std::pair<int, int>, int> ids;
        std::queue<std::pair<int, int>> todo;
        auto state = [&](int q, int i) {
            auto [it, fresh] = ids.emplace(std::make_pair(q, i), raw.size());
            if (fresh) {
                if (ids.size() > kTableauLimit)
                    throw Error(Errc::too_many_states, "automaton exceeds " + std::to_string(kTableauLimit) + " states");
                bool fin = (i == 0) && in_acc(q, 0);
                raw.add_state(q == n, fin);
                todo.push({q, i});
            }
            return it->second;
        };
        state(n, 0);
        while (!todo.empty()) {
            auto [q, i] = todo.front();
            todo.pop();
            const int from = ids[{q, i}];
            const int j = (q < n && in_acc(q, i)) ? (i + 1) % k : i;
            for (int t = 0; t < n; ++t) {
                if (!done_[t].incoming.count(q == n ? -1 : q)) continue;
                const int to = state(t, j);
                for (int a = 0; a < letters; ++a)
                    if (reads[t][a]) raw.succ[from][a].push_back(to);
            }
        }
        Raw r = shrink(std::move(raw));
        if (r.size() > max_states)
            throw Error(Errc::too_many_states, "automaton needs " + std::to_string(r.size()) + " states");
        return from_raw(r, atoms);
    }

private:
    static int index_of(const std::vector<std::string>& atoms, const std::string& a) {
        return static_cast<int>(std::lower_bound(atoms.begin(), atoms.end(), a) - atoms.begin());
    }

    std::string key(const FormulaPtr& f) { return to_string(f); }

    std::string intern(const FormulaPtr& f) {
        std::string k = key(f);
        pool_.emplace(k, f);
        if (f->lhs) intern(f->lhs);
        if (f->rhs) intern(f->rhs);
        return k;
    }

    bool contradicts(const TableauNode& n, const FormulaPtr& lit) {
        if (lit->op == Op::False) return true;
        if (lit->op == Op::Atom) return n.old.count(key(fml::neg(lit))) > 0;
        if (lit->op == Op::Not) return n.old.count(key(lit->lhs)) > 0;
        return false;
    }

    void expand_all() {
        std::vector<TableauNode> stack;
        stack.push_back({{-1}, {root_}, {}, {}});
        std::size_t steps = 0;
        while (!stack.empty()) {
            if (++steps > 64 * kTableauLimit)
                throw Error(Errc::too_many_states, "tableau expansion exceeds its budget");
            TableauNode node = std::move(stack.back());
            stack.pop_back();
            if (node.fresh.empty()) {
                auto it = std::find_if(done_.begin(), done_.end(), [&](const TableauNode& d) {
                    return d.old == node.old && d.next == node.next;
                });
                if (it != done_.end()) {
                    it->incoming.insert(node.incoming.begin(), node.incoming.end());
                    continue;
                }
                done_.push_back(node);
                if (done_.size() > kTableauLimit)
                    throw Error(Errc::too_many_states, "tableau exceeds " + std::to_string(kTableauLimit) + " nodes");
                const int id = static_cast<int>(done_.size()) - 1;
                stack.push_back({{id}, node.next, {}, {}});
                continue;
            }
            const std::string k = *node.fresh.begin();
            node.fresh.erase(node.fresh.begin());
            const FormulaPtr f = pool_.at(k);
            auto add_fresh = [&](TableauNode& n, const FormulaPtr& g) {
                std::string gk = key(g);
                if (!n.old.count(gk)) n.fresh.insert(gk);
            };
            switch (f->op) {
                case Op::True: case Op::False: case Op::Atom: case Op::Not:
                    if (contradicts(node, f)) break;
                    node.old.insert(k);
                    stack.push_back(std::move(node));
                    break;
                case Op::And:
                    add_fresh(node, f->lhs);
                    add_fresh(node, f->rhs);
                    node.old.insert(k);
                    stack.push_back(std::move(node));
                    break;
                case Op::Next:
                    node.old.insert(k);
                    node.next.insert(key(f->lhs));
                    stack.push_back(std::move(node));
                    break;
                case Op::Or: case Op::Until: case Op::Release: {
                    TableauNode a = node, b = node;
                    a.old.insert(k);
                    b.old.insert(k);
                    if (f->op == Op::Or) {
                        add_fresh(a, f->lhs);
                        add_fresh(b, f->rhs);
                    } else if (f->op == Op::Until) {
                        add_fresh(a, f->lhs);
                        a.next.insert(k);
                        add_fresh(b, f->rhs);
                    } else {
                        add_fresh(a, f->rhs);
                        a.next.insert(k);
                        add_fresh(b, f->lhs);
                        add_fresh(b, f->rhs);
                    }
                    stack.push_back(std::move(b));
                    stack.push_back(std::move(a));
                    break;
                }
                default:
                    throw Error(Errc::syntax, "not in negation normal form: " + k);
            }
        }
    }

    std::map<std::string, FormulaPtr> pool_;
    std::string root_;
    std::vector<TableauNode> done_;
};

}  // namespace

BuchiAutomaton ltl_to_buchi(const FormulaPtr& path_formula) {
    auto nnf = to_nnf(path_formula);
    auto as = atoms_of(nnf);
    std::vector<std::string> atoms(as.begin(), as.end());
    if (atoms.size() > 16) throw Error(Errc::too_many_states, "too many atoms in one LTL formula");
    return Tableau(nnf).build(atoms);
}

// ---------------------------------------------------------------- lassos

bool accepts_lasso(const BuchiAutomaton& m, const Word& prefix, const Word& loop) {
    if (loop.empty()) throw Error(Errc::syntax, "lasso loop must be nonempty");
    const int len = static_cast<int>(prefix.size() + loop.size());
    const int p = static_cast<int>(prefix.size());
    auto letter = [&](int i) { return i < p ? prefix[i] : loop[i - p]; };
    auto step = [&](int i) { return i + 1 < len ? i + 1 : p; };
    const int n = m.states;
    auto id = [&](int q, int i) { return i * n + q; };
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n) * len);
    for (int i = 0; i < len; ++i)
        for (int q = 0; q < n; ++q) {
            std::uint64_t s = m.delta[q][letter(i) & (m.letters() - 1)];
            for (int t = 0; t < n; ++t)
                if ((s >> t) & 1) adj[id(q, i)].push_back(id(t, step(i)));
        }
    auto bfs = [&](std::vector<int> seeds) {
        std::vector<bool> seen(adj.size(), false);
        for (int s : seeds) seen[s] = true;
        while (!seeds.empty()) {
            int x = seeds.back();
            seeds.pop_back();
            for (int y : adj[x])
                if (!seen[y]) seen[y] = true, seeds.push_back(y);
        }
        return seen;
    };
    std::vector<int> starts;
    for (int q = 0; q < n; ++q)
        if ((m.initial >> q) & 1) starts.push_back(id(q, 0));
    auto reach = bfs(starts);
    for (int i = p; i < len; ++i)
        for (int q = 0; q < n; ++q) {
            if (!m.is_final(q) || !reach[id(q, i)]) continue;
            if (adj[id(q, i)].empty()) continue;
            if (bfs(adj[id(q, i)])[id(q, i)]) return true;
        }
    return false;
}

bool holds_on_lasso(const FormulaPtr& f, const std::vector<std::string>& atoms, const Word& prefix,
                    const Word& loop) {
    const int p = static_cast<int>(prefix.size());
    const int len = p + static_cast<int>(loop.size());
    auto letter = [&](int i) { return i < p ? prefix[i] : loop[i - p]; };
    auto step = [&](int i) { return i + 1 < len ? i + 1 : p; };
    std::function<std::vector<bool>(const FormulaPtr&)> sat = [&](const FormulaPtr& g) {
        std::vector<bool> s(len, false);
        switch (g->op) {
            case Op::True: s.assign(len, true); break;
            case Op::False: break;
            case Op::Atom: {
                auto it = std::find(atoms.begin(), atoms.end(), g->atom);
                if (it != atoms.end()) {
                    int b = static_cast<int>(it - atoms.begin());
                    for (int i = 0; i < len; ++i) s[i] = (letter(i) >> b) & 1;
                }
                break;
            }
            case Op::Not: { auto a = sat(g->lhs); for (int i = 0; i < len; ++i) s[i] = !a[i]; break; }
            case Op::And: { auto a = sat(g->lhs), b = sat(g->rhs); for (int i = 0; i < len; ++i) s[i] = a[i] && b[i]; break; }
            case Op::Or: { auto a = sat(g->lhs), b = sat(g->rhs); for (int i = 0; i < len; ++i) s[i] = a[i] || b[i]; break; }
            case Op::Implies: { auto a = sat(g->lhs), b = sat(g->rhs); for (int i = 0; i < len; ++i) s[i] = !a[i] || b[i]; break; }
            case Op::Next: { auto a = sat(g->lhs); for (int i = 0; i < len; ++i) s[i] = a[step(i)]; break; }
            case Op::Finally: return sat(fml::until(fml::tt(), g->lhs));
            case Op::Globally: return sat(fml::release(fml::ff(), g->lhs));
            case Op::Until: {
                auto a = sat(g->lhs), b = sat(g->rhs);
                s = b;
                for (bool changed = true; changed;) {
                    changed = false;
                    for (int i = 0; i < len; ++i)
                        if (!s[i] && a[i] && s[step(i)]) s[i] = true, changed = true;
                }
                break;
            }
            case Op::Release: {
                auto a = sat(g->lhs), b = sat(g->rhs);
                s = b;
                for (bool changed = true; changed;) {
                    changed = false;
                    for (int i = 0; i < len; ++i)
                        if (s[i] && !a[i] && !s[step(i)]) s[i] = false, changed = true;
                }
                break;
            }
            default: throw Error(Errc::syntax, "path quantifier inside a lasso formula");
        }
        return s;
    };
    return sat(f)[0];
}

}  // namespace hrmc
