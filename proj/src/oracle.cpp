#include "hrmc/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "hrmc/error.hpp"
#include "hrmc/recolor.hpp"

namespace hrmc {

namespace {

// Deliberately naive relation algebra, independent of the summary engine.
using Rel = std::set<std::tuple<int, int, bool>>;

Rel step_rel(const BuchiAutomaton& m, Letter a) {
    Rel r;
    for (int p = 0; p < m.states; ++p)
        for (int q = 0; q < m.states; ++q)
            if ((m.delta[p][a] >> q) & 1) r.emplace(p, q, m.is_final(q));
    return r;
}

Rel then(const Rel& a, const Rel& b) {
    Rel out;
    for (auto [p, r, x] : a)
        for (auto [r2, q, y] : b)
            if (r == r2) out.emplace(p, q, x || y);
    return out;
}

void require_lts(const Hypergraph& g) {
    if (!g.is_lts()) throw Error(Errc::not_an_lts, "graph has hyperedges or abstract nodes");
}

std::vector<std::vector<NodeId>> successors(const Hypergraph& g) {
    std::vector<std::vector<NodeId>> s(g.node_count());
    for (const auto& e : g.edges) s[e.src].push_back(e.dst);
    for (auto& v : s) v.erase(std::unique(v.begin(), v.end()), v.end());
    return s;
}

}  // namespace

bool check_buchi(const Hypergraph& lts, NodeId v, const BuchiAutomaton& m) {
    require_lts(lts);
    if (is_abstract(v) || !lts.valid_node(v)) throw Error(Errc::node_not_found, "node " + std::to_string(v));
    const auto succ = successors(lts);
    std::vector<Rel> steps;
    std::vector<Letter> letters;
    for (int x = 0; x < lts.node_count(); ++x) {
        letters.push_back(m.letter_of(lts.colors[x]));
        steps.push_back(step_rel(m, letters.back()));
    }

    // Finite traces from `from` to every node, one witness word per distinct relation.
    // `start` is the relation/word already read at `from`.
    auto explore = [&](NodeId from, const Rel& start_rel, const Word& start_word, bool include_start) {
        std::map<std::pair<NodeId, Rel>, Word> seen;
        std::vector<std::pair<NodeId, Rel>> todo;
        auto visit = [&](NodeId x, Rel r, Word w) {
            auto key = std::make_pair(x, std::move(r));
            if (seen.emplace(key, std::move(w)).second) todo.push_back(key);
        };
        if (include_start) visit(from, start_rel, start_word);
        else
            for (NodeId y : succ[from]) {
                Word w = start_word;
                w.push_back(letters[y]);
                visit(y, then(start_rel, steps[y]), w);
            }
        while (!todo.empty()) {
            auto [x, r] = todo.back();
            todo.pop_back();
            const Word w = seen.at({x, r});
            for (NodeId y : succ[x]) {
                Word w2 = w;
                w2.push_back(letters[y]);
                visit(y, then(r, steps[y]), std::move(w2));
            }
        }
        return seen;
    };

    const auto prefixes = explore(v, steps[v], Word{letters[v]}, true);
    std::map<NodeId, std::vector<std::pair<Rel, Word>>> by_node;
    for (const auto& [k, w] : prefixes) by_node[k.first].emplace_back(k.second, w);

    Rel id;
    for (int p = 0; p < m.states; ++p) id.emplace(p, p, false);
    for (const auto& [x, pres] : by_node) {
        const auto loops = explore(x, id, Word{}, false);
        for (const auto& [k, loop] : loops) {
            if (k.first != x) continue;
            for (const auto& pre : pres)
                if (!accepts_lasso(m, pre.second, loop)) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- qualitative probabilities

namespace {

std::vector<bool> label(const Hypergraph& g, const FormulaPtr& f);

std::vector<std::vector<NodeId>> predecessors(const Hypergraph& g) {
    std::vector<std::vector<NodeId>> p(g.node_count());
    for (const auto& e : g.edges) p[e.dst].push_back(e.src);
    return p;
}

// Nodes from which some path stays in `through` until it hits `target`.
std::vector<bool> backward(const Hypergraph& g, const std::vector<bool>& through, const std::vector<bool>& target) {
    const auto pred = predecessors(g);
    std::vector<bool> out = target;
    std::vector<NodeId> todo;
    for (int v = 0; v < g.node_count(); ++v)
        if (target[v]) todo.push_back(v);
    while (!todo.empty()) {
        NodeId v = todo.back();
        todo.pop_back();
        for (NodeId u : pred[v])
            if (!out[u] && through[u]) out[u] = true, todo.push_back(u);
    }
    return out;
}

std::vector<bool> negate(std::vector<bool> v) {
    v.flip();
    return v;
}

std::vector<bool> prob_pos_until(const Hypergraph& g, const std::vector<bool>& a, const std::vector<bool>& b) {
    return backward(g, a, b);
}

std::vector<bool> prob_one_until(const Hypergraph& g, const std::vector<bool>& a, const std::vector<bool>& b) {
    const auto zero = negate(prob_pos_until(g, a, b));
    std::vector<bool> a_not_b(g.node_count());
    for (int v = 0; v < g.node_count(); ++v) a_not_b[v] = a[v] && !b[v];
    return negate(backward(g, a_not_b, zero));
}

std::vector<bool> label_prob(const Hypergraph& g, const FormulaPtr& f) {
    const int n = g.node_count();
    const auto succ = successors(g);
    for (int v = 0; v < n; ++v)
        if (succ[v].empty())
            throw Error(Errc::not_an_lts, "probabilistic operator on a node without successors: " + g.node_name(v));
    const bool pos = f->op == Op::ProbPos;
    const FormulaPtr& psi = f->lhs;
    std::vector<bool> all(n, true);
    switch (psi->op) {
        case Op::Next: {
            const auto a = label(g, psi->lhs);
            std::vector<bool> out(n);
            for (int v = 0; v < n; ++v)
                out[v] = pos ? std::any_of(succ[v].begin(), succ[v].end(), [&](NodeId w) { return a[w]; })
                             : std::all_of(succ[v].begin(), succ[v].end(), [&](NodeId w) { return a[w]; });
            return out;
        }
        case Op::Until: {
            const auto a = label(g, psi->lhs), b = label(g, psi->rhs);
            return pos ? prob_pos_until(g, a, b) : prob_one_until(g, a, b);
        }
        case Op::Finally: {
            const auto b = label(g, psi->lhs);
            return pos ? prob_pos_until(g, all, b) : prob_one_until(g, all, b);
        }
        case Op::Globally: {
            const auto nb = negate(label(g, psi->lhs));
            // P>0[G a] = ¬P=1[F ¬a], P=1[G a] = ¬P>0[F ¬a]
            return negate(pos ? prob_one_until(g, all, nb) : prob_pos_until(g, all, nb));
        }
        default:
            throw Error(Errc::syntax, "probabilistic operator needs X, U, F or G: " + to_string(f));
    }
}

struct AutomatonCache {
    std::mutex mu;
    std::map<std::string, BuchiAutomaton> map;

    BuchiAutomaton get(const FormulaPtr& psi) {
        const std::string k = to_string(psi);
        {
            std::lock_guard<std::mutex> lock(mu);
            if (auto it = map.find(k); it != map.end()) return it->second;
        }
        BuchiAutomaton m = ltl_to_buchi(psi);
        std::lock_guard<std::mutex> lock(mu);
        return map.emplace(k, std::move(m)).first->second;
    }
};

AutomatonCache& automata() {
    static AutomatonCache cache;
    return cache;
}

std::vector<bool> label_forall(const Hypergraph& g, const FormulaPtr& psi) {
    Hypergraph h = g;
    int fresh = 0;
    // maximal quantified state subformulas become fresh atoms on a copy
    std::function<FormulaPtr(const FormulaPtr&)> abstract = [&](const FormulaPtr& f) -> FormulaPtr {
        if (f->op == Op::Atom || f->op == Op::True || f->op == Op::False) return f;
        if (is_state_formula(f) && (has_path_quantifier(f) || has_probabilistic(f))) {
            const auto lab = label(g, f);
            const std::string a = "@o" + std::to_string(++fresh);
            for (int v = 0; v < h.node_count(); ++v)
                if (lab[v]) h.add_color(v, a);
            return fml::atom(a);
        }
        auto out = std::make_shared<Formula>(*f);
        if (f->lhs) out->lhs = abstract(f->lhs);
        if (f->rhs) out->rhs = abstract(f->rhs);
        return out;
    };
    const FormulaPtr flat = abstract(psi);
    const BuchiAutomaton m = automata().get(flat);
    std::vector<bool> out(h.node_count());
    for (int v = 0; v < h.node_count(); ++v) out[v] = check_buchi(h, v, m);
    return out;
}

std::vector<bool> label(const Hypergraph& g, const FormulaPtr& f) {
    const int n = g.node_count();
    std::vector<bool> out(n, false);
    switch (f->op) {
        case Op::True: out.assign(n, true); return out;
        case Op::False: return out;
        case Op::Atom:
            for (int v = 0; v < n; ++v) out[v] = g.has_color(v, f->atom);
            return out;
        case Op::Not: return negate(label(g, f->lhs));
        case Op::And:
        case Op::Or:
        case Op::Implies: {
            const auto a = label(g, f->lhs), b = label(g, f->rhs);
            for (int v = 0; v < n; ++v)
                out[v] = f->op == Op::And ? a[v] && b[v] : f->op == Op::Or ? a[v] || b[v] : !a[v] || b[v];
            return out;
        }
        case Op::ForAll: return label_forall(g, f->lhs);
        case Op::Exists: return negate(label_forall(g, fml::neg(f->lhs)));
        case Op::ProbPos:
        case Op::ProbOne: return label_prob(g, f);
        default: return label_forall(g, f);
    }
}

}  // namespace

std::vector<bool> label_ctlstar(const Hypergraph& lts, const FormulaPtr& phi) {
    require_lts(lts);
    return label(lts, phi);
}

bool check_ctlstar(const Hypergraph& lts, NodeId v, const FormulaPtr& phi) {
    if (is_abstract(v) || !lts.valid_node(v)) throw Error(Errc::node_not_found, "node " + std::to_string(v));
    return label_ctlstar(lts, phi)[v];
}

std::vector<bool> label_qpctl(const Hypergraph& lts, const FormulaPtr& phi) {
    require_lts(lts);
    const auto succ = successors(lts);
    for (int v = 0; v < lts.node_count(); ++v)
        if (succ[v].empty()) throw Error(Errc::not_an_lts, "node without successors: " + lts.node_name(v));
    return label(lts, phi);
}

bool check_qpctl(const Hypergraph& lts, NodeId v, const FormulaPtr& phi) {
    if (is_abstract(v) || !lts.valid_node(v)) throw Error(Errc::node_not_found, "node " + std::to_string(v));
    return label_qpctl(lts, phi)[v];
}

// ---------------------------------------------------------------- differential

std::string DiffReport::str() const {
    std::ostringstream os;
    os << mismatches << " mismatches, " << members << " members checked";
    if (capped) os << " (capped)";
    if (!structure_ok) os << ", member sets differ";
    if (!first.empty()) os << "\nfirst: " << first;
    return os.str();
}

Hypergraph strip_registered(const Grammar& g, Hypergraph h) {
    for (const auto& [c, text] : g.registry)
        for (int v = 0; v < h.node_count(); ++v) h.remove_color(v, c);
    return h;
}

DiffReport compare_recolored(const Grammar& base, const Grammar& rec, const std::string& color,
                             const FormulaPtr& phi, DiffOptions opts) {
    DiffReport rep;
    rep.color = color;
    const auto members = enumerate_members(rec, opts.depth, opts.cap);
    rep.members = members.size();
    rep.capped = members.size() >= opts.cap;
    const bool strip_color = !base.has_color(color);

    struct Result {
        std::size_t nodes = 0, mismatches = 0;
        std::string first, tree;
        bool same_graph = true;
    };
    std::vector<Result> results(members.size());
    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::string error;
    auto work = [&] {
        for (std::size_t i; (i = next++) < members.size();) {
            try {
                const auto& mem = members[i];
                Hypergraph plain = strip_registered(rec, mem.graph);
                if (strip_color)
                    for (int v = 0; v < plain.node_count(); ++v) plain.remove_color(v, color);
                const auto lab = label_ctlstar(plain, phi);
                Result& r = results[i];
                const DerivationTree bt = to_base(base, rec, mem.tree);
                r.tree = bt.str(base);
                r.same_graph = assemble(base, bt) == plain;
                for (int v = 0; v < plain.node_count(); ++v) {
                    ++r.nodes;
                    const bool colored = mem.graph.has_color(v, color);
                    if (colored != lab[v]) {
                        if (r.mismatches++ == 0)
                            r.first = "member " + mem.tree.str(rec) + " node " + mem.graph.node_name(v) +
                                      ": grammar=" + (colored ? "yes" : "no") + " oracle=" + (lab[v] ? "yes" : "no");
                    }
                }
            } catch (const std::exception& ex) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (error.empty()) error = ex.what();
            }
        }
    };
    const int jobs = std::max(1, opts.jobs);
    if (jobs == 1) work();
    else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (!error.empty()) throw std::runtime_error(error);

    std::multiset<std::string> got;
    for (const auto& r : results) {
        rep.nodes += r.nodes;
        rep.mismatches += r.mismatches;
        if (rep.first.empty() && !r.first.empty()) rep.first = r.first;
        if (!r.same_graph) {
            rep.structure_ok = false;
            if (rep.first.empty()) rep.first = "member " + r.tree + " differs from its base assembly";
        }
        got.insert(r.tree);
    }
    const auto expected = enumerate_members(base, opts.depth, opts.cap);
    if (!rep.capped && expected.size() < opts.cap) {
        std::multiset<std::string> want;
        for (const auto& m : expected) want.insert(m.tree.str(base));
        if (want != got) {
            rep.structure_ok = false;
            if (rep.first.empty())
                rep.first = "recolored grammar has " + std::to_string(got.size()) + " members, base has " +
                            std::to_string(want.size());
        }
    }
    return rep;
}

DiffReport differential(const Grammar& g, const FormulaPtr& phi, DiffOptions opts) {
    const Recolored rc = recolor_ctlstar(g, phi);
    return compare_recolored(g, rc.grammar, rc.color, phi, opts);
}

}  // namespace hrmc
