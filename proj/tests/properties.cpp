#include "properties.hpp"

#include <chrono>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <tuple>

#include "hrmc/minimize.hpp"
#include "hrmc/oracle.hpp"
#include "hrmc/recolor.hpp"
#include "hrmc/refine.hpp"

namespace properties {

using namespace hrmc;
using fixtures::Rng;

std::string Result::str() const {
    std::ostringstream os;
    os << name << ": " << cases << " cases, " << checks << " checks, " << failures << " failures";
    os.precision(2);
    os << std::fixed << " (" << seconds << " s)";
    if (!first.empty()) os << "; first: " << first;
    return os.str();
}

namespace {

int pick(Rng& rng, int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

// ---------------------------------------------------------------- tagged graphs

// Every concrete node gets a unique "t:<n>" color, so graphs can be compared
// up to renumbering by looking at tags alone.
struct Tagger {
    int next = 0;
    Hypergraph operator()(Hypergraph g) {
        for (NodeId v = 0; v < g.node_count(); ++v) g.add_color(v, "t:" + std::to_string(next++));
        return g;
    }
};

std::string tag_of(const Hypergraph& g, NodeId v) {
    if (is_abstract(v)) return "$" + std::to_string(abstract_index(v));
    for (const auto& c : g.colors[v])
        if (c.rfind("t:", 0) == 0) return c;
    return "?";
}

using Canon = std::tuple<int, std::set<ColorSet>, std::set<std::tuple<std::string, std::string, std::string>>,
                         std::multiset<std::pair<std::string, std::vector<std::string>>>>;

Canon canon(const Hypergraph& g) {
    Canon c;
    std::get<0>(c) = g.abstract_count;
    for (const auto& cs : g.colors) std::get<1>(c).insert(cs);
    for (const auto& e : g.edges) std::get<2>(c).insert({tag_of(g, e.src), tag_of(g, e.dst), e.action});
    for (const auto& h : g.hyperedges) {
        std::vector<std::string> att;
        for (NodeId v : h.att) att.push_back(tag_of(g, v));
        std::get<3>(c).insert({h.label, att});
    }
    return c;
}

std::vector<int> random_arities(Rng& rng, int max_edges, int arity) {
    return std::vector<int>(pick(rng, max_edges + 1), arity);
}

// ---------------------------------------------------------------- automata pool

const std::vector<std::string>& ltl_pool() {
    static const std::vector<std::string> pool{"F blue", "G red",     "red U blue", "G F blue",
                                               "F G red", "X blue",   "red R blue", "G (red -> F blue)"};
    return pool;
}

struct Engines {
    std::vector<std::unique_ptr<Engine>> list;
    Engines() {
        list.push_back(std::make_unique<Engine>(fixtures::f_blue()));
        list.push_back(std::make_unique<Engine>(fixtures::red_until_blue()));
        for (const auto& f : ltl_pool()) list.push_back(std::make_unique<Engine>(ltl_to_buchi(parse_formula(f))));
    }
    Engine& any(Rng& rng) { return *list[pick(rng, static_cast<int>(list.size()))]; }
};

template <class F>
Result run(const std::string& name, int cases, F&& body) {
    Result r;
    r.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < cases; ++i) {
        std::string why;
        try {
            why = body(i, r.checks);
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        ++r.cases;
        if (!why.empty()) {
            if (r.failures++ == 0) r.first = "case " + std::to_string(i) + ": " + why;
        }
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::set<std::string> base_trees(const Grammar& base, const Grammar& derived, int depth) {
    std::set<std::string> out;
    for (const auto& m : enumerate_members(derived, depth)) out.insert(to_base(base, derived, m.tree).str(base));
    return out;
}

// Subtrees addressed by child-index paths.
void positions(const DerivationTree& t, std::vector<int>& path, std::vector<std::vector<int>>& out) {
    out.push_back(path);
    for (int i = 0; i < static_cast<int>(t.children.size()); ++i) {
        path.push_back(i);
        positions(t.children[i], path, out);
        path.pop_back();
    }
}

DerivationTree& at(DerivationTree& t, const std::vector<int>& path) {
    DerivationTree* p = &t;
    for (int i : path) p = &p->children[i];
    return *p;
}

}  // namespace

// ---------------------------------------------------------------- generators

Grammar random_grammar(Rng& rng) {
    Grammar g;
    g.colors = {"blue", "init", "red"};
    g.nonterminals = {{"A", 2}, {"S", 0}};
    g.start = {"S"};
    const std::vector<std::string> palette{"red", "blue"};
    const int srules = 1 + pick(rng, 2), arules = 1 + pick(rng, 3);
    for (int i = 0; i < srules; ++i) {
        Hypergraph b = fixtures::random_graph(rng, 1 + pick(rng, 3), 0, random_arities(rng, 2, 2), palette);
        b.add_color(0, "init");
        g.rules.push_back({"S" + std::to_string(i + 1), "S", b, -1});
    }
    for (int i = 0; i < arules; ++i) {
        // the first A rule is terminal so every grammar is productive
        const std::vector<int> ar = i == 0 ? std::vector<int>{} : random_arities(rng, 1, 2);
        g.rules.push_back({"A" + std::to_string(i + 1), "A", fixtures::random_graph(rng, pick(rng, 3), 2, ar, palette), -1});
    }
    return g;
}

std::string random_qpctl(Rng& rng, int depth) {
    const int k = depth <= 0 ? 0 : pick(rng, 6);
    switch (k) {
        case 0: return pick(rng, 2) ? "red" : "blue";
        case 1: return "!" + random_qpctl(rng, depth - 1);
        case 2: return "(" + random_qpctl(rng, depth - 1) + " & " + random_qpctl(rng, depth - 1) + ")";
        case 3: return "(" + random_qpctl(rng, depth - 1) + " | " + random_qpctl(rng, depth - 1) + ")";
        default: {
            const std::string p = k == 4 ? "P>0[" : "P=1[";
            switch (pick(rng, 4)) {
                case 0: return p + "X " + random_qpctl(rng, depth - 1) + "]";
                case 1: return p + "F " + random_qpctl(rng, depth - 1) + "]";
                case 2: return p + "G " + random_qpctl(rng, depth - 1) + "]";
                default: return p + random_qpctl(rng, depth - 1) + " U " + random_qpctl(rng, depth - 1) + "]";
            }
        }
    }
}

// ---------------------------------------------------------------- suites

// replace(replace(H, K̄), L̄) equals replace(H, K̄[L̄]) up to renumbering.
Result associativity(std::uint64_t seed, int cases) {
    Rng rng(seed);
    return run("replacement associativity", cases, [&](int, long& checks) -> std::string {
        Tagger tag;
        const Hypergraph h = tag(fixtures::random_graph(rng, 1 + pick(rng, 3), pick(rng, 3), random_arities(rng, 2, 2)));
        std::vector<Hypergraph> ks;
        std::vector<std::vector<Hypergraph>> ls;
        std::vector<Hypergraph> flat;
        for (std::size_t e = 0; e < h.hyperedges.size(); ++e) {
            ks.push_back(tag(fixtures::random_graph(rng, pick(rng, 3), 2, random_arities(rng, 2, 3), {"red", "blue"}, -1, "B")));
            ls.emplace_back();
            for (std::size_t f = 0; f < ks.back().hyperedges.size(); ++f) {
                ls.back().push_back(tag(fixtures::random_graph(rng, pick(rng, 3), 3, random_arities(rng, 1, 1), {"red", "blue"}, -1, "C")));
                flat.push_back(ls.back().back());
            }
        }
        const Hypergraph left = replace(replace(h, ks), flat);
        std::vector<Hypergraph> inner;
        for (std::size_t e = 0; e < ks.size(); ++e) inner.push_back(replace(ks[e], ls[e]));
        const Hypergraph right = replace(h, inner);
        ++checks;
        if (canon(left) != canon(right)) return "results differ";
        if (left.node_count() != right.node_count()) return "node counts differ";
        return "";
    });
}

// No edge of replace(H, K̄) joins concrete nodes from two different plugged graphs.
Result edge_boundary(std::uint64_t seed, int cases) {
    Rng rng(seed);
    return run("edge boundary", cases, [&](int, long& checks) -> std::string {
        const Hypergraph h = fixtures::random_graph(rng, 1 + pick(rng, 3), pick(rng, 2), random_arities(rng, 3, 2));
        std::vector<Hypergraph> ks;
        for (std::size_t e = 0; e < h.hyperedges.size(); ++e) {
            Hypergraph k = fixtures::random_graph(rng, pick(rng, 4), 2, random_arities(rng, 1, 2));
            for (NodeId v = 0; v < k.node_count(); ++v) k.add_color(v, "k:" + std::to_string(e));
            ks.push_back(k);
        }
        const Hypergraph r = replace(h, ks);
        auto origin = [&](NodeId v) -> std::string {
            if (is_abstract(v)) return "";
            for (const auto& c : r.colors[v])
                if (c.rfind("k:", 0) == 0) return c;
            return "";
        };
        for (const auto& e : r.edges) {
            ++checks;
            const std::string a = origin(e.src), b = origin(e.dst);
            if (!a.empty() && !b.empty() && a != b)
                return "edge " + std::to_string(e.src) + "->" + std::to_string(e.dst) + " joins " + a + " and " + b;
        }
        // plugged nodes only ever meet host nodes through the attachments
        std::size_t plugged = 0;
        for (const auto& k : ks) plugged += k.node_count();
        if (static_cast<std::size_t>(r.node_count()) != h.node_count() + plugged) return "node count";
        return "";
    });
}

// Plugging two different graphs of one class gives the same class, which is
// also what plug computes from the class alone.
Result plug_congruence(std::uint64_t seed, int cases) {
    Rng rng(seed);
    Engines engines;
    return run("plug congruence", cases, [&](int, long& checks) -> std::string {
        Engine& e = engines.any(rng);
        std::map<int, std::vector<Hypergraph>> buckets;
        std::vector<int> twins;
        for (int tries = 0; tries < 200 && twins.size() < 2; ++tries) {
            const Hypergraph k = fixtures::random_graph(rng, pick(rng, 3), 2, {});
            auto& b = buckets[restrict(e, behaviour(e, k))];
            bool fresh = true;
            for (const auto& o : b) fresh = fresh && !(o == k);
            if (!fresh) continue;
            b.push_back(k);
            if (b.size() == 2) twins.push_back(restrict(e, behaviour(e, k)));
        }
        if (twins.empty()) return "no two distinct graphs share a class";
        const Hypergraph host = fixtures::random_graph(rng, 1 + pick(rng, 3), pick(rng, 3), std::vector<int>(1 + pick(rng, 2), 2));
        std::vector<Hypergraph> first, second;
        std::vector<int> classes;
        for (std::size_t i = 0; i < host.hyperedges.size(); ++i) {
            const int c = twins[pick(rng, static_cast<int>(twins.size()))];
            classes.push_back(c);
            first.push_back(buckets[c][0]);
            second.push_back(buckets[c][1]);
        }
        const int a = restrict(e, behaviour(e, replace(host, first)));
        const int b = restrict(e, behaviour(e, replace(host, second)));
        const int p = restrict(e, plug(e, host, classes));
        checks += 2;
        if (a != b) return "representatives give different classes";
        if (a != p) return "plug disagrees with the assembled graph";
        return "";
    });
}

// Every subtree of a refined-grammar member has the annotated language class
// and its context has the annotated context class.
Result refinement_decomposition(std::uint64_t seed, int cases) {
    Rng rng(seed);
    Engines engines;
    return run("refinement decomposition", cases, [&](int, long& checks) -> std::string {
        const Grammar g = random_grammar(rng);
        Engine& e = engines.any(rng);
        const Refined ref = refine(e, g);
        const Grammar rg = to_grammar(g, ref);
        std::map<std::string, int> nt;
        for (int i = 0; i < static_cast<int>(ref.nts.size()); ++i) nt[annotated_name(ref, i)] = i;
        auto members = enumerate_members(rg, 4, 2000);
        if (members.empty()) return "";
        for (int m = 0; m < 3; ++m) {
            DerivationTree tree = members[pick(rng, static_cast<int>(members.size()))].tree;
            std::vector<int> path;
            std::vector<std::vector<int>> ps;
            positions(tree, path, ps);
            for (const auto& p : ps) {
                DerivationTree& sub = at(tree, p);
                checks += 2;
                const AnnotatedNT& a = ref.nts.at(nt.at(sub.nonterminal));
                if (restrict(e, behaviour(e, assemble(rg, sub))) != a.lang) return "language class at " + sub.str(rg);
                const DerivationTree keep = sub;
                sub = DerivationTree{keep.nonterminal, -1, {}};
                const Hypergraph ctx = assemble(rg, tree);
                sub = keep;
                if (ctx.hyperedges.size() != 1) return "context with " + std::to_string(ctx.hyperedges.size()) + " holes";
                if (hole_class(e, behaviour(e, ctx), 0) != a.ctx) return "context class at " + keep.str(rg);
            }
        }
        return "";
    });
}

// prune, minimize and deleting registered colors keep the generated language.
Result language_preservation(std::uint64_t seed, int cases) {
    Rng rng(seed);
    const std::vector<std::string> formulas{"F blue",       "G red",   "red U blue",  "E F blue", "A G E F red",
                                            "E X red & A F blue", "P=1[F blue]", "!E G red", "P>0[X P>0[X blue]]"};
    constexpr int depth = 4;
    return run("language preservation", cases, [&](int, long& checks) -> std::string {
        const Grammar g = random_grammar(rng);
        std::set<std::string> want;
        std::map<std::string, Hypergraph> graphs;
        for (const auto& m : enumerate_members(g, depth)) {
            want.insert(m.tree.str(g));
            graphs.emplace(m.tree.str(g), m.graph);
        }

        const Grammar pr = prune(g);
        if (base_trees(g, pr, depth) != want) return "prune changed the language";

        const std::string f = formulas[pick(rng, static_cast<int>(formulas.size()))];
        Engine e(ltl_to_buchi(parse_formula(pick(rng, 2) ? "F blue" : "red U blue")));
        const Grammar rg = to_grammar(g, refine(e, g));
        if (base_trees(g, rg, depth) != want) return "refinement changed the language";
        if (base_trees(g, minimize(rg), depth) != want) return "minimize changed the language";

        const Recolored rc = recolor_ctlstar(g, parse_formula(f));
        Grammar plain = rc.grammar;
        for (const auto& [c, text] : rc.grammar.registry) plain = delete_color(plain, c);
        std::set<std::string> got;
        for (const auto& m : enumerate_members(plain, depth)) {
            const std::string t = to_base(g, plain, m.tree).str(g);
            ++checks;
            got.insert(t);
            auto it = graphs.find(t);
            if (it == graphs.end()) return f + ": extra member " + t;
            if (!(it->second == m.graph)) return f + ": member " + t + " differs after deleting colors";
        }
        if (got != want) return f + ": recoloring lost members";
        return "";
    });
}

// The CTL* embedding of a qualitative PCTL formula labels every node like the
// direct graph-based evaluation.
Result qpctl_embedding(std::uint64_t seed, int cases) {
    Rng rng(seed);
    return run("qPCTL embedding", cases, [&](int, long& checks) -> std::string {
        const Hypergraph g = fixtures::random_lts(rng, 1 + pick(rng, 6));
        const std::string text = random_qpctl(rng, 3);
        const FormulaPtr f = parse_formula(text);
        checks += g.node_count();
        if (label_ctlstar(g, qpctl_to_ctlstar(f)) != label_qpctl(g, f)) return text;
        return "";
    });
}

std::vector<Result> all(std::uint64_t seed, int cases) {
    return {associativity(seed, cases),          edge_boundary(seed + 1, cases),
            plug_congruence(seed + 2, cases),    refinement_decomposition(seed + 3, cases),
            language_preservation(seed + 4, cases), qpctl_embedding(seed + 5, cases)};
}

}  // namespace properties
