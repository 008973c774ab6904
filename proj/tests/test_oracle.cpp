#include <doctest.h>

#include "hrmc/error.hpp"
#include "hrmc/oracle.hpp"
#include "hrmc/recolor.hpp"
#include "support.hpp"

using namespace hrmc;
using namespace fixtures;

TEST_CASE("check_buchi basics") {
    Hypergraph g;
    const NodeId a = g.add_node({"red"});
    CHECK(check_buchi(g, a, f_blue()));  // no infinite traces

    const Grammar d = dll();
    const auto mem = enumerate_members(d, 2).at(0).graph;  // u <-> v <-> w
    CHECK_FALSE(check_buchi(mem, 1, f_blue()));
    CHECK(check_buchi(mem, 2, f_blue()));

    CHECK_THROWS_AS(check_buchi(d.rules[0].body, 0, f_blue()), Error);
}

TEST_CASE("atoms label by color") {
    Rng rng(11);
    for (int i = 0; i < 20; ++i) {
        const Hypergraph g = random_lts(rng, 5);
        const auto lab = label_ctlstar(g, fml::atom("red"));
        for (NodeId v = 0; v < 5; ++v) CHECK(lab[v] == g.has_color(v, "red"));
    }
}

TEST_CASE("Sierpinski members satisfy A G E F blue at the top") {
    const Grammar g = bench("sierpinski.hrg");
    const auto phi = parse_formula("A G E F blue");
    for (const auto& m : enumerate_members(g, 3))
        for (NodeId v = 0; v < m.graph.node_count(); ++v)
            if (m.graph.has_color(v, "init")) CHECK(check_ctlstar(m.graph, v, phi));
}

TEST_CASE("hand-evaluated tree") {
    // r(blue) -> a(blue) -> c(red) ; r -> b(blue) -> d(blue) ; leaves loop
    Hypergraph t;
    const NodeId r = t.add_node({"blue"}), a = t.add_node({"blue"}), b = t.add_node({"blue"}),
                 c = t.add_node({"red"}), d = t.add_node({"blue"});
    t.add_edge(r, a), t.add_edge(r, b), t.add_edge(a, c), t.add_edge(b, d), t.add_edge(c, c), t.add_edge(d, d);
    const auto lab = label_ctlstar(t, parse_formula("!E (blue U !blue)"));
    // only the all-blue branch from b (and d) avoids reaching a non-blue node
    CHECK(lab == std::vector<bool>{false, false, true, false, true});
}

TEST_CASE("qualitative PCTL") {
    // a loops and may move to b, which satisfies phi and loops
    Hypergraph g;
    const NodeId a = g.add_node({}), b = g.add_node({"blue"});
    g.add_edge(a, a), g.add_edge(a, b), g.add_edge(b, b);
    CHECK(check_qpctl(g, a, parse_formula("P=1[F blue]")));
    CHECK_FALSE(check_ctlstar(g, a, parse_formula("A F blue")));
    CHECK(check_qpctl(g, a, parse_formula("P>0[X blue]")));
    CHECK_FALSE(check_qpctl(g, a, parse_formula("P=1[X blue]")));
    CHECK_FALSE(check_qpctl(g, a, parse_formula("P>0[G !blue]")));
    CHECK(check_qpctl(g, b, parse_formula("P=1[G blue]")));

    Hypergraph dead;
    dead.add_node({});
    CHECK_THROWS_AS(label_qpctl(dead, parse_formula("P>0[X true]")), Error);

    const Grammar ip = bench("ipv4.hrg");
    for (const auto& m : enumerate_members(ip, 4))
        CHECK(check_qpctl(m.graph, 0, parse_formula("P=1[G P>0[F red]]")));
}

TEST_CASE("P>0[X phi] iff some successor satisfies phi") {
    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        const Hypergraph g = random_lts(rng, 6);
        const auto lab = label_qpctl(g, parse_formula("P>0[X red]"));
        for (NodeId v = 0; v < 6; ++v) {
            bool any = false;
            for (const auto& e : g.edges)
                if (e.src == v && g.has_color(e.dst, "red")) any = true;
            CHECK(lab[v] == any);
        }
    }
}

TEST_CASE("differential on the list grammar") {
    const Grammar g = dll();
    for (const char* f : {"F blue", "red U blue", "A G E F blue", "P=1[F blue]"}) {
        CAPTURE(f);
        const DiffReport r = differential(g, parse_formula(f));
        CHECK(r.ok());
        CHECK(r.members == 4);
        CHECK(r.str().rfind("0 mismatches, 4 members checked", 0) == 0);
    }
    // the middle cell of red U blue stays uncolored on both sides
    const Recolored rc = recolor_ctlstar(g, parse_formula("red U blue"));
    for (const auto& m : enumerate_members(rc.grammar, 4))
        for (NodeId v = 0; v < m.graph.node_count(); ++v)
            if (!m.graph.has_color(v, "blue")) CHECK_FALSE(m.graph.has_color(v, rc.color));
}

TEST_CASE("a corrupted recoloring is caught") {
    const Grammar g = dll();
    const auto phi = parse_formula("F blue");
    Recolored rc = recolor_ctlstar(g, phi);
    bool flipped = false;
    for (auto& r : rc.grammar.rules) {
        if (flipped) break;
        for (NodeId v = 0; v < r.body.node_count() && !flipped; ++v) {
            if (r.body.has_color(v, rc.color)) r.body.remove_color(v, rc.color);
            else r.body.add_color(v, rc.color);
            flipped = true;
        }
    }
    const DiffReport r = compare_recolored(g, rc.grammar, rc.color, phi);
    CHECK_FALSE(r.ok());
    CHECK(r.mismatches > 0);
    CHECK_FALSE(r.first.empty());

    DiffOptions par;
    par.jobs = 3;
    CHECK(compare_recolored(g, rc.grammar, rc.color, phi, par).mismatches == r.mismatches);
}
