#include <doctest.h>

#include "hrmc/refine.hpp"
#include "support.hpp"

using namespace hrmc;
using namespace fixtures;

TEST_CASE("list grammar against F blue") {
    const Grammar g = dll();
    for (const auto& m : {f_blue(), ltl_to_buchi(parse_formula("F blue"))}) {
        Engine e(m);
        const Pass1 p1 = annotate1(e, g);
        CHECK(p1.rules.size() == 7);
        CHECK(p1.classes.at("A").size() == 3);
        CHECK(p1.classes.at("S").size() == 1);

        const Refined r = annotate2(e, g, p1);
        CHECK(r.nts.size() == 7);
        CHECK(r.rules.size() == 11);
        REQUIRE(r.start.size() == 1);
        CHECK(r.nts[r.start[0]].ctx == e.empty_class());

        const Grammar rg = to_grammar(g, r);
        CHECK(rg.rules.size() == 11);
        CHECK(validate(rg).empty());
        for (int i = 0; i < static_cast<int>(rg.rules.size()); ++i) {
            const Hypergraph &a = g.rules[rg.origin_of(i)].body, &b = rg.rules[i].body;
            CHECK(a.colors == b.colors);
            CHECK(a.edges == b.edges);
            CHECK(a.hyperedges.size() == b.hyperedges.size());
        }
    }
}

TEST_CASE("a grammar of one LTS needs no iteration") {
    const Grammar g = parse_grammar(R"(
        colors red blue init; nt S/0; start S;
        rule only : S { node a {red, init}; node b {blue}; edge a -> b; edge b -> b; }
    )");
    Engine e(f_blue());
    const Pass1 p1 = annotate1(e, g);
    REQUIRE(p1.rules.size() == 1);
    CHECK(p1.rules[0].cls == restrict(e, behaviour(e, g.rules[0].body)));
    const Refined r = refine(e, g);
    CHECK(r.rules.size() == 1);
    CHECK(r.nts.size() == 1);
}

TEST_CASE("refined grammars generate the same trees") {
    for (const char* file : {"dll.hrg", "ipv4.hrg", "spg.hrg", "sierpinski.hrg", "trees.hrg"}) {
        CAPTURE(file);
        const Grammar g = bench(file);
        Engine e(ltl_to_buchi(parse_formula("F blue")));
        const Grammar rg = to_grammar(g, refine(e, g));
        std::multiset<std::string> want, got;
        for (const auto& m : enumerate_members(g, 4)) want.insert(m.tree.str(g));
        for (const auto& m : enumerate_members(rg, 4)) got.insert(to_base(g, rg, m.tree).str(g));
        CHECK(want == got);
    }
}

TEST_CASE("annotated names and DOT") {
    const Grammar g = dll();
    Engine e(f_blue());
    const Refined r = refine(e, g);
    std::set<std::string> names;
    for (int i = 0; i < static_cast<int>(r.nts.size()); ++i) names.insert(annotated_name(r, i));
    CHECK(names.size() == r.nts.size());
    CHECK(names.count("S#0") == 1);
    const std::string dot = refined_dot(e, g, r);
    CHECK(dot.find("digraph") == 0);
    CHECK(dot.find("R2") != std::string::npos);
}
