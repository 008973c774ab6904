#include <doctest.h>

#include "hrmc/decide.hpp"
#include "hrmc/error.hpp"
#include "hrmc/minimize.hpp"
#include "hrmc/oracle.hpp"
#include "hrmc/recolor.hpp"
#include "support.hpp"

using namespace hrmc;
using namespace fixtures;

namespace {

// Colored nodes of the rule bodies derived from base rule `name`, as node names.
std::set<std::string> colored_in(const Grammar& base, const Grammar& rec, const std::string& name,
                                 const std::string& color) {
    std::set<std::string> out;
    for (int i = 0; i < static_cast<int>(rec.rules.size()); ++i) {
        if (base.rules[rec.origin_of(i)].name != name) continue;
        const Hypergraph& b = rec.rules[i].body;
        for (NodeId v = 0; v < b.node_count(); ++v)
            if (b.has_color(v, color)) out.insert(b.node_name(v));
    }
    return out;
}

}  // namespace

TEST_CASE("recolor the list grammar with F blue") {
    const Grammar g = dll();
    RecolorStats st;
    const Grammar rec = recolor_buchi(g, f_blue(), "fb", &st);
    CHECK(st.refined_rules == 11);
    CHECK(rec.rules.size() == 11);
    CHECK(rec.has_color("fb"));
    CHECK(colored_in(g, rec, "R2", "fb").empty());
    CHECK(colored_in(g, rec, "R3", "fb") == std::set<std::string>{"w"});
    CHECK(compare_recolored(g, rec, "fb", parse_formula("A F blue")).ok());
}

TEST_CASE("recolor with red U blue leaves the middle cells uncolored") {
    const Grammar g = dll();
    const Grammar rec = recolor_buchi(g, red_until_blue(), "rub");
    CHECK(colored_in(g, rec, "R2", "rub").empty());
    CHECK(compare_recolored(g, rec, "rub", parse_formula("A (red U blue)")).ok());
}

TEST_CASE("recolor with true colors everything") {
    const Grammar g = dll();
    const Grammar rec = recolor_ltl(g, fml::tt(), "all");
    for (const auto& r : rec.rules)
        for (NodeId v = 0; v < r.body.node_count(); ++v) CHECK(r.body.has_color(v, "all"));
}

TEST_CASE("recolor with G red colors nothing") {
    const Grammar g = dll();
    const Grammar rec = recolor_ltl(g, parse_formula("G red"), "gr");
    for (const auto& r : rec.rules)
        for (NodeId v = 0; v < r.body.node_count(); ++v) CHECK_FALSE(r.body.has_color(v, "gr"));
}

TEST_CASE("unknown automaton atoms are rejected") {
    auto m = BuchiAutomaton::over({"purple"}, 1);
    m.initial = m.final = 1;
    m.add(0, 0, 0), m.add(0, 1, 0);
    CHECK_THROWS_AS(recolor_buchi(dll(), m, "x"), Error);
}

TEST_CASE("CTL* recoloring") {
    SUBCASE("an atom needs no new color") {
        const Recolored rc = recolor_ctlstar(dll(), parse_formula("red"));
        CHECK(rc.color == "red");
        CHECK(rc.stages.empty());
        CHECK(rc.grammar == dll());
    }
    SUBCASE("Sierpinski A G E F blue holds everywhere") {
        const Grammar g = bench("sierpinski.hrg");
        const Recolored rc = recolor_ctlstar(g, parse_formula("A G E F blue"));
        const Verdict v = classify(rc.grammar, "init", rc.color);
        CHECK(v.sat.kind == Count::Infinite);
        CHECK(v.fal.kind == Count::Zero);
    }
    SUBCASE("trees: not E (blue U not blue)") {
        const Grammar g = bench("trees.hrg");
        const Recolored rc = recolor_ctlstar(g, parse_formula("!E (blue U !blue)"));
        const Verdict v = classify(rc.grammar, "init", rc.color);
        CHECK(v.sat.kind == Count::Infinite);
        CHECK(v.fal.kind == Count::Infinite);
    }
    SUBCASE("registry records every fresh color") {
        const Recolored rc = recolor_ctlstar(dll(), parse_formula("E F blue & A G red"));
        CHECK(rc.grammar.registry.size() >= 2);
        for (const auto& [c, text] : rc.grammar.registry) CHECK(c.rfind("@phi", 0) == 0);
    }
    SUBCASE("double negation marks the same nodes") {
        const Grammar g = dll();
        const auto a = recolor_ctlstar(g, parse_formula("E F blue"));
        const auto b = recolor_ctlstar(g, parse_formula("!!E F blue"));
        CHECK(compare_recolored(g, b.grammar, b.color, parse_formula("E F blue")).ok());
        CHECK(classify(a.grammar, "init", a.color).str() == classify(b.grammar, "init", b.color).str());
    }
}

TEST_CASE("fresh colors and deletion") {
    const Grammar g = dll();
    CHECK(fresh_color(g) == "@phi1");
    const Recolored rc = recolor_ctlstar(g, parse_formula("F blue"));
    CHECK(fresh_color(rc.grammar) != rc.color);

    const Grammar back = delete_color(rc.grammar, rc.color);
    CHECK_FALSE(back.has_color(rc.color));
    for (const auto& r : back.rules)
        for (const auto& cs : r.body.colors) CHECK(std::find(cs.begin(), cs.end(), rc.color) == cs.end());
    CHECK_THROWS_AS(delete_color(g, "@nope"), Error);

    std::multiset<std::string> want, got;
    for (const auto& m : enumerate_members(g, 6)) want.insert(m.tree.str(g));
    for (const auto& m : enumerate_members(back, 6)) {
        got.insert(to_base(g, back, m.tree).str(g));
        CHECK(assemble(g, to_base(g, back, m.tree)) == m.graph);
    }
    CHECK(want == got);

    // recoloring again gives the same coloring
    const Recolored again = recolor_ctlstar(back, parse_formula("F blue"));
    CHECK(classify(again.grammar, "init", again.color).str() == classify(rc.grammar, "init", rc.color).str());
    CHECK(compare_recolored(g, again.grammar, again.color, parse_formula("F blue")).ok());
}

TEST_CASE("recolored grammar survives minimization") {
    const Grammar g = dll();
    const Recolored full = recolor_ctlstar(g, parse_formula("F blue"), {false});
    const Recolored small = recolor_ctlstar(g, parse_formula("F blue"));
    CHECK(full.grammar.rules.size() == 11);
    CHECK(small.grammar.rules.size() < 11);
    CHECK(compare_recolored(g, small.grammar, small.color, parse_formula("F blue")).ok());
}
