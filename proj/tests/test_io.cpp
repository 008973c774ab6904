#include <doctest.h>

#include "hrmc/error.hpp"
#include "hrmc/recolor.hpp"
#include "support.hpp"

using namespace hrmc;
using namespace fixtures;

TEST_CASE("benchmark files round-trip") {
    for (const char* f : {"dll.hrg", "ipv4.hrg", "trees.hrg", "spg.hrg", "sierpinski.hrg", "empty.hrg"}) {
        CAPTURE(f);
        const Grammar g = bench(f);
        const std::string text = to_text(g);
        CHECK(parse_grammar(text) == g);
        CHECK(to_text(parse_grammar(text)) == text);
        CHECK(parse_grammar_json(to_json_text(g)) == g);
    }
}

TEST_CASE("recolored grammars round-trip") {
    const Recolored rc = recolor_ctlstar(dll(), parse_formula("E F blue & A G red"));
    const std::string text = to_text(rc.grammar);
    const Grammar back = parse_grammar(text);
    CHECK(back == rc.grammar);
    CHECK(back.registry == rc.grammar.registry);
    CHECK(parse_grammar_json(to_json_text(rc.grammar)) == rc.grammar);
}

TEST_CASE("the documented syntax") {
    const Grammar g = parse_grammar(R"(
        colors red blue init;  actions a;   // trailing comment
        nt S/0; nt A/2;  start S;
        # a rule
        rule R3 : S { node u {red, init}; node v {red}; node w {blue}; he e1 = A(u, v); edge v -a-> w; edge w -a-> v; }
        rule R1 : A { edge $1 -> $2; }
    )");
    REQUIRE(g.rules.size() == 2);
    CHECK(g.actions == std::vector<std::string>{"a"});
    const Hypergraph& b = g.rules[0].body;
    CHECK(b.node_count() == 3);
    CHECK(b.edges.size() == 2);
    CHECK(b.edges[0].action == "a");
    CHECK(b.hyperedges[0].att == std::vector<NodeId>{0, 1});
    CHECK(g.rules[1].body.abstract_count == 2);
    CHECK(g.rules[1].origin == -1);
}

TEST_CASE("syntax errors carry a position") {
    auto msg = [](const std::string& s) -> std::string {
        try {
            parse_grammar(s);
        } catch (const Error& e) {
            CHECK(e.code() == Errc::syntax);
            return e.what();
        }
        return "";
    };
    CHECK(msg("nt S/0; rule R : S { node u {}; edge u -> x; }").find("unknown node x") != std::string::npos);
    CHECK(msg("rule R : S { }").find("not declared") != std::string::npos);
    CHECK(msg("nt S/0;\nnt S/1;").find("2:") == 0 + std::string("syntax: ").size());
    CHECK_FALSE(msg("colors red").empty());
    CHECK_FALSE(msg("nt S/0; rule R : S { node u {}; node u {}; }").empty());
    CHECK_THROWS_AS(parse_grammar_json("{\"rules\": 3}"), Error);
    CHECK_THROWS_AS(load_grammar("/nonexistent/file.hrg"), Error);
}

TEST_CASE("json files are detected") {
    const std::string path = std::string(HRMC_BINARY_DIR) + "/dll.json";
    save_text(path, to_json_text(dll()));
    CHECK(load_grammar(path) == dll());
}

TEST_CASE("DOT output") {
    const Grammar g = dll();
    const std::string dot = grammar_dot(g);
    CHECK(dot.find("cluster_0") != std::string::npos);
    CHECK(dot.find("cluster_2") != std::string::npos);
    CHECK(dot.find("cluster_3") == std::string::npos);
    CHECK(graph_dot(g.rules[0].body, "R3").find("digraph \"R3\"") == 0);
}
