#pragma once

#include <string>

#include "hrmc/grammar.hpp"

namespace hrmc {

// Line-oriented grammar format:
//   colors red blue init;  actions a;
//   nt S/0; nt A/2;  start S;
//   register @phi1 "F blue";
//   rule R3 : S { node u {red, init}; node v {red}; he e1 = A(u, v); edge v -a-> u; edge u -> v; }
// Abstract nodes are $1..$n; `rule R : A origin 2 { ... }` records a base rule.
// Comments start with '#' or "//".
Grammar parse_grammar(const std::string& text);
std::string to_text(const Grammar& g);

Grammar parse_grammar_json(const std::string& text);
std::string to_json_text(const Grammar& g);

// Reads either format (JSON when the first non-blank character is '{').
Grammar load_grammar(const std::string& path);
void save_text(const std::string& path, const std::string& content);

std::string graph_dot(const Hypergraph& g, const std::string& name = "graph");
std::string grammar_dot(const Grammar& g);

}  // namespace hrmc
