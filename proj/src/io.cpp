#include "hrmc/io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hrmc/error.hpp"

namespace hrmc {

namespace {

struct Tok {
    enum Kind { Ident, Abstract, String, Punct, End } kind;
    std::string text;
    int line, col;
};

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '@' || c == '#' || c == '|' || c == '.' ||
           c == '\'';
}

std::vector<Tok> lex(const std::string& s) {
    std::vector<Tok> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto adv = [&](std::size_t n) {
        for (std::size_t k = 0; k < n && i < s.size(); ++k, ++i) {
            if (s[i] == '\n') ++line, col = 1;
            else ++col;
        }
    };
    auto fail = [&](const std::string& m) {
        throw Error(Errc::syntax, std::to_string(line) + ":" + std::to_string(col) + ": " + m);
    };
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            adv(1);
            continue;
        }
        if (c == '#' || (c == '/' && i + 1 < s.size() && s[i + 1] == '/')) {
            while (i < s.size() && s[i] != '\n') adv(1);
            continue;
        }
        const int l = line, k = col;
        if (c == '$') {
            std::size_t j = i + 1;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j == i + 1) fail("expected a number after '$'");
            out.push_back({Tok::Abstract, s.substr(i + 1, j - i - 1), l, k});
            adv(j - i);
        } else if (c == '"') {
            std::string text;
            std::size_t j = i + 1;
            for (; j < s.size() && s[j] != '"'; ++j) {
                if (s[j] == '\\' && j + 1 < s.size()) ++j;
                text += s[j];
            }
            if (j >= s.size()) fail("unterminated string");
            out.push_back({Tok::String, text, l, k});
            adv(j + 1 - i);
        } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
            out.push_back({Tok::Punct, "->", l, k});
            adv(2);
        } else if (ident_char(c)) {
            std::size_t j = i;
            while (j < s.size() && ident_char(s[j])) ++j;
            out.push_back({Tok::Ident, s.substr(i, j - i), l, k});
            adv(j - i);
        } else if (std::string("{}();,:/=-").find(c) != std::string::npos) {
            out.push_back({Tok::Punct, std::string(1, c), l, k});
            adv(1);
        } else {
            fail(std::string("unexpected character '") + c + "'");
        }
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

class TextParser {
public:
    explicit TextParser(const std::string& s) : toks_(lex(s)) {}

    Grammar run() {
        while (peek().kind != Tok::End) {
            const std::string kw = ident("keyword");
            if (kw == "colors") {
                while (!accept(";")) g_.declare_color(ident("color"));
            } else if (kw == "actions") {
                while (!accept(";")) g_.actions.push_back(ident("action"));
            } else if (kw == "nt") {
                const std::string n = ident("nonterminal");
                expect("/");
                const int ar = number();
                if (!g_.nonterminals.emplace(n, ar).second) fail("nonterminal " + n + " declared twice");
                expect(";");
            } else if (kw == "start") {
                while (!accept(";")) g_.start.push_back(ident("start symbol"));
            } else if (kw == "register") {
                const std::string c = ident("color");
                if (peek().kind != Tok::String) fail("expected a quoted formula");
                g_.registry.emplace_back(c, next().text);
                expect(";");
            } else if (kw == "rule") {
                rule();
            } else {
                fail("unknown declaration '" + kw + "'");
            }
        }
        return g_;
    }

private:
    const Tok& peek() const { return toks_[pos_]; }
    const Tok& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    [[noreturn]] void fail(const std::string& m) const {
        throw Error(Errc::syntax, std::to_string(peek().line) + ":" + std::to_string(peek().col) + ": " + m);
    }
    bool accept(const std::string& p) {
        if (peek().kind == Tok::Punct && peek().text == p) {
            ++pos_;
            return true;
        }
        if (peek().kind == Tok::End) fail("unexpected end of input, expected '" + p + "'");
        return false;
    }
    void expect(const std::string& p) {
        if (!accept(p)) fail("expected '" + p + "'");
    }
    std::string ident(const char* what) {
        if (peek().kind != Tok::Ident) fail(std::string("expected ") + what);
        return next().text;
    }
    int number() {
        const std::string t = ident("number");
        if (t.find_first_not_of("0123456789") != std::string::npos) fail("expected a number");
        return std::stoi(t);
    }

    void rule() {
        Rule r;
        r.name = ident("rule name");
        expect(":");
        r.lhs = ident("left-hand side");
        auto it = g_.nonterminals.find(r.lhs);
        if (it == g_.nonterminals.end()) fail("nonterminal " + r.lhs + " is not declared");
        if (peek().kind == Tok::Ident && peek().text == "origin") {
            next();
            r.origin = number();
        }
        expect("{");
        Hypergraph& h = r.body;
        h.abstract_count = it->second;
        std::map<std::string, NodeId> names;
        auto node_ref = [&]() -> NodeId {
            if (peek().kind == Tok::Abstract) {
                const int k = std::stoi(next().text);
                if (k < 1) fail("abstract nodes are numbered from 1");
                h.abstract_count = std::max(h.abstract_count, k);
                return abstract_node(k);
            }
            const std::string n = ident("node");
            auto jt = names.find(n);
            if (jt == names.end()) fail("unknown node " + n);
            return jt->second;
        };
        while (!accept("}")) {
            const std::string kw = ident("node, edge or he");
            if (kw == "node") {
                const std::string n = ident("node name");
                ColorSet cs;
                if (accept("{")) {
                    while (!accept("}")) {
                        cs.push_back(ident("color"));
                        accept(",");
                    }
                }
                if (names.count(n)) fail("node " + n + " declared twice");
                names[n] = h.add_node(cs, n);
                expect(";");
            } else if (kw == "edge") {
                const NodeId a = node_ref();
                std::string action;
                if (!accept("->")) {
                    expect("-");
                    action = ident("action");
                    expect("->");
                }
                const NodeId b = node_ref();
                edges_.push_back({a, b, action});
                expect(";");
            } else if (kw == "he") {
                std::string label = ident("hyperedge label");
                if (accept("=")) label = ident("hyperedge label");
                expect("(");
                std::vector<NodeId> att;
                while (!accept(")")) {
                    att.push_back(node_ref());
                    accept(",");
                }
                h.hyperedges.push_back({label, att});
            } else {
                fail("unknown body item '" + kw + "'");
            }
            accept(";");
        }
        for (auto& e : edges_) h.add_edge(e.src, e.dst, e.action);
        edges_.clear();
        g_.rules.push_back(std::move(r));
    }

    std::vector<Tok> toks_;
    std::size_t pos_ = 0;
    Grammar g_;
    std::vector<Edge> edges_;
};

std::string quote(const std::string& s) {
    std::string o = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') o += '\\';
        o += c;
    }
    return o + "\"";
}

// Display names that are unique and parse back as identifiers.
std::vector<std::string> node_names(const Hypergraph& h) {
    std::vector<std::string> out;
    std::set<std::string> used;
    for (int v = 0; v < h.node_count(); ++v) {
        std::string n = v < static_cast<int>(h.names.size()) ? h.names[v] : "";
        bool ok = !n.empty() && n != "origin";
        for (char c : n) ok = ok && ident_char(c) && c != '#';
        if (!ok || used.count(n)) n = "n" + std::to_string(v);
        while (used.count(n)) n += "_";
        used.insert(n);
        out.push_back(n);
    }
    return out;
}

}  // namespace

Grammar parse_grammar(const std::string& text) { return TextParser(text).run(); }

std::string to_text(const Grammar& g) {
    std::ostringstream os;
    auto list = [&](const char* kw, const std::vector<std::string>& v) {
        if (v.empty()) return;
        os << kw;
        for (const auto& x : v) os << " " << x;
        os << ";\n";
    };
    list("colors", g.colors);
    list("actions", g.actions);
    for (const auto& [n, ar] : g.nonterminals) os << "nt " << n << "/" << ar << ";\n";
    list("start", g.start);
    for (const auto& [c, f] : g.registry) os << "register " << c << " " << quote(f) << ";\n";
    for (const auto& r : g.rules) {
        const auto names = node_names(r.body);
        auto ref = [&](NodeId v) { return is_abstract(v) ? "$" + std::to_string(abstract_index(v)) : names[v]; };
        os << "\nrule " << r.name << " : " << r.lhs;
        if (r.origin >= 0) os << " origin " << r.origin;
        os << " {\n";
        for (int v = 0; v < r.body.node_count(); ++v) {
            os << "  node " << names[v] << " {";
            for (std::size_t i = 0; i < r.body.colors[v].size(); ++i) os << (i ? ", " : "") << r.body.colors[v][i];
            os << "};\n";
        }
        for (const auto& h : r.body.hyperedges) {
            os << "  he " << h.label << "(";
            for (std::size_t i = 0; i < h.att.size(); ++i) os << (i ? ", " : "") << ref(h.att[i]);
            os << ");\n";
        }
        for (const auto& e : r.body.edges) {
            os << "  edge " << ref(e.src) << (e.action.empty() ? " -> " : " -" + e.action + "-> ") << ref(e.dst)
               << ";\n";
        }
        os << "}\n";
    }
    return os.str();
}

Grammar parse_grammar_json(const std::string& text) {
    using nlohmann::json;
    try {
        const json j = json::parse(text);
        Grammar g;
        g.colors = j.value("colors", std::vector<std::string>{});
        g.actions = j.value("actions", std::vector<std::string>{});
        for (const auto& [n, ar] : j.at("nonterminals").items()) g.nonterminals.emplace(n, ar.get<int>());
        g.start = j.value("start", std::vector<std::string>{});
        if (j.contains("registry"))
            for (const auto& p : j["registry"]) g.registry.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
        for (const auto& jr : j.at("rules")) {
            Rule r;
            r.name = jr.at("name").get<std::string>();
            r.lhs = jr.at("lhs").get<std::string>();
            r.origin = jr.value("origin", -1);
            r.body.abstract_count = jr.value("abstract", 0);
            for (const auto& n : jr.value("nodes", json::array()))
                r.body.add_node(n.value("colors", ColorSet{}), n.value("name", std::string{}));
            for (const auto& h : jr.value("hyperedges", json::array()))
                r.body.add_hyperedge(h.at("label").get<std::string>(), h.at("att").get<std::vector<int>>());
            for (const auto& e : jr.value("edges", json::array()))
                r.body.add_edge(e.at(0).get<int>(), e.at(1).get<int>(), e.size() > 2 ? e.at(2).get<std::string>() : "");
            g.rules.push_back(std::move(r));
        }
        return g;
    } catch (const nlohmann::json::exception& ex) {
        throw Error(Errc::syntax, std::string("json: ") + ex.what());
    }
}

std::string to_json_text(const Grammar& g) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["colors"] = g.colors;
    j["actions"] = g.actions;
    j["nonterminals"] = ordered_json::object();
    for (const auto& [n, ar] : g.nonterminals) j["nonterminals"][n] = ar;
    j["start"] = g.start;
    j["registry"] = ordered_json::array();
    for (const auto& [c, f] : g.registry) j["registry"].push_back({c, f});
    j["rules"] = ordered_json::array();
    for (const auto& r : g.rules) {
        ordered_json jr;
        jr["name"] = r.name;
        jr["lhs"] = r.lhs;
        if (r.origin >= 0) jr["origin"] = r.origin;
        jr["abstract"] = r.body.abstract_count;
        jr["nodes"] = ordered_json::array();
        for (int v = 0; v < r.body.node_count(); ++v)
            jr["nodes"].push_back({{"name", r.body.names[v]}, {"colors", r.body.colors[v]}});
        jr["hyperedges"] = ordered_json::array();
        for (const auto& h : r.body.hyperedges) jr["hyperedges"].push_back({{"label", h.label}, {"att", h.att}});
        jr["edges"] = ordered_json::array();
        for (const auto& e : r.body.edges) jr["edges"].push_back({e.src, e.dst, e.action});
        j["rules"].push_back(jr);
    }
    return j.dump(2) + "\n";
}

Grammar load_grammar(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_grammar_json(text);
    return parse_grammar(text);
}

void save_text(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::io, "cannot write " + path);
    out << content;
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string o;
    for (char c : s) {
        if (c == '"' || c == '\\') o += '\\';
        o += c;
    }
    return o;
}

void body_dot(std::ostream& os, const Hypergraph& g, const std::string& p) {
    for (int i = 1; i <= g.abstract_count; ++i)
        os << "    " << p << "a" << i << " [shape=circle, style=dashed, label=\"$" << i << "\"];\n";
    for (int v = 0; v < g.node_count(); ++v) {
        std::string label = dot_escape(g.node_name(v));
        if (!g.colors[v].empty()) {
            label += "\\n{";
            for (std::size_t i = 0; i < g.colors[v].size(); ++i) label += (i ? "," : "") + dot_escape(g.colors[v][i]);
            label += "}";
        }
        os << "    " << p << "v" << v << " [shape=circle, label=\"" << label << "\"];\n";
    }
    auto id = [&](NodeId v) { return p + (is_abstract(v) ? "a" + std::to_string(abstract_index(v)) : "v" + std::to_string(v)); };
    for (const auto& e : g.edges) {
        os << "    " << id(e.src) << " -> " << id(e.dst);
        if (!e.action.empty()) os << " [label=\"" << dot_escape(e.action) << "\"]";
        os << ";\n";
    }
    for (std::size_t h = 0; h < g.hyperedges.size(); ++h) {
        os << "    " << p << "e" << h << " [shape=box, label=\"" << dot_escape(g.hyperedges[h].label) << "\"];\n";
        for (std::size_t i = 0; i < g.hyperedges[h].att.size(); ++i)
            os << "    " << p << "e" << h << " -> " << id(g.hyperedges[h].att[i]) << " [dir=none, style=dotted, label=\""
               << i + 1 << "\"];\n";
    }
}

}  // namespace

std::string graph_dot(const Hypergraph& g, const std::string& name) {
    std::ostringstream os;
    os << "digraph \"" << dot_escape(name) << "\" {\n";
    body_dot(os, g, "");
    os << "}\n";
    return os.str();
}

std::string grammar_dot(const Grammar& g) {
    std::ostringstream os;
    os << "digraph grammar {\n  compound=true;\n";
    for (std::size_t r = 0; r < g.rules.size(); ++r) {
        os << "  subgraph cluster_" << r << " {\n    label=\"" << dot_escape(g.rules[r].name + " : " + g.rules[r].lhs)
           << "\";\n";
        body_dot(os, g.rules[r].body, "r" + std::to_string(r) + "_");
        os << "  }\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace hrmc
