#include "hrmc/refine.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "hrmc/error.hpp"

namespace hrmc {

Pass1 annotate1(Engine& e, const Grammar& g) {
    Pass1 p;
    std::set<std::pair<int, std::vector<int>>> seen;
    auto add_class = [&](const std::string& nt, int c) {
        auto& v = p.classes[nt];
        if (std::find(v.begin(), v.end(), c) != v.end()) return false;
        v.push_back(c);
        return true;
    };
    // Rounds until no new combination appears; each round sees the classes
    // known at its start, so the result is the least fixpoint.
    for (bool changed = true; changed;) {
        changed = false;
        ++p.rounds;
        const auto known = p.classes;
        for (int r = 0; r < static_cast<int>(g.rules.size()); ++r) {
            const Rule& rule = g.rules[r];
            const auto& hes = rule.body.hyperedges;
            std::vector<const std::vector<int>*> opts;
            bool blocked = false;
            for (const auto& h : hes) {
                auto it = known.find(h.label);
                if (it == known.end() || it->second.empty()) {
                    blocked = true;
                    break;
                }
                opts.push_back(&it->second);
            }
            if (blocked) continue;
            std::vector<std::size_t> pick(hes.size(), 0);
            for (;;) {
                std::vector<int> combo(hes.size());
                for (std::size_t i = 0; i < hes.size(); ++i) combo[i] = (*opts[i])[pick[i]];
                if (seen.emplace(r, combo).second) {
                    const int c = restrict(e, plug(e, rule.body, combo));
                    p.rules.push_back({r, combo, c});
                    if (add_class(rule.lhs, c)) changed = true;
                }
                int i = static_cast<int>(hes.size()) - 1;
                while (i >= 0 && ++pick[i] == opts[i]->size()) pick[i--] = 0;
                if (i < 0) break;
            }
        }
    }
    return p;
}

int Refined::find(const AnnotatedNT& a) const {
    auto it = std::find(nts.begin(), nts.end(), a);
    return it == nts.end() ? -1 : static_cast<int>(it - nts.begin());
}

Refined annotate2(Engine& e, const Grammar& g, const Pass1& p1) {
    Refined out;
    std::map<AnnotatedNT, int> ids;
    std::deque<int> todo;
    auto intern = [&](const AnnotatedNT& a) {
        auto [it, fresh] = ids.emplace(a, static_cast<int>(out.nts.size()));
        if (fresh) {
            out.nts.push_back(a);
            todo.push_back(it->second);
        }
        return it->second;
    };
    const int empty = e.empty_class();
    for (const auto& s : g.start) {
        auto it = p1.classes.find(s);
        if (it == p1.classes.end()) continue;
        for (int c : it->second) out.start.push_back(intern({s, c, empty}));
    }
    while (!todo.empty()) {
        const int id = todo.front();
        todo.pop_front();
        const AnnotatedNT a = out.nts[id];
        for (const auto& pr : p1.rules) {
            const Rule& rule = g.rules[pr.rule];
            if (rule.lhs != a.base || pr.cls != a.lang) continue;
            AnnotatedRule ar{pr.rule, id, {}};
            for (std::size_t h = 0; h < pr.children.size(); ++h) {
                auto open = pr.children;
                open[h] = -1;
                const int d = hole_class(e, plug(e, rule.body, open, a.ctx), static_cast<int>(h));
                ar.children.push_back(intern({rule.body.hyperedges[h].label, pr.children[h], d}));
            }
            out.rules.push_back(std::move(ar));
        }
    }
    return out;
}

Refined refine(Engine& e, const Grammar& g) { return annotate2(e, g, annotate1(e, g)); }

std::string annotated_name(const Refined& r, int nt) { return r.nts[nt].base + "#" + std::to_string(nt); }

Grammar to_grammar(const Grammar& g, const Refined& r) {
    Grammar out;
    out.colors = g.colors;
    out.actions = g.actions;
    out.registry = g.registry;
    for (int i = 0; i < static_cast<int>(r.nts.size()); ++i)
        out.nonterminals.emplace(annotated_name(r, i), g.arity(r.nts[i].base));
    for (int s : r.start) out.start.push_back(annotated_name(r, s));
    for (std::size_t k = 0; k < r.rules.size(); ++k) {
        const auto& ar = r.rules[k];
        Rule rule = g.rules[ar.rule];
        rule.name = rule.name + "#" + std::to_string(k);
        rule.lhs = annotated_name(r, ar.lhs);
        rule.origin = g.origin_of(ar.rule);
        for (std::size_t h = 0; h < ar.children.size(); ++h)
            rule.body.hyperedges[h].label = annotated_name(r, ar.children[h]);
        out.rules.push_back(std::move(rule));
    }
    return out;
}

namespace {

std::string escape(const std::string& s) {
    std::string o;
    for (char c : s) {
        if (c == '"' || c == '\\') o += '\\';
        o += c;
    }
    return o;
}

std::string class_label(const Engine& e, int c) {
    const auto& b = e.cls(c);
    std::ostringstream os;
    for (int i = 0; i < b.size(); ++i) {
        for (int j = 0; j < b.size(); ++j)
            for (int f : b.between(i, j)) os << i + 1 << "->" << j + 1 << " " << e.format(f) << "\\l";
        for (auto h : b.omega[i]) os << i + 1 << "->* " << format_omega(e.automaton(), h) << "\\l";
    }
    std::string s = os.str();
    return s.empty() ? "(empty)" : s;
}

}  // namespace

std::string refined_dot(const Engine& e, const Grammar& g, const Refined& r) {
    std::ostringstream os;
    os << "digraph refined {\n  rankdir=BT;\n  node [fontname=\"monospace\", fontsize=9];\n";
    for (int i = 0; i < static_cast<int>(r.nts.size()); ++i) {
        const auto& a = r.nts[i];
        os << "  n" << i << " [shape=box, style=filled, fillcolor=pink, label=\"" << escape(annotated_name(r, i))
           << "\\nC: " << class_label(e, a.ctx) << "\\nS: " << class_label(e, a.lang) << "\"];\n";
    }
    for (std::size_t k = 0; k < r.rules.size(); ++k) {
        const auto& ar = r.rules[k];
        os << "  r" << k << " [shape=box, style=filled, fillcolor=lightyellow, label=\""
           << escape(g.rules[ar.rule].name) << "\"];\n";
        os << "  r" << k << " -> n" << ar.lhs << ";\n";
        for (int c : ar.children) os << "  n" << c << " -> r" << k << ";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace hrmc
