#include "hrmc/recolor.hpp"

#include <algorithm>
#include <functional>

#include "hrmc/behaviour.hpp"
#include "hrmc/error.hpp"
#include "hrmc/minimize.hpp"
#include "hrmc/refine.hpp"

namespace hrmc {

Grammar recolor_buchi(const Grammar& input, const BuchiAutomaton& m, const std::string& color, RecolorStats* stats) {
    for (const auto& a : m.atoms)
        if (!input.has_color(a)) throw Error(Errc::unknown_color, "automaton reads undeclared color " + a);
    Grammar g = input;
    for (int r = 0; r < static_cast<int>(g.rules.size()); ++r)
        if (g.rules[r].origin < 0) g.rules[r].origin = r;

    Engine e(m);
    Pass1 p1 = annotate1(e, g);
    Refined ref = annotate2(e, g, p1);
    Grammar out = to_grammar(g, ref);
    out.declare_color(color);
    for (std::size_t k = 0; k < ref.rules.size(); ++k) {
        const auto& ar = ref.rules[k];
        std::vector<int> langs;
        for (int c : ar.children) langs.push_back(ref.nts[c].lang);
        const MBehaviour b = plug(e, g.rules[ar.rule].body, langs, ref.nts[ar.lhs].ctx);
        Hypergraph& body = out.rules[k].body;
        for (int v = 0; v < body.node_count(); ++v)
            if (satisfies(e, b, v)) body.add_color(v, color);
    }
    if (stats) {
        stats->color = color;
        stats->automaton_states = m.states;
        stats->classes = e.class_count();
        stats->pass1_rules = p1.rules.size();
        stats->refined_nonterminals = ref.nts.size();
        stats->refined_rules = ref.rules.size();
        stats->minimized_nonterminals = out.nonterminals.size();
        stats->minimized_rules = out.rules.size();
    }
    return out;
}

Grammar recolor_ltl(const Grammar& g, const FormulaPtr& psi, const std::string& color, RecolorStats* stats) {
    if (stats) stats->formula = to_string(psi);
    return recolor_buchi(g, ltl_to_buchi(psi), color, stats);
}

std::string fresh_color(const Grammar& g) {
    for (int n = 1;; ++n) {
        std::string c = "@phi" + std::to_string(n);
        if (!g.has_color(c)) return c;
    }
}

Grammar delete_color(const Grammar& g, const std::string& color) {
    bool registered = std::any_of(g.registry.begin(), g.registry.end(), [&](const auto& p) { return p.first == color; });
    if (!g.has_color(color) && !registered) throw Error(Errc::unknown_color, color);
    Grammar out = g;
    std::erase(out.colors, color);
    std::erase_if(out.registry, [&](const auto& p) { return p.first == color; });
    for (auto& r : out.rules)
        for (int v = 0; v < r.body.node_count(); ++v) r.body.remove_color(v, color);
    return out;
}

namespace {

class CtlRecolorer {
public:
    CtlRecolorer(Grammar g, RecolorOptions opts) : g_(std::move(g)), opts_(opts) {}

    std::string color_of(const FormulaPtr& f) {
        switch (f->op) {
            case Op::Atom:
                if (!g_.has_color(f->atom)) throw Error(Errc::unknown_color, f->atom);
                return f->atom;
            case Op::True:
            case Op::False:
                return local(f, [&](bool) { return f->op == Op::True; });
            case Op::Not: {
                auto a = color_of(f->lhs);
                return local(f, [&, a](bool) { return !has_(a); });
            }
            case Op::And:
            case Op::Or:
            case Op::Implies: {
                auto a = color_of(f->lhs);
                auto b = color_of(f->rhs);
                return local(f, [&, a, b](bool) {
                    const bool x = has_(a), y = has_(b);
                    return f->op == Op::And ? (x && y) : f->op == Op::Or ? (x || y) : (!x || y);
                });
            }
            case Op::Exists:
                return color_of(fml::neg(fml::forall(fml::neg(f->lhs))));
            case Op::ForAll:
                return universal(f);
            case Op::ProbPos:
            case Op::ProbOne:
                return color_of(qpctl_to_ctlstar(f));
            default:
                return universal(fml::forall(f));
        }
    }

    Grammar& grammar() { return g_; }
    std::vector<RecolorStats>& stages() { return stages_; }

private:
    // Pointwise color from other colors of the same node.
    template <class Pred>
    std::string local(const FormulaPtr& f, Pred pred) {
        const std::string c = fresh_color(g_);
        for (auto& r : g_.rules)
            for (int v = 0; v < r.body.node_count(); ++v) {
                body_ = &r.body;
                node_ = v;
                if (pred(true)) r.body.add_color(v, c);
            }
        g_.declare_color(c);
        g_.registry.emplace_back(c, to_string(f));
        return c;
    }

    bool has_(const std::string& c) const { return body_->has_color(node_, c); }

    // Maximal state subformulas under a path quantifier become atoms.
    FormulaPtr abstract_states(const FormulaPtr& f) {
        if (f->op == Op::Atom || f->op == Op::True || f->op == Op::False) return f;
        if (is_state_formula(f) && (has_path_quantifier(f) || has_probabilistic(f)))
            return fml::atom(color_of(f));
        auto out = std::make_shared<Formula>(*f);
        if (f->lhs) out->lhs = abstract_states(f->lhs);
        if (f->rhs) out->rhs = abstract_states(f->rhs);
        return out;
    }

    std::string universal(const FormulaPtr& f) {
        const FormulaPtr psi = abstract_states(f->lhs);
        const std::string c = fresh_color(g_);
        RecolorStats st;
        st.formula = to_string(f);
        g_ = recolor_ltl(g_, psi, c, &st);
        g_.registry.emplace_back(c, to_string(f));
        if (opts_.minimize) g_ = minimize(g_);
        st.minimized_nonterminals = g_.nonterminals.size();
        st.minimized_rules = g_.rules.size();
        stages_.push_back(st);
        return c;
    }

    Grammar g_;
    RecolorOptions opts_;
    std::vector<RecolorStats> stages_;
    const Hypergraph* body_ = nullptr;
    int node_ = 0;
};

}  // namespace

Recolored recolor_ctlstar(const Grammar& g, const FormulaPtr& phi, RecolorOptions opts) {
    FormulaPtr f = simplify_negations(qpctl_to_ctlstar(phi));
    CtlRecolorer rc(g, opts);
    std::string c = rc.color_of(f);
    return {std::move(rc.grammar()), c, std::move(rc.stages())};
}

}  // namespace hrmc
