#include <algorithm>
#include <cctype>
#include <functional>

#include "hrmc/error.hpp"
#include "hrmc/logic.hpp"

namespace hrmc {

namespace fml {
namespace {
FormulaPtr mk(Op op, FormulaPtr a = nullptr, FormulaPtr b = nullptr) {
    return std::make_shared<const Formula>(Formula{op, {}, std::move(a), std::move(b)});
}
}  // namespace
FormulaPtr tt() { return mk(Op::True); }
FormulaPtr ff() { return mk(Op::False); }
FormulaPtr atom(std::string name) { return std::make_shared<const Formula>(Formula{Op::Atom, std::move(name), {}, {}}); }
FormulaPtr neg(FormulaPtr a) { return mk(Op::Not, std::move(a)); }
FormulaPtr conj(FormulaPtr a, FormulaPtr b) { return mk(Op::And, std::move(a), std::move(b)); }
FormulaPtr disj(FormulaPtr a, FormulaPtr b) { return mk(Op::Or, std::move(a), std::move(b)); }
FormulaPtr implies(FormulaPtr a, FormulaPtr b) { return mk(Op::Implies, std::move(a), std::move(b)); }
FormulaPtr next(FormulaPtr a) { return mk(Op::Next, std::move(a)); }
FormulaPtr eventually(FormulaPtr a) { return mk(Op::Finally, std::move(a)); }
FormulaPtr always(FormulaPtr a) { return mk(Op::Globally, std::move(a)); }
FormulaPtr until(FormulaPtr a, FormulaPtr b) { return mk(Op::Until, std::move(a), std::move(b)); }
FormulaPtr release(FormulaPtr a, FormulaPtr b) { return mk(Op::Release, std::move(a), std::move(b)); }
FormulaPtr forall(FormulaPtr a) { return mk(Op::ForAll, std::move(a)); }
FormulaPtr exists(FormulaPtr a) { return mk(Op::Exists, std::move(a)); }
FormulaPtr prob_pos(FormulaPtr a) { return mk(Op::ProbPos, std::move(a)); }
FormulaPtr prob_one(FormulaPtr a) { return mk(Op::ProbOne, std::move(a)); }
}  // namespace fml

namespace {

const char* binary_symbol(Op op) {
    switch (op) {
        case Op::And: return " & ";
        case Op::Or: return " | ";
        case Op::Implies: return " -> ";
        case Op::Until: return " U ";
        case Op::Release: return " R ";
        default: return "?";
    }
}

}  // namespace

std::string to_string(const FormulaPtr& f) {
    switch (f->op) {
        case Op::True: return "true";
        case Op::False: return "false";
        case Op::Atom: return f->atom;
        case Op::Not: return "!" + to_string(f->lhs);
        case Op::Next: return "X " + to_string(f->lhs);
        case Op::Finally: return "F " + to_string(f->lhs);
        case Op::Globally: return "G " + to_string(f->lhs);
        case Op::ForAll: return "A " + to_string(f->lhs);
        case Op::Exists: return "E " + to_string(f->lhs);
        case Op::ProbPos: return "P>0[" + to_string(f->lhs) + "]";
        case Op::ProbOne: return "P=1[" + to_string(f->lhs) + "]";
        default: break;
    }
    return "(" + to_string(f->lhs) + binary_symbol(f->op) + to_string(f->rhs) + ")";
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->op != b->op || a->atom != b->atom) return false;
    return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
}

bool is_state_formula(const FormulaPtr& f) {
    switch (f->op) {
        case Op::True: case Op::False: case Op::Atom:
        case Op::ForAll: case Op::Exists: case Op::ProbPos: case Op::ProbOne:
            return true;
        case Op::Not: return is_state_formula(f->lhs);
        case Op::And: case Op::Or: case Op::Implies:
            return is_state_formula(f->lhs) && is_state_formula(f->rhs);
        default: return false;
    }
}

bool has_path_quantifier(const FormulaPtr& f) {
    if (!f) return false;
    if (f->op == Op::ForAll || f->op == Op::Exists || f->op == Op::ProbPos || f->op == Op::ProbOne) return true;
    return has_path_quantifier(f->lhs) || has_path_quantifier(f->rhs);
}

bool has_probabilistic(const FormulaPtr& f) {
    if (!f) return false;
    if (f->op == Op::ProbPos || f->op == Op::ProbOne) return true;
    return has_probabilistic(f->lhs) || has_probabilistic(f->rhs);
}

std::set<std::string> atoms_of(const FormulaPtr& f) {
    std::set<std::string> out;
    std::function<void(const FormulaPtr&)> go = [&](const FormulaPtr& g) {
        if (!g) return;
        if (g->op == Op::Atom) out.insert(g->atom);
        go(g->lhs);
        go(g->rhs);
    };
    go(f);
    return out;
}

// ---------------------------------------------------------------- parser

namespace {

struct Token {
    enum Kind { Ident, Sym, Prob, End } kind;
    std::string text;
    std::size_t pos;
};

class Parser {
public:
    Parser(const std::string& s, const std::vector<std::string>& universe) : src_(s), universe_(universe) {
        lex();
    }

    FormulaPtr parse() {
        auto f = implication();
        if (peek().kind != Token::End) fail("unexpected '" + peek().text + "'");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& msg, std::size_t pos = std::string::npos) const {
        if (pos == std::string::npos) pos = peek().pos;
        throw Error(Errc::syntax, "column " + std::to_string(pos + 1) + ": " + msg);
    }

    void lex() {
        std::size_t i = 0;
        while (i < src_.size()) {
            char c = src_[i];
            if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '@') {
                std::size_t j = i;
                while (j < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_' ||
                                           src_[j] == '@' || src_[j] == '#' || src_[j] == '.'))
                    ++j;
                std::string word = src_.substr(i, j - i);
                if (word == "P" && j < src_.size() && (src_[j] == '>' || src_[j] == '<' || src_[j] == '=')) {
                    std::size_t k = j;
                    while (k < src_.size() && src_[k] != '[') ++k;
                    if (k == src_.size()) fail("probability operator without '['", i);
                    std::string bound = src_.substr(j, k - j);
                    bound.erase(std::remove_if(bound.begin(), bound.end(),
                                               [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); }),
                                bound.end());
                    toks_.push_back({Token::Prob, bound, i});
                    i = k;
                    continue;
                }
                toks_.push_back({Token::Ident, word, i});
                i = j;
                continue;
            }
            if (src_.compare(i, 2, "->") == 0) { toks_.push_back({Token::Sym, "->", i}); i += 2; continue; }
            if (src_.compare(i, 2, "&&") == 0) { toks_.push_back({Token::Sym, "&", i}); i += 2; continue; }
            if (src_.compare(i, 2, "||") == 0) { toks_.push_back({Token::Sym, "|", i}); i += 2; continue; }
            if (std::string("!&|()[]~").find(c) != std::string::npos) {
                toks_.push_back({Token::Sym, std::string(1, c == '~' ? '!' : c), i});
                ++i;
                continue;
            }
            fail(std::string("unexpected character '") + c + "'", i);
        }
        toks_.push_back({Token::End, "end of input", src_.size()});
    }

    const Token& peek() const { return toks_[at_]; }
    Token take() { return toks_[at_++]; }
    bool sym(const char* s) {
        if (peek().kind == Token::Sym && peek().text == s) return ++at_, true;
        return false;
    }
    bool keyword(const char* s) const { return peek().kind == Token::Ident && peek().text == s; }
    void expect(const char* s) {
        if (!sym(s)) fail(std::string("expected '") + s + "'");
    }

    FormulaPtr implication() {
        auto l = disjunction();
        if (sym("->")) return fml::implies(l, implication());
        return l;
    }
    FormulaPtr disjunction() {
        auto l = conjunction();
        while (sym("|")) l = fml::disj(l, conjunction());
        return l;
    }
    FormulaPtr conjunction() {
        auto l = binary_temporal();
        while (sym("&")) l = fml::conj(l, binary_temporal());
        return l;
    }
    FormulaPtr binary_temporal() {
        auto l = unary();
        if (keyword("U")) { take(); return fml::until(l, binary_temporal()); }
        if (keyword("R")) { take(); return fml::release(l, binary_temporal()); }
        return l;
    }
    FormulaPtr unary() {
        if (sym("!")) return fml::neg(unary());
        if (peek().kind == Token::Prob) {
            Token t = take();
            expect("[");
            auto body = implication();
            expect("]");
            if (t.text == ">0") return fml::prob_pos(body);
            if (t.text == "=1" || t.text == ">=1") return fml::prob_one(body);
            throw Error(Errc::unsupported_bound, "probability bound '" + t.text + "' at column " +
                                                     std::to_string(t.pos + 1) + " (only >0 and =1)");
        }
        if (peek().kind == Token::Ident) {
            const std::string& w = peek().text;
            if (w == "X") { take(); return fml::next(unary()); }
            if (w == "F") { take(); return fml::eventually(unary()); }
            if (w == "G") { take(); return fml::always(unary()); }
            if (w == "A") { take(); return fml::forall(unary()); }
            if (w == "E") { take(); return fml::exists(unary()); }
        }
        return primary();
    }
    FormulaPtr primary() {
        if (sym("(")) {
            auto f = implication();
            expect(")");
            return f;
        }
        if (peek().kind != Token::Ident) fail("expected a formula, found '" + peek().text + "'");
        Token t = take();
        if (t.text == "U" || t.text == "R") fail("binary operator '" + t.text + "' without left operand", t.pos);
        if (t.text == "true") return fml::tt();
        if (t.text == "false") return fml::ff();
        if (!universe_.empty() && std::find(universe_.begin(), universe_.end(), t.text) == universe_.end())
            throw Error(Errc::undeclared_atom, "'" + t.text + "' at column " + std::to_string(t.pos + 1));
        return fml::atom(t.text);
    }

    const std::string& src_;
    const std::vector<std::string>& universe_;
    std::vector<Token> toks_;
    std::size_t at_ = 0;
};

}  // namespace

FormulaPtr parse_formula(const std::string& text, const std::vector<std::string>& universe) {
    return Parser(text, universe).parse();
}

// ---------------------------------------------------------------- rewriting

FormulaPtr simplify_negations(const FormulaPtr& f) {
    if (!f) return f;
    if (f->op == Op::Not && f->lhs->op == Op::Not) return simplify_negations(f->lhs->lhs);
    auto l = simplify_negations(f->lhs);
    auto r = simplify_negations(f->rhs);
    if (l == f->lhs && r == f->rhs) return f;
    return std::make_shared<const Formula>(Formula{f->op, f->atom, l, r});
}

FormulaPtr qpctl_to_ctlstar(const FormulaPtr& f) {
    using namespace fml;
    if (!f) return f;
    if (f->op != Op::ProbPos && f->op != Op::ProbOne) {
        auto l = qpctl_to_ctlstar(f->lhs);
        auto r = qpctl_to_ctlstar(f->rhs);
        if (l == f->lhs && r == f->rhs) return f;
        return std::make_shared<const Formula>(Formula{f->op, f->atom, l, r});
    }
    const FormulaPtr& path = f->lhs;
    const bool pos = f->op == Op::ProbPos;
    auto state_arg = [&](const FormulaPtr& g) {
        if (!is_state_formula(g))
            throw Error(Errc::syntax, "probabilistic operator argument must be a state formula: " + to_string(g));
        return qpctl_to_ctlstar(g);
    };
    switch (path->op) {
        case Op::Next: {
            auto a = state_arg(path->lhs);
            return pos ? exists(next(a)) : forall(next(a));
        }
        case Op::Finally: {
            auto a = state_arg(path->lhs);
            if (pos) return exists(eventually(a));
            // almost surely reached unless some path can get stuck where a is unreachable
            return neg(exists(until(neg(a), forall(always(neg(a))))));
        }
        case Op::Globally: {
            auto a = state_arg(path->lhs);
            if (!pos) return forall(always(a));
            // positive iff a bottom region satisfying a everywhere is reachable through a
            return exists(until(a, forall(always(a))));
        }
        case Op::Until: {
            auto a = state_arg(path->lhs);
            auto b = state_arg(path->rhs);
            if (pos) return exists(until(a, b));
            auto stay = conj(a, neg(b));
            return conj(neg(exists(until(stay, conj(neg(a), neg(b))))),
                        neg(exists(until(stay, forall(always(stay))))));
        }
        default:
            throw Error(Errc::syntax, "unsupported probabilistic path formula: " + to_string(path));
    }
}

FormulaPtr to_nnf(const FormulaPtr& f) {
    using namespace fml;
    std::function<FormulaPtr(const FormulaPtr&, bool)> go = [&](const FormulaPtr& g, bool n) -> FormulaPtr {
        switch (g->op) {
            case Op::True: return n ? ff() : tt();
            case Op::False: return n ? tt() : ff();
            case Op::Atom: return n ? neg(g) : g;
            case Op::Not: return go(g->lhs, !n);
            case Op::And: return n ? disj(go(g->lhs, true), go(g->rhs, true)) : conj(go(g->lhs, false), go(g->rhs, false));
            case Op::Or: return n ? conj(go(g->lhs, true), go(g->rhs, true)) : disj(go(g->lhs, false), go(g->rhs, false));
            case Op::Implies: return n ? conj(go(g->lhs, false), go(g->rhs, true)) : disj(go(g->lhs, true), go(g->rhs, false));
            case Op::Next: return next(go(g->lhs, n));
            case Op::Finally: return n ? release(ff(), go(g->lhs, true)) : until(tt(), go(g->lhs, false));
            case Op::Globally: return n ? until(tt(), go(g->lhs, true)) : release(ff(), go(g->lhs, false));
            case Op::Until: return n ? release(go(g->lhs, true), go(g->rhs, true)) : until(go(g->lhs, false), go(g->rhs, false));
            case Op::Release: return n ? until(go(g->lhs, true), go(g->rhs, true)) : release(go(g->lhs, false), go(g->rhs, false));
            default:
                throw Error(Errc::syntax, "path quantifier inside an LTL formula: " + to_string(g));
        }
    };
    return go(f, false);
}

}  // namespace hrmc
