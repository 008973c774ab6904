// hrmc: model checking of hyperedge replacement grammars.
// Exit codes: 0 verdict true / success, 1 verdict false / mismatches, 2 usage or input error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hrmc/decide.hpp"
#include "hrmc/error.hpp"
#include "hrmc/io.hpp"
#include "hrmc/oracle.hpp"
#include "hrmc/recolor.hpp"
#include "hrmc/refine.hpp"

using namespace hrmc;
using nlohmann::ordered_json;

namespace {

Grammar load_valid(const std::string& path) {
    Grammar g = load_grammar(path);
    const auto problems = validate(g);
    if (!problems.empty()) throw Error(Errc::invalid_grammar, path + ": " + problems.front());
    return g;
}

FormulaPtr formula_for(const Grammar& g, const std::string& text) { return parse_formula(text, g.colors); }

ordered_json count_json(const Count& c) {
    if (c.kind == Count::Infinite) return "INF";
    if (c.kind == Count::Zero) return 0;
    if (c.capped) return ">" + std::to_string(c.n);
    return c.n;
}

std::string witness_text(const Grammar& base, const Grammar& rec, const std::optional<DerivationTree>& t) {
    if (!t) return "";
    return to_base(base, rec, *t).str(base);
}

struct CheckArgs {
    std::string grammar, formula, mode = "all", init = "init";
    bool json = false, witness = false;
};

int cmd_check(const CheckArgs& a) {
    const Grammar g = load_valid(a.grammar);
    const FormulaPtr phi = formula_for(g, a.formula);
    const Recolored rc = recolor_ctlstar(g, phi);
    const Verdict v = classify(rc.grammar, a.init, rc.color);

    bool verdict = true;
    if (a.mode == "all") verdict = v.holds_for_all();
    else if (a.mode == "some") verdict = v.exists_member();

    if (a.json) {
        ordered_json j;
        j["formula"] = to_string(phi);
        j["mode"] = a.mode;
        j["sat"] = count_json(v.sat);
        j["fal"] = count_json(v.fal);
        if (a.mode != "count") j["verdict"] = verdict;
        else j["finitely_many_violations"] = v.finitely_many_violations();
        if (a.witness) {
            j["sat_witness"] = witness_text(g, rc.grammar, v.sat_witness);
            j["fal_witness"] = witness_text(g, rc.grammar, v.fal_witness);
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << v.str() << "\n";
        if (a.mode == "all") std::cout << "all members satisfy: " << (verdict ? "yes" : "no") << "\n";
        else if (a.mode == "some") std::cout << "some member satisfies: " << (verdict ? "yes" : "no") << "\n";
        else
            std::cout << "violations: " << (v.fal.kind == Count::Zero ? "none" : v.finitely_many_violations() ? "finitely many" : "infinitely many")
                      << "\n";
        if (a.witness) {
            if (v.sat_witness) std::cout << "satisfying member: " << witness_text(g, rc.grammar, v.sat_witness) << "\n";
            if (v.fal_witness) std::cout << "violating member: " << witness_text(g, rc.grammar, v.fal_witness) << "\n";
        }
    }
    return a.mode == "count" || verdict ? 0 : 1;
}

void print_stages(std::ostream& os, const std::vector<RecolorStats>& stages) {
    for (const auto& s : stages) {
        os << s.color << " := A(" << s.formula << ")\n"
           << "  automaton states " << s.automaton_states << ", classes " << s.classes << ", pass-1 rules "
           << s.pass1_rules << "\n"
           << "  refined: " << s.refined_nonterminals << " nonterminals, " << s.refined_rules << " rules\n"
           << "  minimized: " << s.minimized_nonterminals << " nonterminals, " << s.minimized_rules << " rules\n";
    }
}

int cmd_recolor(const std::string& path, const std::string& formula, const std::string& out, bool no_min,
                const std::string& dot) {
    const Grammar g = load_valid(path);
    const Recolored rc = recolor_ctlstar(g, formula_for(g, formula), {!no_min});
    print_stages(std::cout, rc.stages);
    std::cout << "formula color " << rc.color << "; result: " << rc.grammar.nonterminals.size() << " nonterminals, "
              << rc.grammar.rules.size() << " rules\n";
    if (!out.empty()) save_text(out, to_text(rc.grammar));
    if (!dot.empty()) save_text(dot, grammar_dot(rc.grammar));
    return 0;
}

int cmd_oracle(const std::string& path, const std::string& formula, const DiffOptions& opts, bool json) {
    const Grammar g = load_valid(path);
    const DiffReport r = differential(g, formula_for(g, formula), opts);
    if (json) {
        ordered_json j;
        j["members"] = r.members;
        j["nodes"] = r.nodes;
        j["mismatches"] = r.mismatches;
        j["capped"] = r.capped;
        j["structure_ok"] = r.structure_ok;
        j["first"] = r.first;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << r.str() << "\n";
    }
    return r.ok() ? 0 : 1;
}

int cmd_dump(const std::string& path, const std::string& what, const std::string& formula) {
    const Grammar g = load_valid(path);
    if (what == "grammar") {
        std::cout << grammar_dot(g);
        return 0;
    }
    if (formula.empty()) throw CLI::ValidationError("--formula", "required for --dot " + what);
    FormulaPtr psi = formula_for(g, formula);
    if (psi->op == Op::ForAll) psi = psi->lhs;
    if (has_path_quantifier(psi) || has_probabilistic(psi))
        throw Error(Errc::syntax, "dump needs an LTL formula (optionally under a single A)");
    Engine e(ltl_to_buchi(psi));
    if (what == "refined") {
        std::cout << refined_dot(e, g, refine(e, g));
        return 0;
    }
    const Pass1 p1 = annotate1(e, g);
    for (const auto& [nt, classes] : p1.classes)
        for (std::size_t k = 0; k < classes.size(); ++k)
            std::cout << behaviour_dot(e, e.cls(classes[k]), nt + " class " + std::to_string(k));
    return 0;
}

// Rows file: one `grammar.hrg: formula` per line, paths relative to the file.
int cmd_bench(const std::string& rows_path) {
    std::ifstream in(rows_path);
    if (!in) throw Error(Errc::io, "cannot read " + rows_path);
    const auto dir = std::filesystem::path(rows_path).parent_path();
    std::cout << std::left << std::setw(16) << "grammar" << std::setw(48) << "formula" << std::right << std::setw(8)
              << "time" << std::setw(6) << "sat" << std::setw(6) << "fal" << std::setw(7) << "R.#N" << std::setw(7)
              << "R.#P" << std::setw(7) << "M.#N" << std::setw(7) << "M.#P" << "\n";
    std::map<std::string, Grammar> cache;
    for (std::string line; std::getline(in, line);) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const auto colon = line.find(':');
        if (colon == std::string::npos) continue;
        std::string file = line.substr(0, colon), text = line.substr(colon + 1);
        file.erase(0, file.find_first_not_of(" \t"));
        file.erase(file.find_last_not_of(" \t") + 1);
        text.erase(0, text.find_first_not_of(" \t"));
        if (!cache.count(file)) cache[file] = load_valid((dir / file).string());
        const Grammar& g = cache[file];
        const auto t0 = std::chrono::steady_clock::now();
        const Recolored rc = recolor_ctlstar(g, formula_for(g, text));
        const Verdict v = classify(rc.grammar, "init", rc.color);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::size_t rn = 0, rp = 0;
        for (const auto& s : rc.stages) rn = std::max(rn, s.refined_nonterminals), rp = std::max(rp, s.refined_rules);
        std::ostringstream ts;
        ts << std::fixed << std::setprecision(2) << secs;
        std::cout << std::left << std::setw(16) << file << std::setw(48) << text << std::right << std::setw(8) << ts.str()
                  << std::setw(6) << v.sat.str() << std::setw(6) << v.fal.str() << std::setw(7) << rn << std::setw(7) << rp
                  << std::setw(7) << rc.grammar.nonterminals.size() << std::setw(7) << rc.grammar.rules.size() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Model checking for hyperedge replacement grammars"};
    app.require_subcommand(1);

    CheckArgs ca;
    auto* check = app.add_subcommand("check", "decide whether all, some or finitely many members violate a formula");
    check->add_option("grammar", ca.grammar, "grammar file (.hrg text or JSON)")->required();
    check->add_option("-f,--formula", ca.formula, "CTL*/qPCTL state formula")->required();
    check->add_option("-m,--mode", ca.mode, "all | some | count")->check(CLI::IsMember({"all", "some", "count"}));
    check->add_option("--init", ca.init, "color marking the nodes to check");
    check->add_flag("--json", ca.json, "structured output");
    check->add_flag("--witness", ca.witness, "print shortest satisfying / violating derivation trees");

    std::string rc_grammar, rc_formula, rc_out, rc_dot;
    bool rc_nomin = false;
    auto* recolor = app.add_subcommand("recolor", "recolor a grammar and report the stage sizes");
    recolor->add_option("grammar", rc_grammar)->required();
    recolor->add_option("-f,--formula", rc_formula)->required();
    recolor->add_option("-o,--out", rc_out, "write the recolored grammar");
    recolor->add_option("--dot", rc_dot, "write the recolored grammar as DOT");
    recolor->add_flag("--no-minimize", rc_nomin);

    std::string or_grammar, or_formula;
    DiffOptions opts;
    bool or_json = false;
    auto* oracle = app.add_subcommand("oracle", "compare the recolored grammar with explicit-state checking");
    oracle->add_option("grammar", or_grammar)->required();
    oracle->add_option("-f,--formula", or_formula)->required();
    oracle->add_option("-d,--depth", opts.depth, "maximum derivation tree height");
    oracle->add_option("--cap", opts.cap, "maximum members checked");
    oracle->add_option("-j,--jobs", opts.jobs, "worker threads");
    oracle->add_flag("--json", or_json);

    std::string du_grammar, du_what = "grammar", du_formula;
    auto* dump = app.add_subcommand("dump", "DOT export");
    dump->add_option("grammar", du_grammar)->required();
    dump->add_option("--dot", du_what, "grammar | behaviours | refined")
        ->check(CLI::IsMember({"grammar", "behaviours", "refined"}));
    dump->add_option("-f,--formula", du_formula, "LTL formula for behaviours/refined");

    std::string rows = "benchmarks/rows.txt";
    auto* bench = app.add_subcommand("bench", "run a table of grammar/formula rows");
    bench->add_option("rows", rows, "rows file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        if (*check) return cmd_check(ca);
        if (*recolor) return cmd_recolor(rc_grammar, rc_formula, rc_out, rc_nomin, rc_dot);
        if (*oracle) return cmd_oracle(or_grammar, or_formula, opts, or_json);
        if (*dump) return cmd_dump(du_grammar, du_what, du_formula);
        if (*bench) return cmd_bench(rows);
    } catch (const CLI::Error& e) {
        std::cerr << "hrmc: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "hrmc: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
