#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>

#include "hrmc/decide.hpp"
#include "hrmc/error.hpp"
#include "hrmc/io.hpp"
#include "hrmc/oracle.hpp"
#include "hrmc/recolor.hpp"

namespace py = pybind11;
using namespace hrmc;

namespace {

// 0 / n for finite counts, inf when infinitely many
py::object count(const Count& c) {
    if (c.kind == Count::Infinite) return py::float_(std::numeric_limits<double>::infinity());
    return py::int_(c.n);
}

py::object witness(const Grammar& base, const Grammar& rec, const std::optional<DerivationTree>& t) {
    if (!t) return py::none();
    return py::str(to_base(base, rec, *t).str(base));
}

FormulaPtr formula(const Grammar& g, const std::string& text) { return parse_formula(text, g.colors); }

}  // namespace

PYBIND11_MODULE(_hrmc, m) {
    m.doc() = "Model checking of graph families given by hyperedge replacement grammars";

    static py::exception<Error> error(m, "Error", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(error, e.what());
        }
    });

    py::class_<Grammar>(m, "Grammar")
        .def_static("load", &load_grammar, py::arg("path"))
        .def_static("parse", [](const std::string& text) { return parse_grammar(text); }, py::arg("text"))
        .def_static("from_json", &parse_grammar_json, py::arg("text"))
        .def("to_text", [](const Grammar& g) { return to_text(g); })
        .def("to_json", [](const Grammar& g) { return to_json_text(g); })
        .def("validate", &validate)
        .def_readonly("colors", &Grammar::colors)
        .def_readonly("start", &Grammar::start)
        .def_readonly("nonterminals", &Grammar::nonterminals)
        .def_property_readonly("rule_count", [](const Grammar& g) { return g.rules.size(); })
        .def("__eq__", [](const Grammar& a, const Grammar& b) { return a == b; })
        .def("__repr__", [](const Grammar& g) {
            return "<Grammar " + std::to_string(g.nonterminals.size()) + " nonterminals, " +
                   std::to_string(g.rules.size()) + " rules>";
        });

    m.def(
        "check",
        [](const Grammar& g, const std::string& text, const std::string& init) {
            const Recolored rc = recolor_ctlstar(g, formula(g, text));
            const Verdict v = classify(rc.grammar, init, rc.color);
            py::dict d;
            d["sat"] = count(v.sat);
            d["fal"] = count(v.fal);
            d["holds_for_all"] = v.holds_for_all();
            d["exists"] = v.exists_member();
            d["sat_witness"] = witness(g, rc.grammar, v.sat_witness);
            d["fal_witness"] = witness(g, rc.grammar, v.fal_witness);
            return d;
        },
        py::arg("grammar"), py::arg("formula"), py::arg("init") = "init",
        "How many members satisfy and falsify the formula at init-colored nodes.");

    m.def(
        "recolor",
        [](const Grammar& g, const std::string& text, bool minimize) {
            Recolored rc = recolor_ctlstar(g, formula(g, text), {minimize});
            return py::make_tuple(std::move(rc.grammar), rc.color);
        },
        py::arg("grammar"), py::arg("formula"), py::arg("minimize") = true,
        "The recolored grammar and the color that marks nodes satisfying the formula.");

    m.def(
        "differential",
        [](const Grammar& g, const std::string& text, int depth) {
            const DiffReport r = differential(g, formula(g, text), DiffOptions{depth, 10000, 1});
            py::dict d;
            d["ok"] = r.ok();
            d["members"] = r.members;
            d["nodes"] = r.nodes;
            d["mismatches"] = r.mismatches;
            d["report"] = r.str();
            return d;
        },
        py::arg("grammar"), py::arg("formula"), py::arg("depth") = 5,
        "Compare the recoloring with explicit-state checking of every member up to the depth.");
}
