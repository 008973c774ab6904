#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "hrmc/hypergraph.hpp"
#include "hrmc/logic.hpp"

namespace hrmc {

// Set of (p, q, b) triples, stored as two successor masks per state:
// rows[2p] holds q with (p,q,F), rows[2p+1] holds q with (p,q,T).
struct StepSummary {
    std::vector<std::uint64_t> rows;

    int states() const { return static_cast<int>(rows.size() / 2); }
    bool has(int p, int q, bool b) const { return (rows[2 * p + b] >> q) & 1; }
    void add(int p, int q, bool b) { rows[2 * p + b] |= std::uint64_t{1} << q; }
    bool empty() const;
    std::set<std::tuple<int, int, bool>> triples() const;
    auto operator<=>(const StepSummary&) const = default;
};

using OmegaSummary = std::uint64_t;  // state mask

StepSummary empty_summary(int states);
StepSummary identity_summary(int states);
StepSummary step_summary(const BuchiAutomaton& m, Letter a);
StepSummary step_summary(const BuchiAutomaton& m, const ColorSet& letter);
StepSummary compose(const StepSummary& f, const StepSummary& g);
StepSummary clos(const StepSummary& f);
OmegaSummary omega_extend(const StepSummary& f, OmegaSummary h);
// States accepting the infinite repetition of a loop with summary g.
OmegaSummary loop_omega(const StepSummary& g);

std::string format_summary(const BuchiAutomaton& m, const StepSummary& s);
std::string format_omega(const BuchiAutomaton& m, OmegaSummary h);

// Canonical form of an M-equivalence class over pinned interface positions.
// fin[i*k+j]: summaries of traces from position i to j; omega[i]: infinite traces from i.
// Concrete positions contribute their own letter (and the zero-length trace);
// abstract positions only see the letters strictly between them.
struct InterfaceBehaviour {
    std::vector<bool> concrete;
    std::vector<std::vector<int>> fin;      // sorted summary ids
    std::vector<std::vector<OmegaSummary>> omega;  // sorted

    int size() const { return static_cast<int>(concrete.size()); }
    const std::vector<int>& between(int i, int j) const { return fin[i * size() + j]; }
    auto operator<=>(const InterfaceBehaviour&) const = default;
};

// Owns the automaton plus intern tables for summaries and classes, so ids
// handed out by one engine are directly comparable.
class Engine {
public:
    explicit Engine(BuchiAutomaton m);

    const BuchiAutomaton& automaton() const { return m_; }
    int states() const { return m_.states; }

    int intern(const StepSummary& s);
    const StepSummary& summary(int id) const { return summaries_[id]; }
    std::size_t summary_count() const { return summaries_.size(); }

    int identity() const { return identity_; }
    int step(Letter a);
    int step(const ColorSet& colors) { return step(m_.letter_of(colors)); }
    int compose(int a, int b);
    bool idempotent(int e) { return compose(e, e) == e; }
    OmegaSummary extend(int s, OmegaSummary h);
    // for idempotent e: {p | (p,q,·) ∈ e and (q,q,T) ∈ e}
    OmegaSummary repeat(int e);
    bool accepting(OmegaSummary h) const { return (h & m_.initial) != 0; }

    int intern_class(const InterfaceBehaviour& b);
    const InterfaceBehaviour& cls(int id) const { return classes_[id]; }
    std::size_t class_count() const { return classes_.size(); }
    // the unique class of a 0-ary interface
    int empty_class() { return intern_class({}); }

    std::string format(int summary_id) const { return format_summary(m_, summaries_[summary_id]); }

private:
    BuchiAutomaton m_;
    std::vector<StepSummary> summaries_;
    std::map<std::vector<std::uint64_t>, int> summary_ids_;
    std::vector<int> steps_;
    std::unordered_map<std::uint64_t, int> compose_memo_;
    std::vector<InterfaceBehaviour> classes_;
    std::map<InterfaceBehaviour, int> class_ids_;
    int identity_ = 0;
};

// Junction graph whose edges carry summary ids. A path may only continue
// through passable nodes; ω-pieces are infinite continuations from a node.
struct SummaryGraph {
    std::vector<bool> passable;
    std::vector<std::vector<std::pair<int, int>>> out;  // (target, summary)
    std::vector<std::vector<OmegaSummary>> omega;

    int add_node(bool pass);
    int size() const { return static_cast<int>(passable.size()); }
    void add_edge(int u, int v, int s);
    void add_omega(int u, OmegaSummary h);
};

struct Saturation {
    std::vector<std::set<std::pair<int, int>>> paths;  // paths[u] ∋ (v, summary)
    std::vector<std::set<OmegaSummary>> omega;           // infinite continuations from u

    std::vector<int> between(int u, int v) const;
};

Saturation saturate(Engine& e, const SummaryGraph& g);

// Saturated behaviour of a rule body whose hyperedges are filled with language
// classes (or left open), optionally placed inside a context class.
struct MBehaviour {
    Hypergraph source;
    std::vector<int> children;  // per hyperedge: language class id or -1 (open)
    int context = -1;
    SummaryGraph graph;
    std::vector<int> node;     // concrete node -> junction
    std::vector<int> in, out;  // abstract i at index i-1 -> junctions (equal without context)
    Saturation sat;
};

MBehaviour plug(Engine& e, const Hypergraph& body, const std::vector<int>& children, int context = -1);
// Plain M-behaviour: every hyperedge left open.
MBehaviour behaviour(Engine& e, const Hypergraph& g);

// Interface positions: abstract nodes, then nodes attached to open hyperedges
// (first occurrence), then the view.
std::vector<NodeId> interface_nodes(const MBehaviour& b, const std::vector<NodeId>& view = {});
int restrict(Engine& e, const MBehaviour& b, const std::vector<NodeId>& view = {});
// Class over an explicit position list (duplicates allowed).
int restrict_to(Engine& e, const MBehaviour& b, const std::vector<NodeId>& positions);
// Class of the surroundings of open hyperedge `hole`, over its attachments.
int hole_class(Engine& e, const MBehaviour& b, int hole);

// Every infinite trace from concrete node v is accepted.
bool satisfies(Engine& e, const MBehaviour& b, NodeId v);
std::set<OmegaSummary> omega_at(Engine& e, const MBehaviour& b, NodeId v);

std::string behaviour_dot(const Engine& e, const InterfaceBehaviour& b, const std::string& name = "behaviour");

}  // namespace hrmc
