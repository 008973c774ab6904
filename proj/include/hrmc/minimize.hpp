#pragma once

#include "hrmc/grammar.hpp"

namespace hrmc {

// Prune, then merge nonterminals whose rule sets coincide under the current
// partition (greatest fixpoint; a forward bisimulation on the tree automaton).
// Rules keep their origin and are only identified when origin and body agree.
Grammar minimize(const Grammar& g);

}  // namespace hrmc
