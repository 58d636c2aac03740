#pragma once

#include <string>
#include <vector>

#include "lotl/automaton.hpp"
#include "lotl/formula.hpp"

namespace lotl {

// Elementary automata. Each has exactly one accepting run per input word,
// and that property is preserved by product and compose, so every compiled
// automaton is non-ambiguous.

// Reads subsets of props, writes the truth bit of one proposition.
transducer atom_automaton(const std::vector<std::string>& props, const std::string& name);
transducer const_automaton(const std::vector<std::string>& props, bool value);

// Read truth bits (one respectively two per position), write one.
transducer not_automaton();
transducer or_automaton();

// Read pairs of truth bits for the operands, write the connective's bit.
transducer until_automaton();
transducer since_automaton();
transducer stavi_until_automaton();
transducer stavi_since_automaton();

// Runs both automata on the same input, pairing the outputs. Inputs must
// agree up to letter order.
transducer product(const transducer& a1, const transducer& a2);

// Feeds inner's output into outer. Outer's input letters must match inner's
// output letters up to order. State names pair as (inner, outer).
transducer compose(const transducer& outer, const transducer& inner);

// Desugars, then builds the transducer from subsets of props to truth bits
// by structural recursion, one elementary automaton per core connective.
transducer compile(const formula& f, const std::vector<std::string>& props);

}  // namespace lotl
