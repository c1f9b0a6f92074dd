#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "rfq/logic/atom.hpp"
#include "rfq/logic/state.hpp"

// Textual fact syntax shared by fixtures, state dumps and tree files:
//   pred(c1,c2,...)   lowercase-initial names are constants
//   pred(X,Y)         uppercase-initial (or '_') names are variables
//   !pred(...)        negated literal inside a conjunction
//   a(X), !b(X,Y)     conjunction; "true" is the empty conjunction

namespace rfq::logic {

Term parse_term(std::string_view text);
Atom parse_atom(std::string_view text);
GroundAtom parse_ground_atom(std::string_view text);
Literal parse_literal(std::string_view text);
Conjunction parse_conjunction(std::string_view text);

/// One fact per line; blank lines and lines starting with '#' are skipped.
State parse_state(std::string_view text);
State read_state(std::istream& in);

/// Facts one per line, insertion order.
std::string format_state(const State& state);

std::string_view trim(std::string_view text);

}  // namespace rfq::logic
