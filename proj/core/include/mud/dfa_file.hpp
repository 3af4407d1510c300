#pragma once

#include <iosfwd>
#include <string>

#include "mud/simulator.hpp"

namespace mud {

/// Text form of a TableDFA.
///
///   # comments and blank lines are ignored
///   states: even odd        (first token is the start state)
///   alphabet: 0 1
///   n: 4
///   delta:
///   even 0 -> even
///   even 1 -> odd
///   ...
///   eta:
///   even -> 0
///   odd -> 1
///
/// `delta:`/`eta:` open row sections that run until the next `key:`
/// header.  Errors carry 1-based line numbers.
TableDFA parse_dfa(std::istream& in);
TableDFA parse_dfa_file(const std::string& path);

std::string format_dfa(const TableDFA& dfa);

}  // namespace mud
