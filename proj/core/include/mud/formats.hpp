#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mud/simulator.hpp"
#include "mud/symbol.hpp"

namespace mud {

/// Whitespace/newline separated integers, one Symbol per token.
std::vector<Symbol> parse_int_symbols(std::istream& in);

/// SetParity records, one per line: "index bit".
std::vector<Symbol> parse_setparity_records(std::istream& in);

/// SymmetricIndex records, one per line: "side pos bit query" with side
/// given as the letter a or b.
std::vector<Symbol> parse_symindex_records(std::istream& in);

/// Alphabet tokens of `dfa`, whitespace separated, mapped to scalar
/// symbols holding the alphabet index.
std::vector<Symbol> parse_dfa_word(std::istream& in, const TableDFA& dfa);

std::string format_setparity_records(const std::vector<Symbol>& records);
std::string format_symindex_records(const std::vector<Symbol>& records);

}  // namespace mud
