#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "steinhaus/cyclic_set.hpp"
#include "steinhaus/sumset.hpp"

namespace steinhaus {

struct SeqSpec;
struct ThickFamilySpec;

// Text grammars shared by the CLI and the store. All parsers throw
// ParseError; whitespace between tokens is ignored.

/// "n:{a,b,c}", e.g. "7:{0,1,3}". Residues must lie in [0, n).
CyclicSet parse_set(std::string_view text, std::uint32_t modulus_cap = kDefaultModulusCap);
std::string format_set(const CyclicSet& a);

/// "+1,-1", "(+1,-1)", or the compact "+-".
SignVector parse_signs(std::string_view text);
std::string format_signs(const SignVector& eps);

/// "prefix=[n:{...};...] cycle=[n:{...};...]"; the prefix part is optional.
SeqSpec parse_seq_spec(std::string_view text, std::uint32_t modulus_cap = kDefaultModulusCap);
std::string format_seq_spec(const SeqSpec& spec);

/// "sets=[{1,4},{2,5}] a_max=5"; a_max defaults to 5.
ThickFamilySpec parse_thick_spec(std::string_view text);
std::string format_thick_spec(const ThickFamilySpec& spec);

/// Decimal unsigned integer with the whole string consumed.
std::uint64_t parse_unsigned(std::string_view text);

}  // namespace steinhaus
