#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace gentle {

// Exact scalar used throughout the combinatorial layer. The linear-algebra
// backend reduces these into GF(p) or keeps them rational, depending on the
// field configuration.
using Rat = boost::multiprecision::cpp_rational;

inline std::string rat_to_string(const Rat& r) { return r.str(); }

// Accepts "n" or "n/d" with optional leading '-'.
std::optional<Rat> parse_rat(const std::string& text);

}  // namespace gentle
