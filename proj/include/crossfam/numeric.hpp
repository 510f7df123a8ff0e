#pragma once

// Exact arithmetic used everywhere: arbitrary-precision integers for counting,
// exact rationals for every ratio and equality test. There is no floating
// point anywhere in the library.

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace crossfam {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Exact binomial coefficient, multiplicative form. C(n,k) = 0 for k > n.
Int binom(unsigned n, unsigned k);

/// Binomial coefficient as uint64_t; valid for n <= 64 (table-backed).
std::uint64_t binom_u64(unsigned n, unsigned k);

/// Rat -> decimal string "p/q" (or "p" when q == 1).
std::string rat_str(const Rat& r);

} // namespace crossfam
