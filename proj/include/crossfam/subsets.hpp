#pragma once

// Colexicographic ranking of k-subsets of [n] (combinatorial number system).
// Subsets are bitmasks: bit j set <=> element j+1 of the part is in the set.
// colex rank of {c_0 < c_1 < ... < c_{k-1}} (0-based) = sum_j C(c_j, j+1).

#include <cstdint>

namespace crossfam {

/// Rank of `mask` among k-subsets of [n], colex order. Throws InvalidSubset
/// if popcount(mask) != k or mask has bits >= n.
std::uint64_t rank_subset(std::uint64_t mask, unsigned n, unsigned k);

/// Inverse of rank_subset.
std::uint64_t unrank_subset(std::uint64_t rank, unsigned n, unsigned k);

/// Smallest k-subset mask in colex order ({1..k}).
std::uint64_t first_subset_mask(unsigned k);

/// Advance `mask` to the colex successor with the same popcount within [n].
/// Returns false when `mask` was the last subset.
bool next_subset_mask(std::uint64_t& mask, unsigned n);

} // namespace crossfam
