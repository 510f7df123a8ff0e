#pragma once

// Parameter-grid enumeration for the bipartite hypothesis checks: all
// multi-part (n_i, t_i, s_i) tuples satisfying the pair-bound hypotheses
// within given limits, in a fixed deterministic order.

#include <functional>
#include <vector>

#include "crossfam/bipartite.hpp"

namespace crossfam {

struct GridLimits {
    unsigned p_lo = 2, p_hi = 3;
    unsigned n_lo = 5, n_hi = 9;
};

/// Calls fn for every tuple with p parts in [p_lo, p_hi], n_i in [n_lo, n_hi]
/// pairwise within a 7/4 factor, 2 <= s_i, t_i <= n_i/2, n_i >= s_i + t_i + 1,
/// and prod C(n_i, s_i) >= prod C(n_i, t_i).
void for_each_hypothesis_instance(const GridLimits& limits,
                                  const std::function<void(const std::vector<BipartitePart>&)>& fn);

/// Number of tuples the limits generate.
std::size_t hypothesis_instance_count(const GridLimits& limits);

} // namespace crossfam
