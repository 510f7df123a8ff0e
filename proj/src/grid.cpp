#include "crossfam/grid.hpp"

#include "crossfam/numeric.hpp"

namespace crossfam {

namespace {

void recurse_parts(const GridLimits& limits, unsigned p,
                   std::vector<BipartitePart>& current,
                   const std::function<void(const std::vector<BipartitePart>&)>& fn) {
    if (current.size() == p) {
        Int s_prod = 1, t_prod = 1;
        for (const auto& part : current) {
            s_prod *= binom(part.n, part.s);
            t_prod *= binom(part.n, part.t);
        }
        if (s_prod >= t_prod) fn(current);
        return;
    }
    for (unsigned n = limits.n_lo; n <= limits.n_hi; ++n) {
        bool ratio_ok = true;
        for (const auto& prev : current)
            if (4 * n > 7 * prev.n || 4 * prev.n > 7 * n) ratio_ok = false;
        if (!ratio_ok) continue;
        for (unsigned t = 2; 2 * t <= n; ++t)
            for (unsigned s = 2; 2 * s <= n; ++s) {
                if (n < s + t + 1) continue;
                current.push_back({n, t, s});
                recurse_parts(limits, p, current, fn);
                current.pop_back();
            }
    }
}

} // namespace

void for_each_hypothesis_instance(
    const GridLimits& limits,
    const std::function<void(const std::vector<BipartitePart>&)>& fn) {
    for (unsigned p = limits.p_lo; p <= limits.p_hi; ++p) {
        std::vector<BipartitePart> current;
        recurse_parts(limits, p, current, fn);
    }
}

std::size_t hypothesis_instance_count(const GridLimits& limits) {
    std::size_t count = 0;
    for_each_hypothesis_instance(limits, [&](const auto&) { ++count; });
    return count;
}

} // namespace crossfam
