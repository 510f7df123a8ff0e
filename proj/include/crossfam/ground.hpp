#pragma once

// Multi-part ground set parameterization: p parts, part i contributing the
// uniform layer of k_i-subsets of [n_i]. The product layer is indexed by a
// mixed-radix rank with the last part varying fastest.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "crossfam/numeric.hpp"

namespace crossfam {

struct PartSpec {
    unsigned n = 0;
    unsigned k = 0;
    bool operator==(const PartSpec&) const = default;
};

/// Layers with at most this many vertices may be materialized as bitsets.
/// Keeps a single family at or below 512 KiB.
inline constexpr std::uint64_t kEnumerableLimit = std::uint64_t{1} << 22;

class GroundSpec {
public:
    explicit GroundSpec(std::vector<PartSpec> parts);

    std::size_t part_count() const { return parts_.size(); }
    const PartSpec& part(std::size_t i) const { return parts_[i]; }
    const std::vector<PartSpec>& parts() const { return parts_; }

    /// prod_i C(n_i, k_i), exact.
    const Int& layer_size() const { return layer_size_; }
    /// True when layer_size <= kEnumerableLimit.
    bool enumerable() const { return enumerable_; }
    std::uint64_t layer_size_u64() const; // throws BudgetExceeded if not enumerable

    /// C(n_i, k_i) for one part (n_i <= 64, so it fits).
    std::uint64_t part_layer(std::size_t i) const { return part_sizes_[i]; }
    /// prod_{j > i} part_layer(j); the radix weight of part i in the global rank.
    std::uint64_t stride(std::size_t i) const;

    bool operator==(const GroundSpec& o) const { return parts_ == o.parts_; }

    /// Same part sizes, uniformities n_i - k_i.
    GroundSpec complement_spec() const;

    /// min_i n_i / k_i, exact.
    Rat critical_ratio() const;
    /// Indices attaining min_i n_i / k_i.
    std::vector<std::size_t> critical_parts() const;
    /// True iff n_i >= 2 k_i for all parts.
    bool all_at_most_half() const;
    /// True iff n_i == 2 k_i for all parts.
    bool all_exactly_half() const;

    std::string to_string() const; // "n=4,5 k=1,2"

private:
    std::vector<PartSpec> parts_;
    std::vector<std::uint64_t> part_sizes_;
    Int layer_size_;
    bool enumerable_ = false;
    std::vector<std::uint64_t> strides_; // valid only when enumerable
};

/// prod_i C(n_i, k_i) with one factor optionally replaced.
Int binom_product(const GroundSpec& spec,
                  std::optional<std::pair<std::size_t, Int>> override_factor = std::nullopt);

/// M = max_i C(n_i - 1, k_i - 1) * prod_{j != i} C(n_j, k_j): the maximum size
/// of an intersecting family on the layer (requires n_i >= 2 k_i).
Int max_intersecting_size(const GroundSpec& spec);

} // namespace crossfam
