#pragma once

// Direct products of Kneser graphs on a multi-part layer. Adjacency is
// part-wise disjointness. Exposes the independence number (closed form and
// exact solver), maximum-independent-set enumeration, MIS-normality,
// imprimitive-independent-set detection and the vertex-transitivity
// inequalities used by the cross-family bounds.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "crossfam/family.hpp"
#include "crossfam/ground.hpp"
#include "crossfam/numeric.hpp"
#include "crossfam/solver.hpp"

namespace crossfam {

enum class SetClass { Empty, Maximum, Imprimitive, Ordinary };

std::string set_class_name(SetClass c);

struct IndependentSetReport {
    Family set;
    Int closed_neighborhood_size; // |N[A]|
    Int non_neighbors_size;       // |G| - |N[A]|
    Rat ratio;                    // |A| / |N[A]| (0 for empty A)
    SetClass classification = SetClass::Empty;
};

struct SaturationReport {
    Rat lhs;    // |A| + (alpha/|G|) * (|G| - |N[A]|)
    Rat rhs;    // alpha
    bool equality = false;
};

struct LocalDensityReport {
    Int alpha_induced;  // alpha(G[B])
    bool holds = false; // |S| * |B| <= alpha(G[B]) * |G|
    bool equality = false;
    Int overlap;        // |S & B|, asserted == alpha_induced at equality
};

struct MisNormalReport {
    bool normal = false;
    std::optional<Family> witness;      // a non-preimage MIS when !normal
    std::uint64_t mis_count = 0;
};

enum class ImprimitivityMode { Predicate, Search };

struct ImprimitivityReport {
    bool imprimitive = false;
    std::optional<Family> witness; // search mode, when imprimitive
    std::uint64_t nodes = 0;
};

struct ImprimitiveStructure {
    bool matches = false;            // cylinder over the n=2k parts x intersecting base
    std::vector<std::size_t> support; // the n=2k part indices
    std::uint64_t base_size = 0;
    bool base_intersecting = false;
    bool base_non_maximum = false;
};

class ProductKneserGraph {
public:
    /// Requires n_i >= 2 k_i for every part.
    explicit ProductKneserGraph(std::shared_ptr<const GroundSpec> spec);

    const GroundSpec& spec() const { return *spec_; }
    const std::shared_ptr<const GroundSpec>& spec_ptr() const { return spec_; }
    const Int& order() const { return order_; }

    /// alpha by the closed form: max_i C(n_i-1,k_i-1) prod_{j!=i} C(n_j,k_j).
    const Int& alpha_formula() const { return alpha_; }
    /// alpha / |G| = max_i k_i/n_i, exact.
    Rat alpha_ratio() const;
    const std::vector<std::size_t>& critical_parts() const { return critical_parts_; }

    /// N(F) (closed=false) or N[F] (closed=true). Needs an enumerable layer.
    Family neighborhood(const Family& f, bool closed) const;
    /// Vertices meeting every member of F (the full layer when F is empty).
    Family non_neighbors(const Family& f) const;
    bool is_independent(const Family& f) const;

    /// Exact alpha: solver when the layer is small enough (then asserted equal
    /// to the closed form), closed form otherwise.
    Int alpha_exact(const SolveBudget& budget = {}) const;

    /// All maximum independent sets, canonical order. Budget-checked.
    std::vector<Family> maximum_independent_sets(const SolveBudget& budget = {}) const;

    /// Every MIS a preimage of a factor independent set under projection?
    MisNormalReport mis_normal(const SolveBudget& budget = {}) const;

    IndependentSetReport classify_independent_set(const Family& f) const;

    /// lhs = |A| + (alpha/|G|)(|G| - |N[A]|) vs rhs = alpha; asserts lhs <= rhs.
    SaturationReport saturation_check(const Family& f) const;

    /// |S|/|G| <= alpha(G[B])/|B| for independent S and nonempty B.
    LocalDensityReport local_density_check(const Family& b, const Family& s,
                                           const SolveBudget& budget = {}) const;

    /// Closed-form predicate: some n_i = 2k_i >= 4, or two parts with n = 2.
    bool imprimitive_predicate() const;

    ImprimitivityReport imprimitivity(ImprimitivityMode mode,
                                      const SolveBudget& budget = {}) const;

    /// Checks the expected shape of an imprimitive independent set:
    /// base x full-layers cylinder over the n=2k parts, base intersecting and
    /// not maximum. Purely observational (used by tests).
    ImprimitiveStructure imprimitive_structure(const Family& f) const;

    /// Dense adjacency materialization (solver input); budget-capped.
    DenseGraph dense(std::uint64_t max_vertices = 8192) const;

    /// Per-part adjacency: indices of part-i subsets disjoint from subset `a`.
    const std::vector<std::uint32_t>& part_disjoint(std::size_t part, std::uint64_t a) const;

    Family empty_family() const { return Family(spec_); }

private:
    void require_enumerable() const;
    bool factor_independent(std::size_t part, const std::vector<char>& picked) const;

    std::shared_ptr<const GroundSpec> spec_;
    Int order_;
    Int alpha_;
    std::vector<std::size_t> critical_parts_;
    // Per-part disjointness lists, built when the layer is enumerable.
    std::vector<std::vector<std::vector<std::uint32_t>>> tables_;
};

} // namespace crossfam
