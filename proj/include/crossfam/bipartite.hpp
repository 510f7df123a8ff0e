#pragma once

// The two-layer disjointness graph G(X, Y): X carries the t_i-uniform layers,
// Y the s_i-uniform layers over the same parts, and (A, B) is an edge iff
// A and B are disjoint in every part. Provides the nonempty-pair sum bound,
// hypothesis checking, exhaustive nontrivial-independent-set search, the
// fragment/deficiency machinery, the imprimitive-shape catalog with its
// margin quantities, and the balanced-fragment quadratic.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "crossfam/family.hpp"
#include "crossfam/ground.hpp"
#include "crossfam/numeric.hpp"

namespace crossfam {

enum class Side { X, Y };

inline Side other_side(Side s) { return s == Side::X ? Side::Y : Side::X; }
std::string side_name(Side s);

struct BipartitePart {
    unsigned n = 0;
    unsigned t = 0; // X-side uniformity
    unsigned s = 0; // Y-side uniformity
    bool operator==(const BipartitePart&) const = default;
};

// ---- formula-level family descriptions -------------------------------------

struct PartShape {
    enum Kind { Full, Fixed, MeetsFixed } kind = Full;
    std::uint64_t anchor = 0; // element mask for Fixed / MeetsFixed
};

/// Product family: one shape per part.
struct ProductFamilyDesc {
    Side side = Side::X;
    std::vector<PartShape> shapes;
};

/// All vertices of `side` meeting a fixed vertex of the other side.
struct StarFamilyDesc {
    Side side = Side::Y;
    std::vector<std::uint64_t> anchor_masks; // a vertex of the other side
};

using FamilyDesc = std::variant<ProductFamilyDesc, StarFamilyDesc>;

// ---- fragment & shape records ----------------------------------------------

struct FragmentRecord {
    Side side = Side::X;
    Family set;
    Int nbhd_size;
    Int deficiency; // |N(A)| - |A|
    bool balanced = false;
    bool trivial = false;
};

struct EpsilonResult {
    Int epsilon;
    std::vector<FragmentRecord> fragments;
    std::uint64_t swept = 0;
};

enum class ShapeRole : std::uint8_t { Free = 0, Paired = 1, Pinned = 2 };

/// T1 = Paired parts (block {A_i, complement}), T2 = Pinned parts (singleton),
/// remaining parts free (full layer).
struct ImprimitiveShape {
    std::vector<ShapeRole> roles;
    std::vector<std::size_t> paired() const;
    std::vector<std::size_t> pinned() const;
};

struct ShapeRecord {
    ImprimitiveShape shape;
    Int set_size;   // |A|
    Int nbhd_size;  // |N(A)|
    Int deficiency; // |N(A)| - |A|
};

/// Margin quantities for one imprimitive shape; X-side shapes fill d1 and the
/// beta/theta entries, Y-side shapes fill d2 and the delta/eta entries.
struct DeficiencyMargins {
    Side side = Side::X;
    Rat beta1, beta2, theta, d1;
    Rat delta, eta0, eta1, eta2, theta_prime, d2;
};

struct BalanceQuadratic {
    Rat c2, c1, c0; // H(x) = c2 x^2 + c1 x + c0
    std::vector<long> integral_roots; // in [s_j + 3, root_limit]
    long root_limit = 0;
    Int eq_lhs, eq_rhs; // the balanced-fragment size equation at x = n_j
    bool eq_holds = false;
};

struct HypothesisClause {
    std::string name;
    bool ok = true;
};

struct HypothesesReport {
    std::vector<HypothesisClause> clauses;
    bool all_ok = true;
    std::vector<std::string> violated() const;
};

struct PairEvaluation {
    bool cross_intersecting = false;
    bool empty_a = false, empty_b = false;
    Int size_a, size_b, total, bound, slack; // slack = total - bound
};

struct NontrivialSearchResult {
    Int alpha;
    std::vector<std::pair<Family, Family>> extremal; // (A in X, B in Y)
    std::uint64_t swept = 0;
};

enum class PairCase { None = 0, SingletonX = 1, SingletonY = 2 };

struct SweepBudget {
    unsigned max_side_bits = 16; // exhaustive sweeps allowed up to 2^16 subsets
};

// ---- the graph ---------------------------------------------------------------

class BipartiteDisjointness {
public:
    explicit BipartiteDisjointness(std::vector<BipartitePart> parts);

    std::size_t part_count() const { return parts_.size(); }
    const BipartitePart& part(std::size_t i) const { return parts_[i]; }

    const std::shared_ptr<const GroundSpec>& spec(Side s) const {
        return s == Side::X ? xspec_ : yspec_;
    }
    const Int& side_size(Side s) const { return s == Side::X ? x_size_ : y_size_; }
    /// d(X) = prod C(n_i - t_i, s_i); d(Y) = prod C(n_i - s_i, t_i).
    const Int& degree(Side s) const { return s == Side::X ? x_degree_ : y_degree_; }

    /// |Y| - d(X) + 1.
    Int pair_sum_bound() const;

    HypothesesReport check_hypotheses() const;

    /// N(F) on the other side. Needs enumerable layers.
    Family neighbors(Side from, const Family& f) const;
    /// co-side complement of N(F): the fragment partner map.
    Family phi(Side from, const Family& f) const;

    PairEvaluation evaluate_pair(const Family& a, const Family& b) const;
    PairEvaluation evaluate_pair(const FamilyDesc& a, const FamilyDesc& b) const;

    NontrivialSearchResult search_max_nontrivial(const SweepBudget& budget = {}) const;

    /// Exhaustive deficiency minimum over closed nonempty subsets of `side`
    /// with N(A) != co-side, plus the full fragment list.
    EpsilonResult epsilon(Side side, const SweepBudget& budget = {}) const;

    /// All deficiency-minimizing imprimitive shapes on `side` (closed forms;
    /// no enumeration). Throws NoImprimitiveShape when no valid shape exists.
    std::vector<ShapeRecord> min_imprimitive_deficiency(Side side) const;

    /// All valid imprimitive shapes on `side` (unminimized), canonical order.
    std::vector<ShapeRecord> imprimitive_shapes(Side side) const;

    DeficiencyMargins deficiency_margins(const ImprimitiveShape& shape, Side side) const;

    /// The quadratic controlling balanced fragments anchored at part j
    /// (requires p >= 2; the j-th X-uniformity is taken as 2 in the formulas).
    BalanceQuadratic balance_quadratic(std::size_t j) const;

    /// (A, B) with a singleton on `singleton_side` and the full star opposite.
    std::pair<FamilyDesc, FamilyDesc> construct_star_pair(Side singleton_side) const;

    /// A = one fixed block in part j times full first-layer products; B = everything
    /// meeting that block in part j times full s-layers.
    std::pair<FamilyDesc, FamilyDesc> construct_fixed_block_pair(std::size_t j = 0) const;

    PairCase classify_extremal_pair(const Family& a, const Family& b) const;

    Int desc_size(const FamilyDesc& d) const;
    Family materialize(const FamilyDesc& d) const;

    Family empty_family(Side s) const { return Family(spec(s)); }

private:
    void require_enumerable() const;
    const std::vector<std::vector<std::uint32_t>>& cross_table(Side from, std::size_t part) const;

    std::vector<BipartitePart> parts_;
    std::shared_ptr<const GroundSpec> xspec_, yspec_;
    Int x_size_, y_size_, x_degree_, y_degree_;
    // per part: for each from-side subset index, the disjoint to-side indices
    std::vector<std::vector<std::vector<std::uint32_t>>> x_to_y_, y_to_x_;
    bool tables_built_ = false;
};

} // namespace crossfam
