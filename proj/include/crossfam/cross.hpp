#pragma once

// Maximum-sum cross-intersecting systems on a multi-part layer: the two-branch
// bound, exhaustive search for optima, the three extremal constructions and
// the structure classifier for systems attaining the bound.

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "crossfam/family.hpp"
#include "crossfam/ground.hpp"
#include "crossfam/kneser.hpp"
#include "crossfam/numeric.hpp"

namespace crossfam {

struct CrossSystem {
    std::shared_ptr<const GroundSpec> spec;
    std::vector<Family> families;
    bool first_nonempty = true; // mirrors the A_1 != empty hypothesis

    Int total() const;
};

struct CrossViolation {
    bool ok = true;
    std::size_t family_a = 0, family_b = 0;
    std::uint64_t rank_a = 0, rank_b = 0; // a disjoint witness pair when !ok
};

/// Pairwise bitset sweep; returns the first violating pair in canonical order.
CrossViolation verify_cross_intersecting(const CrossSystem& sys);

/// Two-branch bound: |X| when m <= min_i n_i/k_i, m*M when m >= min_i n_i/k_i
/// (exact rational comparison; the branches agree at equality).
Int max_sum_bound(const GroundSpec& spec, unsigned m);

struct CrossSearchBudget {
    std::uint64_t max_nodes = std::uint64_t{1} << 26;
    std::uint64_t max_optima = 100'000;
};

struct CrossSearchResult {
    Int optimum;
    std::vector<CrossSystem> optima; // canonical order (family masks ascending)
    std::uint64_t nodes = 0;
};

/// Exact optimum over m-tuples of cross-intersecting families. The first
/// family sweeps all subsets; later families are confined to the region of
/// vertices meeting everything chosen so far, with the last family completed
/// maximally (forced at any optimum). m in {2,3}.
CrossSearchResult search_max_sum(std::shared_ptr<const GroundSpec> spec, unsigned m,
                                 bool require_first_nonempty = true,
                                 const CrossSearchBudget& budget = {});

/// (i): the full layer plus m-1 empty families.
CrossSystem construct_full_plus_empty(std::shared_ptr<const GroundSpec> spec, unsigned m);

/// (ii): m copies of a maximum intersecting family (a star on a critical part).
CrossSystem construct_identical_intersecting(std::shared_ptr<const GroundSpec> spec, unsigned m);

/// (iii) input: a set of parts with n = 2k, base vertices over those parts,
/// and an assignment of every remaining complement pair to family 1 or 2.
struct PairSplitSpec {
    std::vector<std::size_t> half_parts;       // S1: nonempty, each with n = 2k
    std::vector<Vertex> base;                  // over the S1 sub-spec; no complement pairs
    /// complement pairs keyed by their lower sub-rank; value 1 or 2
    std::vector<std::pair<std::uint64_t, int>> pair_assignment;
};

/// (iii): shared base block plus whole complement pairs routed to one side.
CrossSystem construct_pair_split(std::shared_ptr<const GroundSpec> spec,
                                 const PairSplitSpec& split);

enum class ExtremalCase { FullPlusEmpty = 1, IdenticalIntersecting = 2, PairSplit = 3 };

struct PairSplitData {
    std::vector<std::size_t> half_parts;
    std::uint64_t base_size = 0;
    std::uint64_t routed_pairs = 0;
};

struct ExtremalCertificate {
    Int total;
    Int bound;
    std::vector<ExtremalCase> matched;      // all matching cases, ascending
    std::optional<ExtremalCase> primary;    // lowest-numbered match
    std::optional<PairSplitData> pair_split;
    bool at_bound = false;
};

/// Matches a system against the extremal cases. A system at the bound must
/// match at least one case (the completeness claim); tests assert this.
ExtremalCertificate classify_optimum(const CrossSystem& sys);

} // namespace crossfam
