#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <random>

#include "crossfam/cross.hpp"
#include "crossfam/errors.hpp"
#include "oracle/naive.hpp"

using namespace crossfam;

namespace {

std::shared_ptr<const GroundSpec> make_spec(std::vector<PartSpec> parts) {
    return std::make_shared<const GroundSpec>(std::move(parts));
}

Family star_at_element_one(const std::shared_ptr<const GroundSpec>& spec) {
    Family f(spec);
    const std::uint64_t L = spec->layer_size_u64();
    for (std::uint64_t r = 0; r < L; ++r)
        if (vertex_from_rank(*spec, r).masks[0] & 1) f.add_rank(r);
    return f;
}

} // namespace

TEST_CASE("cross-intersecting verification") {
    auto spec = make_spec({{5, 2}});
    SUBCASE("two identical stars") {
        CrossSystem sys{spec, {star_at_element_one(spec), star_at_element_one(spec)}, true};
        CHECK(verify_cross_intersecting(sys).ok);
    }
    SUBCASE("a disjoint pair is found and reported") {
        Family a(spec), b(spec);
        a.add(vertex_from_masks(*spec, {0b00011}));
        b.add(vertex_from_masks(*spec, {0b01100}));
        CrossSystem sys{spec, {a, b}, true};
        const auto v = verify_cross_intersecting(sys);
        CHECK_FALSE(v.ok);
        CHECK(v.family_a == 0);
        CHECK(v.family_b == 1);
        CHECK(vertex_from_rank(*spec, v.rank_a).masks[0] == 0b00011);
        CHECK(vertex_from_rank(*spec, v.rank_b).masks[0] == 0b01100);
    }
}

TEST_CASE("two-branch maximum-sum bound") {
    CHECK(max_sum_bound(GroundSpec({{4, 1}, {5, 2}}), 2) == 40);
    CHECK(max_sum_bound(GroundSpec({{4, 1}, {5, 2}}), 3) == 48);
    CHECK(max_sum_bound(GroundSpec({{5, 2}}), 3) == 12);
    CHECK(max_sum_bound(GroundSpec({{5, 2}}), 2) == 10);
    CHECK(max_sum_bound(GroundSpec({{4, 2}}), 2) == 6); // branches agree at m = n/k
    CHECK_THROWS_AS(max_sum_bound(GroundSpec({{3, 2}}), 2), PreconditionFailed);
}

TEST_CASE("single-part reduction to the two-branch bound") {
    // For p = 1 the bound must equal C(n,k) when m <= n/k and m C(n-1,k-1) after.
    for (unsigned n = 2; n <= 10; ++n)
        for (unsigned k = 1; 2 * k <= n; ++k)
            for (unsigned m = 2; m <= 6; ++m) {
                const Int expected =
                    Rat(m) <= Rat(n, k) ? binom(n, k) : Int(m) * binom(n - 1, k - 1);
                CHECK(max_sum_bound(GroundSpec({{n, k}}), m) == expected);
            }
}

TEST_CASE("exhaustive maximum-sum search") {
    SUBCASE("Petersen, m=2: optimum |X| via (X, empty)") {
        const auto res = search_max_sum(make_spec({{5, 2}}), 2);
        CHECK(res.optimum == 10);
        bool has_full_empty = false;
        for (const auto& sys : res.optima)
            if (sys.families[0].is_full() && sys.families[1].empty()) has_full_empty = true;
        CHECK(has_full_empty);
    }
    SUBCASE("n=4, k=2, m=2: optimum 6 with boundary structures") {
        const auto res = search_max_sum(make_spec({{4, 2}}), 2);
        CHECK(res.optimum == 6);
        CHECK(res.optima.size() > 1);
        for (const auto& sys : res.optima) {
            CHECK(verify_cross_intersecting(sys).ok);
            CHECK(sys.total() == 6);
        }
    }
    SUBCASE("n=(2,3), k=(1,1), m=2: optimum 6") {
        CHECK(search_max_sum(make_spec({{2, 1}, {3, 1}}), 2).optimum == 6);
    }
    SUBCASE("matches the unpruned oracle") {
        for (const auto& parts : {std::vector<PartSpec>{{4, 2}},
                                 std::vector<PartSpec>{{5, 2}},
                                 std::vector<PartSpec>{{2, 1}, {3, 1}},
                                 std::vector<PartSpec>{{2, 1}, {2, 1}}}) {
            auto spec = make_spec(parts);
            CHECK(search_max_sum(spec, 2).optimum ==
                  Int(oracle::naive_max_sum(*spec, 2)));
        }
        CHECK(search_max_sum(make_spec({{2, 1}, {2, 1}}), 3).optimum ==
              Int(oracle::naive_max_sum(GroundSpec({{2, 1}, {2, 1}}), 3)));
        CHECK(search_max_sum(make_spec({{4, 2}}), 3).optimum ==
              Int(oracle::naive_max_sum(GroundSpec({{4, 2}}), 3)));
    }
    SUBCASE("dropping the first-family-nonempty hypothesis adds the mirrored optimum") {
        const auto strict = search_max_sum(make_spec({{4, 2}}), 2, true);
        const auto relaxed = search_max_sum(make_spec({{4, 2}}), 2, false);
        CHECK(relaxed.optimum == strict.optimum);
        CHECK(relaxed.optima.size() == strict.optima.size() + 1); // (empty, X) appears
    }
    SUBCASE("m=3 reaches the bound on Petersen") {
        const auto res = search_max_sum(make_spec({{5, 2}}), 3);
        CHECK(res.optimum == 12);
        CHECK(res.optima.size() == 5); // one per star
        for (const auto& sys : res.optima) {
            CHECK(sys.families[0] == sys.families[1]);
            CHECK(sys.families[1] == sys.families[2]);
        }
    }
}

TEST_CASE("construction (i): full plus empties") {
    auto sys = construct_full_plus_empty(make_spec({{5, 2}}), 2);
    CHECK(sys.families[0].size() == 10);
    CHECK(sys.families[1].empty());
    CHECK(verify_cross_intersecting(sys).ok);

    auto sys2 = construct_full_plus_empty(make_spec({{2, 1}, {3, 1}}), 2);
    CHECK(sys2.families[0].size() == 6);
    CHECK(sys2.total() == 6);
}

TEST_CASE("construction (ii): identical maximum intersecting families") {
    auto sys = construct_identical_intersecting(make_spec({{5, 2}}), 3);
    CHECK(sys.total() == 12);
    for (const auto& f : sys.families) CHECK(f.size() == 4);
    CHECK(verify_cross_intersecting(sys).ok);

    auto sys2 = construct_identical_intersecting(make_spec({{4, 1}, {5, 2}}), 3);
    CHECK(sys2.families[0].size() == 16);
    CHECK(sys2.total() == 48);
    CHECK(verify_cross_intersecting(sys2).ok);
}

TEST_CASE("construction (iii): base block plus routed complement pairs") {
    auto spec = make_spec({{4, 2}});
    const GroundSpec sub({{4, 2}});

    SUBCASE("empty base, pairs 2:1") {
        PairSplitSpec split;
        split.half_parts = {0};
        // pairs keyed by lower rank: {12,34} -> 0, {13,24} -> 1, {14,23} -> 2
        split.pair_assignment = {{0, 1}, {1, 1}, {2, 2}};
        const auto sys = construct_pair_split(spec, split);
        CHECK(sys.families[0].size() == 4);
        CHECK(sys.families[1].size() == 2);
        CHECK(sys.total() == 6);
        CHECK(verify_cross_intersecting(sys).ok);
    }
    SUBCASE("singleton base") {
        PairSplitSpec split;
        split.half_parts = {0};
        split.base = {vertex_from_masks(sub, {0b0011})}; // {1,2}
        split.pair_assignment = {{1, 1}, {2, 2}};
        const auto sys = construct_pair_split(spec, split);
        CHECK(sys.families[0].size() == 3);
        CHECK(sys.families[1].size() == 3);
        CHECK(verify_cross_intersecting(sys).ok);
        // A1 = {12,13,24}; A2 = {12,14,23}
        CHECK(sys.families[0].contains(vertex_from_masks(*spec, {0b0011})));
        CHECK(sys.families[0].contains(vertex_from_masks(*spec, {0b0101})));
        CHECK(sys.families[0].contains(vertex_from_masks(*spec, {0b1010})));
        CHECK(sys.families[1].contains(vertex_from_masks(*spec, {0b0011})));
        CHECK(sys.families[1].contains(vertex_from_masks(*spec, {0b1001})));
        CHECK(sys.families[1].contains(vertex_from_masks(*spec, {0b0110})));
    }
    SUBCASE("two binary parts") {
        auto spec22 = make_spec({{2, 1}, {2, 1}});
        const GroundSpec sub22({{2, 1}, {2, 1}});
        PairSplitSpec split;
        split.half_parts = {0, 1};
        split.base = {vertex_from_masks(sub22, {0b01, 0b01})};
        split.pair_assignment = {{1, 1}}; // remaining pair {(1|2),(2|1)} to family 1
        const auto sys = construct_pair_split(spec22, split);
        CHECK(sys.families[0].size() == 3);
        CHECK(sys.families[1].size() == 1);
        CHECK(verify_cross_intersecting(sys).ok);
    }
    SUBCASE("precondition violations") {
        PairSplitSpec bad;
        bad.half_parts = {};
        CHECK_THROWS_AS(construct_pair_split(spec, bad), PreconditionFailed);

        PairSplitSpec comp_pair;
        comp_pair.half_parts = {0};
        comp_pair.base = {vertex_from_masks(sub, {0b0011}),
                          vertex_from_masks(sub, {0b1100})};
        comp_pair.pair_assignment = {{1, 1}, {2, 2}};
        CHECK_THROWS_AS(construct_pair_split(spec, comp_pair), PreconditionFailed);

        PairSplitSpec missing;
        missing.half_parts = {0};
        missing.pair_assignment = {{0, 1}, {1, 1}}; // one pair unassigned
        CHECK_THROWS_AS(construct_pair_split(spec, missing), PreconditionFailed);

        CHECK_THROWS_AS(construct_pair_split(make_spec({{5, 2}}), comp_pair),
                        PreconditionFailed);
    }
}

TEST_CASE("optimum classification") {
    SUBCASE("constructed systems classify as their case") {
        auto spec = make_spec({{5, 2}});
        const auto cert_i = classify_optimum(construct_full_plus_empty(spec, 2));
        CHECK(cert_i.at_bound);
        CHECK(cert_i.primary == ExtremalCase::FullPlusEmpty);

        const auto cert_ii = classify_optimum(construct_identical_intersecting(spec, 3));
        CHECK(cert_ii.at_bound);
        CHECK(cert_ii.primary == ExtremalCase::IdenticalIntersecting);

        PairSplitSpec split;
        split.half_parts = {0};
        split.base = {vertex_from_masks(GroundSpec({{4, 2}}), {0b0011})};
        split.pair_assignment = {{1, 1}, {2, 2}};
        const auto cert_iii =
            classify_optimum(construct_pair_split(make_spec({{4, 2}}), split));
        CHECK(cert_iii.at_bound);
        CHECK(cert_iii.primary == ExtremalCase::PairSplit);
        REQUIRE(cert_iii.pair_split.has_value());
        CHECK(cert_iii.pair_split->base_size == 1);
        CHECK(cert_iii.pair_split->routed_pairs == 2);
    }
    SUBCASE("below the bound: no case") {
        auto spec = make_spec({{5, 2}});
        Family a(spec), b(spec);
        a.add_rank(0);
        b.add_rank(0);
        const auto cert = classify_optimum(CrossSystem{spec, {a, b}, true});
        CHECK_FALSE(cert.at_bound);
        CHECK(cert.matched.empty());
    }
    SUBCASE("every optimal system of the exhaustive searches is classified") {
        for (const auto& parts : {std::vector<PartSpec>{{4, 2}},
                                 std::vector<PartSpec>{{2, 1}, {2, 1}},
                                 std::vector<PartSpec>{{2, 1}, {3, 1}},
                                 std::vector<PartSpec>{{5, 2}}}) {
            const auto res = search_max_sum(make_spec(parts), 2);
            CHECK(res.optimum == max_sum_bound(GroundSpec(parts), 2));
            for (const auto& sys : res.optima) {
                const auto cert = classify_optimum(sys);
                CHECK(cert.at_bound);
                CHECK(cert.primary.has_value());
            }
        }
    }
}

TEST_CASE("random cross-intersecting systems never exceed the bound") {
    std::mt19937_64 rng(20240809);
    for (const auto& parts : {std::vector<PartSpec>{{5, 2}},
                             std::vector<PartSpec>{{6, 2}},
                             std::vector<PartSpec>{{2, 1}, {3, 1}},
                             std::vector<PartSpec>{{4, 2}, {5, 2}}}) {
        auto spec = make_spec(parts);
        const std::uint64_t L = spec->layer_size_u64();
        // meets-masks once per spec
        std::vector<std::vector<std::uint64_t>> masks(L);
        for (std::uint64_t r = 0; r < L; ++r) masks[r] = vertex_from_rank(*spec, r).masks;
        auto meets = [&](std::uint64_t a, std::uint64_t b) {
            for (std::size_t i = 0; i < masks[a].size(); ++i)
                if (masks[a][i] & masks[b][i]) return true;
            return false;
        };
        for (unsigned m : {2u, 3u}) {
            const Int bound = max_sum_bound(*spec, m);
            for (int trial = 0; trial < 100; ++trial) {
                std::vector<std::vector<std::uint64_t>> fams(m);
                fams[0].push_back(rng() % L);
                for (int attempt = 0; attempt < 200; ++attempt) {
                    const unsigned j = static_cast<unsigned>(rng() % m);
                    const std::uint64_t v = rng() % L;
                    bool ok = true;
                    for (unsigned i = 0; i < m && ok; ++i) {
                        if (i == j) continue;
                        for (const auto u : fams[i])
                            if (!meets(v, u)) {
                                ok = false;
                                break;
                            }
                    }
                    if (ok) fams[j].push_back(v);
                }
                Int total = 0;
                for (auto& f : fams) {
                    std::sort(f.begin(), f.end());
                    f.erase(std::unique(f.begin(), f.end()), f.end());
                    total += f.size();
                }
                CHECK(total <= bound);
            }
        }
    }
}
