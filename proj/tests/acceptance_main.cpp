// Acceptance suite: one check per numbered criterion, each printing a single
// PASS/FAIL line with its runtime. Every numeric target is recomputed through
// the naive oracle module before being asserted against the optimized path.
//
// Run all:        ./acceptance
// Run one:        ./acceptance <number>
// Exit code: number of failing criteria.

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "crossfam/bipartite.hpp"
#include "crossfam/cross.hpp"
#include "crossfam/errors.hpp"
#include "crossfam/grid.hpp"
#include "crossfam/kneser.hpp"
#include "oracle/naive.hpp"

using namespace crossfam;

namespace {

struct Check {
    bool pass = true;
    std::ostringstream log;
    std::uint64_t asserts = 0;

    void expect(bool ok, const std::string& what) {
        ++asserts;
        if (!ok) {
            pass = false;
            log << "      FAILED: " << what << "\n";
        }
    }
};

std::uint64_t oracle_binom(unsigned n, unsigned k) {
    return std::stoull(oracle::decimal_binomial(n, k));
}

std::shared_ptr<const GroundSpec> make_spec(std::vector<PartSpec> parts) {
    return std::make_shared<const GroundSpec>(std::move(parts));
}

// --- criterion 1: single-part two-branch bound reduction -----------------------

void criterion1(Check& c) {
    for (unsigned n = 2; n <= 8; ++n)
        for (unsigned k = 1; 2 * k <= n; ++k)
            for (unsigned m = 2; m <= 3; ++m) {
                // two-branch target recomputed from the decimal-digit oracle
                const std::uint64_t full = oracle_binom(n, k);
                const std::uint64_t star = oracle_binom(n - 1, k - 1);
                const std::uint64_t expected =
                    static_cast<std::uint64_t>(m) * k <= n ? full : m * star;
                const Int got = max_sum_bound(GroundSpec({{n, k}}), m);
                c.expect(got == Int(expected),
                         "n=" + std::to_string(n) + " k=" + std::to_string(k) +
                             " m=" + std::to_string(m) + ": bound " + got.str() +
                             " != " + std::to_string(expected));
            }
}

// --- criterion 2: exhaustive maximum-sum search and full classification --------

void criterion2(Check& c) {
    struct Instance {
        std::vector<PartSpec> parts;
        unsigned m;
    };
    const std::vector<Instance> instances = {
        {{{4, 2}}, 2}, {{{5, 2}}, 2}, {{{2, 1}, {3, 1}}, 2}, {{{2, 1}, {2, 1}}, 2},
        {{{5, 2}}, 3}};
    for (const auto& inst : instances) {
        auto spec = make_spec(inst.parts);
        const Int bound = max_sum_bound(*spec, inst.m);
        const auto res = search_max_sum(spec, inst.m);
        const std::string tag = spec->to_string() + " m=" + std::to_string(inst.m);
        c.expect(res.optimum == bound,
                 tag + ": optimum " + res.optimum.str() + " != bound " + bound.str());
        const std::uint64_t naive = oracle::naive_max_sum(*spec, inst.m);
        c.expect(res.optimum == Int(naive),
                 tag + ": optimum disagrees with the unpruned oracle (" +
                     std::to_string(naive) + ")");
        std::size_t unclassified = 0;
        for (const auto& sys : res.optima)
            if (!classify_optimum(sys).primary) ++unclassified;
        c.expect(unclassified == 0,
                 tag + ": " + std::to_string(unclassified) + " of " +
                     std::to_string(res.optima.size()) + " optimal systems unclassified");
    }
}

// --- criterion 3: two-layer bound at p=1 ---------------------------------------

void criterion3(Check& c) {
    struct Instance {
        unsigned n, t, s;
    };
    // all (s,t) with 2 <= s,t <= n/2, n >= s+t+1, C(n,s) >= C(n,t)
    std::vector<Instance> instances;
    for (unsigned n = 5; n <= 6; ++n)
        for (unsigned t = 2; 2 * t <= n; ++t)
            for (unsigned s = 2; 2 * s <= n; ++s) {
                if (n < s + t + 1) continue;
                if (binom(n, s) < binom(n, t)) continue;
                instances.push_back({n, t, s});
            }
    c.expect(instances.size() == 3, "expected 3 valid (n,s,t) instances");
    for (const auto& inst : instances) {
        BipartiteDisjointness g({{inst.n, inst.t, inst.s}});
        const std::string tag = "n=" + std::to_string(inst.n) + " t=" +
                                std::to_string(inst.t) + " s=" + std::to_string(inst.s);
        const auto res = g.search_max_nontrivial();
        c.expect(res.alpha == g.pair_sum_bound(),
                 tag + ": alpha " + res.alpha.str() + " != bound " +
                     g.pair_sum_bound().str());
        // oracle recompute: alpha = |Y| - eps(X) with the unreduced sweep
        const auto eps = oracle::naive_epsilon({inst.n}, {inst.t}, {inst.s}, true);
        c.expect(res.alpha == g.side_size(Side::Y) - Int(eps),
                 tag + ": alpha disagrees with the naive deficiency sweep");
        std::size_t unclassified = 0;
        for (const auto& [a, b] : res.extremal)
            if (g.classify_extremal_pair(a, b) == PairCase::None) ++unclassified;
        c.expect(unclassified == 0,
                 tag + ": " + std::to_string(unclassified) + " of " +
                     std::to_string(res.extremal.size()) +
                     " extremal pairs outside cases (i)/(ii)" +
                     (inst.s == 2 && inst.t == 2
                          ? " (the two element-star halves attain the bound when "
                            "s = t = 2: C(n,2)-C(n-2,2)+1 = 2(n-1))"
                          : ""));
    }
}

// --- criterion 4: necessity of the hypotheses ----------------------------------

void criterion4(Check& c) {
    {
        BipartiteDisjointness g({{18, 2, 15}, {18, 3, 2}});
        const auto [a, b] = g.construct_fixed_block_pair(0);
        const auto ev = g.evaluate_pair(a, b);
        // oracle recompute of the slack from decimal-digit binomials
        const std::uint64_t total =
            oracle_binom(18, 3) +
            (oracle_binom(18, 15) - oracle_binom(16, 15)) * oracle_binom(18, 2);
        const std::uint64_t bound = oracle_binom(18, 15) * oracle_binom(18, 2) -
                                    oracle_binom(16, 15) * oracle_binom(15, 2) + 1;
        c.expect(Int(total - bound) == 47, "oracle slack != +47");
        c.expect(ev.slack == 47, "library slack " + ev.slack.str() + " != +47");
        c.expect(ev.cross_intersecting, "fixed-block pair not cross-intersecting");
        const auto viol = g.check_hypotheses().violated();
        c.expect(viol == std::vector<std::string>{"s_1 > n_1/2"},
                 "expected exactly the clause s_1 > n_1/2");
    }
    {
        BipartiteDisjointness g({{5, 2, 2}, {12, 2, 2}});
        const auto [a, b] = g.construct_fixed_block_pair(0);
        const auto ev = g.evaluate_pair(a, b);
        const std::uint64_t total =
            oracle_binom(12, 2) +
            (oracle_binom(5, 2) - oracle_binom(3, 2)) * oracle_binom(12, 2);
        const std::uint64_t bound = oracle_binom(5, 2) * oracle_binom(12, 2) -
                                    oracle_binom(3, 2) * oracle_binom(10, 2) + 1;
        c.expect(Int(total - bound) == 2, "oracle slack != +2");
        c.expect(ev.slack == 2, "library slack " + ev.slack.str() + " != +2");
        c.expect(ev.cross_intersecting, "fixed-block pair not cross-intersecting");
        const auto viol = g.check_hypotheses().violated();
        c.expect(viol == std::vector<std::string>{"n_2 > (7/4) n_1"},
                 "expected exactly the clause n_2 > (7/4) n_1");
    }
}

// --- criterion 5: independence facts on the named graphs -----------------------

void criterion5(Check& c) {
    {
        ProductKneserGraph g(make_spec({{5, 2}}));
        c.expect(g.alpha_exact() == 4, "alpha(KG_{5,2}) != 4");
        const DenseGraph d = g.dense();
        std::vector<std::pair<unsigned, unsigned>> edges;
        for (unsigned u = 0; u < d.n; ++u)
            for (unsigned v = u + 1; v < d.n; ++v)
                if (d.adj[u].test(v)) edges.emplace_back(u, v);
        c.expect(oracle::naive_alpha(10, edges) == 4, "naive alpha != 4");
        const auto sets = g.maximum_independent_sets();
        c.expect(sets.size() == 5, "KG_{5,2} must have exactly 5 maximum sets");
        for (const auto& s : sets) {
            std::uint64_t common = ~std::uint64_t{0};
            s.for_each_rank([&](std::uint64_t r) {
                common &= vertex_from_rank(g.spec(), r).masks[0];
            });
            c.expect(std::popcount(common) == 1, "a maximum set is not a star");
        }
    }
    {
        ProductKneserGraph g(make_spec({{4, 2}}));
        c.expect(g.alpha_exact() == 3, "alpha(KG_{4,2}) != 3");
        c.expect(g.maximum_independent_sets().size() == 8, "KG_{4,2} must have 8 maximum sets");
    }
    {
        ProductKneserGraph g(make_spec({{2, 1}, {2, 1}}));
        c.expect(g.mis_normal().normal, "two binary parts must be MIS-normal");
        c.expect(g.imprimitivity(ImprimitivityMode::Predicate).imprimitive,
                 "two binary parts must be IS-imprimitive");
        const auto search = g.imprimitivity(ImprimitivityMode::Search);
        c.expect(search.imprimitive, "imprimitivity search must find a witness");
    }
    {
        ProductKneserGraph g(make_spec({{2, 1}, {2, 1}, {2, 1}}));
        const auto rep = g.mis_normal();
        c.expect(!rep.normal, "three binary parts must not be MIS-normal");
        c.expect(rep.witness.has_value(), "missing witness");
        if (rep.witness) {
            const Family& w = *rep.witness;
            c.expect(Int(w.size()) == g.alpha_formula(), "witness is not maximum");
            c.expect(g.is_independent(w), "witness is not independent");
            bool preimage = false;
            for (std::size_t i = 0; i < 3; ++i) {
                std::set<std::uint64_t> proj;
                w.for_each_rank([&](std::uint64_t r) {
                    proj.insert((r / g.spec().stride(i)) % g.spec().part_layer(i));
                });
                if (proj.size() * (g.spec().layer_size_u64() / g.spec().part_layer(i)) ==
                    w.size())
                    preimage = true;
            }
            c.expect(!preimage, "witness is a factor preimage after all");
        }
    }
}

// --- criterion 6: the saturation inequality, exhaustively ----------------------

void criterion6(Check& c) {
    // every spec with p <= 3, parts from n <= 6, k <= n/2, layer <= 20
    std::vector<PartSpec> options;
    for (unsigned n = 2; n <= 6; ++n)
        for (unsigned k = 1; 2 * k <= n; ++k) options.push_back({n, k});

    std::vector<std::vector<PartSpec>> specs;
    for (const auto& a : options) specs.push_back({a});
    for (const auto& a : options)
        for (const auto& b : options) specs.push_back({a, b});
    for (const auto& a : options)
        for (const auto& b : options)
            for (const auto& d : options) specs.push_back({a, b, d});

    std::size_t graphs = 0;
    std::uint64_t sets_checked = 0;
    for (const auto& parts : specs) {
        GroundSpec probe(parts);
        if (probe.layer_size() > 20) continue;
        ++graphs;
        ProductKneserGraph g(make_spec(parts));
        const DenseGraph d = g.dense();
        const std::int64_t order = static_cast<std::int64_t>(d.n);
        const std::int64_t alpha = g.alpha_formula().convert_to<std::int64_t>();
        bool all_ok = true;
        for_each_independent_set(d, [&](const std::vector<std::uint32_t>& mem) {
            ++sets_checked;
            SolverBits nb(d.n);
            for (const auto v : mem) {
                nb |= d.adj[v];
                nb.set(v);
            }
            const std::int64_t a = static_cast<std::int64_t>(mem.size());
            const std::int64_t closed = static_cast<std::int64_t>(nb.count());
            const std::int64_t lhs = a * order + alpha * (order - closed);
            const std::int64_t rhs = alpha * order;
            if (lhs > rhs) all_ok = false;
            const bool eq = lhs == rhs;
            const bool expected =
                a == 0 || a == alpha || (a < alpha && a * order == alpha * closed);
            if (eq != expected) all_ok = false;
            return true;
        });
        c.expect(all_ok, "saturation mismatch on " + probe.to_string());
    }
    c.expect(graphs >= 30, "expected at least 30 graphs in the grid, saw " +
                               std::to_string(graphs));
    c.log << "      (" << graphs << " graphs, " << sets_checked
          << " independent sets checked)\n";
}

// --- criterion 7: margin positivity over the hypothesis grid -------------------

void criterion7(Check& c) {
    const GridLimits limits{2, 3, 5, 9};
    std::size_t instances = 0, shapes = 0, violations = 0;
    for_each_hypothesis_instance(limits, [&](const std::vector<BipartitePart>& parts) {
        ++instances;
        BipartiteDisjointness g(parts);
        for (const Side side : {Side::X, Side::Y})
            for (const auto& rec : g.imprimitive_shapes(side)) {
                ++shapes;
                const auto m = g.deficiency_margins(rec.shape, side);
                if (side == Side::X ? !(m.d1 > 0) : !(m.d2 > 0)) ++violations;
            }
    });
    c.expect(instances > 1000, "grid unexpectedly small");
    c.expect(violations == 0, std::to_string(violations) + " margin violations");
    c.log << "      (" << instances << " parameter tuples, " << shapes
          << " shapes, 0 violations expected)\n";
}

// --- criterion 8: the balance quadratic over the grid --------------------------

void criterion8(Check& c) {
    const GridLimits limits{2, 3, 5, 9};
    std::size_t checked = 0, violations = 0;
    for_each_hypothesis_instance(limits, [&](const std::vector<BipartitePart>& parts) {
        BipartiteDisjointness g(parts);
        for (std::size_t j = 0; j < parts.size(); ++j) {
            if (parts[j].t != 2) continue; // the quadratic is anchored at t_j = 2
            const auto q = g.balance_quadratic(j);
            ++checked;
            if (parts[j].s == 2) {
                if (!(q.eq_lhs < q.eq_rhs)) ++violations; // must be strictly below
            } else {
                if (!q.integral_roots.empty()) ++violations;
            }
        }
    });
    c.expect(checked > 1000, "grid unexpectedly small");
    c.expect(violations == 0, std::to_string(violations) + " balance violations");
    c.log << "      (" << checked << " anchored parts checked)\n";
}

// --- criterion 9: oracle equivalence on co-feasible instances ------------------

void criterion9(Check& c) {
    std::size_t instances = 0;

    // alpha instances (layer <= 24)
    for (const auto& parts : {std::vector<PartSpec>{{2, 1}}, {{3, 1}}, {{4, 1}}, {{5, 1}},
                             {{6, 1}}, {{4, 2}}, {{5, 2}}, {{6, 2}}, {{6, 3}}, {{7, 2}},
                             std::vector<PartSpec>{{2, 1}, {2, 1}},
                             std::vector<PartSpec>{{2, 1}, {3, 1}},
                             std::vector<PartSpec>{{2, 1}, {4, 1}},
                             std::vector<PartSpec>{{2, 1}, {4, 2}},
                             std::vector<PartSpec>{{2, 1}, {5, 2}},
                             std::vector<PartSpec>{{3, 1}, {3, 1}},
                             std::vector<PartSpec>{{3, 1}, {4, 2}},
                             std::vector<PartSpec>{{2, 1}, {2, 1}, {2, 1}},
                             std::vector<PartSpec>{{2, 1}, {2, 1}, {3, 1}}}) {
        ProductKneserGraph g(make_spec(parts));
        const DenseGraph d = g.dense();
        std::vector<std::pair<unsigned, unsigned>> edges;
        for (unsigned u = 0; u < d.n; ++u)
            for (unsigned v = u + 1; v < d.n; ++v)
                if (d.adj[u].test(v)) edges.emplace_back(u, v);
        const unsigned naive = oracle::naive_alpha(static_cast<unsigned>(d.n), edges);
        c.expect(g.alpha_exact() == Int(naive),
                 "alpha oracle mismatch on " + g.spec().to_string());
        ++instances;
    }

    // max-sum instances
    struct MS {
        std::vector<PartSpec> parts;
        unsigned m;
    };
    for (const auto& inst : std::vector<MS>{{{{4, 2}}, 2},
                                            {{{4, 2}}, 3},
                                            {{{5, 2}}, 2},
                                            {{{5, 2}}, 3},
                                            {{{2, 1}, {3, 1}}, 2},
                                            {{{2, 1}, {3, 1}}, 3},
                                            {{{2, 1}, {2, 1}}, 2},
                                            {{{2, 1}, {2, 1}}, 3},
                                            {{{2, 1}, {2, 1}, {2, 1}}, 2},
                                            {{{2, 1}, {2, 1}, {2, 1}}, 3}}) {
        auto spec = make_spec(inst.parts);
        const auto res = search_max_sum(spec, inst.m);
        const auto naive = oracle::naive_max_sum(*spec, inst.m);
        c.expect(res.optimum == Int(naive),
                 "max-sum oracle mismatch on " + spec->to_string() + " m=" +
                     std::to_string(inst.m));
        ++instances;
    }

    // deficiency instances
    struct EP {
        std::vector<unsigned> n, t, s;
        bool side_x;
    };
    for (const auto& inst : std::vector<EP>{{{5}, {2}, {2}, true},
                                            {{5}, {2}, {2}, false},
                                            {{6}, {2}, {2}, true},
                                            {{6}, {2}, {3}, true},
                                            {{4}, {2}, {2}, true},
                                            {{5}, {2}, {3}, true},
                                            {{5}, {2}, {3}, false},
                                            {{2, 2}, {1, 1}, {1, 1}, true},
                                            {{2, 3}, {1, 1}, {1, 1}, true},
                                            {{2, 3}, {1, 1}, {1, 1}, false}}) {
        std::vector<BipartitePart> parts;
        for (std::size_t i = 0; i < inst.n.size(); ++i)
            parts.push_back({inst.n[i], inst.t[i], inst.s[i]});
        BipartiteDisjointness g(parts);
        const auto eps = g.epsilon(inst.side_x ? Side::X : Side::Y);
        const auto naive = oracle::naive_epsilon(inst.n, inst.t, inst.s, inst.side_x);
        c.expect(eps.epsilon == Int(naive), "deficiency oracle mismatch");
        ++instances;
    }

    c.expect(instances >= 30, "need >= 30 co-feasible instances, got " +
                                  std::to_string(instances));
    c.log << "      (" << instances << " co-feasible instances compared)\n";
}

// --- criterion 10: randomized soundness sweeps (the acceptance note) -----------

void criterion10(Check& c) {
    std::mt19937_64 rng(20250809);
    // multi-family systems on layer graphs
    struct MS {
        std::vector<PartSpec> parts;
        unsigned m;
    };
    for (const auto& inst : std::vector<MS>{{{{5, 2}}, 2},
                                            {{{6, 2}}, 3},
                                            {{{2, 1}, {3, 1}}, 2},
                                            {{{4, 2}, {5, 2}}, 2},
                                            {{{7, 3}}, 2}}) {
        auto spec = make_spec(inst.parts);
        const std::uint64_t L = spec->layer_size_u64();
        std::vector<std::vector<std::uint64_t>> masks(L);
        for (std::uint64_t r = 0; r < L; ++r) masks[r] = vertex_from_rank(*spec, r).masks;
        const auto meets = [&](std::uint64_t a, std::uint64_t b) {
            for (std::size_t i = 0; i < masks[a].size(); ++i)
                if (masks[a][i] & masks[b][i]) return true;
            return false;
        };
        const Int bound = max_sum_bound(*spec, inst.m);
        std::uint64_t violations = 0;
        for (int trial = 0; trial < 10'000; ++trial) {
            std::vector<std::set<std::uint64_t>> fams(inst.m);
            fams[0].insert(rng() % L);
            for (int attempt = 0; attempt < 60; ++attempt) {
                const unsigned j = static_cast<unsigned>(rng() % inst.m);
                const std::uint64_t v = rng() % L;
                bool ok = true;
                for (unsigned i = 0; i < inst.m && ok; ++i) {
                    if (i == j) continue;
                    for (const auto u : fams[i])
                        if (!meets(v, u)) {
                            ok = false;
                            break;
                        }
                }
                if (ok) fams[j].insert(v);
            }
            Int total = 0;
            for (const auto& f : fams) total += f.size();
            if (total > bound) ++violations;
        }
        c.expect(violations == 0, spec->to_string() + " m=" + std::to_string(inst.m) +
                                      ": " + std::to_string(violations) +
                                      " bound violations");
    }

    // nonempty pairs on two-layer graphs under the hypotheses
    for (const auto& parts : {std::vector<BipartitePart>{{5, 2, 2}},
                             std::vector<BipartitePart>{{6, 2, 2}},
                             std::vector<BipartitePart>{{6, 2, 3}},
                             std::vector<BipartitePart>{{5, 2, 2}, {5, 2, 2}}}) {
        BipartiteDisjointness g(parts);
        const std::uint64_t nx = g.spec(Side::X)->layer_size_u64();
        const std::uint64_t ny = g.spec(Side::Y)->layer_size_u64();
        std::vector<Bitset> rows;
        for (std::uint64_t r = 0; r < nx; ++r) {
            Family f(g.spec(Side::X));
            f.add_rank(r);
            rows.push_back(g.neighbors(Side::X, f).bits());
        }
        const Int bound = g.pair_sum_bound();
        std::uint64_t violations = 0;
        for (int trial = 0; trial < 10'000; ++trial) {
            Bitset a(nx), blocked(ny);
            a.set(rng() % nx);
            blocked = rows[a.find_first()];
            for (int attempt = 0; attempt < 40; ++attempt) {
                const std::uint64_t v = rng() % nx;
                if (a.test(v)) continue;
                a.set(v);
                blocked |= rows[v];
            }
            // maximal B: everything not blocked by a member of A
            const Int total = Int(a.count()) + Int(ny - blocked.count());
            if (Int(ny) == Int(blocked.count())) continue; // B empty: pair not nonempty
            if (total > bound) ++violations;
        }
        c.expect(violations == 0, "bipartite soundness violations: " +
                                      std::to_string(violations));
    }
}

struct Criterion {
    int number;
    const char* name;
    double limit_seconds;
    std::function<void(Check&)> fn;
};

} // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {1, "single-part two-branch bound reduction (n<=8, m in {2,3})", 1.0, criterion1},
        {2, "exhaustive maximum-sum optima match the bound and classify fully", 300.0,
         criterion2},
        {3, "two-layer bound at p=1: alpha exact, extremal pairs classified", 120.0,
         criterion3},
        {4, "hypothesis necessity: slacks +47 and +2 with the exact violated clause", 1.0,
         criterion4},
        {5, "independence facts: Petersen, one-factor pairs, binary products", 10.0,
         criterion5},
        {6, "saturation inequality exhaustive over all layers <= 20", 120.0, criterion6},
        {7, "margin positivity d1,d2 > 0 over the full hypothesis grid", 60.0, criterion7},
        {8, "balance quadratic: strictness at s_j=2, no integral roots at s_j>=3", 60.0,
         criterion8},
        {9, "optimized paths agree with naive oracles on >= 30 instances", 300.0,
         criterion9},
        {10, "randomized soundness: 10^4 systems per spec never exceed the bounds", 300.0,
         criterion10},
    };

    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    int failures = 0;
    for (const auto& cr : criteria) {
        if (only != 0 && cr.number != only) continue;
        Check c;
        const auto start = std::chrono::steady_clock::now();
        try {
            cr.fn(c);
        } catch (const std::exception& e) {
            c.pass = false;
            c.log << "      EXCEPTION: " << e.what() << "\n";
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (secs > cr.limit_seconds) {
            c.pass = false;
            c.log << "      runtime " << secs << "s exceeds the " << cr.limit_seconds
                  << "s limit\n";
        }
        std::printf("[%s] criterion %2d: %s (%.2fs, %llu checks)\n",
                    c.pass ? "PASS" : "FAIL", cr.number, cr.name, secs,
                    static_cast<unsigned long long>(c.asserts));
        const std::string detail = c.log.str();
        if (!detail.empty()) std::fputs(detail.c_str(), stdout);
        if (!c.pass) ++failures;
    }
    return failures;
}
