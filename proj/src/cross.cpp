#include "crossfam/cross.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "crossfam/errors.hpp"
#include "crossfam/subsets.hpp"
#include "crossfam/vertex.hpp"

namespace crossfam {

Int CrossSystem::total() const {
    Int t = 0;
    for (const auto& f : families) t += f.size();
    return t;
}

namespace {

std::vector<std::vector<std::uint64_t>> decode_all_masks(const GroundSpec& spec) {
    const std::uint64_t L = spec.layer_size_u64();
    std::vector<std::vector<std::uint64_t>> masks(L);
    for (std::uint64_t r = 0; r < L; ++r) masks[r] = vertex_from_rank(spec, r).masks;
    return masks;
}

bool masks_disjoint(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] & b[i]) return false;
    return true;
}

} // namespace

CrossViolation verify_cross_intersecting(const CrossSystem& sys) {
    const auto masks = decode_all_masks(*sys.spec);
    CrossViolation out;
    for (std::size_t i = 0; i < sys.families.size(); ++i)
        for (std::size_t j = i + 1; j < sys.families.size(); ++j) {
            const auto ra = sys.families[i].ranks();
            const auto rb = sys.families[j].ranks();
            for (const auto a : ra)
                for (const auto b : rb)
                    if (masks_disjoint(masks[a], masks[b])) {
                        out.ok = false;
                        out.family_a = i;
                        out.family_b = j;
                        out.rank_a = a;
                        out.rank_b = b;
                        return out;
                    }
        }
    return out;
}

Int max_sum_bound(const GroundSpec& spec, unsigned m) {
    if (!spec.all_at_most_half())
        throw PreconditionFailed("max-sum bound needs n_i >= 2 k_i in every part");
    if (m < 1) throw PreconditionFailed("m >= 1 required");
    if (Rat(m) <= spec.critical_ratio()) return spec.layer_size();
    return Int(m) * max_intersecting_size(spec);
}

namespace {

CrossSystem system_from_masks(const std::shared_ptr<const GroundSpec>& spec,
                              const std::vector<std::uint64_t>& fam_masks,
                              bool first_nonempty) {
    CrossSystem sys{spec, {}, first_nonempty};
    const std::uint64_t L = spec->layer_size_u64();
    for (const auto fm : fam_masks) {
        Family f(spec);
        for (std::uint64_t v = 0; v < L; ++v)
            if (fm >> v & 1) f.add_rank(v);
        sys.families.push_back(std::move(f));
    }
    return sys;
}

} // namespace

CrossSearchResult search_max_sum(std::shared_ptr<const GroundSpec> spec, unsigned m,
                                 bool require_first_nonempty, const CrossSearchBudget& budget) {
    if (m != 2 && m != 3)
        throw PreconditionFailed("exhaustive search supports m in {2,3}");
    if (!spec->enumerable() || spec->layer_size_u64() > 32)
        throw BudgetExceeded("layer too large for exhaustive max-sum search");
    max_sum_bound(*spec, m); // validates the spec

    const unsigned L = static_cast<unsigned>(spec->layer_size_u64());
    const std::uint64_t full = L == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << L) - 1;
    if (m == 2 && (std::uint64_t{1} << L) > budget.max_nodes)
        throw BudgetExceeded("2^layer exceeds the search node budget");

    // meets[v] = vertices sharing an element with v in some part (v included).
    const auto masks = decode_all_masks(*spec);
    std::vector<std::uint64_t> meets(L, 0);
    for (unsigned u = 0; u < L; ++u)
        for (unsigned v = 0; v < L; ++v)
            if (!masks_disjoint(masks[u], masks[v])) meets[u] |= std::uint64_t{1} << v;

    auto region = [&](std::uint64_t fam) {
        std::uint64_t r = full;
        while (fam) {
            const unsigned v = static_cast<unsigned>(std::countr_zero(fam));
            r &= meets[v];
            fam &= fam - 1;
        }
        return r;
    };

    CrossSearchResult res;
    res.optimum = -1;
    std::vector<std::vector<std::uint64_t>> best;
    std::uint64_t nodes = 0;

    auto consider = [&](std::vector<std::uint64_t> fams, std::uint64_t total) {
        if (Int(total) > res.optimum) {
            res.optimum = total;
            best.clear();
        }
        if (Int(total) == res.optimum) {
            if (best.size() >= budget.max_optima)
                throw BudgetExceeded("too many optimal systems to collect");
            best.push_back(std::move(fams));
        }
    };

    const std::uint64_t f1_start = require_first_nonempty ? 1 : 0;
    for (std::uint64_t f1 = f1_start; f1 <= full; ++f1) {
        if (++nodes > budget.max_nodes) throw BudgetExceeded("max-sum search node budget");
        const std::uint64_t r1 = region(f1);
        if (m == 2) {
            consider({f1, r1},
                     static_cast<std::uint64_t>(std::popcount(f1)) + std::popcount(r1));
            continue;
        }
        // m == 3: second family confined to r1, third completed maximally.
        for (std::uint64_t f2 = r1;; f2 = (f2 - 1) & r1) {
            if (++nodes > budget.max_nodes) throw BudgetExceeded("max-sum search node budget");
            const std::uint64_t r12 = region(f2) & r1;
            consider({f1, f2, r12},
                     static_cast<std::uint64_t>(std::popcount(f1)) + std::popcount(f2) +
                         std::popcount(r12));
            if (f2 == 0) break;
        }
    }
    res.nodes = nodes;
    std::sort(best.begin(), best.end());
    for (auto& fams : best)
        res.optima.push_back(system_from_masks(spec, fams, require_first_nonempty));
    return res;
}

CrossSystem construct_full_plus_empty(std::shared_ptr<const GroundSpec> spec, unsigned m) {
    max_sum_bound(*spec, m);
    CrossSystem sys{spec, {}, true};
    sys.families.push_back(Family::full(spec));
    for (unsigned i = 1; i < m; ++i) sys.families.push_back(Family(spec));
    return sys;
}

CrossSystem construct_identical_intersecting(std::shared_ptr<const GroundSpec> spec, unsigned m) {
    max_sum_bound(*spec, m);
    const std::size_t i0 = spec->critical_parts().front();
    const std::uint64_t L = spec->layer_size_u64();
    const std::uint64_t stride = spec->stride(i0);
    const std::uint64_t m0 = spec->part_layer(i0);
    const auto& p = spec->part(i0);

    Family star(spec);
    for (std::uint64_t r = 0; r < L; ++r) {
        const std::uint64_t digit = (r / stride) % m0;
        if (unrank_subset(digit, p.n, p.k) & 1) star.add_rank(r); // element 1 in part i0
    }
    if (Int(star.size()) != max_intersecting_size(*spec))
        throw std::logic_error("star size != maximum intersecting size");
    CrossSystem sys{spec, {}, true};
    for (unsigned i = 0; i < m; ++i) sys.families.push_back(star);
    return sys;
}

namespace {

// Complement of a sub-layer rank, part-wise, within an all-half spec.
std::uint64_t complement_rank(const GroundSpec& sub, std::uint64_t rank) {
    const Vertex v = vertex_from_rank(sub, rank);
    std::vector<std::uint64_t> masks(v.masks.size());
    for (std::size_t i = 0; i < v.masks.size(); ++i) {
        const unsigned n = sub.part(i).n;
        masks[i] = ((std::uint64_t{1} << n) - 1) & ~v.masks[i];
    }
    return vertex_from_masks(sub, std::move(masks)).rank;
}

GroundSpec sub_spec(const GroundSpec& spec, const std::vector<std::size_t>& parts) {
    std::vector<PartSpec> ps;
    for (const auto i : parts) ps.push_back(spec.part(i));
    return GroundSpec(std::move(ps));
}

// Sub-layer rank of a full-layer rank, over the given (ascending) parts.
std::uint64_t project_rank(const GroundSpec& spec, const std::vector<std::size_t>& parts,
                           std::uint64_t rank) {
    std::uint64_t sub = 0;
    for (const auto i : parts) {
        const std::uint64_t digit = (rank / spec.stride(i)) % spec.part_layer(i);
        sub = sub * spec.part_layer(i) + digit;
    }
    return sub;
}

} // namespace

CrossSystem construct_pair_split(std::shared_ptr<const GroundSpec> spec,
                                 const PairSplitSpec& split) {
    if (spec->critical_ratio() != Rat(2))
        throw PreconditionFailed("pair-split construction needs min n_i/k_i = 2");
    if (split.half_parts.empty())
        throw PreconditionFailed("S1 must be nonempty");
    std::vector<std::size_t> s1 = split.half_parts;
    std::sort(s1.begin(), s1.end());
    if (std::adjacent_find(s1.begin(), s1.end()) != s1.end())
        throw PreconditionFailed("S1 indices must be distinct");
    for (const auto i : s1) {
        if (i >= spec->part_count()) throw PreconditionFailed("S1 index out of range");
        if (spec->part(i).n != 2 * spec->part(i).k)
            throw PreconditionFailed("every S1 part needs n = 2k");
    }
    const GroundSpec sub = sub_spec(*spec, s1);
    const std::uint64_t sub_layer = sub.layer_size_u64();

    std::set<std::uint64_t> base;
    for (const auto& v : split.base) {
        const std::uint64_t r = vertex_from_masks(sub, v.masks).rank;
        if (!base.insert(r).second) throw PreconditionFailed("base vertices must be distinct");
    }
    for (const auto r : base)
        if (base.count(complement_rank(sub, r)))
            throw PreconditionFailed("base contains a complement pair");
    if (2 * base.size() >= sub_layer)
        throw PreconditionFailed("base too large: 2 w0 < |F| required");

    // Remaining complement pairs, keyed by the lower rank.
    std::set<std::uint64_t> remaining_keys;
    for (std::uint64_t r = 0; r < sub_layer; ++r) {
        const std::uint64_t c = complement_rank(sub, r);
        if (base.count(r) || base.count(c)) continue;
        remaining_keys.insert(std::min(r, c));
    }
    std::map<std::uint64_t, int> assign;
    for (const auto& [key, fam] : split.pair_assignment) {
        if (fam != 1 && fam != 2) throw PreconditionFailed("pair assignment must be 1 or 2");
        if (!remaining_keys.count(key))
            throw PreconditionFailed("pair assignment key is not a remaining complement pair");
        if (!assign.emplace(key, fam).second)
            throw PreconditionFailed("pair assigned twice");
    }
    if (assign.size() != remaining_keys.size())
        throw PreconditionFailed("every remaining complement pair must be assigned");

    // Sub-layer membership per family.
    std::vector<char> side(sub_layer, 0); // 0 = neither, 1, 2, 3 = both (base)
    for (const auto r : base) side[r] = 3;
    for (const auto& [key, fam] : assign) {
        side[key] = static_cast<char>(fam);
        side[complement_rank(sub, key)] = static_cast<char>(fam);
    }

    const std::uint64_t L = spec->layer_size_u64();
    Family a1(spec), a2(spec);
    for (std::uint64_t r = 0; r < L; ++r) {
        const char s = side[project_rank(*spec, s1, r)];
        if (s & 1) a1.add_rank(r);
        if (s & 2) a2.add_rank(r);
    }
    CrossSystem sys{spec, {std::move(a1), std::move(a2)}, true};
    if (sys.total() != spec->layer_size())
        throw std::logic_error("pair-split construction total != |X|");
    return sys;
}

ExtremalCertificate classify_optimum(const CrossSystem& sys) {
    const auto& spec = *sys.spec;
    const unsigned m = static_cast<unsigned>(sys.families.size());
    ExtremalCertificate cert{sys.total(), max_sum_bound(spec, m), {}, std::nullopt,
                             std::nullopt, false};
    cert.at_bound = (cert.total == cert.bound);
    if (!cert.at_bound) return cert;

    // (i) one family is the whole layer, the rest are empty.
    {
        std::size_t fulls = 0, empties = 0;
        for (const auto& f : sys.families) {
            if (f.is_full()) ++fulls;
            else if (f.empty()) ++empties;
        }
        if (fulls == 1 && empties == m - 1)
            cert.matched.push_back(ExtremalCase::FullPlusEmpty);
    }

    // (ii) identical maximum intersecting families.
    {
        bool identical = true;
        for (std::size_t i = 1; i < sys.families.size(); ++i)
            if (!(sys.families[i] == sys.families[0])) identical = false;
        if (identical && Int(sys.families[0].size()) == max_intersecting_size(spec)) {
            const auto masks = decode_all_masks(spec);
            const auto ranks = sys.families[0].ranks();
            bool intersecting = true;
            for (std::size_t i = 0; i < ranks.size() && intersecting; ++i)
                for (std::size_t j = i + 1; j < ranks.size() && intersecting; ++j)
                    if (masks_disjoint(masks[ranks[i]], masks[ranks[j]])) intersecting = false;
            if (intersecting) cert.matched.push_back(ExtremalCase::IdenticalIntersecting);
        }
    }

    // (iii) shared base + whole complement pairs, cylinder over some S1.
    if (m == 2 && spec.critical_ratio() == Rat(2)) {
        std::vector<std::size_t> half_parts;
        for (std::size_t i = 0; i < spec.part_count(); ++i)
            if (spec.part(i).n == 2 * spec.part(i).k) half_parts.push_back(i);

        const std::uint64_t L = spec.layer_size_u64();
        for (std::uint64_t sel = 1; sel < (std::uint64_t{1} << half_parts.size()); ++sel) {
            std::vector<std::size_t> s1;
            for (std::size_t b = 0; b < half_parts.size(); ++b)
                if (sel >> b & 1) s1.push_back(half_parts[b]);
            const GroundSpec sub = sub_spec(spec, s1);
            const std::uint64_t sub_layer = sub.layer_size_u64();
            const std::uint64_t rest = L / sub_layer;

            std::set<std::uint64_t> b1, b2;
            sys.families[0].for_each_rank(
                [&](std::uint64_t r) { b1.insert(project_rank(spec, s1, r)); });
            sys.families[1].for_each_rank(
                [&](std::uint64_t r) { b2.insert(project_rank(spec, s1, r)); });
            if (b1.size() * rest != sys.families[0].size()) continue; // not a cylinder
            if (b2.size() * rest != sys.families[1].size()) continue;

            std::set<std::uint64_t> base;
            std::set_intersection(b1.begin(), b1.end(), b2.begin(), b2.end(),
                                  std::inserter(base, base.begin()));
            bool ok = true;
            std::set<std::uint64_t> forbidden; // complements of the base
            for (const auto r : base) {
                const auto c = complement_rank(sub, r);
                if (base.count(c)) ok = false;
                forbidden.insert(c);
            }
            if (!ok) continue;
            auto whole_pairs_outside = [&](const std::set<std::uint64_t>& b) {
                for (const auto r : b) {
                    if (base.count(r)) continue;
                    if (forbidden.count(r)) return false;
                    if (!b.count(complement_rank(sub, r))) return false;
                }
                return true;
            };
            if (!whole_pairs_outside(b1) || !whole_pairs_outside(b2)) continue;
            // The two sides partition everything outside base and its bar;
            // they are disjoint outside base by construction, so a count
            // check settles coverage.
            const std::uint64_t routed = (b1.size() - base.size()) + (b2.size() - base.size());
            if (base.size() * 2 + routed != sub_layer) continue;
            if (routed == 0) continue; // v >= 1; v = 0 degenerates to case (ii)

            cert.matched.push_back(ExtremalCase::PairSplit);
            cert.pair_split = PairSplitData{s1, base.size(), routed / 2};
            break;
        }
    }

    std::sort(cert.matched.begin(), cert.matched.end());
    cert.matched.erase(std::unique(cert.matched.begin(), cert.matched.end()),
                       cert.matched.end());
    if (!cert.matched.empty()) cert.primary = cert.matched.front();
    return cert;
}

} // namespace crossfam
