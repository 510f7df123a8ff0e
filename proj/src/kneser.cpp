#include "crossfam/kneser.hpp"

#include <algorithm>
#include <cassert>
#include <map>

#include "crossfam/errors.hpp"
#include "crossfam/subsets.hpp"

namespace crossfam {

namespace {

constexpr std::uint64_t kPartTableLimit = 8192;

std::vector<std::uint32_t> rank_digits(const GroundSpec& spec, std::uint64_t rank) {
    std::vector<std::uint32_t> d(spec.part_count());
    for (std::size_t i = spec.part_count(); i-- > 0;) {
        d[i] = static_cast<std::uint32_t>(rank % spec.part_layer(i));
        rank /= spec.part_layer(i);
    }
    return d;
}

} // namespace

std::string set_class_name(SetClass c) {
    switch (c) {
        case SetClass::Empty: return "empty";
        case SetClass::Maximum: return "maximum";
        case SetClass::Imprimitive: return "imprimitive";
        case SetClass::Ordinary: return "ordinary";
    }
    return "?";
}

ProductKneserGraph::ProductKneserGraph(std::shared_ptr<const GroundSpec> spec)
    : spec_(std::move(spec)) {
    for (const auto& p : spec_->parts())
        if (p.n < 2 * p.k)
            throw PreconditionFailed("product Kneser graph needs n_i >= 2 k_i");
    order_ = spec_->layer_size();
    alpha_ = max_intersecting_size(*spec_);
    critical_parts_ = spec_->critical_parts();
    // Closed form consistency: alpha / |G| = 1 / min_i (n_i/k_i).
    assert(Rat(alpha_, order_) == Rat(1) / spec_->critical_ratio());

    if (spec_->enumerable()) {
        bool parts_ok = true;
        for (std::size_t i = 0; i < spec_->part_count(); ++i)
            if (spec_->part_layer(i) > kPartTableLimit) parts_ok = false;
        if (parts_ok) {
            tables_.resize(spec_->part_count());
            for (std::size_t i = 0; i < spec_->part_count(); ++i) {
                const auto& p = spec_->part(i);
                const std::uint64_t m = spec_->part_layer(i);
                tables_[i].resize(m);
                std::vector<std::uint64_t> masks(m);
                std::uint64_t mask = first_subset_mask(p.k);
                for (std::uint64_t a = 0; a < m; ++a) {
                    masks[a] = mask;
                    next_subset_mask(mask, p.n);
                }
                // Subsets are visited in colex order, so masks[a] has rank a.
                for (std::uint64_t a = 0; a < m; ++a)
                    for (std::uint64_t b = 0; b < m; ++b)
                        if ((masks[a] & masks[b]) == 0)
                            tables_[i][a].push_back(static_cast<std::uint32_t>(b));
            }
        }
    }
}

void ProductKneserGraph::require_enumerable() const {
    if (tables_.empty())
        throw BudgetExceeded("layer " + order_.str() + " too large for graph operations");
}

Rat ProductKneserGraph::alpha_ratio() const { return Rat(alpha_, order_); }

const std::vector<std::uint32_t>&
ProductKneserGraph::part_disjoint(std::size_t part, std::uint64_t a) const {
    return tables_[part][a];
}

namespace {

// Writes the product of per-part disjoint index lists into `out` as ranks.
void expand_product(const std::vector<std::vector<std::vector<std::uint32_t>>>& tables,
                    const GroundSpec& spec, const std::vector<std::uint32_t>& digits,
                    std::size_t part, std::uint64_t base, Bitset& out) {
    if (part == digits.size()) {
        out.set(base);
        return;
    }
    const auto& list = tables[part][digits[part]];
    const std::uint64_t stride = spec.stride(part);
    for (const auto c : list)
        expand_product(tables, spec, digits, part + 1, base + c * stride, out);
}

} // namespace

Family ProductKneserGraph::neighborhood(const Family& f, bool closed) const {
    require_enumerable();
    if (!(f.spec() == *spec_)) throw SpecMismatch("family over a different layer");
    Bitset out(spec_->layer_size_u64());
    f.for_each_rank([&](std::uint64_t r) {
        expand_product(tables_, *spec_, rank_digits(*spec_, r), 0, 0, out);
    });
    if (closed) out |= f.bits();
    return Family(f.spec_ptr(), std::move(out));
}

Family ProductKneserGraph::non_neighbors(const Family& f) const {
    Family n = neighborhood(f, false);
    return Family(f.spec_ptr(), ~n.bits());
}

bool ProductKneserGraph::is_independent(const Family& f) const {
    const Family n = neighborhood(f, false);
    return (n.bits() & f.bits()).none();
}

DenseGraph ProductKneserGraph::dense(std::uint64_t max_vertices) const {
    require_enumerable();
    const std::uint64_t v_count = spec_->layer_size_u64();
    if (v_count > max_vertices)
        throw BudgetExceeded("dense adjacency capped at " + std::to_string(max_vertices) +
                             " vertices, layer has " + std::to_string(v_count));
    // Per-part disjointness as bit rows for O(1) pair tests.
    std::vector<std::vector<Bitset>> rows(spec_->part_count());
    for (std::size_t i = 0; i < spec_->part_count(); ++i) {
        const std::uint64_t m = spec_->part_layer(i);
        rows[i].assign(m, Bitset(m));
        for (std::uint64_t a = 0; a < m; ++a)
            for (const auto b : tables_[i][a]) rows[i][a].set(b);
    }
    std::vector<std::vector<std::uint32_t>> digits(v_count);
    for (std::uint64_t r = 0; r < v_count; ++r) digits[r] = rank_digits(*spec_, r);

    DenseGraph g(v_count);
    for (std::uint64_t u = 0; u < v_count; ++u)
        for (std::uint64_t v = u + 1; v < v_count; ++v) {
            bool adj = true;
            for (std::size_t i = 0; i < spec_->part_count() && adj; ++i)
                adj = rows[i][digits[u][i]].test(digits[v][i]);
            if (adj) g.add_edge(u, v);
        }
    return g;
}

Int ProductKneserGraph::alpha_exact(const SolveBudget& budget) const {
    if (!tables_.empty() && spec_->layer_size_u64() <= 8192) {
        try {
            const DenseGraph g = dense();
            const std::size_t solved = max_independent_set_size(g, budget);
            if (Int(solved) != alpha_)
                throw std::logic_error("solver alpha disagrees with closed form");
            return Int(solved);
        } catch (const BudgetExceeded&) {
            // fall through to the closed form
        }
    }
    return alpha_;
}

std::vector<Family> ProductKneserGraph::maximum_independent_sets(const SolveBudget& budget) const {
    require_enumerable();
    const DenseGraph g = dense();
    const std::size_t target = alpha_.convert_to<std::size_t>();
    auto sets = independent_sets_of_size(g, target, budget);
    std::vector<Family> out;
    out.reserve(sets.size());
    for (const auto& s : sets) {
        Family f(spec_);
        for (const auto v : s) f.add_rank(v);
        out.push_back(std::move(f));
    }
    return out;
}

bool ProductKneserGraph::factor_independent(std::size_t part, const std::vector<char>& picked) const {
    for (std::uint64_t a = 0; a < picked.size(); ++a) {
        if (!picked[a]) continue;
        for (const auto b : tables_[part][a])
            if (picked[b]) return false;
    }
    return true;
}

MisNormalReport ProductKneserGraph::mis_normal(const SolveBudget& budget) const {
    require_enumerable();
    MisNormalReport rep;
    rep.normal = true;
    const DenseGraph g = dense();
    const std::size_t target = alpha_.convert_to<std::size_t>();
    // Stream the maximum independent sets: the first non-preimage settles the
    // verdict without enumerating the rest.
    for_each_independent_set_of_size(
        g, target,
        [&](const std::vector<std::uint32_t>& members) {
            ++rep.mis_count;
            bool preimage = false;
            for (std::size_t i = 0; i < spec_->part_count() && !preimage; ++i) {
                const std::uint64_t m = spec_->part_layer(i);
                std::vector<char> picked(m, 0);
                std::uint64_t distinct = 0;
                for (const auto r : members) {
                    const std::uint64_t a = (r / spec_->stride(i)) % m;
                    if (!picked[a]) {
                        picked[a] = 1;
                        ++distinct;
                    }
                }
                // S always sits inside the cylinder over its own projection,
                // so a size match means equality.
                const std::uint64_t cylinder = distinct * (spec_->layer_size_u64() / m);
                if (cylinder == members.size() && factor_independent(i, picked))
                    preimage = true;
            }
            if (!preimage) {
                rep.normal = false;
                Family w(spec_);
                for (const auto r : members) w.add_rank(r);
                rep.witness = std::move(w);
                return false;
            }
            return true;
        },
        budget);
    return rep;
}

IndependentSetReport ProductKneserGraph::classify_independent_set(const Family& f) const {
    if (!is_independent(f)) throw NotIndependent("family is not an independent set");
    const Family closed = neighborhood(f, true);
    IndependentSetReport rep{f, Int(closed.size()), order_ - Int(closed.size()), Rat(0),
                             SetClass::Ordinary};
    const Int sz(f.size());
    if (sz == 0) {
        rep.classification = SetClass::Empty;
        return rep;
    }
    rep.ratio = Rat(sz, rep.closed_neighborhood_size);
    if (sz == alpha_)
        rep.classification = SetClass::Maximum;
    else if (rep.ratio == alpha_ratio())
        rep.classification = SetClass::Imprimitive;
    else
        rep.classification = SetClass::Ordinary;
    return rep;
}

SaturationReport ProductKneserGraph::saturation_check(const Family& f) const {
    const auto rep = classify_independent_set(f); // validates independence
    SaturationReport out;
    out.lhs = Rat(Int(f.size())) + alpha_ratio() * Rat(rep.non_neighbors_size);
    out.rhs = Rat(alpha_);
    if (out.lhs > out.rhs)
        throw std::logic_error("saturation inequality violated (impossible)");
    out.equality = (out.lhs == out.rhs);
    return out;
}

LocalDensityReport ProductKneserGraph::local_density_check(const Family& b, const Family& s,
                                                           const SolveBudget& budget) const {
    if (b.empty()) throw EmptySubset("B must be nonempty");
    if (!is_independent(s)) throw NotIndependent("S is not independent");
    require_enumerable();

    // alpha of the induced subgraph on B, via the exact solver.
    const auto b_ranks = b.ranks();
    std::vector<std::vector<std::uint32_t>> digits(b_ranks.size());
    for (std::size_t i = 0; i < b_ranks.size(); ++i) digits[i] = rank_digits(*spec_, b_ranks[i]);
    DenseGraph g(b_ranks.size());
    for (std::size_t u = 0; u < b_ranks.size(); ++u)
        for (std::size_t v = u + 1; v < b_ranks.size(); ++v) {
            bool adj = true;
            for (std::size_t i = 0; i < spec_->part_count() && adj; ++i) {
                const auto& list = tables_[i][digits[u][i]];
                adj = std::find(list.begin(), list.end(), digits[v][i]) != list.end();
            }
            if (adj) g.add_edge(u, v);
        }
    LocalDensityReport rep;
    rep.alpha_induced = Int(max_independent_set_size(g, budget));
    const Int lhs = Int(s.size()) * Int(b.size());
    const Int rhs = rep.alpha_induced * order_;
    rep.holds = lhs <= rhs;
    rep.equality = lhs == rhs;
    rep.overlap = Int((s.bits() & b.bits()).count());
    if (!rep.holds)
        throw std::logic_error("local density inequality violated (impossible)");
    if (rep.equality && rep.overlap != rep.alpha_induced)
        throw std::logic_error("density equality without |S & B| = alpha(G[B])");
    return rep;
}

bool ProductKneserGraph::imprimitive_predicate() const {
    std::size_t twos = 0;
    for (const auto& p : spec_->parts()) {
        if (p.n == 2 * p.k && p.n >= 4) return true;
        if (p.n == 2) ++twos;
    }
    return twos >= 2;
}

namespace {

struct ImprimitiveSearch {
    const DenseGraph& g;
    std::int64_t k_c, n_c; // critical ratio alpha/|G| = k_c/n_c
    std::int64_t alpha;
    const SolveBudget& budget;
    std::uint64_t nodes = 0;
    std::vector<std::uint32_t> cur;
    SolverBits nbhd; // N[cur]
    std::vector<std::uint32_t> witness;

    bool dfs(SolverBits cand) {
        while (cand.any()) {
            if (++nodes > budget.max_nodes)
                throw BudgetExceeded("imprimitivity search node budget exhausted");
            const auto v = cand.find_first();
            cand.reset(v);
            SolverBits nb_saved = nbhd;
            nbhd |= g.adj[v];
            nbhd.set(v);
            cur.push_back(static_cast<std::uint32_t>(v));

            const std::int64_t delta =
                k_c * static_cast<std::int64_t>(nbhd.count()) -
                n_c * static_cast<std::int64_t>(cur.size());
            if (delta == 0 && static_cast<std::int64_t>(cur.size()) < alpha) {
                witness = cur;
                return true;
            }
            // Any extension C adds at least |C| new closed-neighborhood
            // vertices, so delta can shrink by at most (n_c - k_c) per vertex.
            SolverBits ext = cand;
            ext &= ~g.adj[v];
            std::int64_t max_ext = alpha - 1 - static_cast<std::int64_t>(cur.size());
            max_ext = std::min(max_ext, static_cast<std::int64_t>(ext.count()));
            if (delta <= (n_c - k_c) * max_ext) {
                max_ext = std::min(max_ext,
                                   static_cast<std::int64_t>(clique_cover_bound(
                                       g, ext, static_cast<std::size_t>(max_ext) + 1)));
                if (delta <= (n_c - k_c) * max_ext && dfs(std::move(ext))) return true;
            }
            cur.pop_back();
            nbhd = std::move(nb_saved);
        }
        return false;
    }
};

} // namespace

ImprimitivityReport ProductKneserGraph::imprimitivity(ImprimitivityMode mode,
                                                      const SolveBudget& budget) const {
    ImprimitivityReport rep;
    if (mode == ImprimitivityMode::Predicate) {
        rep.imprimitive = imprimitive_predicate();
        return rep;
    }
    require_enumerable();
    const std::uint64_t v_count = spec_->layer_size_u64();

    // Cheap deterministic candidates first: cylinders over one fixed block of
    // a part (and over a fixed block pair), verified exactly.
    auto try_cylinder = [&](const std::vector<std::pair<std::size_t, std::uint64_t>>& pins)
        -> std::optional<Family> {
        Family f(spec_);
        for (std::uint64_t r = 0; r < v_count; ++r) {
            bool in = true;
            for (const auto& [part, digit] : pins)
                if ((r / spec_->stride(part)) % spec_->part_layer(part) != digit) in = false;
            if (in) f.add_rank(r);
        }
        if (f.empty() || Int(f.size()) >= alpha_) return std::nullopt;
        if (!is_independent(f)) return std::nullopt;
        const auto cls = classify_independent_set(f);
        if (cls.classification == SetClass::Imprimitive) return f;
        return std::nullopt;
    };
    for (std::size_t i = 0; i < spec_->part_count(); ++i)
        if (auto f = try_cylinder({{i, 0}})) {
            rep.imprimitive = true;
            rep.witness = std::move(*f);
            return rep;
        }
    for (std::size_t i = 0; i < spec_->part_count(); ++i)
        for (std::size_t j = i + 1; j < spec_->part_count(); ++j)
            if (auto f = try_cylinder({{i, 0}, {j, 0}})) {
                rep.imprimitive = true;
                rep.witness = std::move(*f);
                return rep;
            }

    // Exhaustive DFS over independent sets with the delta prune.
    const DenseGraph g = dense();
    const Rat cr = spec_->critical_ratio(); // n_c / k_c in lowest terms
    ImprimitiveSearch s{g,
                        boost::multiprecision::denominator(cr).convert_to<std::int64_t>(),
                        boost::multiprecision::numerator(cr).convert_to<std::int64_t>(),
                        alpha_.convert_to<std::int64_t>(),
                        budget,
                        0,
                        {},
                        SolverBits(g.n),
                        {}};
    SolverBits all(g.n);
    all.set();
    const bool found = s.dfs(std::move(all));
    rep.nodes = s.nodes;
    rep.imprimitive = found;
    if (found) {
        Family f(spec_);
        for (const auto v : s.witness) f.add_rank(v);
        rep.witness = std::move(f);
    }
    return rep;
}

ImprimitiveStructure ProductKneserGraph::imprimitive_structure(const Family& f) const {
    ImprimitiveStructure out;
    for (std::size_t i = 0; i < spec_->part_count(); ++i)
        if (spec_->part(i).n == 2 * spec_->part(i).k) out.support.push_back(i);
    if (out.support.empty() || f.empty()) return out;

    // Project onto the support parts.
    std::uint64_t support_layer = 1, rest_layer = 1;
    for (std::size_t i = 0; i < spec_->part_count(); ++i) {
        const bool in_support =
            std::find(out.support.begin(), out.support.end(), i) != out.support.end();
        (in_support ? support_layer : rest_layer) *= spec_->part_layer(i);
    }
    std::map<std::vector<std::uint32_t>, std::uint64_t> base; // digit tuple -> count
    f.for_each_rank([&](std::uint64_t r) {
        const auto d = rank_digits(*spec_, r);
        std::vector<std::uint32_t> key;
        for (const auto i : out.support) key.push_back(d[i]);
        ++base[key];
    });
    out.base_size = base.size();
    const bool cylinder = f.size() == out.base_size * rest_layer;

    // Base must be intersecting: on all-half parts, disjoint <=> complement.
    out.base_intersecting = true;
    for (auto it = base.begin(); it != base.end() && out.base_intersecting; ++it)
        for (auto jt = std::next(it); jt != base.end() && out.base_intersecting; ++jt) {
            bool all_disjoint = true;
            for (std::size_t t = 0; t < out.support.size(); ++t) {
                const std::size_t part = out.support[t];
                const auto& list = tables_[part][it->first[t]];
                if (std::find(list.begin(), list.end(), jt->first[t]) == list.end()) {
                    all_disjoint = false;
                    break;
                }
            }
            if (all_disjoint) out.base_intersecting = false;
        }
    out.base_non_maximum = 2 * out.base_size < support_layer;
    out.matches = cylinder && out.base_intersecting && out.base_non_maximum;
    return out;
}

} // namespace crossfam
