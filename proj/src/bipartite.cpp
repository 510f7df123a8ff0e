#include "crossfam/bipartite.hpp"

#include <algorithm>
#include <cassert>

#include "crossfam/errors.hpp"
#include "crossfam/subsets.hpp"
#include "crossfam/vertex.hpp"

namespace crossfam {

namespace {
constexpr std::uint64_t kPartTableLimit = 8192;
} // namespace

std::string side_name(Side s) { return s == Side::X ? "X" : "Y"; }

std::vector<std::size_t> ImprimitiveShape::paired() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < roles.size(); ++i)
        if (roles[i] == ShapeRole::Paired) out.push_back(i);
    return out;
}

std::vector<std::size_t> ImprimitiveShape::pinned() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < roles.size(); ++i)
        if (roles[i] == ShapeRole::Pinned) out.push_back(i);
    return out;
}

std::vector<std::string> HypothesesReport::violated() const {
    std::vector<std::string> out;
    for (const auto& c : clauses)
        if (!c.ok) out.push_back(c.name);
    return out;
}

BipartiteDisjointness::BipartiteDisjointness(std::vector<BipartitePart> parts)
    : parts_(std::move(parts)) {
    if (parts_.empty()) throw PreconditionFailed("at least one part required");
    std::vector<PartSpec> xs, ys;
    for (const auto& p : parts_) {
        if (p.n < 1 || p.n > 64) throw PreconditionFailed("part size must be in [1,64]");
        if (p.t < 1 || p.t > p.n || p.s < 1 || p.s > p.n)
            throw PreconditionFailed("uniformities must satisfy 1 <= t,s <= n");
        xs.push_back({p.n, p.t});
        ys.push_back({p.n, p.s});
    }
    xspec_ = std::make_shared<const GroundSpec>(std::move(xs));
    yspec_ = std::make_shared<const GroundSpec>(std::move(ys));
    x_size_ = xspec_->layer_size();
    y_size_ = yspec_->layer_size();
    x_degree_ = 1;
    y_degree_ = 1;
    for (const auto& p : parts_) {
        x_degree_ *= binom(p.n - p.t, p.s);
        y_degree_ *= binom(p.n - p.s, p.t);
        // the double-counting identity behind |X| d(X) = |Y| d(Y)
        assert(binom(p.n, p.t) * binom(p.n - p.t, p.s) ==
               binom(p.n, p.s) * binom(p.n - p.s, p.t));
    }

    if (xspec_->enumerable() && yspec_->enumerable()) {
        bool ok = true;
        for (std::size_t i = 0; i < parts_.size(); ++i)
            if (xspec_->part_layer(i) > kPartTableLimit ||
                yspec_->part_layer(i) > kPartTableLimit)
                ok = false;
        if (ok) {
            x_to_y_.resize(parts_.size());
            y_to_x_.resize(parts_.size());
            for (std::size_t i = 0; i < parts_.size(); ++i) {
                const auto& p = parts_[i];
                const std::uint64_t mt = xspec_->part_layer(i);
                const std::uint64_t ms = yspec_->part_layer(i);
                std::vector<std::uint64_t> tmask(mt), smask(ms);
                std::uint64_t m = first_subset_mask(p.t);
                for (std::uint64_t a = 0; a < mt; ++a) {
                    tmask[a] = m;
                    next_subset_mask(m, p.n);
                }
                m = first_subset_mask(p.s);
                for (std::uint64_t b = 0; b < ms; ++b) {
                    smask[b] = m;
                    next_subset_mask(m, p.n);
                }
                x_to_y_[i].resize(mt);
                y_to_x_[i].resize(ms);
                for (std::uint64_t a = 0; a < mt; ++a)
                    for (std::uint64_t b = 0; b < ms; ++b)
                        if ((tmask[a] & smask[b]) == 0) {
                            x_to_y_[i][a].push_back(static_cast<std::uint32_t>(b));
                            y_to_x_[i][b].push_back(static_cast<std::uint32_t>(a));
                        }
            }
            tables_built_ = true;
        }
    }
}

void BipartiteDisjointness::require_enumerable() const {
    if (!tables_built_)
        throw BudgetExceeded("bipartite layers too large for enumeration");
}

const std::vector<std::vector<std::uint32_t>>&
BipartiteDisjointness::cross_table(Side from, std::size_t part) const {
    return from == Side::X ? x_to_y_[part] : y_to_x_[part];
}

Int BipartiteDisjointness::pair_sum_bound() const { return y_size_ - x_degree_ + 1; }

HypothesesReport BipartiteDisjointness::check_hypotheses() const {
    HypothesesReport rep;
    auto add = [&](std::string name, bool ok) {
        rep.clauses.push_back({std::move(name), ok});
        rep.all_ok = rep.all_ok && ok;
    };
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        const auto& p = parts_[i];
        const std::string idx = std::to_string(i + 1);
        add("n_" + idx + " < s_" + idx + " + t_" + idx + " + 1", p.n >= p.s + p.t + 1);
        add("s_" + idx + " < 2", p.s >= 2);
        add("t_" + idx + " < 2", p.t >= 2);
        add("s_" + idx + " > n_" + idx + "/2", Rat(p.s) <= Rat(p.n, 2));
        add("t_" + idx + " > n_" + idx + "/2", Rat(p.t) <= Rat(p.n, 2));
    }
    for (std::size_t i = 0; i < parts_.size(); ++i)
        for (std::size_t j = 0; j < parts_.size(); ++j) {
            if (i == j) continue;
            add("n_" + std::to_string(i + 1) + " > (7/4) n_" + std::to_string(j + 1),
                Rat(parts_[i].n) <= Rat(7, 4) * Rat(parts_[j].n));
        }
    add("|Y| < |X|", y_size_ >= x_size_);
    return rep;
}

namespace {

void expand_cross(const std::vector<std::vector<std::vector<std::uint32_t>>>& tables,
                  const GroundSpec& to_spec, const std::vector<std::uint32_t>& digits,
                  std::size_t part, std::uint64_t base, Bitset& out) {
    if (part == digits.size()) {
        out.set(base);
        return;
    }
    const std::uint64_t stride = to_spec.stride(part);
    for (const auto c : tables[part][digits[part]])
        expand_cross(tables, to_spec, digits, part + 1, base + c * stride, out);
}

std::vector<std::uint32_t> rank_digits_of(const GroundSpec& spec, std::uint64_t rank) {
    std::vector<std::uint32_t> d(spec.part_count());
    for (std::size_t i = spec.part_count(); i-- > 0;) {
        d[i] = static_cast<std::uint32_t>(rank % spec.part_layer(i));
        rank /= spec.part_layer(i);
    }
    return d;
}

} // namespace

Family BipartiteDisjointness::neighbors(Side from, const Family& f) const {
    require_enumerable();
    const auto& from_spec = *spec(from);
    if (!(f.spec() == from_spec)) throw SpecMismatch("family is not on the given side");
    const auto& to_spec_ptr = spec(other_side(from));
    Bitset out(to_spec_ptr->layer_size_u64());
    const auto& tables = from == Side::X ? x_to_y_ : y_to_x_;
    f.for_each_rank([&](std::uint64_t r) {
        expand_cross(tables, *to_spec_ptr, rank_digits_of(from_spec, r), 0, 0, out);
    });
    return Family(to_spec_ptr, std::move(out));
}

Family BipartiteDisjointness::phi(Side from, const Family& f) const {
    Family n = neighbors(from, f);
    return Family(n.spec_ptr(), ~n.bits());
}

PairEvaluation BipartiteDisjointness::evaluate_pair(const Family& a, const Family& b) const {
    if (!(a.spec() == *xspec_) || !(b.spec() == *yspec_))
        throw SpecMismatch("evaluate_pair expects (X-side, Y-side) families");
    PairEvaluation ev;
    ev.empty_a = a.empty();
    ev.empty_b = b.empty();
    const Family n = neighbors(Side::X, a);
    ev.cross_intersecting = (n.bits() & b.bits()).none();
    ev.size_a = a.size();
    ev.size_b = b.size();
    ev.total = ev.size_a + ev.size_b;
    ev.bound = pair_sum_bound();
    ev.slack = ev.total - ev.bound;
    return ev;
}

// ---- formula-level shapes ----------------------------------------------------

Int BipartiteDisjointness::desc_size(const FamilyDesc& d) const {
    if (std::holds_alternative<ProductFamilyDesc>(d)) {
        const auto& pd = std::get<ProductFamilyDesc>(d);
        if (pd.shapes.size() != parts_.size())
            throw PreconditionFailed("shape count != part count");
        Int size = 1;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            const auto& p = parts_[i];
            const unsigned u = pd.side == Side::X ? p.t : p.s;
            switch (pd.shapes[i].kind) {
                case PartShape::Full: size *= binom(p.n, u); break;
                case PartShape::Fixed: size *= 1; break;
                case PartShape::MeetsFixed:
                    size *= binom(p.n, u) -
                            binom(p.n - std::popcount(pd.shapes[i].anchor), u);
                    break;
            }
        }
        return size;
    }
    const auto& sd = std::get<StarFamilyDesc>(d);
    const Side anchor_side = other_side(sd.side);
    Int avoid = 1;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        const auto& p = parts_[i];
        const unsigned u = sd.side == Side::X ? p.t : p.s;
        const unsigned au = anchor_side == Side::X ? p.t : p.s;
        if (std::popcount(sd.anchor_masks[i]) != static_cast<int>(au))
            throw PreconditionFailed("star anchor popcount mismatch");
        avoid *= binom(p.n - au, u);
    }
    return side_size(sd.side) - avoid;
}

Family BipartiteDisjointness::materialize(const FamilyDesc& d) const {
    require_enumerable();
    const Side side = std::holds_alternative<ProductFamilyDesc>(d)
                          ? std::get<ProductFamilyDesc>(d).side
                          : std::get<StarFamilyDesc>(d).side;
    const auto& sp = *spec(side);
    Family out(spec(side));
    const std::uint64_t L = sp.layer_size_u64();
    for (std::uint64_t r = 0; r < L; ++r) {
        const Vertex v = vertex_from_rank(sp, r);
        bool in = true;
        if (std::holds_alternative<ProductFamilyDesc>(d)) {
            const auto& pd = std::get<ProductFamilyDesc>(d);
            for (std::size_t i = 0; i < parts_.size() && in; ++i) {
                const auto& sh = pd.shapes[i];
                if (sh.kind == PartShape::Fixed)
                    in = v.masks[i] == sh.anchor;
                else if (sh.kind == PartShape::MeetsFixed)
                    in = (v.masks[i] & sh.anchor) != 0;
            }
        } else {
            const auto& sd = std::get<StarFamilyDesc>(d);
            bool all_disjoint = true;
            for (std::size_t i = 0; i < parts_.size(); ++i)
                if (v.masks[i] & sd.anchor_masks[i]) all_disjoint = false;
            in = !all_disjoint;
        }
        if (in) out.add_rank(r);
    }
    if (Int(out.size()) != desc_size(d))
        throw std::logic_error("materialized size != formula size");
    return out;
}

namespace {

// Exact count of disjoint component pairs in one part, for the supported
// shape combinations.
Int part_disjoint_pairs(unsigned n, unsigned t, unsigned s, const PartShape& xs,
                        const PartShape& ys) {
    const auto pc = [](std::uint64_t m) { return static_cast<unsigned>(std::popcount(m)); };
    if (xs.kind == PartShape::Fixed && ys.kind == PartShape::Fixed)
        return (xs.anchor & ys.anchor) == 0 ? 1 : 0;
    if (xs.kind == PartShape::Fixed && ys.kind == PartShape::Full)
        return binom(n - t, s);
    if (xs.kind == PartShape::Fixed && ys.kind == PartShape::MeetsFixed)
        return binom(n - t, s) - binom(n - pc(xs.anchor | ys.anchor), s);
    if (xs.kind == PartShape::Full && ys.kind == PartShape::Fixed)
        return binom(n - s, t);
    if (xs.kind == PartShape::Full && ys.kind == PartShape::Full)
        return binom(n, t) * binom(n - t, s);
    if (xs.kind == PartShape::Full && ys.kind == PartShape::MeetsFixed)
        return (binom(n, s) - binom(n - pc(ys.anchor), s)) * binom(n - s, t);
    if (xs.kind == PartShape::MeetsFixed && ys.kind == PartShape::Fixed)
        return binom(n - s, t) - binom(n - pc(xs.anchor | ys.anchor), t);
    if (xs.kind == PartShape::MeetsFixed && ys.kind == PartShape::Full)
        return (binom(n, t) - binom(n - pc(xs.anchor), t)) * binom(n - t, s);
    throw PreconditionFailed("unsupported shape combination for the formula path");
}

} // namespace

PairEvaluation BipartiteDisjointness::evaluate_pair(const FamilyDesc& a,
                                                    const FamilyDesc& b) const {
    PairEvaluation ev;
    ev.size_a = desc_size(a);
    ev.size_b = desc_size(b);
    ev.empty_a = ev.size_a == 0;
    ev.empty_b = ev.size_b == 0;
    ev.total = ev.size_a + ev.size_b;
    ev.bound = pair_sum_bound();
    ev.slack = ev.total - ev.bound;

    if (std::holds_alternative<ProductFamilyDesc>(a) &&
        std::holds_alternative<ProductFamilyDesc>(b)) {
        const auto& pa = std::get<ProductFamilyDesc>(a);
        const auto& pb = std::get<ProductFamilyDesc>(b);
        if (pa.side != Side::X || pb.side != Side::Y)
            throw PreconditionFailed("evaluate_pair expects (X-side, Y-side) descriptions");
        bool disjoint_pair_exists = true;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            const auto& p = parts_[i];
            if (part_disjoint_pairs(p.n, p.t, p.s, pa.shapes[i], pb.shapes[i]) == 0)
                disjoint_pair_exists = false;
        }
        ev.cross_intersecting = !disjoint_pair_exists;
        return ev;
    }
    // Star pairs: a singleton with its full star never has a disjoint pair.
    const auto* star = std::get_if<StarFamilyDesc>(&b);
    const auto* fixed = std::get_if<ProductFamilyDesc>(&a);
    if (!star) {
        star = std::get_if<StarFamilyDesc>(&a);
        fixed = std::get_if<ProductFamilyDesc>(&b);
    }
    if (star && fixed) {
        bool all_fixed = true;
        for (std::size_t i = 0; i < parts_.size(); ++i)
            if (fixed->shapes[i].kind != PartShape::Fixed ||
                fixed->shapes[i].anchor != star->anchor_masks[i])
                all_fixed = false;
        if (all_fixed) {
            ev.cross_intersecting = true;
            return ev;
        }
    }
    if (tables_built_) {
        const Side side_a = std::holds_alternative<ProductFamilyDesc>(a)
                                ? std::get<ProductFamilyDesc>(a).side
                                : std::get<StarFamilyDesc>(a).side;
        const Family fa = materialize(a);
        const Family fb = materialize(b);
        return side_a == Side::X ? evaluate_pair(fa, fb) : evaluate_pair(fb, fa);
    }
    throw PreconditionFailed("shape pair unsupported by the formula path and not enumerable");
}

// ---- exhaustive sweeps ---------------------------------------------------------

namespace {

std::vector<Bitset> neighbor_rows(const BipartiteDisjointness& g, Side from) {
    const auto& sp = *g.spec(from);
    const std::uint64_t n = sp.layer_size_u64();
    std::vector<Bitset> rows;
    rows.reserve(n);
    for (std::uint64_t r = 0; r < n; ++r) {
        Family f(g.spec(from));
        f.add_rank(r);
        rows.push_back(g.neighbors(from, f).bits());
    }
    return rows;
}

} // namespace

NontrivialSearchResult BipartiteDisjointness::search_max_nontrivial(
    const SweepBudget& budget) const {
    require_enumerable();
    const Side base = x_size_ <= y_size_ ? Side::X : Side::Y;
    const Side co = other_side(base);
    const std::uint64_t nb = spec(base)->layer_size_u64();
    if (nb > budget.max_side_bits)
        throw BudgetExceeded("nontrivial search capped at 2^" +
                             std::to_string(budget.max_side_bits) + " subsets");
    const auto rows = neighbor_rows(*this, base);
    const std::uint64_t co_size = spec(co)->layer_size_u64();

    NontrivialSearchResult res;
    res.alpha = -1;
    std::vector<std::uint64_t> best_masks;
    Bitset nbr(co_size);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << nb); ++mask) {
        ++res.swept;
        nbr.reset();
        for (std::uint64_t v = 0; v < nb; ++v)
            if (mask >> v & 1) nbr |= rows[v];
        const std::uint64_t covered = nbr.count();
        if (covered == co_size) continue; // co-side part would be empty
        const Int total = Int(std::popcount(mask)) + Int(co_size - covered);
        if (total > res.alpha) {
            res.alpha = total;
            best_masks.clear();
        }
        if (total == res.alpha) best_masks.push_back(mask);
    }
    if (res.alpha < 0) throw PreconditionFailed("graph is complete bipartite");

    for (const auto mask : best_masks) {
        Family a(spec(base));
        for (std::uint64_t v = 0; v < nb; ++v)
            if (mask >> v & 1) a.add_rank(v);
        Family b = phi(base, a);
        if (base == Side::X)
            res.extremal.emplace_back(std::move(a), std::move(b));
        else
            res.extremal.emplace_back(std::move(b), std::move(a));
    }
    return res;
}

EpsilonResult BipartiteDisjointness::epsilon(Side side, const SweepBudget& budget) const {
    require_enumerable();
    const Side co = other_side(side);
    const std::uint64_t nb = spec(side)->layer_size_u64();
    if (nb > budget.max_side_bits)
        throw BudgetExceeded("deficiency sweep capped at 2^" +
                             std::to_string(budget.max_side_bits) + " subsets");
    const auto rows = neighbor_rows(*this, side);
    const std::uint64_t co_size = spec(co)->layer_size_u64();

    EpsilonResult res;
    bool have = false;
    std::vector<std::uint64_t> best_masks;
    Bitset nbr(co_size);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << nb); ++mask) {
        ++res.swept;
        nbr.reset();
        for (std::uint64_t v = 0; v < nb; ++v)
            if (mask >> v & 1) nbr |= rows[v];
        const std::uint64_t covered = nbr.count();
        if (covered == co_size) continue;
        const Int def = Int(covered) - Int(std::popcount(mask));
        if (!have || def < res.epsilon) {
            res.epsilon = def;
            best_masks.clear();
            have = true;
        }
        if (def == res.epsilon) best_masks.push_back(mask);
    }
    if (!have) throw PreconditionFailed("graph is complete bipartite");

    const Int alpha = Int(co_size) - res.epsilon; // = alpha(X,Y) by the two-sided identity
    const auto co_rows = neighbor_rows(*this, co);
    for (const auto mask : best_masks) {
        Family set(spec(side));
        for (std::uint64_t v = 0; v < nb; ++v)
            if (mask >> v & 1) set.add_rank(v);
        FragmentRecord rec{side, std::move(set), Int(0), Int(0), false, false};
        nbr.reset();
        for (std::uint64_t v = 0; v < nb; ++v)
            if (mask >> v & 1) nbr |= rows[v];
        rec.nbhd_size = Int(nbr.count());
        rec.deficiency = rec.nbhd_size - Int(rec.set.size());
        rec.balanced = Int(2 * rec.set.size()) == alpha;
        rec.trivial = rec.set.size() == 1;
        if (!rec.trivial) {
            // trivial also when A = side minus N(b) for a single co-vertex b
            const Bitset want = ~rec.set.bits();
            for (std::uint64_t bvert = 0; bvert < co_size && !rec.trivial; ++bvert)
                if (co_rows[bvert] == want) rec.trivial = true;
        }
        res.fragments.push_back(std::move(rec));
    }
    return res;
}

// ---- imprimitive shapes -------------------------------------------------------

std::vector<ShapeRecord> BipartiteDisjointness::imprimitive_shapes(Side side) const {
    const std::size_t p = parts_.size();
    std::vector<ShapeRecord> out;
    std::vector<ShapeRole> roles(p, ShapeRole::Free);
    const Int side_total = side_size(side);

    const auto emit = [&]() {
        bool any = false;
        for (const auto r : roles)
            if (r != ShapeRole::Free) any = true;
        if (!any) return;
        Int a_size = 1, n_size = 1;
        for (std::size_t i = 0; i < p; ++i) {
            const auto& pt = parts_[i];
            const unsigned u = side == Side::X ? pt.t : pt.s;   // this side
            const unsigned w = side == Side::X ? pt.s : pt.t;   // co side
            switch (roles[i]) {
                case ShapeRole::Paired:
                    if (pt.n != 2 * u) return; // invalid assignment
                    a_size *= 2;
                    n_size *= 2 * binom(pt.n / 2, w);
                    break;
                case ShapeRole::Pinned:
                    n_size *= binom(pt.n - u, w);
                    break;
                case ShapeRole::Free:
                    a_size *= binom(pt.n, u);
                    n_size *= binom(pt.n, w);
                    break;
            }
        }
        if (a_size <= 1 || a_size >= side_total) return; // blocks need 1 < |A| < |X|
        out.push_back({ImprimitiveShape{roles}, a_size, n_size, n_size - a_size});
    };

    // all 3^p role assignments
    const std::size_t count = [&] {
        std::size_t c = 1;
        for (std::size_t i = 0; i < p; ++i) c *= 3;
        return c;
    }();
    for (std::size_t code = 0; code < count; ++code) {
        std::size_t c = code;
        for (std::size_t i = 0; i < p; ++i) {
            roles[i] = static_cast<ShapeRole>(c % 3);
            c /= 3;
        }
        emit();
    }
    const auto key = [](const ShapeRecord& r) {
        return std::make_tuple(r.shape.paired().size(), r.shape.pinned().size(),
                               r.shape.roles);
    };
    std::sort(out.begin(), out.end(),
              [&](const ShapeRecord& a, const ShapeRecord& b) { return key(a) < key(b); });
    return out;
}

std::vector<ShapeRecord> BipartiteDisjointness::min_imprimitive_deficiency(Side side) const {
    auto all = imprimitive_shapes(side);
    if (all.empty())
        throw NoImprimitiveShape("no valid imprimitive shape on side " + side_name(side));
    Int best = all.front().deficiency;
    for (const auto& r : all) best = std::min(best, r.deficiency);
    std::vector<ShapeRecord> out;
    for (auto& r : all)
        if (r.deficiency == best) out.push_back(std::move(r));
    return out;
}

DeficiencyMargins BipartiteDisjointness::deficiency_margins(const ImprimitiveShape& shape,
                                                            Side side) const {
    // Recompute |A| and |N(A)| from the closed forms for this shape.
    Int a_size = 1, n_size = 1;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        const auto& pt = parts_[i];
        const unsigned u = side == Side::X ? pt.t : pt.s;
        const unsigned w = side == Side::X ? pt.s : pt.t;
        switch (shape.roles[i]) {
            case ShapeRole::Paired:
                if (pt.n != 2 * u) throw PreconditionFailed("paired part needs n = 2u");
                a_size *= 2;
                n_size *= 2 * binom(pt.n / 2, w);
                break;
            case ShapeRole::Pinned:
                n_size *= binom(pt.n - u, w);
                break;
            case ShapeRole::Free:
                a_size *= binom(pt.n, u);
                n_size *= binom(pt.n, w);
                break;
        }
    }
    if (n_size == 0) throw PreconditionFailed("shape has an empty neighborhood");
    DeficiencyMargins m;
    m.side = side;
    if (side == Side::X) {
        m.beta1 = Rat(a_size, n_size);
        m.beta2 = Rat(x_degree_, n_size);
        m.theta = Rat(1, n_size);
        m.d1 = Rat(1) - m.beta1 - m.beta2 + m.theta;
    } else {
        m.delta = Rat(y_size_ - x_size_, x_size_);
        m.eta0 = Rat(n_size, x_size_);
        m.eta1 = Rat(a_size, n_size);
        m.eta2 = Rat(x_degree_, n_size);
        m.theta_prime = Rat(1, x_size_);
        m.d2 = m.delta + m.eta0 * (Rat(1) - m.eta1 - m.eta2) + m.theta_prime;
    }
    return m;
}

BalanceQuadratic BipartiteDisjointness::balance_quadratic(std::size_t j) const {
    if (parts_.size() < 2)
        throw PreconditionFailed("balance quadratic needs p >= 2");
    if (j >= parts_.size()) throw PreconditionFailed("part index out of range");
    Rat a0 = 1, b0 = 1;
    Int p_prod = 1, q_prod = 1;
    unsigned max_n = 0;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        max_n = std::max(max_n, parts_[i].n);
        if (i == j) continue;
        const auto& pt = parts_[i];
        a0 *= Rat(binom(pt.n - pt.s, pt.t), binom(pt.n, pt.t));
        b0 *= Rat(1, binom(pt.n, pt.t));
        p_prod *= binom(pt.n, pt.t);
        q_prod *= binom(pt.n - pt.s, pt.t);
    }
    const unsigned sj = parts_[j].s;
    const unsigned nj = parts_[j].n;
    BalanceQuadratic q;
    q.c2 = Rat(1) - a0;
    q.c1 = -(Rat(5) - a0 * Rat(2 * sj + 1));
    q.c0 = Rat(2) * b0 + Rat(4) - a0 * Rat(sj * sj + sj);
    q.root_limit = 4L * static_cast<long>(max_n);
    for (long x = static_cast<long>(sj) + 3; x <= q.root_limit; ++x) {
        const Rat hx = q.c2 * x * x + q.c1 * x + q.c0;
        if (hx == 0) q.integral_roots.push_back(x);
    }
    q.eq_lhs = Int(2) * p_prod * Int(nj - 1);
    q.eq_rhs = p_prod * binom(nj, 2) - q_prod * binom(nj - sj, 2) + 1;
    q.eq_holds = q.eq_lhs == q.eq_rhs;
    return q;
}

std::pair<FamilyDesc, FamilyDesc>
BipartiteDisjointness::construct_star_pair(Side singleton_side) const {
    std::vector<std::uint64_t> anchors;
    for (const auto& pt : parts_)
        anchors.push_back(first_subset_mask(singleton_side == Side::X ? pt.t : pt.s));
    ProductFamilyDesc single{singleton_side, {}};
    for (const auto a : anchors) single.shapes.push_back({PartShape::Fixed, a});
    StarFamilyDesc star{other_side(singleton_side), anchors};
    if (singleton_side == Side::X)
        return {FamilyDesc(single), FamilyDesc(star)};
    return {FamilyDesc(star), FamilyDesc(single)};
}

std::pair<FamilyDesc, FamilyDesc> BipartiteDisjointness::construct_fixed_block_pair(std::size_t j) const {
    if (j >= parts_.size()) throw PreconditionFailed("part index out of range");
    const std::uint64_t anchor = first_subset_mask(parts_[j].t);
    ProductFamilyDesc a{Side::X, {}}, b{Side::Y, {}};
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        a.shapes.push_back(i == j ? PartShape{PartShape::Fixed, anchor}
                                  : PartShape{PartShape::Full, 0});
        b.shapes.push_back(i == j ? PartShape{PartShape::MeetsFixed, anchor}
                                  : PartShape{PartShape::Full, 0});
    }
    return {FamilyDesc(a), FamilyDesc(b)};
}

PairCase BipartiteDisjointness::classify_extremal_pair(const Family& a, const Family& b) const {
    if (Int(a.size()) + Int(b.size()) != pair_sum_bound()) return PairCase::None;
    if (a.size() == 1 && b == phi(Side::X, a)) return PairCase::SingletonX;
    if (b.size() == 1 && x_size_ == y_size_ && a == phi(Side::Y, b))
        return PairCase::SingletonY;
    return PairCase::None;
}

} // namespace crossfam
