#include "crossfam/ground.hpp"

#include <sstream>

#include "crossfam/errors.hpp"

namespace crossfam {

GroundSpec::GroundSpec(std::vector<PartSpec> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw PreconditionFailed("GroundSpec needs p >= 1 parts");
    layer_size_ = 1;
    for (const auto& ps : parts_) {
        if (ps.n < 1 || ps.n > 64) throw PreconditionFailed("part size must be in [1,64]");
        if (ps.k < 1 || ps.k > ps.n) throw PreconditionFailed("uniformity must satisfy 1 <= k <= n");
        part_sizes_.push_back(binom_u64(ps.n, ps.k));
        layer_size_ *= part_sizes_.back();
    }
    enumerable_ = layer_size_ <= kEnumerableLimit;
    if (enumerable_) {
        strides_.assign(parts_.size(), 1);
        for (std::size_t i = parts_.size(); i-- > 1;)
            strides_[i - 1] = strides_[i] * part_sizes_[i];
    }
}

std::uint64_t GroundSpec::layer_size_u64() const {
    if (!enumerable_)
        throw BudgetExceeded("layer of size " + layer_size_.str() + " exceeds the enumerable budget");
    return layer_size_.convert_to<std::uint64_t>();
}

std::uint64_t GroundSpec::stride(std::size_t i) const {
    if (!enumerable_) throw BudgetExceeded("strides need an enumerable layer");
    return strides_[i];
}

GroundSpec GroundSpec::complement_spec() const {
    std::vector<PartSpec> ps;
    ps.reserve(parts_.size());
    for (const auto& p : parts_) {
        if (p.k == p.n) throw PreconditionFailed("complement layer would have k = 0");
        ps.push_back({p.n, p.n - p.k});
    }
    return GroundSpec(std::move(ps));
}

Rat GroundSpec::critical_ratio() const {
    Rat best(parts_[0].n, parts_[0].k);
    for (const auto& p : parts_) best = std::min(best, Rat(p.n, p.k));
    return best;
}

std::vector<std::size_t> GroundSpec::critical_parts() const {
    const Rat best = critical_ratio();
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < parts_.size(); ++i)
        if (Rat(parts_[i].n, parts_[i].k) == best) out.push_back(i);
    return out;
}

bool GroundSpec::all_at_most_half() const {
    for (const auto& p : parts_)
        if (p.n < 2 * p.k) return false;
    return true;
}

bool GroundSpec::all_exactly_half() const {
    for (const auto& p : parts_)
        if (p.n != 2 * p.k) return false;
    return true;
}

std::string GroundSpec::to_string() const {
    std::ostringstream os;
    os << "n=";
    for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i].n;
    os << " k=";
    for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i].k;
    return os.str();
}

Int binom_product(const GroundSpec& spec,
                  std::optional<std::pair<std::size_t, Int>> override_factor) {
    Int prod = 1;
    for (std::size_t i = 0; i < spec.part_count(); ++i) {
        if (override_factor && override_factor->first == i)
            prod *= override_factor->second;
        else
            prod *= spec.part_layer(i);
    }
    return prod;
}

Int max_intersecting_size(const GroundSpec& spec) {
    Int best = 0;
    for (std::size_t i = 0; i < spec.part_count(); ++i) {
        const auto& p = spec.part(i);
        Int candidate = binom_product(spec, {{i, binom(p.n - 1, p.k - 1)}});
        if (candidate > best) best = candidate;
    }
    return best;
}

} // namespace crossfam
