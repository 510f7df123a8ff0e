#include "crossfam/family.hpp"

#include "crossfam/errors.hpp"

namespace crossfam {

Family::Family(std::shared_ptr<const GroundSpec> spec) : spec_(std::move(spec)) {
    bits_.resize(spec_->layer_size_u64());
}

Family::Family(std::shared_ptr<const GroundSpec> spec, Bitset bits)
    : spec_(std::move(spec)), bits_(std::move(bits)) {
    if (bits_.size() != spec_->layer_size_u64())
        throw PreconditionFailed("family bitset length != layer size");
}

Family Family::full(std::shared_ptr<const GroundSpec> spec) {
    Family f(std::move(spec));
    f.bits_.set();
    return f;
}

void Family::for_each_rank(const std::function<void(std::uint64_t)>& fn) const {
    for (auto r = bits_.find_first(); r != Bitset::npos; r = bits_.find_next(r))
        fn(r);
}

std::vector<std::uint64_t> Family::ranks() const {
    std::vector<std::uint64_t> out;
    out.reserve(bits_.count());
    for (auto r = bits_.find_first(); r != Bitset::npos; r = bits_.find_next(r))
        out.push_back(r);
    return out;
}

void Family::check_same_spec(const Family& o) const {
    if (!(*spec_ == *o.spec_)) throw SpecMismatch("families over different ground specs");
}

Family Family::operator&(const Family& o) const {
    check_same_spec(o);
    return Family(spec_, bits_ & o.bits_);
}

Family Family::operator|(const Family& o) const {
    check_same_spec(o);
    return Family(spec_, bits_ | o.bits_);
}

Family Family::operator-(const Family& o) const {
    check_same_spec(o);
    return Family(spec_, bits_ - o.bits_);
}

Family Family::complement() const {
    return Family(spec_, ~bits_);
}

bool Family::operator==(const Family& o) const {
    return *spec_ == *o.spec_ && bits_ == o.bits_;
}

} // namespace crossfam
