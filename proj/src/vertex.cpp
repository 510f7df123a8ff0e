#include "crossfam/vertex.hpp"

#include <sstream>

#include "crossfam/errors.hpp"
#include "crossfam/subsets.hpp"

namespace crossfam {

Vertex vertex_from_masks(const GroundSpec& spec, std::vector<std::uint64_t> masks) {
    if (masks.size() != spec.part_count())
        throw InvalidSubset("mask count != part count");
    Vertex v;
    v.rank = 0;
    for (std::size_t i = 0; i < masks.size(); ++i) {
        const auto& p = spec.part(i);
        const std::uint64_t r = rank_subset(masks[i], p.n, p.k);
        v.rank = v.rank * spec.part_layer(i) + r;
    }
    v.masks = std::move(masks);
    return v;
}

Vertex vertex_from_rank(const GroundSpec& spec, std::uint64_t rank) {
    Vertex v;
    v.rank = rank;
    v.masks.resize(spec.part_count());
    for (std::size_t i = spec.part_count(); i-- > 0;) {
        const auto& p = spec.part(i);
        const std::uint64_t m = spec.part_layer(i);
        v.masks[i] = unrank_subset(rank % m, p.n, p.k);
        rank /= m;
    }
    if (rank != 0) throw InvalidSubset("rank out of range for layer");
    return v;
}

Vertex complement_vertex(const GroundSpec& spec, const Vertex& v) {
    const GroundSpec comp = spec.complement_spec();
    std::vector<std::uint64_t> masks(v.masks.size());
    for (std::size_t i = 0; i < v.masks.size(); ++i) {
        const unsigned n = spec.part(i).n;
        const std::uint64_t full = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
        masks[i] = full & ~v.masks[i];
    }
    return vertex_from_masks(comp, std::move(masks));
}

bool disjoint(const Vertex& u, const Vertex& v) {
    for (std::size_t i = 0; i < u.masks.size(); ++i)
        if (u.masks[i] & v.masks[i]) return false;
    return true;
}

bool disjoint_checked(const GroundSpec& spec_u, const Vertex& u,
                      const GroundSpec& spec_v, const Vertex& v) {
    if (!(spec_u == spec_v)) throw SpecMismatch("vertices from different ground specs");
    return disjoint(u, v);
}

std::string vertex_str(const GroundSpec& spec, const Vertex& v) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < v.masks.size(); ++i) {
        if (i) os << "|";
        bool first = true;
        for (unsigned b = 0; b < spec.part(i).n; ++b)
            if (v.masks[i] >> b & 1) {
                os << (first ? "" : ",") << (b + 1);
                first = false;
            }
    }
    os << "}";
    return os.str();
}

} // namespace crossfam
