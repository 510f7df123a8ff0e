#pragma once

// A vertex of a multi-part layer: one k_i-subset per part, stored as per-part
// bitmasks together with the global mixed-radix rank.

#include <cstdint>
#include <vector>

#include "crossfam/ground.hpp"

namespace crossfam {

struct Vertex {
    std::vector<std::uint64_t> masks; // masks[i] over [n_i]
    std::uint64_t rank = 0;           // global rank (last part fastest)
};

/// Builds a vertex from per-part masks, validating popcounts, and computes the rank.
Vertex vertex_from_masks(const GroundSpec& spec, std::vector<std::uint64_t> masks);

/// Inverse: decode a global rank.
Vertex vertex_from_rank(const GroundSpec& spec, std::uint64_t rank);

/// Part-wise complement; the result lives in spec.complement_spec().
Vertex complement_vertex(const GroundSpec& spec, const Vertex& v);

/// True iff u and v are disjoint in every part (the product-Kneser adjacency).
bool disjoint(const Vertex& u, const Vertex& v);

/// Same, but checks that both vertices come from the same spec first.
bool disjoint_checked(const GroundSpec& spec_u, const Vertex& u,
                      const GroundSpec& spec_v, const Vertex& v);

/// True iff u and v share an element in at least one part.
inline bool meets(const Vertex& u, const Vertex& v) { return !disjoint(u, v); }

std::string vertex_str(const GroundSpec& spec, const Vertex& v); // "{1,2|3}"

} // namespace crossfam
