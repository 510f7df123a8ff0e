#include "crossfam/subsets.hpp"

#include <bit>

#include "crossfam/errors.hpp"
#include "crossfam/numeric.hpp"

namespace crossfam {

std::uint64_t rank_subset(std::uint64_t mask, unsigned n, unsigned k) {
    if (n > 64) throw InvalidSubset("part size > 64 not supported");
    if (n < 64 && (mask >> n) != 0) throw InvalidSubset("mask has bits outside [n]");
    if (std::popcount(mask) != static_cast<int>(k))
        throw InvalidSubset("mask popcount != k");
    std::uint64_t rank = 0;
    unsigned j = 0;
    while (mask) {
        const unsigned c = static_cast<unsigned>(std::countr_zero(mask));
        rank += binom_u64(c, ++j);
        mask &= mask - 1;
    }
    return rank;
}

std::uint64_t unrank_subset(std::uint64_t rank, unsigned n, unsigned k) {
    if (n > 64) throw InvalidSubset("part size > 64 not supported");
    if (rank >= binom_u64(n, k)) throw InvalidSubset("rank out of range");
    std::uint64_t mask = 0;
    unsigned hi = n;
    for (unsigned j = k; j >= 1; --j) {
        // largest c < hi with C(c, j) <= rank
        unsigned c = hi - 1;
        while (binom_u64(c, j) > rank) --c;
        mask |= (std::uint64_t{1} << c);
        rank -= binom_u64(c, j);
        hi = c;
    }
    return mask;
}

std::uint64_t first_subset_mask(unsigned k) {
    return k == 0 ? 0 : (k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1);
}

bool next_subset_mask(std::uint64_t& mask, unsigned n) {
    // Gosper's hack, bounded to n bits.
    if (mask == 0) return false;
    const std::uint64_t u = mask & (~mask + 1);
    const std::uint64_t v = mask + u;
    if (v == 0) return false;
    const std::uint64_t next = v + (((v ^ mask) / u) >> 2);
    if (n < 64 && (next >> n) != 0) return false;
    mask = next;
    return true;
}

} // namespace crossfam
