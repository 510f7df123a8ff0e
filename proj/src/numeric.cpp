#include "crossfam/numeric.hpp"

#include <array>
#include <string>

namespace crossfam {

Int binom(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i; // exact at every step: r is C(n-k+i, i)
    }
    return r;
}

namespace {

// Pascal triangle for n <= 64; every entry fits in uint64 (C(64,32) < 2^61).
struct BinomTable {
    std::array<std::array<std::uint64_t, 65>, 65> t{};
    BinomTable() {
        for (unsigned n = 0; n <= 64; ++n) {
            t[n][0] = 1;
            for (unsigned k = 1; k <= n; ++k)
                t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0);
        }
    }
};

const BinomTable kBinom{};

} // namespace

std::uint64_t binom_u64(unsigned n, unsigned k) {
    if (k > n) return 0;
    return kBinom.t[n][k];
}

std::string rat_str(const Rat& r) {
    const Int num = boost::multiprecision::numerator(r);
    const Int den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

} // namespace crossfam
