#include "mud/small_bias.hpp"

#include <bit>
#include <cmath>

#include "mud/error.hpp"
#include "mud/rng.hpp"

namespace mud {

namespace gf2 {

namespace {

// Irreducible polynomials over GF(2), degree 2..16, coefficient bitmasks
// including the x^m term.  Standard table entries; validated by the test
// suite's brute-force factor search.
constexpr std::uint32_t kModulus[17] = {
    0,       0,       0x7,    0xB,    0x13,    0x25,   0x43,   0x83,  0x11B,
    0x211,   0x409,   0x805,  0x1053, 0x201B,  0x4443, 0x8003, 0x1100B,
};

}  // namespace

std::uint32_t modulus(unsigned m) {
    if (m < 2 || m > 16) fail(Errc::too_large, "field degree must be in [2, 16]");
    return kModulus[m];
}

std::uint32_t mul(std::uint32_t a, std::uint32_t b, unsigned m) {
    const std::uint32_t poly = modulus(m);
    std::uint32_t r = 0;
    while (b) {
        if (b & 1) r ^= a;
        b >>= 1;
        a <<= 1;
        if ((a >> m) & 1) a ^= poly;
    }
    return r;
}

std::uint32_t pow(std::uint32_t base, std::uint64_t exp, unsigned m) {
    std::uint32_t r = 1;
    while (exp) {
        if (exp & 1) r = mul(r, base, m);
        base = mul(base, base, m);
        exp >>= 1;
    }
    return r;
}

}  // namespace gf2

namespace {

int parity_of(std::uint32_t v) { return std::popcount(v) & 1; }

constexpr std::size_t kPowerTableLimit = 1 << 16;

}  // namespace

unsigned small_bias_degree(std::size_t n, double epsilon) {
    if (!(epsilon > 0.0) || !(epsilon < 0.5)) {
        fail(Errc::bad_epsilon, "epsilon must lie in (0, 1/2)");
    }
    if (n < 1) fail(Errc::bad_size, "family needs at least one variable");
    unsigned m = static_cast<unsigned>(
        std::ceil(std::log2(static_cast<double>(n) / epsilon)));
    m += 1;  // margin: bias <= (n-1)/2^{m+1}
    if (m < 2) m = 2;
    if (m > 16) fail(Errc::too_large, "required field degree exceeds 16");
    return m;
}

SmallBiasFamily::SmallBiasFamily(std::size_t n, unsigned m, std::uint32_t r,
                                 std::uint32_t s)
    : n_(n), m_(m), seed_r_(r), seed_s_(s) {
    if (n_ <= kPowerTableLimit) {
        powers_.reserve(n_);
        std::uint32_t p = 1;
        for (std::size_t i = 0; i < n_; ++i) {
            powers_.push_back(p);
            p = gf2::mul(p, seed_r_, m_);
        }
    }
}

SmallBiasFamily SmallBiasFamily::create(std::size_t n, double epsilon,
                                        std::uint64_t rng_seed) {
    return with_degree(n, small_bias_degree(n, epsilon), rng_seed);
}

SmallBiasFamily SmallBiasFamily::with_degree(std::size_t n, unsigned m,
                                             std::uint64_t rng_seed) {
    gf2::modulus(m);  // range check
    if (n < 1) fail(Errc::bad_size, "family needs at least one variable");
    Rng rng(rng_seed);
    const std::uint32_t mask = (1u << m) - 1;
    auto r = static_cast<std::uint32_t>(rng.next()) & mask;
    auto s = static_cast<std::uint32_t>(rng.next()) & mask;
    return SmallBiasFamily(n, m, r, s);
}

SmallBiasFamily SmallBiasFamily::with_seeds(std::size_t n, unsigned m,
                                            std::uint32_t seed_r, std::uint32_t seed_s) {
    gf2::modulus(m);
    if (n < 1) fail(Errc::bad_size, "family needs at least one variable");
    const std::uint32_t mask = (1u << m) - 1;
    if ((seed_r & ~mask) || (seed_s & ~mask)) {
        fail(Errc::index_out_of_range, "seed outside the field");
    }
    return SmallBiasFamily(n, m, seed_r, seed_s);
}

int SmallBiasFamily::bit(std::size_t i) const {
    if (i >= n_) {
        fail(Errc::index_out_of_range,
             "variable index " + std::to_string(i) + " out of range");
    }
    std::uint32_t ri = powers_.empty() ? gf2::pow(seed_r_, i, m_) : powers_[i];
    return parity_of(ri & seed_s_);
}

bool BiasCount::within_of_half(std::uint64_t eps_num, std::uint64_t eps_den) const {
    // |ones/total - 1/2| <= eps  <=>  |2*ones - total| * eps_den <= 2 * total * eps_num
    std::uint64_t diff = ones * 2 >= total ? ones * 2 - total : total - ones * 2;
    return static_cast<unsigned __int128>(diff) * eps_den <=
           static_cast<unsigned __int128>(2) * total * eps_num;
}

bool BiasCount::greater_than(std::uint64_t num, std::uint64_t den) const {
    return static_cast<unsigned __int128>(ones) * den >
           static_cast<unsigned __int128>(num) * total;
}

BiasCount exact_bias(std::size_t n, unsigned m, std::span<const std::size_t> subset) {
    gf2::modulus(m);
    if (m > 12) fail(Errc::too_large, "exhaustive bias check limited to m <= 12");
    if (subset.empty()) fail(Errc::bad_size, "subset must be nonempty");
    for (std::size_t i : subset) {
        if (i >= n) fail(Errc::index_out_of_range, "subset index out of range");
    }
    const std::uint32_t field = 1u << m;
    BiasCount count;
    count.total = static_cast<std::uint64_t>(field) * field;
    std::vector<std::uint32_t> pow_s(subset.size());
    for (std::uint32_t r = 0; r < field; ++r) {
        for (std::size_t k = 0; k < subset.size(); ++k) {
            pow_s[k] = gf2::pow(r, subset[k], m);
        }
        for (std::uint32_t s = 0; s < field; ++s) {
            int p = 0;
            for (std::uint32_t ri : pow_s) p ^= parity_of(ri & s);
            count.ones += static_cast<std::uint64_t>(p);
        }
    }
    return count;
}

}  // namespace mud
