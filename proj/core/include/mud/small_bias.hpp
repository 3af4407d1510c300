#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace mud {

/// Arithmetic in the binary field of degree m (2 <= m <= 16), elements as
/// coefficient bitmasks.  One fixed irreducible polynomial per degree so
/// every derived bit is reproducible.
namespace gf2 {

std::uint32_t modulus(unsigned m);
std::uint32_t mul(std::uint32_t a, std::uint32_t b, unsigned m);
std::uint32_t pow(std::uint32_t base, std::uint64_t exp, unsigned m);

}  // namespace gf2

/// An epsilon-biased family of n binary random variables X_0..X_{n-1}
/// drawn from 2m seed bits: X_i is the inner-product parity of r^i (the
/// i-th power of field element r) against s.  Every nonempty-subset
/// parity of the family hits 1 with probability within (n-1)/2^{m+1} of
/// 1/2 over the seed pair, which keeps it above 1/4 whenever epsilon < 1/2.
class SmallBiasFamily {
public:
    /// Family of n variables with bias at most `epsilon` (in (0, 1/2)),
    /// seeds drawn from `rng_seed`.  Picks m = ceil(log2(n/epsilon)) + 1.
    static SmallBiasFamily create(std::size_t n, double epsilon, std::uint64_t rng_seed);

    /// Pinned field degree, random seeds.
    static SmallBiasFamily with_degree(std::size_t n, unsigned m, std::uint64_t rng_seed);

    /// Fully pinned, for hand-checked fixtures.
    static SmallBiasFamily with_seeds(std::size_t n, unsigned m, std::uint32_t seed_r,
                                      std::uint32_t seed_s);

    /// X_i in {0,1}.
    int bit(std::size_t i) const;

    std::size_t size() const { return n_; }
    unsigned degree() const { return m_; }
    std::uint32_t seed_r() const { return seed_r_; }
    std::uint32_t seed_s() const { return seed_s_; }

private:
    SmallBiasFamily(std::size_t n, unsigned m, std::uint32_t r, std::uint32_t s);

    std::size_t n_;
    unsigned m_;
    std::uint32_t seed_r_;
    std::uint32_t seed_s_;
    std::vector<std::uint32_t> powers_;  // r^0..r^{n-1} when n is small
};

/// Field degree used by create(): ceil(log2(n/epsilon)) + 1, clamped to
/// [2, 16].  Throws Errc::bad_epsilon outside (0, 1/2).
unsigned small_bias_degree(std::size_t n, double epsilon);

/// Exact seed-pair counting for subset parities.
struct BiasCount {
    std::uint64_t ones = 0;   // seed pairs with parity(S) == 1
    std::uint64_t total = 0;  // 2^{2m}

    /// |ones/total - 1/2| <= eps_num/eps_den, in exact integer arithmetic.
    bool within_of_half(std::uint64_t eps_num, std::uint64_t eps_den) const;

    /// ones/total > num/den.
    bool greater_than(std::uint64_t num, std::uint64_t den) const;
};

/// Enumerates all 2^{2m} seed pairs of the degree-m construction and counts
/// those for which sum_{i in S} X_i is odd.  S must be a nonempty subset of
/// {0..n-1}; m above 12 is rejected as too large to enumerate.
BiasCount exact_bias(std::size_t n, unsigned m, std::span<const std::size_t> subset);

}  // namespace mud
