#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace mud {

// splitmix64. All seeded behaviour in the library flows through this
// generator so that runs are bit-identical across platforms and standard
// library implementations (std::uniform_int_distribution is not portable).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform-ish draw in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    bool coin() { return next() & 1; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

    /// Independent child stream; advancing the child does not touch the parent.
    Rng fork() { return Rng(next()); }

private:
    std::uint64_t state_;
};

/// Stable sub-seed derivation for "one master seed, many components".
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    Rng r(seed ^ (tag * 0xD1B54A32D192ED03ull));
    return r.next();
}

}  // namespace mud
