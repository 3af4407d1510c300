#pragma once

#include <cstdint>
#include <vector>

#include "mud/spec.hpp"

namespace mud {

/// Total span (max - min) of a set of integers.
/// local x -> (x, x); aggregate componentwise min/max; post (lo, hi) -> hi - lo.
MudSpec span_mud();

/// Sum of squares; post is the identity.
MudSpec sum_squares_mud();

/// Sum of squares with an integer-sqrt post step (L2 norm, floored).
MudSpec l2_mud();

/// Uniform sample of the distinct items of a multiset via a seeded
/// minwise hash.  local x -> (x, h(x), 1); the aggregate keeps the
/// argument with the smaller hash (count summed when both sides carry the
/// same item, smaller item winning a cross-item hash collision); post
/// exposes the surviving item together with its multiplicity as a
/// two-field symbol "item,count".
MudSpec minwise_sample_mud(std::uint64_t seed);

struct MinwiseState {
    std::int64_t item = 0;
    std::uint64_t hash = 0;
    std::uint64_t count = 0;
};

MinwiseState minwise_decode(const Message& m);

/// The multiply-shift hash used by minwise_sample_mud.
std::uint64_t minwise_hash(std::uint64_t seed, std::int64_t item);

/// SetParity over records "index bit" with indices in {0..n-1}: output 1
/// iff every index bucket has even bit-parity.  Randomized one-sided
/// tester: `copies` independent small-bias families share the public
/// seed; each copy accumulates one parity bit, and the output is 1 iff
/// all copies are 0.  A YES instance is always accepted; a NO instance
/// survives each copy with probability at most 3/4.
StreamSpec setparity_stream(std::size_t n, std::size_t copies, std::uint64_t seed);

/// Same decision function and per-seed outputs as setparity_stream; the
/// aggregate is a componentwise XOR of parity vectors, so any computation
/// tree gives the streaming answer.
MudSpec setparity_mud(std::size_t n, std::size_t copies, std::uint64_t seed);

inline constexpr std::size_t kSetParityDefaultCopies = 20;  // (3/4)^20 < 0.4%
inline constexpr double kSetParityEpsilon = 0.25;

/// Streaming answer to the SymmetricIndex promise problem over records
/// "side pos bit query" (side 0 = a, 1 = b).  Remembers the first
/// record's side and query, then scans for the opposite-side record at
/// that position and pins its bit as the answer.  Stream-only: the
/// problem is the promise-separation witness and deliberately has no mud
/// counterpart here.
StreamSpec symmetric_index_stream(std::size_t n);

/// Second-moment sketch: `width` counters, counter i the inner product of
/// the input's multiplicity vector with a seed-derived 4-wise-independent
/// +-1 vector; post takes the median of the squared counters.
StreamSpec f2_sketch_stream(std::size_t width, std::uint64_t seed);

/// Counter-merge (componentwise addition) variant of the same sketch;
/// identical per-seed outputs to f2_sketch_stream on any tree.
MudSpec f2_sketch_mud(std::size_t width, std::uint64_t seed);

inline constexpr std::size_t kF2DefaultWidth = 7;

std::vector<std::int64_t> f2_decode_counters(const Message& m);

/// The +-1 entry v_i(x) behind f2 sketches.
int f2_sign(std::uint64_t seed, std::size_t counter, std::int64_t item);

}  // namespace mud
