#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mud/simulator.hpp"
#include "mud/spec.hpp"

namespace mud {

/// Exact SetParity reference: 1 iff every index bucket in {0..n-1} has an
/// even bit-sum.  Records are two-field symbols "index bit".
int setparity_exact(std::span<const Symbol> records, std::size_t n);

/// The string-equality reduction: position j of each string becomes the
/// record (j, bit).  The union of the two sides is a SetParity YES
/// instance exactly when x == y.  Strings are given as '0'/'1' text.
struct EqReduction {
    std::vector<Symbol> side_a;
    std::vector<Symbol> side_b;

    std::vector<Symbol> merged() const;
};
EqReduction eq_reduction(const std::string& x, const std::string& y);

/// A random SymmetricIndex instance: uniform x, p, q with y filled in to
/// satisfy the promise y_p = x_q, records shuffled.  `answer` is the
/// ground truth x_q.
struct SymIndexInstance {
    std::vector<Symbol> records;
    int answer = 0;
};
SymIndexInstance symmetric_index_gen(std::size_t n, std::uint64_t rng_seed);

/// Message-count/size summary of a run.
struct CommReport {
    std::size_t messages = 0;            // every transmitted state
    std::size_t aggregate_messages = 0;  // messages produced by merges
    std::size_t max_bits = 0;
    std::size_t total_bits = 0;
};

CommReport comm_account(const ExecMetrics& metrics);
CommReport comm_account(const ScmResult& result);

}  // namespace mud
