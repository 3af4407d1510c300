#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mud::suites {

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    bool pass = true;
    std::vector<CheckLine> lines;

    void add(std::string name, bool ok, std::string detail = "");
};

/// Tree/permutation invariance of every library algorithm over random
/// inputs (sizes 1..64), `trials` random trees per input.
SuiteReport invariance(std::size_t trials, std::uint64_t seed);

/// Layered closures against exhaustive witness enumeration, and merge
/// outputs against brute-force witness pairs, over random tables.
SuiteReport simulator_oracle(std::size_t max_n, std::size_t n_dfas, std::uint64_t seed);

/// Exhaustive subset-parity bias of the degree-m construction over n
/// variables: every nonempty subset must land strictly inside (1/4, 3/4).
SuiteReport bias(std::size_t n, unsigned m);

/// One-sidedness and the (3/4)^copies rejection profile of the SetParity
/// tester over `runs` seeded runs.
SuiteReport setparity_error(std::size_t runs, std::size_t n, std::size_t copies,
                            std::uint64_t seed);

/// String-equality reduction (exhaustive to `exhaustive_max_n`, sampled at
/// `random_n`) and SymmetricIndex generator/streamer agreement.
SuiteReport reductions(std::size_t exhaustive_max_n, std::size_t random_pairs,
                       std::size_t random_n, std::uint64_t seed);

}  // namespace mud::suites
