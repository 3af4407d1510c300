#include "mud/suites.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "mud/algorithms.hpp"
#include "mud/error.hpp"
#include "mud/eval.hpp"
#include "mud/rng.hpp"
#include "mud/separations.hpp"
#include "mud/simulator.hpp"
#include "mud/small_bias.hpp"

namespace mud::suites {

void SuiteReport::add(std::string name, bool ok, std::string detail) {
    pass = pass && ok;
    lines.push_back({std::move(name), ok, std::move(detail)});
}

namespace {

std::vector<Symbol> random_ints(Rng& rng, std::size_t count, std::int64_t lo,
                                std::int64_t hi) {
    std::vector<Symbol> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(Symbol(lo + static_cast<std::int64_t>(
                                      rng.below(static_cast<std::uint64_t>(hi - lo + 1)))));
    }
    return out;
}

std::vector<Symbol> random_setparity_records(Rng& rng, std::size_t count, std::size_t n) {
    std::vector<Symbol> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(Symbol{static_cast<std::int64_t>(rng.below(n)),
                             static_cast<std::int64_t>(rng.below(2))});
    }
    return out;
}

// A YES instance: every record appears an even number of times per bucket.
std::vector<Symbol> yes_setparity_records(Rng& rng, std::size_t pairs, std::size_t n) {
    std::vector<Symbol> out;
    out.reserve(2 * pairs);
    for (std::size_t i = 0; i < pairs; ++i) {
        Symbol r{static_cast<std::int64_t>(rng.below(n)),
                 static_cast<std::int64_t>(rng.below(2))};
        out.push_back(r);
        out.push_back(r);
    }
    rng.shuffle(out);
    return out;
}

}  // namespace

SuiteReport invariance(std::size_t trials, std::uint64_t seed) {
    SuiteReport report;
    report.suite = "invariance";
    Rng rng(seed);
    struct Case {
        std::string name;
        MudSpec spec;
        std::vector<Symbol> input;
    };
    std::vector<Case> cases;
    std::vector<std::size_t> sizes{1, 2, 3, 5, 16, 64};
    for (std::size_t n : sizes) {
        cases.push_back({"span/n=" + std::to_string(n), span_mud(),
                         random_ints(rng, n, -1000, 1000)});
        cases.push_back({"sumsq/n=" + std::to_string(n), sum_squares_mud(),
                         random_ints(rng, n, -100, 100)});
        cases.push_back({"l2/n=" + std::to_string(n), l2_mud(),
                         random_ints(rng, n, -100, 100)});
        cases.push_back({"minwise/n=" + std::to_string(n), minwise_sample_mud(rng.next()),
                         random_ints(rng, n, 0, 50)});
        cases.push_back({"setparity/n=" + std::to_string(n),
                         setparity_mud(64, kSetParityDefaultCopies, rng.next()),
                         random_setparity_records(rng, n, 64)});
        cases.push_back({"f2/n=" + std::to_string(n),
                         f2_sketch_mud(kF2DefaultWidth, rng.next()),
                         random_ints(rng, n, 0, 20)});
    }
    for (auto& c : cases) {
        auto r = check_invariance(c.spec, c.input, trials, rng.next());
        std::string detail = "output=" + r.distinct_outputs.front().str() +
                             " evaluations=" + std::to_string(r.evaluations);
        if (!r.pass) {
            detail = "distinct outputs: " + std::to_string(r.distinct_outputs.size());
        }
        report.add(c.name, r.pass, detail);
    }
    return report;
}

SuiteReport simulator_oracle(std::size_t max_n, std::size_t n_dfas, std::uint64_t seed) {
    SuiteReport report;
    report.suite = "simulator-oracle";
    Rng rng(seed);
    for (std::size_t d = 0; d < n_dfas; ++d) {
        std::size_t n_states = 2 + rng.below(5);   // up to 6
        std::size_t n_symbols = 1 + rng.below(3);  // up to 3
        std::size_t n = 1 + rng.below(max_n);
        TableDFA dfa = random_dfa(n_states, n_symbols, n, rng.next());
        std::string tag = "dfa" + std::to_string(d) + "(|Q|=" + std::to_string(n_states) +
                          ",|S|=" + std::to_string(n_symbols) + ",n=" + std::to_string(n) +
                          ")";

        bool reach_ok = true, pair_ok = true, merge_ok = true;
        for (std::size_t len = 0; len <= n && reach_ok; ++len) {
            std::set<int> expect;
            for (std::size_t q = 0; q < n_states; ++q) {
                if (witness_search(dfa, static_cast<int>(q), len)) {
                    expect.insert(static_cast<int>(q));
                }
            }
            auto got = reach_set(dfa, len);
            reach_ok = std::set<int>(got.begin(), got.end()) == expect;
        }
        for (std::size_t q_a = 0; q_a < n_states && pair_ok; ++q_a) {
            for (std::size_t len = 0; len <= n && pair_ok; ++len) {
                std::set<std::pair<int, int>> expect;
                std::vector<int> word(len, 0);
                for (;;) {
                    expect.emplace(dfa.fold(word), dfa.fold(word, static_cast<int>(q_a)));
                    std::size_t pos = 0;
                    while (pos < len) {
                        if (++word[pos] < static_cast<int>(n_symbols)) break;
                        word[pos++] = 0;
                    }
                    if (pos == len) break;
                }
                auto got = pair_reach(dfa, static_cast<int>(q_a), len);
                pair_ok = std::set<std::pair<int, int>>(got.begin(), got.end()) == expect;
            }
        }
        for (std::size_t ca = 1; ca + 1 <= n && merge_ok; ++ca) {
            std::size_t cb = n - ca;
            for (int qa : reach_set(dfa, ca)) {
                for (int qb : reach_set(dfa, cb)) {
                    AnnotatedState merged = combine(dfa, {qa, ca}, {qb, cb});
                    if (merged.count != n ||
                        !witness_pair_search(dfa, {qa, ca}, {qb, cb}, merged.state)) {
                        merge_ok = false;
                    }
                }
            }
        }
        report.add(tag, reach_ok && pair_ok && merge_ok,
                   std::string("reach=") + (reach_ok ? "ok" : "BAD") +
                       " pair=" + (pair_ok ? "ok" : "BAD") +
                       " merge=" + (merge_ok ? "ok" : "BAD"));
    }
    return report;
}

SuiteReport bias(std::size_t n, unsigned m) {
    SuiteReport report;
    report.suite = "bias";
    if (n < 1 || n > 16) fail(Errc::bad_size, "bias suite supports n in [1, 16]");
    std::uint64_t worst_num = 0, worst_den = 1;
    std::vector<std::size_t> subset;
    bool all_ok = true;
    for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
        subset.clear();
        for (std::size_t i = 0; i < n; ++i) {
            if ((mask >> i) & 1) subset.push_back(i);
        }
        BiasCount count = exact_bias(n, m, subset);
        bool ok = count.greater_than(1, 4) && !count.greater_than(3, 4);
        all_ok = all_ok && ok;
        std::uint64_t diff = count.ones * 2 >= count.total ? count.ones * 2 - count.total
                                                           : count.total - count.ones * 2;
        // compare diff / (2*total) against the current worst
        if (static_cast<unsigned __int128>(diff) * worst_den >
            static_cast<unsigned __int128>(worst_num) * 2 * count.total) {
            worst_num = diff;
            worst_den = 2 * count.total;
        }
    }
    std::ostringstream detail;
    detail << "max |bias-1/2| = " << worst_num << "/" << worst_den << " over "
           << ((1ull << n) - 1) << " subsets";
    report.add("all-subsets(n=" + std::to_string(n) + ",m=" + std::to_string(m) + ")",
               all_ok, detail.str());
    return report;
}

SuiteReport setparity_error(std::size_t runs, std::size_t n, std::size_t copies,
                            std::uint64_t seed) {
    SuiteReport report;
    report.suite = "setparity-error";
    Rng rng(seed);
    std::size_t yes_accepted = 0;
    for (std::size_t i = 0; i < runs; ++i) {
        auto records = yes_setparity_records(rng, n / 2, n);
        auto spec = setparity_stream(n, copies, rng.next());
        yes_accepted += eval_stream(spec, records).output.scalar() == 1;
    }
    report.add("yes-accepted", yes_accepted == runs,
               std::to_string(yes_accepted) + "/" + std::to_string(runs));

    std::size_t no_accepted = 0;
    for (std::size_t i = 0; i < runs; ++i) {
        std::vector<Symbol> records;
        do {
            records = random_setparity_records(rng, n, n);
        } while (setparity_exact(records, n) == 1);
        auto spec = setparity_stream(n, copies, rng.next());
        no_accepted += eval_stream(spec, records).output.scalar() == 1;
    }
    double p = std::pow(0.75, static_cast<double>(copies));
    double bound = static_cast<double>(runs) * p +
                   3.0 * std::sqrt(static_cast<double>(runs) * p * (1 - p));
    auto limit = static_cast<std::size_t>(std::ceil(bound));
    report.add("no-accepted", no_accepted <= limit,
               std::to_string(no_accepted) + "/" + std::to_string(runs) +
                   " (limit " + std::to_string(limit) + ")");
    return report;
}

SuiteReport reductions(std::size_t exhaustive_max_n, std::size_t random_pairs,
                       std::size_t random_n, std::uint64_t seed) {
    SuiteReport report;
    report.suite = "reductions";
    Rng rng(seed);
    if (exhaustive_max_n > 10) {
        fail(Errc::too_large, "exhaustive equality sweep limited to n <= 10");
    }

    bool eq_ok = true;
    std::size_t checked = 0;
    for (std::size_t len = 0; len <= exhaustive_max_n; ++len) {
        for (std::uint64_t xv = 0; xv < (1ull << len); ++xv) {
            for (std::uint64_t yv = 0; yv < (1ull << len); ++yv) {
                std::string x, y;
                for (std::size_t j = 0; j < len; ++j) {
                    x += static_cast<char>('0' + ((xv >> j) & 1));
                    y += static_cast<char>('0' + ((yv >> j) & 1));
                }
                int f = setparity_exact(eq_reduction(x, y).merged(), len);
                eq_ok = eq_ok && (f == (x == y ? 1 : 0));
                ++checked;
            }
        }
    }
    report.add("equality-exhaustive", eq_ok, std::to_string(checked) + " pairs");

    bool eq_rand_ok = true;
    for (std::size_t i = 0; i < random_pairs; ++i) {
        std::string x, y;
        for (std::size_t j = 0; j < random_n; ++j) {
            x += static_cast<char>('0' + rng.below(2));
            y += rng.below(4) == 0 ? (x.back() == '0' ? '1' : '0') : x.back();
        }
        int f = setparity_exact(eq_reduction(x, y).merged(), random_n);
        eq_rand_ok = eq_rand_ok && (f == (x == y ? 1 : 0));
    }
    report.add("equality-random", eq_rand_ok,
               std::to_string(random_pairs) + " pairs at n=" + std::to_string(random_n));

    bool gen_ok = true;
    for (std::size_t i = 0; i < 200; ++i) {
        std::size_t n = 1 + rng.below(32);
        SymIndexInstance inst = symmetric_index_gen(n, rng.next());
        auto spec = symmetric_index_stream(n);
        std::vector<Symbol> records = inst.records;
        for (int round = 0; round < 3; ++round) {
            rng.shuffle(records);
            gen_ok = gen_ok &&
                     eval_stream(spec, records).output.scalar() == inst.answer;
        }
    }
    report.add("symindex-generator", gen_ok, "200 instances x 3 permutations");
    return report;
}

}  // namespace mud::suites
