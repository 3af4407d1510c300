#include "mud/separations.hpp"

#include "mud/error.hpp"
#include "mud/rng.hpp"

namespace mud {

int setparity_exact(std::span<const Symbol> records, std::size_t n) {
    std::vector<int> parity(n, 0);
    for (const Symbol& r : records) {
        if (r.arity() != 2) {
            fail(Errc::index_out_of_range, "setparity record must be \"index bit\"");
        }
        std::int64_t idx = r.field(0), bit = r.field(1);
        if (idx < 0 || static_cast<std::size_t>(idx) >= n) {
            fail(Errc::index_out_of_range, "record index out of range");
        }
        if (bit != 0 && bit != 1) {
            fail(Errc::index_out_of_range, "record bit must be 0 or 1");
        }
        parity[idx] ^= static_cast<int>(bit);
    }
    for (int p : parity) {
        if (p) return 0;
    }
    return 1;
}

EqReduction eq_reduction(const std::string& x, const std::string& y) {
    if (x.size() != y.size()) {
        fail(Errc::length_mismatch, "strings must have equal length");
    }
    auto bits_of = [](const std::string& s) {
        std::vector<Symbol> out;
        out.reserve(s.size());
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (s[j] != '0' && s[j] != '1') {
                fail(Errc::parse, "strings must be over {0,1}");
            }
            out.push_back(Symbol{static_cast<std::int64_t>(j), s[j] - '0'});
        }
        return out;
    };
    return {bits_of(x), bits_of(y)};
}

std::vector<Symbol> EqReduction::merged() const {
    std::vector<Symbol> all = side_a;
    all.insert(all.end(), side_b.begin(), side_b.end());
    return all;
}

SymIndexInstance symmetric_index_gen(std::size_t n, std::uint64_t rng_seed) {
    if (n < 1) fail(Errc::bad_size, "instance needs n >= 1");
    Rng rng(rng_seed);
    std::vector<int> x(n), y(n);
    for (auto& b : x) b = static_cast<int>(rng.below(2));
    for (auto& b : y) b = static_cast<int>(rng.below(2));
    auto p = static_cast<std::int64_t>(rng.below(n)) + 1;
    auto q = static_cast<std::int64_t>(rng.below(n)) + 1;
    y[p - 1] = x[q - 1];  // the promise
    SymIndexInstance inst;
    inst.answer = x[q - 1];
    inst.records.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        inst.records.push_back(Symbol{0, static_cast<std::int64_t>(i + 1), x[i], p});
    }
    for (std::size_t i = 0; i < n; ++i) {
        inst.records.push_back(Symbol{1, static_cast<std::int64_t>(i + 1), y[i], q});
    }
    rng.shuffle(inst.records);
    return inst;
}

CommReport comm_account(const ExecMetrics& metrics) {
    CommReport report;
    report.messages = metrics.n_leaves + metrics.aggregate_calls;
    report.aggregate_messages = metrics.aggregate_calls;
    report.max_bits = metrics.max_message_bits;
    report.total_bits = metrics.total_message_bits;
    return report;
}

CommReport comm_account(const ScmResult& result) {
    CommReport report;
    report.messages = 2;
    report.aggregate_messages = 0;
    report.max_bits = std::max(result.alice_bits, result.bob_bits);
    report.total_bits = result.alice_bits + result.bob_bits;
    return report;
}

}  // namespace mud
