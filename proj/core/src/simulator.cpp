#include "mud/simulator.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <set>

#include "mud/error.hpp"
#include "mud/rng.hpp"

namespace mud {

int TableDFA::fold(std::span<const int> word, int from) const {
    int q = from;
    for (int a : word) q = delta[q][a];
    return q;
}

int TableDFA::state_index(const std::string& name) const {
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[i] == name) return static_cast<int>(i);
    }
    return -1;
}

int TableDFA::symbol_index(const std::string& token) const {
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
        if (alphabet[i] == token) return static_cast<int>(i);
    }
    return -1;
}

void TableDFA::validate() const {
    if (states.empty()) fail(Errc::malformed_instance, "dfa needs at least one state");
    if (alphabet.empty()) fail(Errc::malformed_instance, "dfa needs a nonempty alphabet");
    if (n < 1) fail(Errc::malformed_instance, "dfa input length n must be >= 1");
    if (std::set<std::string>(states.begin(), states.end()).size() != states.size()) {
        fail(Errc::malformed_instance, "duplicate state name");
    }
    if (std::set<std::string>(alphabet.begin(), alphabet.end()).size() !=
        alphabet.size()) {
        fail(Errc::malformed_instance, "duplicate alphabet token");
    }
    if (delta.size() != states.size()) {
        fail(Errc::malformed_instance, "transition table must cover every state");
    }
    for (const auto& row : delta) {
        if (row.size() != alphabet.size()) {
            fail(Errc::malformed_instance, "transition row must cover every symbol");
        }
        for (int to : row) {
            if (to < 0 || static_cast<std::size_t>(to) >= states.size()) {
                fail(Errc::malformed_instance, "transition target out of range");
            }
        }
    }
    if (eta.size() != states.size()) {
        fail(Errc::malformed_instance, "output map must be sized to the state set");
    }
    for (int out : eta) {
        if (out < -1 || out >= static_cast<int>(alphabet.size())) {
            fail(Errc::malformed_instance, "output symbol out of range");
        }
    }
    for (int q : reach_set(*this, n)) {
        if (eta[q] < 0) {
            fail(Errc::malformed_instance,
                 "state '" + states[q] + "' is reachable at length " + std::to_string(n) +
                     " but has no output");
        }
    }
}

std::vector<int> reach_set(const TableDFA& dfa, std::size_t length) {
    if (length > dfa.n) fail(Errc::bad_length, "length exceeds the dfa's n");
    std::vector<char> cur(dfa.state_count(), 0);
    cur[0] = 1;
    for (std::size_t step = 0; step < length; ++step) {
        std::vector<char> next(dfa.state_count(), 0);
        for (std::size_t q = 0; q < cur.size(); ++q) {
            if (!cur[q]) continue;
            for (std::size_t a = 0; a < dfa.alphabet_size(); ++a) {
                next[dfa.delta[q][a]] = 1;
            }
        }
        cur = std::move(next);
    }
    std::vector<int> out;
    for (std::size_t q = 0; q < cur.size(); ++q) {
        if (cur[q]) out.push_back(static_cast<int>(q));
    }
    return out;
}

std::vector<std::pair<int, int>> pair_reach(const TableDFA& dfa, int q_a,
                                            std::size_t length) {
    if (q_a < 0 || static_cast<std::size_t>(q_a) >= dfa.state_count()) {
        fail(Errc::unknown_state, "unknown state index " + std::to_string(q_a));
    }
    if (length > dfa.n) fail(Errc::bad_length, "length exceeds the dfa's n");
    const std::size_t k = dfa.state_count();
    std::vector<char> cur(k * k, 0);
    cur[0 * k + q_a] = 1;
    for (std::size_t step = 0; step < length; ++step) {
        std::vector<char> next(k * k, 0);
        for (std::size_t u = 0; u < k; ++u) {
            for (std::size_t v = 0; v < k; ++v) {
                if (!cur[u * k + v]) continue;
                for (std::size_t a = 0; a < dfa.alphabet_size(); ++a) {
                    next[static_cast<std::size_t>(dfa.delta[u][a]) * k +
                         static_cast<std::size_t>(dfa.delta[v][a])] = 1;
                }
            }
        }
        cur = std::move(next);
    }
    std::vector<std::pair<int, int>> out;
    for (std::size_t u = 0; u < k; ++u) {
        for (std::size_t v = 0; v < k; ++v) {
            if (cur[u * k + v]) out.emplace_back(static_cast<int>(u), static_cast<int>(v));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// merge cache
//
// One compiled spec evaluates combine at every internal node of every tree
// it is run over, always with lengths <= n and states <= |Q|, so both
// closures are memoized per (q_a, length).  Shared via shared_ptr by the
// lambdas of mud_from_stream; guarded for concurrent tree evaluation.

namespace {

struct MergeCache {
    TableDFA dfa;
    std::mutex mu;
    std::map<std::size_t, std::vector<char>> reach_by_len;
    // min_v[(q_a, length)][q_b] = canonical q_c, -1 when none
    std::map<std::pair<int, std::size_t>, std::vector<int>> min_v;

    explicit MergeCache(TableDFA d) : dfa(std::move(d)) {}

    bool reachable(int q, std::size_t length) {
        std::lock_guard lock(mu);
        auto it = reach_by_len.find(length);
        if (it == reach_by_len.end()) {
            std::vector<char> flags(dfa.state_count(), 0);
            for (int s : reach_set(dfa, length)) flags[s] = 1;
            it = reach_by_len.emplace(length, std::move(flags)).first;
        }
        return it->second[q] != 0;
    }

    int canonical_merge(int q_a, int q_b, std::size_t length) {
        std::lock_guard lock(mu);
        auto key = std::make_pair(q_a, length);
        auto it = min_v.find(key);
        if (it == min_v.end()) {
            std::vector<int> best(dfa.state_count(), -1);
            for (auto [u, v] : pair_reach(dfa, q_a, length)) {
                if (best[u] < 0 || v < best[u]) best[u] = v;
            }
            it = min_v.emplace(key, std::move(best)).first;
        }
        return it->second[q_b];
    }
};

AnnotatedState combine_cached(MergeCache& cache, const AnnotatedState& a,
                              const AnnotatedState& b) {
    const TableDFA& dfa = cache.dfa;
    auto check_state = [&](int q) {
        if (q < 0 || static_cast<std::size_t>(q) >= dfa.state_count()) {
            fail(Errc::unknown_state, "unknown state index " + std::to_string(q));
        }
    };
    check_state(a.state);
    check_state(b.state);
    if (a.count < 1 || b.count < 1) {
        fail(Errc::bad_length, "merge arguments must each cover at least one symbol");
    }
    if (a.count + b.count > dfa.n) {
        fail(Errc::bad_length, "merged length exceeds the dfa's n");
    }
    if (!cache.reachable(a.state, a.count)) {
        fail(Errc::no_witness, "state '" + dfa.states[a.state] +
                                   "' is not reachable by any word of length " +
                                   std::to_string(a.count));
    }
    int q_c = cache.canonical_merge(a.state, b.state, b.count);
    if (q_c < 0) {
        fail(Errc::no_witness, "state '" + dfa.states[b.state] +
                                   "' is not reachable by any word of length " +
                                   std::to_string(b.count));
    }
    return {q_c, a.count + b.count};
}

unsigned width_for(std::size_t distinct_values) {
    return distinct_values <= 1
               ? 0
               : static_cast<unsigned>(std::bit_width(distinct_values - 1));
}

struct StateCodec {
    unsigned state_bits;
    unsigned count_bits;

    explicit StateCodec(const TableDFA& dfa)
        : state_bits(width_for(dfa.state_count())),
          count_bits(width_for(dfa.n + 1)) {}

    Message encode(const AnnotatedState& st) const {
        MessageWriter w;
        w.bits(static_cast<std::uint64_t>(st.state), state_bits);
        w.bits(st.count, count_bits);
        return w.take();
    }

    AnnotatedState decode(const Message& m) const {
        MessageReader r(m);
        AnnotatedState st;
        st.state = static_cast<int>(r.bits(state_bits));
        st.count = r.bits(count_bits);
        return st;
    }
};

}  // namespace

AnnotatedState combine(const TableDFA& dfa, const AnnotatedState& a,
                       const AnnotatedState& b) {
    MergeCache cache(dfa);
    return combine_cached(cache, a, b);
}

std::size_t annotated_state_bits(const TableDFA& dfa) {
    StateCodec codec(dfa);
    return codec.state_bits + codec.count_bits;
}

MudSpec mud_from_stream(const TableDFA& dfa) {
    dfa.validate();
    auto cache = std::make_shared<MergeCache>(dfa);
    StateCodec codec(dfa);
    MudSpec spec;
    spec.name = "mud(" + std::to_string(dfa.state_count()) + " states)";
    spec.local = [cache, codec](const Symbol& x) {
        std::int64_t a = x.scalar();
        if (a < 0 || static_cast<std::size_t>(a) >= cache->dfa.alphabet_size()) {
            fail(Errc::index_out_of_range, "symbol index outside the alphabet");
        }
        return codec.encode({cache->dfa.delta[0][a], 1});
    };
    spec.aggregate = [cache, codec](const Message& ma, const Message& mb) {
        return codec.encode(
            combine_cached(*cache, codec.decode(ma), codec.decode(mb)));
    };
    spec.post = [cache, codec](const Message& m) {
        AnnotatedState st = codec.decode(m);
        if (st.count != cache->dfa.n) {
            fail(Errc::bad_length, "output requested after " + std::to_string(st.count) +
                                       " of " + std::to_string(cache->dfa.n) + " symbols");
        }
        int out = cache->dfa.eta[st.state];
        if (out < 0) fail(Errc::unknown_state, "no output defined for the final state");
        return Symbol(out);
    };
    return spec;
}

StreamSpec stream_spec_of_dfa(const TableDFA& dfa) {
    dfa.validate();
    auto table = std::make_shared<const TableDFA>(dfa);
    StateCodec codec(dfa);
    StreamSpec spec;
    spec.name = "stream(" + std::to_string(dfa.state_count()) + " states)";
    spec.start = codec.encode({0, 0});
    spec.step = [table, codec](const Message& q, const Symbol& x) {
        AnnotatedState st = codec.decode(q);
        std::int64_t a = x.scalar();
        if (a < 0 || static_cast<std::size_t>(a) >= table->alphabet_size()) {
            fail(Errc::index_out_of_range, "symbol index outside the alphabet");
        }
        if (st.count >= table->n) {
            fail(Errc::bad_length, "stream longer than the dfa's n");
        }
        return codec.encode({table->delta[st.state][a], st.count + 1});
    };
    spec.post = [table, codec](const Message& m) {
        AnnotatedState st = codec.decode(m);
        if (st.count != table->n) {
            fail(Errc::bad_length, "output requested after " + std::to_string(st.count) +
                                       " of " + std::to_string(table->n) + " symbols");
        }
        int out = table->eta[st.state];
        if (out < 0) fail(Errc::unknown_state, "no output defined for the final state");
        return Symbol(out);
    };
    return spec;
}

ScmResult scm_protocol(const TableDFA& dfa, std::span<const int> x_a,
                       std::span<const int> x_b) {
    dfa.validate();
    if (x_a.empty() || x_b.empty()) {
        fail(Errc::bad_length, "both protocol parties need a nonempty share");
    }
    if (x_a.size() + x_b.size() != dfa.n) {
        fail(Errc::bad_length, "shares must cover exactly n symbols");
    }
    for (int a : x_a) {
        if (a < 0 || static_cast<std::size_t>(a) >= dfa.alphabet_size()) {
            fail(Errc::index_out_of_range, "symbol index outside the alphabet");
        }
    }
    for (int a : x_b) {
        if (a < 0 || static_cast<std::size_t>(a) >= dfa.alphabet_size()) {
            fail(Errc::index_out_of_range, "symbol index outside the alphabet");
        }
    }
    AnnotatedState alice{dfa.fold(x_a), x_a.size()};
    AnnotatedState bob{dfa.fold(x_b), x_b.size()};
    AnnotatedState merged = combine(dfa, alice, bob);
    int out = dfa.eta[merged.state];
    if (out < 0) fail(Errc::unknown_state, "no output defined for the final state");
    StateCodec codec(dfa);
    return {Symbol(out), codec.encode(alice).bit_len(), codec.encode(bob).bit_len()};
}

std::optional<std::vector<int>> witness_search(const TableDFA& dfa, int q,
                                               std::size_t length) {
    if (q < 0 || static_cast<std::size_t>(q) >= dfa.state_count()) {
        fail(Errc::unknown_state, "unknown state index " + std::to_string(q));
    }
    if (length > 8) fail(Errc::too_large, "witness enumeration limited to length 8");
    double total = 1;
    for (std::size_t i = 0; i < length; ++i) total *= static_cast<double>(dfa.alphabet_size());
    if (total > 2e7) fail(Errc::too_large, "witness enumeration space too large");

    std::vector<int> word(length, 0);
    for (;;) {
        if (dfa.fold(word) == q) return word;
        // odometer over Sigma^length
        std::size_t pos = 0;
        while (pos < length) {
            if (++word[pos] < static_cast<int>(dfa.alphabet_size())) break;
            word[pos++] = 0;
        }
        if (pos == length) return std::nullopt;
    }
}

std::optional<std::pair<std::vector<int>, std::vector<int>>> witness_pair_search(
    const TableDFA& dfa, const AnnotatedState& a, const AnnotatedState& b, int q_c) {
    auto w_a = witness_search(dfa, a.state, a.count);
    if (!w_a) return std::nullopt;
    if (b.count > 8) fail(Errc::too_large, "witness enumeration limited to length 8");
    double total = 1;
    for (std::size_t i = 0; i < b.count; ++i) {
        total *= static_cast<double>(dfa.alphabet_size());
    }
    if (total > 2e7) fail(Errc::too_large, "witness enumeration space too large");
    std::vector<int> word(b.count, 0);
    for (;;) {
        if (dfa.fold(word) == b.state && dfa.fold(word, a.state) == q_c) {
            return std::make_pair(*w_a, word);
        }
        std::size_t pos = 0;
        while (pos < word.size()) {
            if (++word[pos] < static_cast<int>(dfa.alphabet_size())) break;
            word[pos++] = 0;
        }
        if (pos == word.size()) return std::nullopt;
    }
}

std::optional<AsymmetryWitness> verify_symmetric(const TableDFA& dfa) {
    dfa.validate();
    double total = 1;
    for (std::size_t i = 0; i < dfa.n; ++i) total *= static_cast<double>(dfa.alphabet_size());
    if (dfa.n > 8 || total > 2e7) {
        fail(Errc::too_large, "symmetry check limited to enumerable inputs");
    }
    std::vector<int> word(dfa.n, 0);
    for (;;) {
        std::vector<int> sorted = word;
        std::sort(sorted.begin(), sorted.end());
        if (dfa.eta[dfa.fold(word)] != dfa.eta[dfa.fold(sorted)]) {
            return AsymmetryWitness{word, sorted};
        }
        std::size_t pos = 0;
        while (pos < word.size()) {
            if (++word[pos] < static_cast<int>(dfa.alphabet_size())) break;
            word[pos++] = 0;
        }
        if (pos == word.size()) return std::nullopt;
    }
}

TableDFA random_dfa(std::size_t n_states, std::size_t n_symbols, std::size_t n,
                    std::uint64_t seed) {
    if (n_states < 1 || n_symbols < 1 || n < 1) {
        fail(Errc::bad_size, "dfa dimensions must be positive");
    }
    Rng rng(seed);
    TableDFA dfa;
    dfa.n = n;
    for (std::size_t q = 0; q < n_states; ++q) dfa.states.push_back("q" + std::to_string(q));
    for (std::size_t a = 0; a < n_symbols; ++a) dfa.alphabet.push_back(std::to_string(a));
    dfa.delta.assign(n_states, std::vector<int>(n_symbols, 0));
    for (auto& row : dfa.delta) {
        for (auto& to : row) to = static_cast<int>(rng.below(n_states));
    }
    dfa.eta.resize(n_states);
    for (auto& out : dfa.eta) out = static_cast<int>(rng.below(n_symbols));
    return dfa;
}

}  // namespace mud
