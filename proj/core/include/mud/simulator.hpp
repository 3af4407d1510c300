#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mud/spec.hpp"

namespace mud {

/// A streaming algorithm in fully enumerated form: finite state set with
/// a distinguished start (index 0), finite alphabet, total transition
/// table, and an output map applied once exactly `n` symbols have been
/// consumed.  The length-indexing of the output map is what lets the
/// engine annotate states with a consumed-symbol counter instead of
/// requiring authors to fold one into their state space.
struct TableDFA {
    std::vector<std::string> states;    // index 0 is the start state
    std::vector<std::string> alphabet;  // symbol tokens
    std::vector<std::vector<int>> delta;  // delta[state][symbol] -> state
    std::vector<int> eta;  // eta[state] -> alphabet index, -1 = undefined
    std::size_t n = 0;     // the input length the function is defined for

    std::size_t state_count() const { return states.size(); }
    std::size_t alphabet_size() const { return alphabet.size(); }

    int step(int state, int symbol) const { return delta[state][symbol]; }

    /// Fold a word (alphabet indices) from `from`.
    int fold(std::span<const int> word, int from = 0) const;

    /// Structural checks: total delta in range, unique names, eta defined
    /// on every state reachable in exactly n steps.  Throws on violation.
    void validate() const;

    int state_index(const std::string& name) const;    // -1 if unknown
    int symbol_index(const std::string& token) const;  // -1 if unknown
};

/// A state plus how many input symbols produced it.  This is the message
/// alphabet of compiled mud algorithms: the pair is what one machine
/// sends to the next, encoded as two fixed-width fields
/// (ceil(log2|Q|) + ceil(log2(n+1)) bits).
struct AnnotatedState {
    int state = 0;
    std::size_t count = 0;

    friend bool operator==(const AnnotatedState&, const AnnotatedState&) = default;
};

/// States reachable from the start by some word of exactly `length`
/// symbols, as a sorted vector.  Layered forward closure.
std::vector<int> reach_set(const TableDFA& dfa, std::size_t length);

/// Pairs (u, v) such that some word w of exactly `length` symbols has
/// fold(w, start) == u and fold(w, q_a) == v: the layered closure of the
/// product automaton started at (start, q_a).  This single table answers
/// "which merged states are consistent with message q_b": every v with
/// (q_b, v) present is witnessed by a concrete word.
std::vector<std::pair<int, int>> pair_reach(const TableDFA& dfa, int q_a,
                                            std::size_t length);

/// The state-merging step: given halves summarized as (q_a, n_a) and
/// (q_b, n_b), produce (q_c, n_a + n_b) where q_c = fold(w_a . w_b) for
/// some witnesses w_a, w_b of the right lengths reaching q_a and q_b.
/// Among all valid q_c the canonical minimum (smallest state index) is
/// returned so the merge is a deterministic function.  Throws
/// Errc::no_witness when q_a is not reachable at n_a or no consistent
/// q_c exists.
AnnotatedState combine(const TableDFA& dfa, const AnnotatedState& a,
                       const AnnotatedState& b);

/// Compiles the table into an equivalent mud algorithm: local maps a
/// symbol x to (delta(start, x), 1), the aggregate is `combine`, and post
/// applies the output map at count n.  When the induced function is
/// symmetric, the compiled algorithm reproduces the streaming output on
/// every computation tree; symmetry is the caller's promise (see
/// verify_symmetric).  Reachability layers are memoized inside the spec
/// and shared across every aggregation it performs.
MudSpec mud_from_stream(const TableDFA& dfa);

/// The table itself as a StreamSpec (states annotated with counts), for
/// running both routes side by side.
StreamSpec stream_spec_of_dfa(const TableDFA& dfa);

struct ScmResult {
    Symbol output;
    std::size_t alice_bits = 0;
    std::size_t bob_bits = 0;
};

/// One round of the simultaneous-message protocol: both halves fold their
/// words locally, send one annotated state each, and the referee merges
/// them with `combine` and applies the output map.  Both halves must be
/// nonempty and total length must equal dfa.n.
ScmResult scm_protocol(const TableDFA& dfa, std::span<const int> x_a,
                       std::span<const int> x_b);

/// Exhaustive enumeration oracle: a concrete word of exactly `length`
/// symbols folding from the start to `q`, or nullopt.  Independent of the
/// layered closures above (it never consults them), which is what makes
/// it a usable cross-check.  Rejects |alphabet|^length beyond desk scale.
std::optional<std::vector<int>> witness_search(const TableDFA& dfa, int q,
                                               std::size_t length);

/// Brute-force companion to `combine`: words (w_a, w_b) with
/// fold(w_a) == a.state, fold(w_b) == b.state and fold(w_b, a.state) == q_c.
std::optional<std::pair<std::vector<int>, std::vector<int>>> witness_pair_search(
    const TableDFA& dfa, const AnnotatedState& a, const AnnotatedState& b, int q_c);

/// Exhaustively decides whether the induced function Sigma^n -> Sigma is
/// symmetric, returning a counterexample input (and a permuted copy with
/// a different output) when it is not.  Desk scale only.
struct AsymmetryWitness {
    std::vector<int> input;
    std::vector<int> permuted;
};
std::optional<AsymmetryWitness> verify_symmetric(const TableDFA& dfa);

/// Uniformly random total table over the given dimensions, eta defined on
/// every state.  Deterministic in `seed`.
TableDFA random_dfa(std::size_t n_states, std::size_t n_symbols, std::size_t n,
                    std::uint64_t seed);

/// Fixed-width bit cost of one annotated-state message for this table.
std::size_t annotated_state_bits(const TableDFA& dfa);

}  // namespace mud
