#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "mud/message.hpp"
#include "mud/symbol.hpp"

namespace mud {

/// A mud algorithm: per-item local map, pairwise aggregator applied along
/// an arbitrary binary tree, and final post-processing.  All three
/// functions must be pure and deterministic given `seed`; `aggregate` must
/// never depend on any ordering information beyond its two arguments.
/// Library-provided aggregates are total on encoded states; a compiled
/// aggregate (see simulator) may throw Errc::no_witness, which evaluation
/// treats as failure.
struct MudSpec {
    std::string name;
    std::function<Message(const Symbol&)> local;                       // per-item map
    std::function<Message(const Message&, const Message&)> aggregate;  // pairwise merge
    std::function<Symbol(const Message&)> post;                        // final output
    std::optional<std::uint64_t> seed;  // shared public random string R
};

/// A streaming algorithm: a step function folded left-to-right over the
/// input from a fixed start state, then post-processing.
struct StreamSpec {
    std::string name;
    Message start;
    std::function<Message(const Message&, const Symbol&)> step;
    std::function<Symbol(const Message&)> post;
    std::optional<std::uint64_t> seed;
};

/// Execution accounting.  max/total message bits realize the
/// space/communication bookkeeping; for binary in-tree evaluation
/// aggregate_calls == n_leaves - 1 and every message (leaf and internal)
/// is metered.  For plain stream folds, aggregate_calls counts step
/// applications and tree_depth the fold length.
struct ExecMetrics {
    std::size_t max_message_bits = 0;
    std::size_t n_leaves = 0;
    std::size_t tree_depth = 0;
    std::size_t aggregate_calls = 0;
    std::size_t total_message_bits = 0;
};

struct EvalResult {
    Symbol output;
    ExecMetrics metrics;
};

}  // namespace mud
