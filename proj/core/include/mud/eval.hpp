#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mud/spec.hpp"
#include "mud/tree.hpp"

namespace mud {

/// Left-to-right fold of `spec.step` over the input from `spec.start`,
/// then `spec.post`.  max/total message bits are metered over the state
/// after every step (the start state is never transmitted).
EvalResult eval_stream(const StreamSpec& spec, std::span<const Symbol> input);

/// Applies `spec.local` at each leaf (input index taken from the tree's
/// leaf permutation) and `spec.aggregate` at each internal node, then
/// `spec.post` on the root message.  Both children are always complete
/// before a node's aggregate runs.  Errors thrown by the aggregate are
/// annotated with the failing node index.
EvalResult eval_mud(const MudSpec& spec, const ComputationTree& tree,
                    std::span<const Symbol> input);

/// Same contract and byte-identical result as eval_mud; disjoint subtrees
/// may be evaluated concurrently.  `workers` is a scheduling hint only.
EvalResult eval_parallel(const MudSpec& spec, const ComputationTree& tree,
                         std::span<const Symbol> input, unsigned workers);

/// The generic mud-to-streaming direction: step(q, x) = aggregate(q, local(x)),
/// seeded so the first step turns the empty start sentinel directly into
/// local(x1).  For every input, eval_stream of the adapter equals eval_mud
/// of `spec` over the left-deep tree.
StreamSpec adapter_stream_of_mud(const MudSpec& spec);

struct InvarianceReport {
    bool pass = false;
    std::vector<Symbol> distinct_outputs;  // in first-seen order
    std::size_t evaluations = 0;
};

/// Dynamic check that a spec's output does not depend on the computation
/// tree: evaluates over the left-deep and balanced trees plus `trials`
/// seeded random (tree, leaf permutation) draws and collects distinct
/// outputs.  PASS means exactly one output was observed.  Whether an
/// aggregator is tree-independent is a semantic property; this is the
/// testing harness, not a decision procedure.
InvarianceReport check_invariance(const MudSpec& spec, std::span<const Symbol> input,
                                  std::size_t trials, std::uint64_t rng_seed);

}  // namespace mud
