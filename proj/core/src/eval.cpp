#include "mud/eval.hpp"

#include <algorithm>

#include "mud/error.hpp"
#include "mud/rng.hpp"

namespace mud {

namespace {

void meter(ExecMetrics& m, const Message& msg) {
    m.max_message_bits = std::max(m.max_message_bits, msg.bit_len());
    m.total_message_bits += msg.bit_len();
}

}  // namespace

EvalResult eval_stream(const StreamSpec& spec, std::span<const Symbol> input) {
    if (input.empty()) fail(Errc::empty_input, "streaming over an empty input");
    ExecMetrics metrics;
    metrics.n_leaves = input.size();
    metrics.tree_depth = input.size();
    Message state = spec.start;
    for (const Symbol& x : input) {
        state = spec.step(state, x);
        ++metrics.aggregate_calls;
        meter(metrics, state);
    }
    return {spec.post(state), metrics};
}

EvalResult eval_mud(const MudSpec& spec, const ComputationTree& tree,
                    std::span<const Symbol> input) {
    if (input.empty()) fail(Errc::empty_input, "evaluating an empty input");
    if (tree.leaf_count() != input.size()) {
        fail(Errc::leaf_mismatch,
             "tree has " + std::to_string(tree.leaf_count()) + " leaves but input has " +
                 std::to_string(input.size()) + " items");
    }
    ExecMetrics metrics;
    metrics.n_leaves = input.size();
    metrics.tree_depth = tree.depth();

    const auto& nodes = tree.nodes();
    const auto& perm = tree.leaf_perm();
    std::vector<Message> value(nodes.size());
    // Children precede parents in the node array; one forward pass suffices.
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& nd = nodes[i];
        if (nd.is_leaf()) {
            value[i] = spec.local(input[perm[nd.leaf_ordinal]]);
        } else {
            try {
                value[i] = spec.aggregate(value[nd.left], value[nd.right]);
            } catch (Error& e) {
                e.set_node(static_cast<int>(i));
                throw;
            }
            ++metrics.aggregate_calls;
            value[nd.left] = Message();   // drop early; big runs stay lean
            value[nd.right] = Message();
        }
        meter(metrics, value[i]);
    }
    return {spec.post(value[tree.root()]), metrics};
}

StreamSpec adapter_stream_of_mud(const MudSpec& spec) {
    StreamSpec s;
    s.name = spec.name + "-stream";
    s.seed = spec.seed;
    s.start = Message::empty();
    s.step = [local = spec.local, agg = spec.aggregate](const Message& q, const Symbol& x) {
        if (q.is_empty()) return local(x);
        return agg(q, local(x));
    };
    s.post = spec.post;
    return s;
}

InvarianceReport check_invariance(const MudSpec& spec, std::span<const Symbol> input,
                                  std::size_t trials, std::uint64_t rng_seed) {
    if (trials < 1) fail(Errc::bad_size, "check_invariance needs at least one trial");
    InvarianceReport report;
    auto note = [&](const Symbol& out) {
        ++report.evaluations;
        auto& seen = report.distinct_outputs;
        if (std::find(seen.begin(), seen.end(), out) == seen.end()) seen.push_back(out);
    };
    note(eval_mud(spec, left_deep(input.size()), input).output);
    note(eval_mud(spec, balanced(input.size()), input).output);
    Rng rng(rng_seed);
    for (std::size_t t = 0; t < trials; ++t) {
        note(eval_mud(spec, random_tree(input.size(), rng.next()), input).output);
    }
    report.pass = report.distinct_outputs.size() == 1;
    return report;
}

}  // namespace mud
