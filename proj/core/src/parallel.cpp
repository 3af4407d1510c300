#include <atomic>
#include <condition_variable>
#include <mutex>
#include <thread>
#include <vector>

#include "mud/error.hpp"
#include "mud/eval.hpp"

namespace mud {

namespace {

// Work-stealing-free pool: a shared ready queue of nodes whose children
// are complete.  Aggregation order is fixed by the tree, so the schedule
// cannot change any message and the result is byte-identical to the
// sequential path.
struct TreeRun {
    const MudSpec* spec;
    const ComputationTree* tree;
    std::span<const Symbol> input;

    std::vector<Message> value;
    std::vector<std::atomic<int>> pending;
    std::vector<std::int32_t> parent;

    std::mutex mu;
    std::condition_variable cv;
    std::vector<std::int32_t> ready;
    std::size_t outstanding = 0;  // nodes not yet finished
    std::exception_ptr failure;

    std::atomic<std::size_t> max_bits{0};
    std::atomic<std::size_t> total_bits{0};

    void push_ready(std::int32_t node) {
        {
            std::lock_guard lock(mu);
            ready.push_back(node);
        }
        cv.notify_one();
    }

    void finish_node(std::int32_t node) {
        std::size_t bits = value[node].bit_len();
        std::size_t seen = max_bits.load(std::memory_order_relaxed);
        while (seen < bits && !max_bits.compare_exchange_weak(seen, bits)) {
        }
        total_bits.fetch_add(bits, std::memory_order_relaxed);

        std::int32_t up = parent[node];
        bool done;
        {
            std::lock_guard lock(mu);
            done = --outstanding == 0;
        }
        if (up >= 0 && pending[up].fetch_sub(1) == 1) push_ready(up);
        if (done) cv.notify_all();
    }

    void run_node(std::int32_t i) {
        const auto& nd = tree->nodes()[i];
        if (nd.is_leaf()) {
            value[i] = spec->local(input[tree->leaf_perm()[nd.leaf_ordinal]]);
        } else {
            try {
                value[i] = spec->aggregate(value[nd.left], value[nd.right]);
            } catch (Error& e) {
                e.set_node(static_cast<int>(i));
                throw;
            }
            value[nd.left] = Message();
            value[nd.right] = Message();
        }
        finish_node(i);
    }

    void worker() {
        for (;;) {
            std::int32_t node;
            {
                std::unique_lock lock(mu);
                cv.wait(lock, [&] {
                    return !ready.empty() || outstanding == 0 || failure != nullptr;
                });
                if (failure != nullptr || (ready.empty() && outstanding == 0)) return;
                node = ready.back();
                ready.pop_back();
            }
            try {
                run_node(node);
            } catch (...) {
                {
                    std::lock_guard lock(mu);
                    if (!failure) failure = std::current_exception();
                }
                cv.notify_all();
                return;
            }
        }
    }
};

}  // namespace

EvalResult eval_parallel(const MudSpec& spec, const ComputationTree& tree,
                         std::span<const Symbol> input, unsigned workers) {
    if (workers < 1) fail(Errc::bad_size, "worker count must be at least 1");
    if (workers == 1) return eval_mud(spec, tree, input);
    if (input.empty()) fail(Errc::empty_input, "evaluating an empty input");
    if (tree.leaf_count() != input.size()) {
        fail(Errc::leaf_mismatch,
             "tree has " + std::to_string(tree.leaf_count()) + " leaves but input has " +
                 std::to_string(input.size()) + " items");
    }

    const auto& nodes = tree.nodes();
    TreeRun run;
    run.spec = &spec;
    run.tree = &tree;
    run.input = input;
    run.value.resize(nodes.size());
    run.parent.assign(nodes.size(), -1);
    run.outstanding = nodes.size();
    std::vector<std::atomic<int>> pending(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& nd = nodes[i];
        pending[i].store(nd.is_leaf() ? 0 : 2, std::memory_order_relaxed);
        if (!nd.is_leaf()) {
            run.parent[nd.left] = static_cast<std::int32_t>(i);
            run.parent[nd.right] = static_cast<std::int32_t>(i);
        }
    }
    run.pending = std::move(pending);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].is_leaf()) run.ready.push_back(static_cast<std::int32_t>(i));
    }

    unsigned hw = std::thread::hardware_concurrency();
    unsigned count = std::min(workers, std::max(hw, 1u) * 2);
    count = static_cast<unsigned>(std::min<std::size_t>(count, nodes.size()));
    std::vector<std::thread> pool;
    pool.reserve(count);
    for (unsigned i = 0; i < count; ++i) pool.emplace_back([&run] { run.worker(); });
    for (auto& th : pool) th.join();
    if (run.failure) std::rethrow_exception(run.failure);

    ExecMetrics metrics;
    metrics.n_leaves = input.size();
    metrics.tree_depth = tree.depth();
    metrics.aggregate_calls = input.size() - 1;
    metrics.max_message_bits = run.max_bits.load();
    metrics.total_message_bits = run.total_bits.load();
    return {spec.post(run.value[tree.root()]), metrics};
}

}  // namespace mud
