#include "mud/tree.hpp"

#include <numeric>

#include "mud/error.hpp"
#include "mud/rng.hpp"

namespace mud {

namespace {

void check_size(std::size_t n) {
    if (n < 1) fail(Errc::bad_size, "a computation tree needs at least one leaf");
}

// Depth and leaf ordinals in one iterative pass.  Nodes are stored
// children-before-parents, so depths compose forward and an explicit
// stack walk assigns leaf ordinals left to right.
void finalize(ComputationTree::Node* nodes, std::size_t count, std::int32_t root,
              std::size_t* depth_out) {
    std::vector<std::size_t> depth(count, 0);
    for (std::size_t i = 0; i < count; ++i) {
        const auto& nd = nodes[i];
        if (!nd.is_leaf()) {
            depth[i] = 1 + std::max(depth[nd.left], depth[nd.right]);
        }
    }
    *depth_out = depth[root];

    std::int32_t next_ordinal = 0;
    std::vector<std::int32_t> stack{root};
    while (!stack.empty()) {
        std::int32_t at = stack.back();
        stack.pop_back();
        auto& nd = nodes[at];
        if (nd.is_leaf()) {
            nd.leaf_ordinal = next_ordinal++;
        } else {
            stack.push_back(nd.right);  // left popped first
            stack.push_back(nd.left);
        }
    }
}

}  // namespace

ComputationTree left_deep(std::size_t n) {
    check_size(n);
    ComputationTree t;
    t.nodes_.reserve(2 * n - 1);
    t.nodes_.push_back({});  // leaf 0
    std::int32_t acc = 0;
    for (std::size_t i = 1; i < n; ++i) {
        t.nodes_.push_back({});  // leaf i
        std::int32_t leaf = static_cast<std::int32_t>(t.nodes_.size() - 1);
        t.nodes_.push_back({acc, leaf, -1});
        acc = static_cast<std::int32_t>(t.nodes_.size() - 1);
    }
    t.root_ = acc;
    t.leaf_perm_.resize(n);
    std::iota(t.leaf_perm_.begin(), t.leaf_perm_.end(), 0);
    finalize(t.nodes_.data(), t.nodes_.size(), t.root_, &t.depth_);
    return t;
}

ComputationTree balanced(std::size_t n) {
    check_size(n);
    ComputationTree t;
    t.nodes_.reserve(2 * n - 1);
    // Halving recursion is log2(n) deep, so plain recursion is safe here.
    auto build = [&](auto&& self, std::size_t size) -> std::int32_t {
        if (size == 1) {
            t.nodes_.push_back({});
            return static_cast<std::int32_t>(t.nodes_.size() - 1);
        }
        std::size_t left_size = (size + 1) / 2;
        std::int32_t l = self(self, left_size);
        std::int32_t r = self(self, size - left_size);
        t.nodes_.push_back({l, r, -1});
        return static_cast<std::int32_t>(t.nodes_.size() - 1);
    };
    t.root_ = build(build, n);
    t.leaf_perm_.resize(n);
    std::iota(t.leaf_perm_.begin(), t.leaf_perm_.end(), 0);
    finalize(t.nodes_.data(), t.nodes_.size(), t.root_, &t.depth_);
    return t;
}

ComputationTree random_tree(std::size_t n, std::uint64_t seed) {
    check_size(n);
    Rng rng(seed);
    ComputationTree t;
    t.nodes_.reserve(2 * n - 1);
    std::vector<std::int32_t> pool;
    pool.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        t.nodes_.push_back({});
        pool.push_back(static_cast<std::int32_t>(i));
    }
    while (pool.size() > 1) {
        std::size_t i = rng.below(pool.size());
        std::int32_t a = pool[i];
        pool[i] = pool.back();
        pool.pop_back();
        std::size_t j = rng.below(pool.size());
        std::int32_t b = pool[j];
        t.nodes_.push_back({a, b, -1});
        pool[j] = static_cast<std::int32_t>(t.nodes_.size() - 1);
    }
    t.root_ = pool[0];
    t.leaf_perm_.resize(n);
    std::iota(t.leaf_perm_.begin(), t.leaf_perm_.end(), 0);
    rng.shuffle(t.leaf_perm_);
    finalize(t.nodes_.data(), t.nodes_.size(), t.root_, &t.depth_);
    return t;
}

}  // namespace mud
