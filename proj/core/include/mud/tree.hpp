#pragma once

#include <cstdint>
#include <vector>

namespace mud {

/// A binary in-tree with n leaves plus a permutation assigning each leaf
/// an input position.  Evaluating a MudSpec applies the aggregator along
/// this topology; a correct mud algorithm's output must not depend on
/// which tree is used.
///
/// Nodes are stored children-before-parents, so a single forward pass over
/// the node array evaluates the tree without recursion (left-deep trees
/// over 10^6 leaves are fine).
class ComputationTree {
public:
    struct Node {
        std::int32_t left = -1;   // -1 for leaves
        std::int32_t right = -1;
        std::int32_t leaf_ordinal = -1;  // left-to-right leaf position, -1 for internal

        bool is_leaf() const { return left < 0; }
    };

    const std::vector<Node>& nodes() const { return nodes_; }
    std::int32_t root() const { return root_; }
    std::size_t leaf_count() const { return leaf_perm_.size(); }
    std::size_t depth() const { return depth_; }

    /// leaf_perm()[ordinal] is the input index carried by that leaf.
    const std::vector<std::size_t>& leaf_perm() const { return leaf_perm_; }

private:
    friend ComputationTree left_deep(std::size_t n);
    friend ComputationTree balanced(std::size_t n);
    friend ComputationTree random_tree(std::size_t n, std::uint64_t seed);

    std::vector<Node> nodes_;
    std::vector<std::size_t> leaf_perm_;
    std::int32_t root_ = -1;
    std::size_t depth_ = 0;
};

/// The fully sequential chain: depth n-1, identity leaf permutation.
/// Aggregating along it reproduces a left-to-right streaming fold.
ComputationTree left_deep(std::size_t n);

/// Halving splits: depth ceil(log2 n), identity leaf permutation.
ComputationTree balanced(std::size_t n);

/// Random shape (uniform random pairwise merges of a root pool) with a
/// uniformly shuffled leaf permutation.  Deterministic in `seed`.
ComputationTree random_tree(std::size_t n, std::uint64_t seed);

}  // namespace mud
