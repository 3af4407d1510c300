#pragma once

// Shared fixtures and independent oracles for the test suites.  Everything
// here recomputes expectations from first principles (direct folds, shape
// recursion, exhaustive enumeration) so the engine under test never
// certifies itself.

#include <functional>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "mud/rng.hpp"
#include "mud/simulator.hpp"
#include "mud/spec.hpp"

namespace mudtest {

// --- reference streaming tables ---

inline mud::TableDFA dfa_parity(std::size_t n) {
    mud::TableDFA d;
    d.states = {"even", "odd"};
    d.alphabet = {"0", "1"};
    d.delta = {{0, 1}, {1, 0}};
    d.eta = {0, 1};
    d.n = n;
    return d;
}

inline mud::TableDFA dfa_sum_mod(std::size_t k, std::size_t sigma, std::size_t n) {
    mud::TableDFA d;
    d.n = n;
    for (std::size_t q = 0; q < k; ++q) d.states.push_back("s" + std::to_string(q));
    for (std::size_t a = 0; a < sigma; ++a) d.alphabet.push_back(std::to_string(a));
    d.delta.assign(k, std::vector<int>(sigma));
    for (std::size_t q = 0; q < k; ++q) {
        for (std::size_t a = 0; a < sigma; ++a) {
            d.delta[q][a] = static_cast<int>((q + a) % k);
        }
    }
    for (std::size_t q = 0; q < k; ++q) {
        d.eta.push_back(static_cast<int>(q % sigma));
    }
    return d;
}

inline mud::TableDFA dfa_max(std::size_t sigma, std::size_t n) {
    mud::TableDFA d;
    d.n = n;
    for (std::size_t q = 0; q < sigma; ++q) d.states.push_back("m" + std::to_string(q));
    for (std::size_t a = 0; a < sigma; ++a) d.alphabet.push_back(std::to_string(a));
    d.delta.assign(sigma, std::vector<int>(sigma));
    for (std::size_t q = 0; q < sigma; ++q) {
        for (std::size_t a = 0; a < sigma; ++a) {
            d.delta[q][a] = static_cast<int>(std::max(q, a));
        }
    }
    for (std::size_t q = 0; q < sigma; ++q) d.eta.push_back(static_cast<int>(q));
    return d;
}

// 1 iff the count of `target` reaches `threshold`; counter saturates.
inline mud::TableDFA dfa_threshold_count(std::size_t sigma, int target,
                                         std::size_t threshold, std::size_t n) {
    mud::TableDFA d;
    d.n = n;
    for (std::size_t q = 0; q <= threshold; ++q) {
        d.states.push_back("c" + std::to_string(q));
    }
    for (std::size_t a = 0; a < sigma; ++a) d.alphabet.push_back(std::to_string(a));
    d.delta.assign(threshold + 1, std::vector<int>(sigma));
    for (std::size_t q = 0; q <= threshold; ++q) {
        for (std::size_t a = 0; a < sigma; ++a) {
            std::size_t next = q;
            if (static_cast<int>(a) == target && q < threshold) next = q + 1;
            d.delta[q][a] = static_cast<int>(next);
        }
    }
    for (std::size_t q = 0; q <= threshold; ++q) {
        d.eta.push_back(q >= threshold ? 1 : 0);
    }
    return d;
}

// Remembers the first symbol forever: the canonical non-symmetric function.
inline mud::TableDFA dfa_keep_first(std::size_t sigma, std::size_t n) {
    mud::TableDFA d;
    d.n = n;
    d.states.push_back("fresh");
    for (std::size_t a = 0; a < sigma; ++a) d.states.push_back("k" + std::to_string(a));
    for (std::size_t a = 0; a < sigma; ++a) d.alphabet.push_back(std::to_string(a));
    d.delta.assign(sigma + 1, std::vector<int>(sigma));
    for (std::size_t a = 0; a < sigma; ++a) d.delta[0][a] = static_cast<int>(a + 1);
    for (std::size_t q = 1; q <= sigma; ++q) {
        for (std::size_t a = 0; a < sigma; ++a) d.delta[q][a] = static_cast<int>(q);
    }
    d.eta.push_back(0);  // unreachable at n >= 1
    for (std::size_t q = 1; q <= sigma; ++q) d.eta.push_back(static_cast<int>(q - 1));
    return d;
}

// Counts symbol `1` up to a cap.  Not output-relevant beyond the cap, so
// unreachable annotated states exist: handy for no-witness tests.
inline mud::TableDFA dfa_saturating_counter(std::size_t cap, std::size_t n) {
    mud::TableDFA d;
    d.n = n;
    for (std::size_t q = 0; q <= cap; ++q) d.states.push_back(std::to_string(q));
    d.alphabet = {"1"};
    d.delta.assign(cap + 1, std::vector<int>(1));
    for (std::size_t q = 0; q <= cap; ++q) {
        d.delta[q][0] = static_cast<int>(std::min(q + 1, cap));
    }
    for (std::size_t q = 0; q <= cap; ++q) d.eta.push_back(0);
    return d;
}

// --- enumeration helpers ---

/// Calls fn on every word of Sigma^len (alphabet indices).
template <typename Fn>
void for_each_word(std::size_t sigma, std::size_t len, Fn&& fn) {
    std::vector<int> word(len, 0);
    for (;;) {
        fn(const_cast<const std::vector<int>&>(word));
        std::size_t pos = 0;
        while (pos < len) {
            if (++word[pos] < static_cast<int>(sigma)) break;
            word[pos++] = 0;
        }
        if (pos == len) return;
    }
}

// --- independent tree-shape evaluator ---

/// Binary shape over an ordered leaf list; all_shapes(n) has Catalan(n-1)
/// entries.
struct Shape {
    std::unique_ptr<Shape> left, right;
    bool is_leaf() const { return !left; }
};
using ShapePtr = std::unique_ptr<Shape>;

inline ShapePtr leaf_shape() { return std::make_unique<Shape>(); }

inline ShapePtr node_shape(ShapePtr l, ShapePtr r) {
    auto s = std::make_unique<Shape>();
    s->left = std::move(l);
    s->right = std::move(r);
    return s;
}

inline ShapePtr clone_shape(const Shape& s) {
    if (s.is_leaf()) return leaf_shape();
    return node_shape(clone_shape(*s.left), clone_shape(*s.right));
}

inline std::vector<ShapePtr> all_shapes(std::size_t n) {
    if (n == 1) {
        std::vector<ShapePtr> out;
        out.push_back(leaf_shape());
        return out;
    }
    std::vector<ShapePtr> out;
    for (std::size_t k = 1; k < n; ++k) {
        auto lefts = all_shapes(k);
        auto rights = all_shapes(n - k);
        for (const auto& l : lefts) {
            for (const auto& r : rights) {
                out.push_back(node_shape(clone_shape(*l), clone_shape(*r)));
            }
        }
    }
    return out;
}

/// Evaluates a MudSpec over an explicit shape by direct recursion on
/// local/aggregate/post, bypassing the tree engine entirely.
/// `perm[ordinal]` is the input index of the ordinal-th leaf.
inline mud::Symbol eval_over_shape(const mud::MudSpec& spec, const Shape& shape,
                                   const std::vector<mud::Symbol>& input,
                                   const std::vector<std::size_t>& perm) {
    std::size_t ordinal = 0;
    std::function<mud::Message(const Shape&)> go = [&](const Shape& s) -> mud::Message {
        if (s.is_leaf()) return spec.local(input[perm[ordinal++]]);
        mud::Message l = go(*s.left);
        mud::Message r = go(*s.right);
        return spec.aggregate(l, r);
    };
    return spec.post(go(shape));
}

inline std::vector<std::size_t> identity_perm(std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

inline std::vector<std::size_t> random_perm(std::size_t n, mud::Rng& rng) {
    auto p = identity_perm(n);
    rng.shuffle(p);
    return p;
}

}  // namespace mudtest
