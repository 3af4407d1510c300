#include <doctest.h>

#include <algorithm>
#include <bit>
#include <set>

#include "helpers.hpp"
#include "mud/algorithms.hpp"
#include "mud/error.hpp"
#include "mud/eval.hpp"
#include "mud/rng.hpp"
#include "mud/tree.hpp"

using namespace mud;

namespace {

std::vector<Symbol> iota_symbols(std::size_t n, std::int64_t from = 1) {
    std::vector<Symbol> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(Symbol(from + static_cast<std::int64_t>(i)));
    }
    return out;
}

// structural fingerprint of a tree: parenthesized shape + leaf permutation
std::string fingerprint(const ComputationTree& t) {
    std::string out;
    auto go = [&](auto&& self, std::int32_t at) -> void {
        const auto& nd = t.nodes()[at];
        if (nd.is_leaf()) {
            out += 'L';
            return;
        }
        out += '(';
        self(self, nd.left);
        out += ',';
        self(self, nd.right);
        out += ')';
    };
    go(go, t.root());
    for (auto idx : t.leaf_perm()) out += '.' + std::to_string(idx);
    return out;
}

}  // namespace

TEST_CASE("left_deep shape") {
    CHECK(left_deep(1).depth() == 0);
    CHECK(left_deep(1).leaf_count() == 1);
    CHECK(left_deep(2).depth() == 1);
    CHECK(left_deep(4).depth() == 3);
    CHECK(eval_mud(sum_squares_mud(), left_deep(4), iota_symbols(4))
              .metrics.aggregate_calls == 3);
    CHECK_THROWS_AS((void)left_deep(0), Error);
}

TEST_CASE("balanced shape has logarithmic depth") {
    CHECK(balanced(1).depth() == 0);
    CHECK(balanced(2).depth() == 1);
    CHECK(balanced(5).depth() == 3);
    CHECK(balanced(8).depth() == 3);
    CHECK(balanced(9).depth() == 4);
    CHECK_THROWS_AS((void)balanced(0), Error);

    for (std::size_t n = 1; n <= 200; ++n) {
        std::size_t expect = std::bit_width(n - 1);  // ceil(log2 n)
        CHECK(balanced(n).depth() == expect);
    }
}

TEST_CASE("random_tree is deterministic per seed and covers all shapes") {
    CHECK(random_tree(1, 99).leaf_count() == 1);
    CHECK(fingerprint(random_tree(3, 7)) == fingerprint(random_tree(3, 7)));
    CHECK_THROWS_AS((void)random_tree(0, 1), Error);

    SUBCASE("leaf permutation is a bijection") {
        Rng rng(31);
        for (int t = 0; t < 40; ++t) {
            std::size_t n = 1 + rng.below(40);
            auto tree = random_tree(n, rng.next());
            auto perm = tree.leaf_perm();
            std::sort(perm.begin(), perm.end());
            for (std::size_t i = 0; i < n; ++i) REQUIRE(perm[i] == i);
        }
    }
    SUBCASE("both 3-leaf shapes appear across seeds") {
        std::set<std::string> shapes;
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            auto t = random_tree(3, seed);
            auto fp = fingerprint(t);
            shapes.insert(fp.substr(0, fp.find('.')));
        }
        CHECK(shapes == std::set<std::string>{"(L,(L,L))", "((L,L),L)"});
    }
    SUBCASE("children are stored before parents") {
        Rng rng(8);
        for (int t = 0; t < 20; ++t) {
            auto tree = random_tree(1 + rng.below(60), rng.next());
            for (std::size_t i = 0; i < tree.nodes().size(); ++i) {
                const auto& nd = tree.nodes()[i];
                if (!nd.is_leaf()) {
                    REQUIRE(nd.left < static_cast<std::int32_t>(i));
                    REQUIRE(nd.right < static_cast<std::int32_t>(i));
                }
            }
        }
    }
}

TEST_CASE("eval_parallel matches eval_mud exactly") {
    CHECK(eval_parallel(span_mud(), balanced(4), iota_symbols(4, 1), 4).output ==
          eval_mud(span_mud(), balanced(4), iota_symbols(4, 1)).output);

    SUBCASE("worked example: sum of squares of 1..6 over a random tree") {
        auto tree = random_tree(6, 123);
        auto r = eval_parallel(sum_squares_mud(), tree, iota_symbols(6), 3);
        CHECK(r.output == Symbol(91));
    }
    SUBCASE("span over [1,9,4,4]") {
        std::vector<Symbol> input{Symbol(1), Symbol(9), Symbol(4), Symbol(4)};
        CHECK(eval_parallel(span_mud(), balanced(4), input, 4).output == Symbol(8));
    }
    SUBCASE("all workers produce identical outputs and metrics") {
        Rng rng(77);
        for (int t = 0; t < 25; ++t) {
            std::size_t n = 1 + rng.below(50);
            std::vector<Symbol> input;
            for (std::size_t i = 0; i < n; ++i) {
                input.push_back(Symbol(static_cast<std::int64_t>(rng.below(1000)) - 500));
            }
            auto tree = random_tree(n, rng.next());
            MudSpec spec = (t % 2) ? span_mud() : minwise_sample_mud(rng.next());
            auto seq = eval_mud(spec, tree, input);
            for (unsigned workers : {1u, 2u, 3u, 8u}) {
                auto par = eval_parallel(spec, tree, input, workers);
                REQUIRE(par.output == seq.output);
                REQUIRE(par.metrics.max_message_bits == seq.metrics.max_message_bits);
                REQUIRE(par.metrics.total_message_bits == seq.metrics.total_message_bits);
                REQUIRE(par.metrics.aggregate_calls == seq.metrics.aggregate_calls);
                REQUIRE(par.metrics.tree_depth == seq.metrics.tree_depth);
            }
        }
    }
    SUBCASE("worker count must be positive") {
        CHECK_THROWS_AS((void)eval_parallel(span_mud(), left_deep(1), iota_symbols(1), 0),
                        Error);
    }
    SUBCASE("aggregate errors surface from worker threads") {
        MudSpec bad = span_mud();
        bad.aggregate = [](const Message&, const Message&) -> Message {
            fail(Errc::no_witness, "forced failure");
        };
        CHECK_THROWS_AS((void)eval_parallel(bad, balanced(8), iota_symbols(8), 4), Error);
    }
}
