#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "mud/algorithms.hpp"
#include "mud/error.hpp"
#include "mud/eval.hpp"
#include "mud/rng.hpp"
#include "mud/separations.hpp"
#include "mud/small_bias.hpp"

using namespace mud;

namespace {

std::vector<Symbol> ints(std::initializer_list<std::int64_t> vs) {
    std::vector<Symbol> out;
    for (auto v : vs) out.push_back(Symbol(v));
    return out;
}

std::vector<Symbol> records2(std::initializer_list<std::pair<std::int64_t, std::int64_t>> rs) {
    std::vector<Symbol> out;
    for (auto [i, b] : rs) out.push_back(Symbol{i, b});
    return out;
}

}  // namespace

TEST_CASE("span") {
    CHECK(eval_mud(span_mud(), balanced(3), ints({3, 7, 2})).output == Symbol(5));
    CHECK(eval_mud(span_mud(), balanced(1), ints({12})).output == Symbol(0));
    CHECK(eval_mud(span_mud(), balanced(2), ints({-4, 10})).output == Symbol(14));
}

TEST_CASE("sum of squares and l2") {
    CHECK(eval_mud(sum_squares_mud(), balanced(3), ints({1, 2, 3})).output == Symbol(14));
    CHECK(eval_mud(sum_squares_mud(), balanced(2), ints({0, 0})).output == Symbol(0));
    CHECK(eval_mud(l2_mud(), balanced(2), ints({3, 4})).output == Symbol(5));
    CHECK(eval_mud(l2_mud(), balanced(2), ints({1, 1})).output == Symbol(1));  // floor

    SUBCASE("overflow is reported, not wrapped") {
        // 3037000500^2 > 2^63 - 1
        CHECK_THROWS_AS(
            (void)eval_mud(sum_squares_mud(), balanced(1), ints({3037000500})), Error);
        // two squares that individually fit but overflow when summed
        CHECK_THROWS_AS((void)eval_mud(sum_squares_mud(), balanced(2),
                                       ints({3037000499, 3037000499})),
                        Error);
    }
}

TEST_CASE("minwise keeps the smaller hash and sums counts of equal items") {
    // find seeds realizing both hash orders of the items 5 and 9
    std::uint64_t seed_lt = 0, seed_gt = 0;
    bool found_lt = false, found_gt = false;
    for (std::uint64_t s = 0; s < 64 && !(found_lt && found_gt); ++s) {
        bool lt = minwise_hash(s, 5) < minwise_hash(s, 9);
        if (lt && !found_lt) {
            seed_lt = s;
            found_lt = true;
        }
        if (!lt && !found_gt) {
            seed_gt = s;
            found_gt = true;
        }
    }
    REQUIRE(found_lt);
    REQUIRE(found_gt);

    SUBCASE("smaller hash wins") {
        auto spec = minwise_sample_mud(seed_lt);
        Message merged = spec.aggregate(spec.local(Symbol(5)), spec.local(Symbol(9)));
        MinwiseState st = minwise_decode(merged);
        CHECK(st.item == 5);
        CHECK(st.hash == minwise_hash(seed_lt, 5));
        CHECK(st.count == 1);

        auto spec2 = minwise_sample_mud(seed_gt);
        CHECK(minwise_decode(spec2.aggregate(spec2.local(Symbol(5)),
                                             spec2.local(Symbol(9))))
                  .item == 9);
    }
    SUBCASE("equal items accumulate their multiplicity") {
        auto spec = minwise_sample_mud(7);
        Message two = spec.aggregate(spec.local(Symbol(5)), spec.local(Symbol(5)));
        Message three = spec.aggregate(two, spec.local(Symbol(5)));
        Message five = spec.aggregate(two, three);
        MinwiseState st = minwise_decode(five);
        CHECK(st.item == 5);
        CHECK(st.count == 5);
    }
    SUBCASE("n copies of one item surface as that item with count n") {
        for (std::size_t n : {1u, 2u, 9u, 33u}) {
            auto spec = minwise_sample_mud(3);
            std::vector<Symbol> input(n, Symbol(17));
            auto r = eval_mud(spec, random_tree(n, n), input);
            CHECK(r.output == Symbol{17, static_cast<std::int64_t>(n)});
        }
    }
    SUBCASE("post exposes item and count") {
        auto spec = minwise_sample_mud(0);
        auto out = eval_mud(spec, balanced(3), ints({4, 4, 8})).output;
        REQUIRE(out.arity() == 2);
        CHECK((out.field(0) == 4 || out.field(0) == 8));
        std::int64_t expected_count = out.field(0) == 4 ? 2 : 1;
        CHECK(out.field(1) == expected_count);
    }
}

TEST_CASE("setparity stream and mud agree and are one-sided") {
    SUBCASE("even bucket accepted under every seed") {
        auto input = records2({{0, 1}, {0, 1}});
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            auto spec = setparity_stream(2, 5, seed);
            CHECK(eval_stream(spec, input).output == Symbol(1));
        }
    }
    SUBCASE("odd buckets rejected by more than a quarter of single-copy seeds") {
        // the analysis bucket set for S=(0,1),(1,0) is A={0}; check the
        // family's exact bias directly on that subset
        auto fam = SmallBiasFamily::create(2, kSetParityEpsilon, 1);
        std::vector<std::size_t> subset{0};
        BiasCount bias = exact_bias(2, fam.degree(), subset);
        CHECK(bias.greater_than(1, 4));

        // and empirically: one copy rejects a decent fraction of seeds
        auto input = records2({{0, 1}, {1, 0}});
        int rejected = 0;
        for (std::uint64_t seed = 0; seed < 400; ++seed) {
            rejected += eval_stream(setparity_stream(2, 1, seed), input)
                            .output == Symbol(0);
        }
        CHECK(rejected > 100);
    }
    SUBCASE("zero bits contribute nothing") {
        auto spec = setparity_stream(4, 8, 9);
        Message q = spec.start;
        Message q2 = spec.step(q, Symbol{2, 0});
        CHECK(q == q2);
    }
    SUBCASE("stream and mud coincide per seed on random trees") {
        Rng rng(17);
        for (int trial = 0; trial < 30; ++trial) {
            std::size_t count = 1 + rng.below(24);
            std::vector<Symbol> input;
            for (std::size_t i = 0; i < count; ++i) {
                input.push_back(Symbol{static_cast<std::int64_t>(rng.below(8)),
                                       static_cast<std::int64_t>(rng.below(2))});
            }
            std::uint64_t seed = rng.next();
            auto streamed = eval_stream(setparity_stream(8, 6, seed), input).output;
            auto tree = random_tree(count, rng.next());
            auto mudded = eval_mud(setparity_mud(8, 6, seed), tree, input).output;
            REQUIRE(streamed == mudded);
        }
    }
    SUBCASE("records are validated") {
        auto spec = setparity_stream(4, 2, 0);
        CHECK_THROWS_AS((void)eval_stream(spec, records2({{4, 1}})), Error);
        CHECK_THROWS_AS((void)eval_stream(spec, records2({{-1, 1}})), Error);
        CHECK_THROWS_AS((void)eval_stream(spec, records2({{0, 2}})), Error);
    }
}

TEST_CASE("symmetric index streaming") {
    auto rec = [](std::int64_t side, std::int64_t pos, std::int64_t bit,
                  std::int64_t query) { return Symbol{side, pos, bit, query}; };

    SUBCASE("n=2 worked instance") {
        // x=(0,1), p=1; y=(1,0), q=2; promise x_2 = 1 = y_1
        std::vector<Symbol> records{rec(0, 1, 0, 1), rec(0, 2, 1, 1),
                                    rec(1, 1, 1, 2), rec(1, 2, 0, 2)};
        auto spec = symmetric_index_stream(2);
        Rng rng(4);
        for (int round = 0; round < 24; ++round) {
            rng.shuffle(records);
            REQUIRE(eval_stream(spec, records).output == Symbol(1));
        }
    }
    SUBCASE("n=1 forced by the promise") {
        std::vector<Symbol> records{rec(0, 1, 1, 1), rec(1, 1, 1, 1)};
        CHECK(eval_stream(symmetric_index_stream(1), records).output == Symbol(1));
    }
    SUBCASE("answer 0 instance") {
        // x=(0,0), p=2, q=1; promise forces y_2 = x_1 = 0, take y=(1,0)
        std::vector<Symbol> records{rec(0, 1, 0, 2), rec(0, 2, 0, 2),
                                    rec(1, 1, 1, 1), rec(1, 2, 0, 1)};
        auto spec = symmetric_index_stream(2);
        Rng rng(9);
        for (int round = 0; round < 24; ++round) {
            rng.shuffle(records);
            REQUIRE(eval_stream(spec, records).output == Symbol(0));
        }
    }
    SUBCASE("contradicting duplicate of the matching record") {
        std::vector<Symbol> records{rec(0, 1, 1, 1), rec(1, 1, 0, 1), rec(1, 1, 1, 1)};
        CHECK_THROWS_WITH_AS((void)eval_stream(symmetric_index_stream(1), records),
                             doctest::Contains("contradicts"), Error);
    }
    SUBCASE("exact duplicate at the queried position") {
        std::vector<Symbol> records{rec(0, 1, 1, 1), rec(1, 1, 1, 1), rec(1, 1, 1, 1)};
        CHECK_THROWS_WITH_AS((void)eval_stream(symmetric_index_stream(1), records),
                             doctest::Contains("duplicate"), Error);
    }
    SUBCASE("missing answer and malformed records") {
        auto spec = symmetric_index_stream(2);
        std::vector<Symbol> no_match{rec(0, 1, 0, 2), rec(0, 2, 1, 2)};
        CHECK_THROWS_AS((void)eval_stream(spec, no_match), Error);
        std::vector<Symbol> bad_pos{rec(0, 3, 0, 2)};
        CHECK_THROWS_AS((void)eval_stream(spec, bad_pos), Error);
        std::vector<Symbol> bad_side{Symbol{2, 1, 0, 1}};
        CHECK_THROWS_AS((void)eval_stream(spec, bad_side), Error);
    }
}

TEST_CASE("f2 sketch estimates the second moment") {
    SUBCASE("n copies of one item estimate n^2 under any seed") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            std::vector<Symbol> input(9, Symbol(42));
            auto r = eval_stream(f2_sketch_stream(5, seed), input);
            CHECK(r.output == Symbol(81));
        }
    }
    SUBCASE("a single item estimates 1") {
        CHECK(eval_stream(f2_sketch_stream(7, 3), ints({12})).output == Symbol(1));
    }
    SUBCASE("permutations leave the whole state identical, not just the output") {
        auto spec = f2_sketch_stream(7, 11);
        auto fold = [&spec](const std::vector<Symbol>& in) {
            Message q = spec.start;
            for (const auto& x : in) q = spec.step(q, x);
            return q;
        };
        CHECK(fold(ints({5, 5, 6, 6})) == fold(ints({5, 6, 5, 6})));
        CHECK(fold(ints({5, 5, 6, 6})) == fold(ints({6, 6, 5, 5})));
    }
    SUBCASE("stream and mud versions agree per seed") {
        Rng rng(23);
        for (int trial = 0; trial < 30; ++trial) {
            std::size_t n = 1 + rng.below(20);
            std::vector<Symbol> input;
            for (std::size_t i = 0; i < n; ++i) {
                input.push_back(Symbol(static_cast<std::int64_t>(rng.below(6))));
            }
            std::uint64_t seed = rng.next();
            auto streamed = eval_stream(f2_sketch_stream(7, seed), input).output;
            auto mudded =
                eval_mud(f2_sketch_mud(7, seed), random_tree(n, rng.next()), input).output;
            REQUIRE(streamed == mudded);
        }
    }
    SUBCASE("signs are reproducible and balanced-ish") {
        int plus = 0;
        for (std::int64_t item = 0; item < 200; ++item) {
            int s = f2_sign(5, 0, item);
            REQUIRE((s == 1 || s == -1));
            REQUIRE(f2_sign(5, 0, item) == s);
            plus += s == 1;
        }
        CHECK(plus > 50);
        CHECK(plus < 150);
    }
}

TEST_CASE("library algorithms pass the invariance harness") {
    Rng rng(456);
    for (int trial = 0; trial < 8; ++trial) {
        std::size_t n = 1 + rng.below(24);
        std::vector<Symbol> nums;
        for (std::size_t i = 0; i < n; ++i) {
            nums.push_back(Symbol(static_cast<std::int64_t>(rng.below(60)) - 30));
        }
        CHECK(check_invariance(span_mud(), nums, 50, rng.next()).pass);
        CHECK(check_invariance(sum_squares_mud(), nums, 50, rng.next()).pass);
        CHECK(check_invariance(l2_mud(), nums, 50, rng.next()).pass);
        CHECK(check_invariance(minwise_sample_mud(rng.next()), nums, 50, rng.next()).pass);
        CHECK(check_invariance(f2_sketch_mud(7, rng.next()), nums, 50, rng.next()).pass);

        std::vector<Symbol> recs;
        for (std::size_t i = 0; i < n; ++i) {
            recs.push_back(Symbol{static_cast<std::int64_t>(rng.below(16)),
                                  static_cast<std::int64_t>(rng.below(2))});
        }
        CHECK(check_invariance(setparity_mud(16, 6, rng.next()), recs, 50, rng.next())
                  .pass);
    }
}
