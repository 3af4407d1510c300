#include "mud/algorithms.hpp"

#include <algorithm>
#include <array>
#include <memory>

#include "mud/error.hpp"
#include "mud/rng.hpp"
#include "mud/small_bias.hpp"

namespace mud {

namespace {

Message encode_pair(std::int64_t lo, std::int64_t hi) {
    MessageWriter w;
    w.sint(lo);
    w.sint(hi);
    return w.take();
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out)) {
        fail(Errc::overflow, "accumulator exceeds 64-bit width");
    }
    return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out)) {
        fail(Errc::overflow, "product exceeds 64-bit width");
    }
    return out;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_sub_overflow(a, b, &out)) {
        fail(Errc::overflow, "difference exceeds 64-bit width");
    }
    return out;
}

std::int64_t isqrt_floor(std::int64_t v) {
    if (v < 0) fail(Errc::overflow, "negative radicand");
    auto x = static_cast<std::uint64_t>(v);
    std::uint64_t r = 0, bit = 1ull << 62;
    while (bit > x) bit >>= 2;
    while (bit) {
        if (x >= r + bit) {
            x -= r + bit;
            r = (r >> 1) + bit;
        } else {
            r >>= 1;
        }
        bit >>= 2;
    }
    return static_cast<std::int64_t>(r);
}

MudSpec sum_squares_base(std::string name, std::function<Symbol(const Message&)> post) {
    MudSpec spec;
    spec.name = std::move(name);
    spec.local = [](const Symbol& x) {
        std::int64_t v = x.scalar();
        MessageWriter w;
        w.uint(static_cast<std::uint64_t>(checked_mul(v, v)));
        return w.take();
    };
    spec.aggregate = [](const Message& a, const Message& b) {
        auto va = static_cast<std::int64_t>(MessageReader(a).uint());
        auto vb = static_cast<std::int64_t>(MessageReader(b).uint());
        MessageWriter w;
        w.uint(static_cast<std::uint64_t>(checked_add(va, vb)));
        return w.take();
    };
    spec.post = std::move(post);
    return spec;
}

}  // namespace

MudSpec span_mud() {
    MudSpec spec;
    spec.name = "span";
    spec.local = [](const Symbol& x) {
        std::int64_t v = x.scalar();
        return encode_pair(v, v);
    };
    spec.aggregate = [](const Message& a, const Message& b) {
        MessageReader ra(a), rb(b);
        std::int64_t lo_a = ra.sint(), hi_a = ra.sint();
        std::int64_t lo_b = rb.sint(), hi_b = rb.sint();
        return encode_pair(std::min(lo_a, lo_b), std::max(hi_a, hi_b));
    };
    spec.post = [](const Message& m) {
        MessageReader r(m);
        std::int64_t lo = r.sint(), hi = r.sint();
        return Symbol(checked_sub(hi, lo));
    };
    return spec;
}

MudSpec sum_squares_mud() {
    return sum_squares_base("sumsq", [](const Message& m) {
        return Symbol(static_cast<std::int64_t>(MessageReader(m).uint()));
    });
}

MudSpec l2_mud() {
    return sum_squares_base("l2", [](const Message& m) {
        return Symbol(isqrt_floor(static_cast<std::int64_t>(MessageReader(m).uint())));
    });
}

// ---------------------------------------------------------------------------
// minwise

std::uint64_t minwise_hash(std::uint64_t seed, std::int64_t item) {
    Rng rng(seed);
    std::uint64_t a = rng.next() | 1;  // odd multiplier
    std::uint64_t b = rng.next();
    return a * static_cast<std::uint64_t>(item) + b;
}

namespace {

Message minwise_encode(const MinwiseState& st) {
    MessageWriter w;
    w.sint(st.item);
    w.uint(st.hash);
    w.uint(st.count);
    return w.take();
}

}  // namespace

MinwiseState minwise_decode(const Message& m) {
    MessageReader r(m);
    MinwiseState st;
    st.item = r.sint();
    st.hash = r.uint();
    st.count = r.uint();
    return st;
}

MudSpec minwise_sample_mud(std::uint64_t seed) {
    MudSpec spec;
    spec.name = "minwise";
    spec.seed = seed;
    spec.local = [seed](const Symbol& x) {
        std::int64_t v = x.scalar();
        return minwise_encode({v, minwise_hash(seed, v), 1});
    };
    spec.aggregate = [](const Message& a, const Message& b) {
        MinwiseState sa = minwise_decode(a), sb = minwise_decode(b);
        if (sa.hash != sb.hash) return sa.hash < sb.hash ? a : b;
        if (sa.item == sb.item) {
            return minwise_encode({sa.item, sa.hash, sa.count + sb.count});
        }
        // Hash collision between distinct items: the smaller item wins so
        // the winner stays independent of the aggregation order.
        return sa.item < sb.item ? a : b;
    };
    spec.post = [](const Message& m) {
        MinwiseState st = minwise_decode(m);
        return Symbol{st.item, static_cast<std::int64_t>(st.count)};
    };
    return spec;
}

// ---------------------------------------------------------------------------
// setparity

namespace {

struct SetParityCtx {
    std::size_t n = 0;
    std::vector<SmallBiasFamily> families;

    static std::shared_ptr<const SetParityCtx> make(std::size_t n, std::size_t copies,
                                                    std::uint64_t seed) {
        if (n < 1) fail(Errc::bad_size, "setparity needs n >= 1");
        if (copies < 1) fail(Errc::bad_size, "setparity needs at least one copy");
        auto ctx = std::make_shared<SetParityCtx>();
        ctx->n = n;
        ctx->families.reserve(copies);
        for (std::size_t r = 0; r < copies; ++r) {
            ctx->families.push_back(
                SmallBiasFamily::create(n, kSetParityEpsilon, derive_seed(seed, r)));
        }
        return ctx;
    }

    std::size_t copies() const { return families.size(); }

    // index/bit extraction with record validation
    std::pair<std::size_t, int> record(const Symbol& x) const {
        if (x.arity() != 2) {
            fail(Errc::index_out_of_range, "setparity record must be \"index bit\"");
        }
        std::int64_t idx = x.field(0), bit = x.field(1);
        if (idx < 0 || static_cast<std::size_t>(idx) >= n) {
            fail(Errc::index_out_of_range,
                 "record index " + std::to_string(idx) + " outside {0.." +
                     std::to_string(n - 1) + "}");
        }
        if (bit != 0 && bit != 1) {
            fail(Errc::index_out_of_range, "record bit must be 0 or 1");
        }
        return {static_cast<std::size_t>(idx), static_cast<int>(bit)};
    }

    Message encode(const std::vector<int>& parities) const {
        MessageWriter w;
        w.uint(parities.size());
        for (int p : parities) w.bits(static_cast<std::uint64_t>(p), 1);
        return w.take();
    }

    std::vector<int> decode(const Message& m) const {
        MessageReader r(m);
        auto t = static_cast<std::size_t>(r.uint());
        std::vector<int> parities(t);
        for (auto& p : parities) p = static_cast<int>(r.bits(1));
        return parities;
    }

    std::vector<int> contribution(const Symbol& x) const {
        auto [idx, bit] = record(x);
        std::vector<int> v(copies());
        if (bit) {
            for (std::size_t r = 0; r < copies(); ++r) v[r] = families[r].bit(idx);
        }
        return v;
    }

    Symbol verdict(const Message& m) const {
        auto parities = decode(m);
        bool all_zero = std::all_of(parities.begin(), parities.end(),
                                    [](int p) { return p == 0; });
        return Symbol(all_zero ? 1 : 0);
    }
};

}  // namespace

StreamSpec setparity_stream(std::size_t n, std::size_t copies, std::uint64_t seed) {
    auto ctx = SetParityCtx::make(n, copies, seed);
    StreamSpec spec;
    spec.name = "setparity";
    spec.seed = seed;
    spec.start = ctx->encode(std::vector<int>(ctx->copies(), 0));
    spec.step = [ctx](const Message& q, const Symbol& x) {
        auto parities = ctx->decode(q);
        auto delta = ctx->contribution(x);
        for (std::size_t r = 0; r < parities.size(); ++r) parities[r] ^= delta[r];
        return ctx->encode(parities);
    };
    spec.post = [ctx](const Message& m) { return ctx->verdict(m); };
    return spec;
}

MudSpec setparity_mud(std::size_t n, std::size_t copies, std::uint64_t seed) {
    auto ctx = SetParityCtx::make(n, copies, seed);
    MudSpec spec;
    spec.name = "setparity";
    spec.seed = seed;
    spec.local = [ctx](const Symbol& x) { return ctx->encode(ctx->contribution(x)); };
    spec.aggregate = [ctx](const Message& a, const Message& b) {
        auto pa = ctx->decode(a);
        auto pb = ctx->decode(b);
        for (std::size_t r = 0; r < pa.size(); ++r) pa[r] ^= pb[r];
        return ctx->encode(pa);
    };
    spec.post = [ctx](const Message& m) { return ctx->verdict(m); };
    return spec;
}

// ---------------------------------------------------------------------------
// symmetric index

namespace {

// state: phase 0 = nothing seen; 1 = waiting for the matching record;
// 2 = answer pinned.
struct SymIndexState {
    unsigned phase = 0;
    int needed_side = 0;
    std::uint64_t needed_pos = 0;
    int answer = 0;
};

Message symindex_encode(const SymIndexState& st) {
    MessageWriter w;
    w.bits(st.phase, 2);
    if (st.phase >= 1) {
        w.bits(static_cast<std::uint64_t>(st.needed_side), 1);
        w.uint(st.needed_pos);
    }
    if (st.phase == 2) w.bits(static_cast<std::uint64_t>(st.answer), 1);
    return w.take();
}

SymIndexState symindex_decode(const Message& m) {
    MessageReader r(m);
    SymIndexState st;
    st.phase = static_cast<unsigned>(r.bits(2));
    if (st.phase >= 1) {
        st.needed_side = static_cast<int>(r.bits(1));
        st.needed_pos = r.uint();
    }
    if (st.phase == 2) st.answer = static_cast<int>(r.bits(1));
    return st;
}

struct SymIndexRecordView {
    int side;
    std::uint64_t pos;
    int bit;
    std::uint64_t query;
};

SymIndexRecordView symindex_record(const Symbol& x, std::size_t n) {
    if (x.arity() != 4) {
        fail(Errc::malformed_instance,
             "symmetric-index record must be \"side pos bit query\"");
    }
    std::int64_t side = x.field(0), pos = x.field(1), bit = x.field(2), query = x.field(3);
    if (side != 0 && side != 1) fail(Errc::malformed_instance, "record side must be a or b");
    if (bit != 0 && bit != 1) fail(Errc::malformed_instance, "record bit must be 0 or 1");
    auto in_range = [n](std::int64_t v) {
        return v >= 1 && static_cast<std::uint64_t>(v) <= n;
    };
    if (!in_range(pos) || !in_range(query)) {
        fail(Errc::malformed_instance, "record position/query outside [1, n]");
    }
    return {static_cast<int>(side), static_cast<std::uint64_t>(pos),
            static_cast<int>(bit), static_cast<std::uint64_t>(query)};
}

}  // namespace

StreamSpec symmetric_index_stream(std::size_t n) {
    if (n < 1) fail(Errc::bad_size, "symmetric index needs n >= 1");
    StreamSpec spec;
    spec.name = "symindex";
    spec.start = symindex_encode({});
    spec.step = [n](const Message& q, const Symbol& x) {
        SymIndexState st = symindex_decode(q);
        SymIndexRecordView rec = symindex_record(x, n);
        switch (st.phase) {
            case 0:
                st.phase = 1;
                st.needed_side = 1 - rec.side;
                st.needed_pos = rec.query;
                break;
            case 1:
                if (rec.side == st.needed_side && rec.pos == st.needed_pos) {
                    st.phase = 2;
                    st.answer = rec.bit;
                }
                break;
            default:
                if (rec.side == st.needed_side && rec.pos == st.needed_pos) {
                    if (rec.bit != st.answer) {
                        fail(Errc::promise_violation,
                             "matching record contradicts the pinned answer");
                    }
                    fail(Errc::malformed_instance,
                         "duplicate record at the queried position");
                }
                break;
        }
        return symindex_encode(st);
    };
    spec.post = [](const Message& m) {
        SymIndexState st = symindex_decode(m);
        if (st.phase != 2) {
            fail(Errc::promise_violation, "matching record never arrived");
        }
        return Symbol(st.answer);
    };
    return spec;
}

// ---------------------------------------------------------------------------
// f2 sketch

namespace {

constexpr std::uint64_t kF2Prime = (1ull << 61) - 1;

std::uint64_t mod_mersenne61(unsigned __int128 v) {
    auto lo = static_cast<std::uint64_t>(v & kF2Prime);
    auto hi = static_cast<std::uint64_t>(v >> 61);
    std::uint64_t r = lo + hi;
    if (r >= kF2Prime) r -= kF2Prime;
    return r;
}

struct F2Ctx {
    std::size_t width;
    std::vector<std::array<std::uint64_t, 4>> coeffs;  // per counter

    static std::shared_ptr<const F2Ctx> make(std::size_t width, std::uint64_t seed) {
        if (width < 1) fail(Errc::bad_size, "sketch width must be >= 1");
        auto ctx = std::make_shared<F2Ctx>();
        ctx->width = width;
        ctx->coeffs.resize(width);
        for (std::size_t i = 0; i < width; ++i) {
            Rng rng(derive_seed(seed, i));
            for (auto& c : ctx->coeffs[i]) c = rng.next() % kF2Prime;
        }
        return ctx;
    }

    int sign(std::size_t counter, std::int64_t item) const {
        const auto& c = coeffs[counter];
        std::uint64_t x = mod_mersenne61(static_cast<std::uint64_t>(item));
        std::uint64_t h = c[3];
        for (int k = 2; k >= 0; --k) {
            h = mod_mersenne61(static_cast<unsigned __int128>(h) * x + c[k]);
        }
        return (h & 1) ? -1 : 1;
    }

    Message encode(const std::vector<std::int64_t>& counters) const {
        MessageWriter w;
        w.uint(counters.size());
        for (std::int64_t c : counters) w.sint(c);
        return w.take();
    }

    Symbol median_estimate(const Message& m) const {
        auto counters = f2_decode_counters(m);
        std::vector<std::int64_t> squares(counters.size());
        for (std::size_t i = 0; i < counters.size(); ++i) {
            squares[i] = checked_mul(counters[i], counters[i]);
        }
        std::nth_element(squares.begin(), squares.begin() + squares.size() / 2,
                         squares.end());
        return Symbol(squares[squares.size() / 2]);
    }
};

}  // namespace

std::vector<std::int64_t> f2_decode_counters(const Message& m) {
    MessageReader r(m);
    auto width = static_cast<std::size_t>(r.uint());
    std::vector<std::int64_t> counters(width);
    for (auto& c : counters) c = r.sint();
    return counters;
}

int f2_sign(std::uint64_t seed, std::size_t counter, std::int64_t item) {
    return F2Ctx::make(counter + 1, seed)->sign(counter, item);
}

StreamSpec f2_sketch_stream(std::size_t width, std::uint64_t seed) {
    auto ctx = F2Ctx::make(width, seed);
    StreamSpec spec;
    spec.name = "f2";
    spec.seed = seed;
    spec.start = ctx->encode(std::vector<std::int64_t>(width, 0));
    spec.step = [ctx](const Message& q, const Symbol& x) {
        auto counters = f2_decode_counters(q);
        std::int64_t item = x.scalar();
        for (std::size_t i = 0; i < counters.size(); ++i) {
            counters[i] = checked_add(counters[i], ctx->sign(i, item));
        }
        return ctx->encode(counters);
    };
    spec.post = [ctx](const Message& m) { return ctx->median_estimate(m); };
    return spec;
}

MudSpec f2_sketch_mud(std::size_t width, std::uint64_t seed) {
    auto ctx = F2Ctx::make(width, seed);
    MudSpec spec;
    spec.name = "f2";
    spec.seed = seed;
    spec.local = [ctx](const Symbol& x) {
        std::int64_t item = x.scalar();
        std::vector<std::int64_t> counters(ctx->width);
        for (std::size_t i = 0; i < counters.size(); ++i) {
            counters[i] = ctx->sign(i, item);
        }
        return ctx->encode(counters);
    };
    spec.aggregate = [ctx](const Message& a, const Message& b) {
        auto ca = f2_decode_counters(a);
        auto cb = f2_decode_counters(b);
        for (std::size_t i = 0; i < ca.size(); ++i) ca[i] = checked_add(ca[i], cb[i]);
        return ctx->encode(ca);
    };
    spec.post = [ctx](const Message& m) { return ctx->median_estimate(m); };
    return spec;
}

}  // namespace mud
