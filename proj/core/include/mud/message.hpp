#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace mud {

/// An encoded aggregation state q as it would travel between machines.
///
/// `bit_len` is the exact number of payload bits; the byte vector is the
/// bit stream packed LSB-first with the final partial byte zero-padded, so
/// payload.size() == ceil(bit_len / 8) always holds.  Encoders are
/// deterministic: two messages for the same state are byte-identical.
/// `bit_len` is what the communication metering reports.
class Message {
public:
    Message() = default;

    static Message empty() { return Message(); }

    /// Zero payload bits.  Used as the sentinel start state of adapter
    /// streams; no real algorithm state encodes to zero bits.
    bool is_empty() const { return bit_len_ == 0; }

    std::span<const std::uint8_t> payload() const { return bytes_; }
    std::size_t bit_len() const { return bit_len_; }

    friend bool operator==(const Message&, const Message&) = default;
    friend auto operator<=>(const Message&, const Message&) = default;

private:
    friend class MessageWriter;
    std::vector<std::uint8_t> bytes_;
    std::size_t bit_len_ = 0;
};

/// Appends bit-level fields and produces a Message.
///
/// Field vocabulary:
///   bits(v, w)  fixed-width field, w in [0, 64], little-endian bit order
///   uint(v)     minimal-length unsigned: 4-bit byte-count header (0..8)
///               followed by that many little-endian payload bytes
///   sint(v)     zigzag-mapped uint for signed fields
class MessageWriter {
public:
    void bits(std::uint64_t value, unsigned width);
    void uint(std::uint64_t value);
    void sint(std::int64_t value);

    Message take();

private:
    Message msg_;
};

class MessageReader {
public:
    explicit MessageReader(const Message& m) : msg_(&m) {}

    std::uint64_t bits(unsigned width);
    std::uint64_t uint();
    std::int64_t sint();

    /// All payload bits consumed?
    bool done() const { return pos_ == msg_->bit_len(); }

private:
    const Message* msg_;
    std::size_t pos_ = 0;
};

/// Bytes needed for the minimal little-endian encoding of v (0 for v == 0).
unsigned uint_byte_len(std::uint64_t v);

inline std::uint64_t zigzag(std::int64_t v) {
    return (static_cast<std::uint64_t>(v) << 1) ^ static_cast<std::uint64_t>(v >> 63);
}

inline std::int64_t unzigzag(std::uint64_t v) {
    return static_cast<std::int64_t>(v >> 1) ^ -static_cast<std::int64_t>(v & 1);
}

}  // namespace mud
