#include "mud/message.hpp"

#include "mud/error.hpp"

namespace mud {

void MessageWriter::bits(std::uint64_t value, unsigned width) {
    if (width > 64) fail(Errc::bad_length, "field width > 64 bits");
    if (width < 64 && (value >> width) != 0) {
        fail(Errc::overflow, "value does not fit in declared field width");
    }
    std::size_t pos = msg_.bit_len_;
    msg_.bit_len_ += width;
    msg_.bytes_.resize((msg_.bit_len_ + 7) / 8, 0);
    for (unsigned i = 0; i < width; ++i, ++pos) {
        if ((value >> i) & 1) {
            msg_.bytes_[pos / 8] |= static_cast<std::uint8_t>(1u << (pos % 8));
        }
    }
}

void MessageWriter::uint(std::uint64_t value) {
    unsigned len = uint_byte_len(value);
    bits(len, 4);
    bits(value, 8 * len);
}

void MessageWriter::sint(std::int64_t value) { uint(zigzag(value)); }

Message MessageWriter::take() { return std::move(msg_); }

std::uint64_t MessageReader::bits(unsigned width) {
    if (pos_ + width > msg_->bit_len()) {
        fail(Errc::parse, "truncated message payload");
    }
    std::uint64_t value = 0;
    auto payload = msg_->payload();
    for (unsigned i = 0; i < width; ++i, ++pos_) {
        if ((payload[pos_ / 8] >> (pos_ % 8)) & 1) value |= 1ull << i;
    }
    return value;
}

std::uint64_t MessageReader::uint() {
    unsigned len = static_cast<unsigned>(bits(4));
    if (len > 8) fail(Errc::parse, "bad varint length header");
    std::uint64_t v = bits(8 * len);
    if (uint_byte_len(v) != len) fail(Errc::parse, "non-minimal varint encoding");
    return v;
}

std::int64_t MessageReader::sint() { return unzigzag(uint()); }

unsigned uint_byte_len(std::uint64_t v) {
    unsigned len = 0;
    while (v) {
        ++len;
        v >>= 8;
    }
    return len;
}

}  // namespace mud
