#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ipgaka {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

std::string to_hex(ByteView bytes);
/// Accepts upper or lower case; nullopt on odd length or a non-hex digit.
std::optional<Bytes> from_hex(std::string_view hex);

Bytes bytes_of(std::string_view text);

/// Parses a 64-bit seed written as up to 16 hex digits (optional 0x prefix).
std::optional<std::uint64_t> parse_seed_hex(std::string_view hex);

/// Offset/hex/ascii dump, 16 bytes per line.
std::string hexdump(ByteView bytes);

bool contains_subsequence(ByteView haystack, ByteView needle);

std::size_t popcount(ByteView bytes);
std::size_t hamming_distance(ByteView a, ByteView b);

/// Big-endian append-only encoder for the wire format.
class ByteWriter {
public:
    void u8(std::uint8_t v) { out_.push_back(v); }
    void u16(std::uint16_t v);
    void u32(std::uint32_t v);
    void u64(std::uint64_t v);
    void raw(ByteView bytes) { out_.insert(out_.end(), bytes.begin(), bytes.end()); }
    /// u16 length prefix followed by the bytes.
    void blob16(ByteView bytes);

    const Bytes& bytes() const& { return out_; }
    Bytes take() && { return std::move(out_); }

private:
    Bytes out_;
};

/// Big-endian decoder; every read throws MalformedMessage on underflow.
class ByteReader {
public:
    explicit ByteReader(ByteView bytes) : data_(bytes) {}

    std::uint8_t u8();
    std::uint16_t u16();
    std::uint32_t u32();
    std::uint64_t u64();
    Bytes raw(std::size_t n);
    Bytes blob16();

    std::size_t remaining() const { return data_.size() - pos_; }
    void expect_end() const;

private:
    void need(std::size_t n) const;

    ByteView data_;
    std::size_t pos_ = 0;
};

}  // namespace ipgaka
