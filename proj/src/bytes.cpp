#include "ipgaka/bytes.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>

#include "ipgaka/error.hpp"

namespace ipgaka {

namespace {

int hex_value(char c)
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}

}  // namespace

std::string to_hex(ByteView bytes)
{
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0x0f]);
    }
    return out;
}

std::optional<Bytes> from_hex(std::string_view hex)
{
    if (hex.size() % 2 != 0)
        return std::nullopt;
    Bytes out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        int hi = hex_value(hex[2 * i]);
        int lo = hex_value(hex[2 * i + 1]);
        if (hi < 0 || lo < 0)
            return std::nullopt;
        out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
    }
    return out;
}

Bytes bytes_of(std::string_view text)
{
    return Bytes(text.begin(), text.end());
}

std::optional<std::uint64_t> parse_seed_hex(std::string_view hex)
{
    if (hex.starts_with("0x") || hex.starts_with("0X"))
        hex.remove_prefix(2);
    if (hex.empty() || hex.size() > 16)
        return std::nullopt;
    std::uint64_t v = 0;
    for (char c : hex) {
        int d = hex_value(c);
        if (d < 0)
            return std::nullopt;
        v = v << 4 | static_cast<std::uint64_t>(d);
    }
    return v;
}

std::string hexdump(ByteView bytes)
{
    std::string out;
    char line[96];
    for (std::size_t off = 0; off < bytes.size(); off += 16) {
        int n = std::snprintf(line, sizeof line, "%04zx ", off);
        out.append(line, static_cast<std::size_t>(n));
        std::string ascii;
        for (std::size_t i = 0; i < 16; ++i) {
            if (off + i < bytes.size()) {
                auto b = bytes[off + i];
                n = std::snprintf(line, sizeof line, " %02x", b);
                out.append(line, static_cast<std::size_t>(n));
                ascii.push_back(b >= 0x20 && b < 0x7f ? static_cast<char>(b) : '.');
            } else {
                out.append("   ");
            }
        }
        out.append("  |").append(ascii).append("|\n");
    }
    return out;
}

bool contains_subsequence(ByteView haystack, ByteView needle)
{
    if (needle.empty())
        return true;
    return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) != haystack.end();
}

std::size_t popcount(ByteView bytes)
{
    std::size_t n = 0;
    for (auto b : bytes)
        n += static_cast<std::size_t>(std::popcount(b));
    return n;
}

std::size_t hamming_distance(ByteView a, ByteView b)
{
    std::size_t n = 0;
    std::size_t common = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < common; ++i)
        n += static_cast<std::size_t>(std::popcount(static_cast<std::uint8_t>(a[i] ^ b[i])));
    return n + 8 * (std::max(a.size(), b.size()) - common);
}

void ByteWriter::u16(std::uint16_t v)
{
    u8(static_cast<std::uint8_t>(v >> 8));
    u8(static_cast<std::uint8_t>(v));
}

void ByteWriter::u32(std::uint32_t v)
{
    u16(static_cast<std::uint16_t>(v >> 16));
    u16(static_cast<std::uint16_t>(v));
}

void ByteWriter::u64(std::uint64_t v)
{
    u32(static_cast<std::uint32_t>(v >> 32));
    u32(static_cast<std::uint32_t>(v));
}

void ByteWriter::blob16(ByteView bytes)
{
    if (bytes.size() > 0xffff)
        throw Error(ErrorCode::MalformedMessage, "blob exceeds 65535 bytes");
    u16(static_cast<std::uint16_t>(bytes.size()));
    raw(bytes);
}

void ByteReader::need(std::size_t n) const
{
    if (remaining() < n)
        throw Error(ErrorCode::MalformedMessage, "truncated input");
}

std::uint8_t ByteReader::u8()
{
    need(1);
    return data_[pos_++];
}

std::uint16_t ByteReader::u16()
{
    std::uint16_t hi = u8();
    return static_cast<std::uint16_t>(hi << 8 | u8());
}

std::uint32_t ByteReader::u32()
{
    std::uint32_t hi = u16();
    return hi << 16 | u16();
}

std::uint64_t ByteReader::u64()
{
    std::uint64_t hi = u32();
    return hi << 32 | u32();
}

Bytes ByteReader::raw(std::size_t n)
{
    need(n);
    Bytes out(data_.begin() + static_cast<std::ptrdiff_t>(pos_),
              data_.begin() + static_cast<std::ptrdiff_t>(pos_ + n));
    pos_ += n;
    return out;
}

Bytes ByteReader::blob16()
{
    return raw(u16());
}

void ByteReader::expect_end() const
{
    if (remaining() != 0)
        throw Error(ErrorCode::MalformedMessage, "trailing bytes");
}

}  // namespace ipgaka
