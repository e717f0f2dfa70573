#include "ipgaka/primitives.hpp"

#include <sodium.h>

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace ipgaka {

void ensure_sodium()
{
    static const bool ready = [] {
        if (sodium_init() < 0)
            throw std::runtime_error("libsodium initialisation failed");
        return true;
    }();
    (void)ready;
}

namespace {

constexpr std::string_view kLabels[] = {
    // key_hierarchy
    "mac", "ak", "ck", "ik", "res", "asme", "enb",
    "nas-enc", "nas-int", "rrc-enc", "rrc-int", "up-enc", "up-int", "nh",
    // keygen
    "feeder-init",
    // provisioning helpers
    "static-ltek",
};

}  // namespace

Key256 sha256(ByteView data)
{
    ensure_sodium();
    Key256 out{};
    crypto_hash_sha256(out.data(), data.data(), data.size());
    return out;
}

Key256 hmac_sha256(ByteView key, ByteView data)
{
    ensure_sodium();
    crypto_auth_hmacsha256_state st;
    crypto_auth_hmacsha256_init(&st, key.data(), key.size());
    crypto_auth_hmacsha256_update(&st, data.data(), data.size());
    Key256 out{};
    crypto_auth_hmacsha256_final(&st, out.data());
    return out;
}

Key256 prf(ByteView key, std::string_view label, std::initializer_list<ByteView> fields)
{
    ensure_sodium();
    crypto_auth_hmacsha256_state st;
    crypto_auth_hmacsha256_init(&st, key.data(), key.size());
    auto len = static_cast<std::uint8_t>(label.size());
    crypto_auth_hmacsha256_update(&st, &len, 1);
    crypto_auth_hmacsha256_update(&st, reinterpret_cast<const unsigned char*>(label.data()), label.size());
    for (auto f : fields)
        crypto_auth_hmacsha256_update(&st, f.data(), f.size());
    Key256 out{};
    crypto_auth_hmacsha256_final(&st, out.data());
    return out;
}

std::span<const std::string_view> prf_labels()
{
    return kLabels;
}

std::array<std::uint8_t, 8> be64(std::uint64_t v)
{
    std::array<std::uint8_t, 8> out{};
    for (int i = 7; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
        v >>= 8;
    }
    return out;
}

Drbg::Drbg(std::string_view domain, std::uint64_t seed)
{
    Bytes material = bytes_of("drbg:");
    material.insert(material.end(), domain.begin(), domain.end());
    auto s = be64(seed);
    material.insert(material.end(), s.begin(), s.end());
    key_ = sha256(material);
}

Drbg::Drbg(const Key256& key) : key_(key) {}

void Drbg::refill()
{
    ensure_sodium();
    static constexpr std::array<std::uint8_t, crypto_stream_chacha20_ietf_NONCEBYTES> kNonce{};
    block_.fill(0);
    crypto_stream_chacha20_ietf_xor_ic(block_.data(), block_.data(), block_.size(), kNonce.data(), counter_++,
                                       key_.data());
    used_ = 0;
}

void Drbg::fill(std::span<std::uint8_t> out)
{
    std::size_t pos = 0;
    while (pos < out.size()) {
        if (used_ == block_.size())
            refill();
        std::size_t n = std::min(out.size() - pos, block_.size() - used_);
        std::copy_n(block_.begin() + static_cast<std::ptrdiff_t>(used_), n,
                    out.begin() + static_cast<std::ptrdiff_t>(pos));
        used_ += n;
        pos += n;
    }
}

Bytes Drbg::bytes(std::size_t n)
{
    Bytes out(n);
    fill(out);
    return out;
}

std::uint64_t Drbg::next_u64()
{
    std::array<std::uint8_t, 8> buf{};
    fill(buf);
    std::uint64_t v = 0;
    for (auto b : buf)
        v = v << 8 | b;
    return v;
}

std::uint64_t Drbg::uniform(std::uint64_t bound)
{
    if (bound == 0)
        throw std::invalid_argument("Drbg::uniform: zero bound");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
        std::uint64_t v = next_u64();
        if (v < limit)
            return v % bound;
    }
}

}  // namespace ipgaka
