#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>

#include "ipgaka/bytes.hpp"

namespace ipgaka {

using Key256 = std::array<std::uint8_t, 32>;

/// Initialises libsodium once; every entry point that calls into it goes through here.
void ensure_sodium();

Key256 sha256(ByteView data);
Key256 hmac_sha256(ByteView key, ByteView data);

/// Keyed PRF with domain separation: HMAC-SHA256(key, len(label) || label || fields...).
/// Callers must pass one of the labels returned by prf_labels().
Key256 prf(ByteView key, std::string_view label, std::initializer_list<ByteView> fields);

/// Every label used anywhere in the library. Kept in one place so the
/// no-duplicate property can be enumerated.
std::span<const std::string_view> prf_labels();

std::array<std::uint8_t, 8> be64(std::uint64_t v);

/// Deterministic byte generator (ChaCha20 keystream). Both endpoints of a
/// provisioning step construct one from the same (domain, seed) and obtain
/// identical output.
class Drbg {
public:
    Drbg(std::string_view domain, std::uint64_t seed);
    explicit Drbg(const Key256& key);

    void fill(std::span<std::uint8_t> out);
    Bytes bytes(std::size_t n);
    std::uint64_t next_u64();
    /// Uniform in [0, bound) by rejection sampling; bound must be > 0.
    std::uint64_t uniform(std::uint64_t bound);

private:
    void refill();

    Key256 key_{};
    std::uint32_t counter_ = 0;
    std::array<std::uint8_t, 64> block_{};
    std::size_t used_ = 64;
};

}  // namespace ipgaka
