#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ipgaka/bytes.hpp"
#include "ipgaka/error.hpp"

namespace ipgaka {

class Drbg;

/// 15-digit subscriber identity: MCC (3) || MNC (2 or 3) || MSIN.
class Imsi {
public:
    /// Throws InvalidImsi unless the text is exactly 15 decimal digits.
    static Imsi parse(std::string_view digits, unsigned mnc_length = 2);

    const std::string& digits() const { return digits_; }
    std::string mcc() const { return digits_.substr(0, 3); }
    std::string mnc() const { return digits_.substr(3, mnc_length_); }
    std::string msin() const { return digits_.substr(3 + mnc_length_); }
    mpz_class value() const { return mpz_class(digits_, 10); }

    bool operator==(const Imsi& other) const { return digits_ == other.digits_; }

private:
    std::string digits_;
    unsigned mnc_length_ = 2;
};

inline constexpr std::size_t kImsiDigits = 15;

/// Public part of the key: (p, alpha, beta) plus the order n of alpha.
struct ElGamalParams {
    mpz_class p;
    mpz_class alpha;
    mpz_class beta;
    mpz_class n;

    /// Bytes per big-integer field on the wire.
    std::size_t width() const;
    bool operator==(const ElGamalParams&) const = default;
};

struct SecretKey {
    mpz_class s;
};

struct ImsiCiphertext {
    mpz_class r;  // alpha^k
    mpz_class t;  // block * beta^k
    std::uint32_t block_index = 0;

    bool operator==(const ImsiCiphertext&) const = default;
};

inline constexpr unsigned kDefaultPrimeBits = 2048;

/// Safe prime p = 2q + 1 with alpha generating the order-q subgroup.
/// The 2048-bit size uses the RFC 3526 MODP group; other sizes search
/// for a safe prime from the seed. Throws InvalidBitLength below 16 bits
/// and PrimeGenerationFailed when the search gives up.
std::pair<ElGamalParams, SecretKey> gen_params(unsigned bit_length, std::uint64_t seed);

/// Same construction over a caller-chosen safe prime, for moduli below the
/// 16-bit floor of gen_params. Throws PrimeGenerationFailed if p is not safe.
std::pair<ElGamalParams, SecretKey> params_for_safe_prime(const mpz_class& p, std::uint64_t seed);

/// Uniform in [1, bound - 1].
mpz_class random_in_range(Drbg& rng, const mpz_class& bound);

/// r = alpha^k, t = block * beta^k (mod p). Throws BlockOutOfRange or
/// EphemeralOutOfRange when block is outside [1, p-1] or k outside [1, n-1].
ImsiCiphertext encrypt_imsi(const ElGamalParams& params, const mpz_class& block, const mpz_class& k);

/// t * (r^s)^-1 mod p.
mpz_class decrypt_imsi(const ElGamalParams& params, const SecretKey& sk, const ImsiCiphertext& ct);

/// Decimal digits per block for this modulus, or 0 when one block holds the
/// whole IMSI.
unsigned block_digits(const ElGamalParams& params);
std::vector<mpz_class> split_blocks(const Imsi& imsi, const ElGamalParams& params);
Imsi join_blocks(const std::vector<mpz_class>& blocks, const ElGamalParams& params);

/// Splits, then encrypts each block under a fresh ephemeral drawn from rng.
std::vector<ImsiCiphertext> conceal_imsi(const ElGamalParams& params, const Imsi& imsi, Drbg& rng);
Imsi reveal_imsi(const ElGamalParams& params, const SecretKey& sk, const std::vector<ImsiCiphertext>& cts);

// Fixed-width big-endian encoding of a big integer.
Bytes encode_big(const mpz_class& v, std::size_t width);
mpz_class decode_big(ByteView bytes);

/// Trusted-authority signing key (Ed25519).
struct AuthorityKey {
    std::array<std::uint8_t, 64> secret{};
    std::array<std::uint8_t, 32> public_key{};

    static AuthorityKey from_seed(std::uint64_t seed);
};

struct SignedIdentityRequest {
    ElGamalParams params;
    std::uint64_t timestamp = 0;
    std::array<std::uint8_t, 64> signature{};

    bool operator==(const SignedIdentityRequest&) const = default;
};

inline constexpr std::uint64_t kDefaultFreshnessWindow = 30;

/// p || alpha || beta || timestamp, each fixed-width big-endian.
Bytes identity_request_signed_bytes(const ElGamalParams& params, std::uint64_t timestamp);

SignedIdentityRequest sign_identity_request(const AuthorityKey& authority, const ElGamalParams& params,
                                            std::uint64_t timestamp);

/// True iff the signature verifies and |now - timestamp| <= window.
bool verify_identity_request(const std::array<std::uint8_t, 32>& authority_public, const SignedIdentityRequest& req,
                             std::uint64_t now, std::uint64_t window = kDefaultFreshnessWindow);
bool signature_valid(const std::array<std::uint8_t, 32>& authority_public, const SignedIdentityRequest& req);
bool timestamp_fresh(std::uint64_t timestamp, std::uint64_t now, std::uint64_t window);

// Text files: "ELGAMAL v1" with p/alpha/beta/n, "ELGSECRET v1" with s, all hex.
std::string serialize_params(const ElGamalParams& params);
ElGamalParams deserialize_params(std::string_view text);
std::string serialize_secret(const SecretKey& sk);
SecretKey deserialize_secret(std::string_view text);

}  // namespace ipgaka
