#include "ipgaka/imsi_crypto.hpp"

#include <sodium.h>

#include <algorithm>
#include <cctype>
#include <sstream>

#include "ipgaka/error.hpp"
#include "ipgaka/primitives.hpp"

namespace ipgaka {

Imsi Imsi::parse(std::string_view digits, unsigned mnc_length)
{
    if (digits.size() != kImsiDigits)
        throw Error(ErrorCode::InvalidImsi, "expected 15 digits, got " + std::to_string(digits.size()));
    if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw Error(ErrorCode::InvalidImsi, "non-digit character in '" + std::string(digits) + "'");
    if (mnc_length != 2 && mnc_length != 3)
        throw Error(ErrorCode::InvalidImsi, "MNC length must be 2 or 3");
    Imsi out;
    out.digits_ = std::string(digits);
    out.mnc_length_ = mnc_length;
    return out;
}

std::size_t ElGamalParams::width() const
{
    return (mpz_sizeinbase(p.get_mpz_t(), 2) + 7) / 8;
}

namespace {

// RFC 3526, group 14.
constexpr const char* kModp2048 =
    "FFFFFFFFFFFFFFFFC90FDAA22168C234C4C6628B80DC1CD129024E088A67CC74"
    "020BBEA63B139B22514A08798E3404DDEF9519B3CD3A431B302B0A6DF25F1437"
    "4FE1356D6D51C245E485B576625E7EC6F44C42E9A637ED6B0BFF5CB6F406B7ED"
    "EE386BFB5A899FA5AE9F24117C4B1FE649286651ECE45B3DC2007CB8A163BF05"
    "98DA48361C55D39A69163FA8FD24CF5F83655D23DCA3AD961C62F356208552BB"
    "9ED529077096966D670C354E4ABC9804F1746C08CA18217C32905E462E36CE3B"
    "E39E772C180E86039B2783A2EC07A28FB5C55DF06F4C52C9DE2BCBF695581718"
    "3995497CEA956AE515D2261898FA051015728E5A8AACAA68FFFFFFFFFFFFFFFF";

constexpr int kPrimeReps = 40;  // error below 4^-40

mpz_class random_bits(Drbg& rng, unsigned bits)
{
    Bytes raw = rng.bytes((bits + 7) / 8);
    mpz_class v;
    mpz_import(v.get_mpz_t(), raw.size(), 1, 1, 1, 0, raw.data());
    return v >> static_cast<unsigned>(raw.size() * 8 - bits);
}

mpz_class powm(const mpz_class& base, const mpz_class& exp, const mpz_class& mod)
{
    mpz_class out;
    mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return out;
}

bool is_prime(const mpz_class& v)
{
    return mpz_probab_prime_p(v.get_mpz_t(), kPrimeReps) != 0;
}

mpz_class find_safe_prime(unsigned bits, Drbg& rng)
{
    const std::uint64_t attempts = 20000 + 8ull * bits * bits;
    const mpz_class top = mpz_class(1) << (bits - 2);
    for (std::uint64_t a = 0; a < attempts; ++a) {
        mpz_class q = random_bits(rng, bits - 1) | top | 1;
        // q = 1 mod 3 makes 2q + 1 divisible by 3.
        if (q % 3 == 1 && q != 1)
            continue;
        if (!is_prime(q))
            continue;
        mpz_class p = 2 * q + 1;
        if (is_prime(p))
            return p;
    }
    throw Error(ErrorCode::PrimeGenerationFailed, "no safe prime of " + std::to_string(bits) + " bits found");
}

}  // namespace

mpz_class random_in_range(Drbg& rng, const mpz_class& bound)
{
    if (bound <= 1)
        throw Error(ErrorCode::EphemeralOutOfRange, "empty range");
    const unsigned bits = static_cast<unsigned>(mpz_sizeinbase(bound.get_mpz_t(), 2));
    for (;;) {
        mpz_class v = random_bits(rng, bits);
        if (v >= 1 && v < bound)
            return v;
    }
}

namespace {

std::pair<ElGamalParams, SecretKey> params_from(const mpz_class& p, Drbg& rng)
{
    ElGamalParams params;
    params.p = p;
    params.n = (p - 1) / 2;
    // Squares generate the order-q subgroup; anything but 1 is a generator.
    do {
        mpz_class h = random_in_range(rng, params.p - 1);
        params.alpha = h * h % params.p;
    } while (params.alpha == 1);

    SecretKey sk{random_in_range(rng, params.n)};
    params.beta = powm(params.alpha, sk.s, params.p);
    return {params, sk};
}

}  // namespace

std::pair<ElGamalParams, SecretKey> gen_params(unsigned bit_length, std::uint64_t seed)
{
    if (bit_length < 16)
        throw Error(ErrorCode::InvalidBitLength, std::to_string(bit_length) + " bits, minimum 16");
    Drbg rng("elgamal", seed);
    mpz_class p = bit_length == kDefaultPrimeBits ? mpz_class(kModp2048, 16) : find_safe_prime(bit_length, rng);
    return params_from(p, rng);
}

std::pair<ElGamalParams, SecretKey> params_for_safe_prime(const mpz_class& p, std::uint64_t seed)
{
    if (p < 7 || !is_prime(p) || !is_prime((p - 1) / 2))
        throw Error(ErrorCode::PrimeGenerationFailed, p.get_str() + " is not a safe prime");
    Drbg rng("elgamal", seed);
    return params_from(p, rng);
}

ImsiCiphertext encrypt_imsi(const ElGamalParams& params, const mpz_class& block, const mpz_class& k)
{
    if (block < 1 || block >= params.p)
        throw Error(ErrorCode::BlockOutOfRange, "block must lie in [1, p-1]");
    if (k < 1 || k >= params.n)
        throw Error(ErrorCode::EphemeralOutOfRange, "k must lie in [1, n-1]");
    ImsiCiphertext ct;
    ct.r = powm(params.alpha, k, params.p);
    ct.t = block * powm(params.beta, k, params.p) % params.p;
    return ct;
}

mpz_class decrypt_imsi(const ElGamalParams& params, const SecretKey& sk, const ImsiCiphertext& ct)
{
    if (ct.r <= 0 || ct.r >= params.p || ct.t <= 0 || ct.t >= params.p)
        throw Error(ErrorCode::BlockOutOfRange, "ciphertext component outside (0, p)");
    mpz_class shared = powm(ct.r, sk.s, params.p);
    mpz_class inverse;
    if (mpz_invert(inverse.get_mpz_t(), shared.get_mpz_t(), params.p.get_mpz_t()) == 0)
        throw Error(ErrorCode::NonInvertibleElement, "r^s has no inverse mod p");
    return ct.t * inverse % params.p;
}

unsigned block_digits(const ElGamalParams& params)
{
    static const mpz_class kWhole = [] {
        mpz_class v;
        mpz_ui_pow_ui(v.get_mpz_t(), 10, kImsiDigits);
        return v;
    }();
    if (params.p > kWhole)
        return 0;
    unsigned d = 0;
    mpz_class ten_d = 10;
    while (ten_d <= params.p - 1) {
        ++d;
        ten_d *= 10;
    }
    if (d == 0)
        throw Error(ErrorCode::BlockTooLargeForModulus, "modulus below 11 cannot carry a digit");
    return d;
}

std::vector<mpz_class> split_blocks(const Imsi& imsi, const ElGamalParams& params)
{
    const unsigned d = block_digits(params);
    if (d == 0) {
        mpz_class v = imsi.value();
        if (v < 1)
            throw Error(ErrorCode::BlockOutOfRange, "all-zero IMSI has no single-block encoding");
        return {v};
    }
    // Blocks carry chunk + 1 so leading zeros and all-zero chunks survive.
    std::vector<mpz_class> blocks;
    const std::string& s = imsi.digits();
    for (std::size_t pos = 0; pos < s.size(); pos += d) {
        mpz_class block(s.substr(pos, d), 10);
        block += 1;
        if (block >= params.p)
            throw Error(ErrorCode::BlockTooLargeForModulus, "internal: block exceeds modulus");
        blocks.push_back(block);
    }
    return blocks;
}

Imsi join_blocks(const std::vector<mpz_class>& blocks, const ElGamalParams& params)
{
    const unsigned d = block_digits(params);
    if (d == 0) {
        if (blocks.size() != 1 || blocks[0] < 1)
            throw Error(ErrorCode::InvalidImsi, "expected one block");
        std::string digits = blocks[0].get_str(10);
        if (digits.size() > kImsiDigits)
            throw Error(ErrorCode::InvalidImsi, "block exceeds 15 digits");
        return Imsi::parse(std::string(kImsiDigits - digits.size(), '0') + digits);
    }
    const std::size_t count = (kImsiDigits + d - 1) / d;
    if (blocks.size() != count)
        throw Error(ErrorCode::InvalidImsi,
                    "expected " + std::to_string(count) + " blocks, got " + std::to_string(blocks.size()));
    std::string out;
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t len = std::min<std::size_t>(d, kImsiDigits - i * d);
        mpz_class chunk = blocks[i] - 1;
        std::string digits = chunk >= 0 ? chunk.get_str(10) : "";
        if (chunk < 0 || digits.size() > len)
            throw Error(ErrorCode::InvalidImsi, "block " + std::to_string(i) + " out of range");
        out += std::string(len - digits.size(), '0') + digits;
    }
    return Imsi::parse(out);
}

std::vector<ImsiCiphertext> conceal_imsi(const ElGamalParams& params, const Imsi& imsi, Drbg& rng)
{
    std::vector<ImsiCiphertext> out;
    std::uint32_t index = 0;
    for (const auto& block : split_blocks(imsi, params)) {
        auto ct = encrypt_imsi(params, block, random_in_range(rng, params.n));
        ct.block_index = index++;
        out.push_back(std::move(ct));
    }
    return out;
}

Imsi reveal_imsi(const ElGamalParams& params, const SecretKey& sk, const std::vector<ImsiCiphertext>& cts)
{
    std::vector<mpz_class> blocks(cts.size());
    for (std::size_t i = 0; i < cts.size(); ++i) {
        if (cts[i].block_index >= cts.size())
            throw Error(ErrorCode::InvalidImsi, "block index out of range");
        blocks[cts[i].block_index] = decrypt_imsi(params, sk, cts[i]);
    }
    return join_blocks(blocks, params);
}

Bytes encode_big(const mpz_class& v, std::size_t width)
{
    if (v < 0)
        throw Error(ErrorCode::MalformedMessage, "negative integer");
    const std::size_t len = (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
    if (len > width)
        throw Error(ErrorCode::MalformedMessage, "integer wider than its field");
    Bytes out(width, 0);
    if (v != 0)
        mpz_export(out.data() + (width - len), nullptr, 1, 1, 1, 0, v.get_mpz_t());
    return out;
}

mpz_class decode_big(ByteView bytes)
{
    mpz_class v;
    if (!bytes.empty())
        mpz_import(v.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
    return v;
}

AuthorityKey AuthorityKey::from_seed(std::uint64_t seed)
{
    ensure_sodium();
    Drbg rng("authority", seed);
    std::array<std::uint8_t, crypto_sign_SEEDBYTES> material{};
    rng.fill(material);
    AuthorityKey key;
    crypto_sign_seed_keypair(key.public_key.data(), key.secret.data(), material.data());
    sodium_memzero(material.data(), material.size());
    return key;
}

Bytes identity_request_signed_bytes(const ElGamalParams& params, std::uint64_t timestamp)
{
    const std::size_t w = params.width();
    ByteWriter out;
    out.raw(encode_big(params.p, w));
    out.raw(encode_big(params.alpha, w));
    out.raw(encode_big(params.beta, w));
    out.u64(timestamp);
    return std::move(out).take();
}

SignedIdentityRequest sign_identity_request(const AuthorityKey& authority, const ElGamalParams& params,
                                            std::uint64_t timestamp)
{
    ensure_sodium();
    SignedIdentityRequest req{params, timestamp, {}};
    auto msg = identity_request_signed_bytes(params, timestamp);
    crypto_sign_detached(req.signature.data(), nullptr, msg.data(), msg.size(), authority.secret.data());
    return req;
}

bool signature_valid(const std::array<std::uint8_t, 32>& authority_public, const SignedIdentityRequest& req)
{
    ensure_sodium();
    Bytes msg;
    try {
        msg = identity_request_signed_bytes(req.params, req.timestamp);
    } catch (const Error&) {
        return false;
    }
    return crypto_sign_verify_detached(req.signature.data(), msg.data(), msg.size(), authority_public.data()) == 0;
}

bool timestamp_fresh(std::uint64_t timestamp, std::uint64_t now, std::uint64_t window)
{
    const std::uint64_t gap = now > timestamp ? now - timestamp : timestamp - now;
    return gap <= window;
}

bool verify_identity_request(const std::array<std::uint8_t, 32>& authority_public, const SignedIdentityRequest& req,
                             std::uint64_t now, std::uint64_t window)
{
    return signature_valid(authority_public, req) && timestamp_fresh(req.timestamp, now, window);
}

namespace {

std::vector<std::pair<std::string, std::string>> read_fields(std::string_view text, std::string_view header,
                                                             ErrorCode code)
{
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != header)
        throw Error(code, "missing '" + std::string(header) + "' header");
    std::vector<std::pair<std::string, std::string>> fields;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(code, "expected key=value, got '" + line + "'");
        fields.emplace_back(line.substr(0, eq), line.substr(eq + 1));
    }
    return fields;
}

mpz_class hex_field(const std::vector<std::pair<std::string, std::string>>& fields, const std::string& key,
                    ErrorCode code)
{
    for (const auto& [k, v] : fields) {
        if (k != key)
            continue;
        mpz_class out;
        if (v.empty() || !std::all_of(v.begin(), v.end(), [](unsigned char c) { return std::isxdigit(c) != 0; }) || out.set_str(v, 16) != 0)
            throw Error(code, "field '" + key + "' is not hex");
        return out;
    }
    throw Error(code, "missing field '" + key + "'");
}

}  // namespace

std::string serialize_params(const ElGamalParams& params)
{
    std::ostringstream os;
    os << "ELGAMAL v1\n";
    os << "p=" << params.p.get_str(16) << "\n";
    os << "alpha=" << params.alpha.get_str(16) << "\n";
    os << "beta=" << params.beta.get_str(16) << "\n";
    os << "n=" << params.n.get_str(16) << "\n";
    return os.str();
}

ElGamalParams deserialize_params(std::string_view text)
{
    constexpr auto code = ErrorCode::MalformedParamsFile;
    auto fields = read_fields(text, "ELGAMAL v1", code);
    ElGamalParams params{hex_field(fields, "p", code), hex_field(fields, "alpha", code),
                         hex_field(fields, "beta", code), hex_field(fields, "n", code)};
    if (params.p < 5 || params.alpha <= 1 || params.alpha >= params.p || params.beta < 1 || params.beta >= params.p ||
        params.n < 2 || params.n >= params.p)
        throw Error(code, "parameters out of range");
    return params;
}

std::string serialize_secret(const SecretKey& sk)
{
    return "ELGSECRET v1\ns=" + sk.s.get_str(16) + "\n";
}

SecretKey deserialize_secret(std::string_view text)
{
    constexpr auto code = ErrorCode::MalformedParamsFile;
    auto fields = read_fields(text, "ELGSECRET v1", code);
    SecretKey sk{hex_field(fields, "s", code)};
    if (sk.s < 1)
        throw Error(code, "secret must be positive");
    return sk;
}

}  // namespace ipgaka
