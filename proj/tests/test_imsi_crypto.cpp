#include "doctest.h"

#include <set>

#include "ipgaka/imsi_crypto.hpp"
#include "ipgaka/primitives.hpp"

using namespace ipgaka;

namespace {

// Textbook group: 5 generates all of Z_23^*, so n = 22.
ElGamalParams toy()
{
    return ElGamalParams{23, 5, 8, 22};
}

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::EmptyInput;
}

std::string random_imsi(Drbg& rng)
{
    std::string s;
    for (std::size_t i = 0; i < kImsiDigits; ++i)
        s.push_back(static_cast<char>('0' + rng.uniform(10)));
    return s;
}

}  // namespace

TEST_CASE("IMSI field layout")
{
    auto imsi = Imsi::parse("001010123456789");
    CHECK(imsi.mcc() == "001");
    CHECK(imsi.mnc() == "01");
    CHECK(imsi.msin() == "0123456789");
    CHECK(imsi.value() == mpz_class("1010123456789"));

    auto three = Imsi::parse("310260123456789", 3);
    CHECK(three.mnc() == "260");
    CHECK(three.msin() == "123456789");

    CHECK(code_of([] { Imsi::parse("00101012345678"); }) == ErrorCode::InvalidImsi);
    CHECK(code_of([] { Imsi::parse("00101012345678x"); }) == ErrorCode::InvalidImsi);
}

TEST_CASE("textbook vectors")
{
    auto p = toy();
    // 5^6 mod 23 = 8; 5^3 mod 23 = 10; 9 * 8^3 mod 23 = 8.
    auto ct = encrypt_imsi(p, 9, 3);
    CHECK(ct.r == 10);
    CHECK(ct.t == 8);
    CHECK(decrypt_imsi(p, SecretKey{6}, ct) == 9);

    // Identity block: t is just beta^k.
    for (int k = 1; k < 22; ++k) {
        mpz_class bk;
        mpz_powm_ui(bk.get_mpz_t(), p.beta.get_mpz_t(), static_cast<unsigned long>(k), p.p.get_mpz_t());
        CHECK(encrypt_imsi(p, 1, k).t == bk);
    }

    // r^-s equals beta^-k for matched k and s.
    for (int k = 1; k < 22; ++k) {
        auto c = encrypt_imsi(p, 4, k);
        mpz_class rs, bk, inv_rs, inv_bk;
        mpz_powm_ui(rs.get_mpz_t(), c.r.get_mpz_t(), 6, p.p.get_mpz_t());
        mpz_powm_ui(bk.get_mpz_t(), p.beta.get_mpz_t(), static_cast<unsigned long>(k), p.p.get_mpz_t());
        mpz_invert(inv_rs.get_mpz_t(), rs.get_mpz_t(), p.p.get_mpz_t());
        mpz_invert(inv_bk.get_mpz_t(), bk.get_mpz_t(), p.p.get_mpz_t());
        CHECK(inv_rs == inv_bk);
    }
}

TEST_CASE("range checks")
{
    auto p = toy();
    CHECK(code_of([&] { encrypt_imsi(p, 0, 3); }) == ErrorCode::BlockOutOfRange);
    CHECK(code_of([&] { encrypt_imsi(p, 23, 3); }) == ErrorCode::BlockOutOfRange);
    CHECK(code_of([&] { encrypt_imsi(p, 9, 0); }) == ErrorCode::EphemeralOutOfRange);
    CHECK(code_of([&] { encrypt_imsi(p, 9, 22); }) == ErrorCode::EphemeralOutOfRange);
    CHECK(code_of([&] { decrypt_imsi(p, SecretKey{6}, ImsiCiphertext{0, 5, 0}); }) == ErrorCode::BlockOutOfRange);
    CHECK(code_of([] { gen_params(15, 1); }) == ErrorCode::InvalidBitLength);
    CHECK(code_of([] { params_for_safe_prime(4081, 1); }) == ErrorCode::PrimeGenerationFailed);
    CHECK(code_of([] { params_for_safe_prime(4073, 1); }) == ErrorCode::PrimeGenerationFailed);
}

TEST_CASE("generated parameters satisfy the group invariants")
{
    for (unsigned bits : {16u, 24u, 64u, 128u}) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            auto [params, sk] = gen_params(bits, seed);
            CHECK(mpz_sizeinbase(params.p.get_mpz_t(), 2) == bits);
            CHECK(mpz_probab_prime_p(params.p.get_mpz_t(), 40) != 0);
            CHECK(params.n == (params.p - 1) / 2);
            CHECK(mpz_probab_prime_p(params.n.get_mpz_t(), 40) != 0);
            CHECK(params.alpha > 1);
            CHECK(params.alpha < params.p);
            mpz_class an, bs;
            mpz_powm(an.get_mpz_t(), params.alpha.get_mpz_t(), params.n.get_mpz_t(), params.p.get_mpz_t());
            CHECK(an == 1);
            mpz_powm(bs.get_mpz_t(), params.alpha.get_mpz_t(), sk.s.get_mpz_t(), params.p.get_mpz_t());
            CHECK(bs == params.beta);
            CHECK(sk.s >= 1);
            CHECK(sk.s < params.n);
        }
    }
    auto a = gen_params(32, 9);
    auto b = gen_params(32, 9);
    CHECK(a.first == b.first);
    CHECK(a.second.s == b.second.s);
}

TEST_CASE("2048-bit default group")
{
    auto [params, sk] = gen_params(kDefaultPrimeBits, 3);
    CHECK(mpz_sizeinbase(params.p.get_mpz_t(), 2) == 2048);
    CHECK(params.width() == 256);
    CHECK(mpz_probab_prime_p(params.n.get_mpz_t(), 25) != 0);
    auto imsi = Imsi::parse("001010123456789");
    auto blocks = split_blocks(imsi, params);
    REQUIRE(blocks.size() == 1);
    CHECK(blocks[0] == imsi.value());

    Drbg rng("test", 1);
    auto cts = conceal_imsi(params, imsi, rng);
    CHECK(reveal_imsi(params, sk, cts) == imsi);
}

TEST_CASE("round trip is exhaustive at a 12-bit prime")
{
    auto [params, sk] = params_for_safe_prime(4079, 4);
    Drbg rng("test", 2);
    const auto p = params.p.get_ui();
    for (unsigned long m = 1; m < p; ++m)
        for (int j = 0; j < 2; ++j) {
            auto k = random_in_range(rng, params.n);
            CHECK(decrypt_imsi(params, sk, encrypt_imsi(params, m, k)) == m);
        }
}

TEST_CASE("randomised encryption and tamper detection")
{
    auto [params, sk] = gen_params(64, 5);
    Drbg rng("test", 3);
    std::size_t tamper_misses = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        auto m = random_in_range(rng, params.p);
        auto k1 = random_in_range(rng, params.n);
        auto k2 = random_in_range(rng, params.n);
        auto c1 = encrypt_imsi(params, m, k1);
        CHECK(decrypt_imsi(params, sk, c1) == m);
        if (k1 != k2)
            CHECK_FALSE(c1 == encrypt_imsi(params, m, k2));
        auto bad = c1;
        bad.t = bad.t % (params.p - 1) + 1;  // t -> t+1 wrapping inside [1, p-1]
        tamper_misses += decrypt_imsi(params, sk, bad) == m;
    }
    CHECK(tamper_misses == 0);
}

TEST_CASE("block split and join")
{
    Drbg rng("test", 4);
    for (unsigned bits : {16u, 20u, 32u, 48u, 64u}) {
        auto [params, sk] = gen_params(bits, bits);
        const unsigned d = block_digits(params);
        for (int i = 0; i < 10000; ++i) {
            auto imsi = Imsi::parse(random_imsi(rng));
            auto blocks = split_blocks(imsi, params);
            if (d == 0)
                CHECK(blocks.size() == 1);
            else
                CHECK(blocks.size() == (kImsiDigits + d - 1) / d);
            for (const auto& b : blocks) {
                CHECK(b >= 1);
                CHECK(b < params.p);
            }
            CHECK(join_blocks(blocks, params) == imsi);
        }
    }

    // 16-bit p: 4 digits per block, four blocks; zeros survive.
    auto [p16, s16] = gen_params(16, 1);
    CHECK(block_digits(p16) == 4);
    auto zeros = Imsi::parse("000000000000000");
    auto blocks = split_blocks(zeros, p16);
    CHECK(blocks.size() == 4);
    CHECK(join_blocks(blocks, p16) == zeros);

    Drbg krng("test", 5);
    auto imsi = Imsi::parse("001010123456789");
    auto cts = conceal_imsi(p16, imsi, krng);
    CHECK(cts.size() == 4);
    // One fresh ephemeral per block.
    std::set<std::string> rs;
    for (const auto& c : cts)
        rs.insert(c.r.get_str());
    CHECK(rs.size() == 4);
    CHECK(reveal_imsi(p16, s16, cts) == imsi);
}

TEST_CASE("big-integer wire encoding")
{
    CHECK(to_hex(encode_big(0x1234, 4)) == "00001234");
    CHECK(decode_big(encode_big(mpz_class("123456789abcdef", 16), 16)) == mpz_class("123456789abcdef", 16));
    CHECK(code_of([] { encode_big(0x10000, 2); }) == ErrorCode::MalformedMessage);
}

TEST_CASE("identity request signature")
{
    auto authority = AuthorityKey::from_seed(42);
    auto [params, sk] = gen_params(64, 1);
    auto req = sign_identity_request(authority, params, 100);

    CHECK(verify_identity_request(authority.public_key, req, 100));
    CHECK(verify_identity_request(authority.public_key, req, 130));
    CHECK(verify_identity_request(authority.public_key, req, 70));
    CHECK_FALSE(verify_identity_request(authority.public_key, req, 131));
    CHECK_FALSE(verify_identity_request(authority.public_key, req, 131, 30));
    CHECK(verify_identity_request(authority.public_key, req, 131, 31));

    auto flipped = req;
    flipped.signature[5] ^= 0x01;
    CHECK_FALSE(verify_identity_request(authority.public_key, flipped, 100));

    auto swapped = req;
    swapped.params.beta += 1;
    CHECK_FALSE(verify_identity_request(authority.public_key, swapped, 100));

    auto retimed = req;
    retimed.timestamp = 101;
    CHECK_FALSE(verify_identity_request(authority.public_key, retimed, 101));

    auto other = AuthorityKey::from_seed(43);
    CHECK_FALSE(verify_identity_request(other.public_key, req, 100));
    // Deterministic signatures.
    CHECK(sign_identity_request(authority, params, 100) == req);
}

TEST_CASE("parameter files")
{
    auto [params, sk] = gen_params(32, 7);
    auto text = serialize_params(params);
    CHECK(text.starts_with("ELGAMAL v1\np="));
    CHECK(deserialize_params(text) == params);
    CHECK(deserialize_secret(serialize_secret(sk)).s == sk.s);

    CHECK(code_of([] { deserialize_params("ELGAMAL v1\np=17\n"); }) == ErrorCode::MalformedParamsFile);
    CHECK(code_of([] { deserialize_params("ELGAMAL v1\np=zz\nalpha=2\nbeta=2\nn=2\n"); }) ==
          ErrorCode::MalformedParamsFile);
    CHECK(code_of([] { deserialize_secret("nope"); }) == ErrorCode::MalformedParamsFile);
}
