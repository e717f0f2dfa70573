#include "doctest.h"

#include "ipgaka/primitives.hpp"
#include "ipgaka/randomness.hpp"

using namespace ipgaka;

namespace {

BitStream bits_of(const char* s)
{
    BitStream b;
    for (; *s; ++s)
        b.push_back(static_cast<std::uint8_t>(*s == '1'));
    return b;
}

std::vector<LteKey> drbg_keys(std::size_t count, std::uint64_t seed)
{
    Drbg rng("test-keys", seed);
    std::vector<LteKey> keys(count);
    for (auto& k : keys)
        rng.fill(k.bits);
    return keys;
}

}  // namespace

// Worked examples from NIST SP 800-22 rev1a.
TEST_CASE("monobit worked example")
{
    CHECK(monobit_p_value(bits_of("1011010101")) == doctest::Approx(0.527089).epsilon(1e-6));
}

TEST_CASE("runs worked example")
{
    CHECK(runs_p_value(bits_of("1001101011")) == doctest::Approx(0.147232).epsilon(1e-6));
    // Prerequisite fails on a heavily biased stream.
    CHECK(runs_p_value(bits_of("1111111111111111111101")) == 0.0);
}

TEST_CASE("serial worked example")
{
    auto p = serial_p_values(bits_of("0011011101"), 3);
    CHECK(p.p1 == doctest::Approx(0.808792).epsilon(1e-6));
    CHECK(p.p2 == doctest::Approx(0.670320).epsilon(1e-6));
}

TEST_CASE("suite needs at least 100 keys")
{
    auto keys = drbg_keys(99, 1);
    try {
        randomness_suite(keys);
        FAIL("expected InsufficientSample");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InsufficientSample);
    }
}

TEST_CASE("uniform keys pass and constant keys fail")
{
    auto good = randomness_suite(drbg_keys(200, 7));
    CHECK(good.key_count == 200);
    CHECK(good.tests.size() == 3);
    CHECK(good.all_pass());
    CHECK(good.hamming_mean == doctest::Approx(128.0).epsilon(0.03));
    CHECK(good.consecutive_collisions == 0);

    std::vector<LteKey> flat(150);
    for (auto& k : flat)
        k.bits.fill(0xff);
    auto bad = randomness_suite(flat);
    CHECK_FALSE(bad.all_pass());
    CHECK(bad.find("monobit")->pass == false);
    CHECK(bad.consecutive_collisions == 149);
    CHECK(bad.hamming_mean == 0.0);
}
