#include "doctest.h"

#include <set>
#include <string_view>

#include "ipgaka/key_hierarchy.hpp"

using namespace ipgaka;

namespace {

Key256 counting_key()
{
    Key256 k{};
    for (std::size_t i = 0; i < k.size(); ++i)
        k[i] = static_cast<std::uint8_t>(i);
    return k;
}

Rand128 fixed_rand()
{
    Rand128 r{};
    r.fill(0xa5);
    return r;
}

Key256 random_key(Drbg& rng)
{
    Key256 k{};
    rng.fill(k);
    return k;
}

Rand128 random_rand(Drbg& rng)
{
    Rand128 r{};
    rng.fill(r);
    return r;
}

}  // namespace

// Reference values from an independent HMAC-SHA256 implementation of the
// labelled-PRF layout.
TEST_CASE("auth vector against reference values")
{
    auto av = build_auth_vector(counting_key(), 0x21, 0x00f110, fixed_rand());
    CHECK(to_hex(av.autn) == "97424c76a1d180005c7cf716cdfe320e");
    CHECK(to_hex(av.xres) == "d9df88fd58766b43");
    CHECK(to_hex(av.k_asme) == "44a51d7eba5d48d2faeaebc6a3482b4c1faaac279d5bc0df7d1cdab6dc4a76ff");
    CHECK(av.rand == fixed_rand());

    auto tree = derive_key_tree(av.k_asme, 3);
    CHECK(to_hex(tree.k_enb) == "f0d3d35d4a532507f82818bceb776ce0b3b493642745e84a81686355cca59e81");
    CHECK(to_hex(tree.k_nas_int) == "0e5325976dae862604800135394726626807a601341010ee1f6f741c7add0f67");
    CHECK(to_hex(tree.k_rrc_enc) == "f459938e5b6b342668e9caa1d5c901a5e3dc2b07d3cfa8a9f6283cd5f6bd12bf");
    advance_next_hop(tree);
    CHECK(to_hex(tree.nh) == "cc1d43b9f3d5d312f55abcce1e912cad6be95bf07c6783e30551fbe485d7727a");
    CHECK(tree.ncc == 1);
}

TEST_CASE("UE and network agree")
{
    Drbg rng("test", 1);
    for (int i = 0; i < 200; ++i) {
        auto k = random_key(rng);
        auto rand = random_rand(rng);
        const Sqn48 sqn = rng.next_u64() & kSqnMask;
        auto a = build_auth_vector(k, sqn, 7, rand);
        auto b = build_auth_vector(k, sqn, 7, rand);
        CHECK(a == b);
        CHECK(derive_k_asme(k, rand, a.autn, 7) == a.k_asme);
        CHECK(aka_material(k, rand, sqn, 7).res == a.xres);
    }
}

TEST_CASE("distinct challenges give distinct responses")
{
    Drbg rng("test", 2);
    auto k = random_key(rng);
    std::set<std::string> seen;
    for (int i = 0; i < 10000; ++i)
        seen.insert(to_hex(build_auth_vector(k, 1, 1, random_rand(rng)).xres));
    CHECK(seen.size() == 10000);

    // RES matches XRES only for the same key and challenge.
    auto rand = random_rand(rng);
    auto other = random_key(rng);
    CHECK(aka_material(k, rand, 5, 1).res == build_auth_vector(k, 5, 1, rand).xres);
    CHECK(aka_material(other, rand, 5, 1).res != build_auth_vector(k, 5, 1, rand).xres);
    CHECK(aka_material(k, random_rand(rng), 5, 1).res != build_auth_vector(k, 5, 1, rand).xres);
}

TEST_CASE("AUTN verification")
{
    Drbg rng("test", 3);
    auto k = random_key(rng);
    auto rand = random_rand(rng);
    SqnState state{10, 32};

    auto av = build_auth_vector(k, 11, 1, rand);
    SUBCASE("synchronised")
    {
        auto r = verify_autn(k, rand, av.autn, state);
        CHECK(r.ok());
        CHECK(r.sqn == 11);
        CHECK(state.highest == 11);
        // The same AUTN again is a replay.
        CHECK(verify_autn(k, rand, av.autn, state).status == AutnStatus::SqnOutOfRange);
        CHECK(state.highest == 11);
    }
    SUBCASE("wrong key")
    {
        CHECK(verify_autn(random_key(rng), rand, av.autn, state).status == AutnStatus::MacFailure);
        CHECK(state.highest == 10);
    }
    SUBCASE("every single bit flip is caught")
    {
        for (std::size_t bit = 0; bit < kAutnBytes * 8; ++bit) {
            auto bad = av.autn;
            bad[bit / 8] ^= static_cast<std::uint8_t>(0x80 >> (bit % 8));
            SqnState copy = state;
            CHECK(verify_autn(k, rand, bad, copy).status == AutnStatus::MacFailure);
        }
    }
    SUBCASE("window")
    {
        CHECK(verify_autn(k, rand, build_auth_vector(k, 42, 1, rand).autn, state).ok());
        SqnState s2{10, 32};
        CHECK(verify_autn(k, rand, build_auth_vector(k, 43, 1, rand).autn, s2).status == AutnStatus::SqnOutOfRange);
        CHECK(verify_autn(k, rand, build_auth_vector(k, 10, 1, rand).autn, s2).status == AutnStatus::SqnOutOfRange);
    }
}

TEST_CASE("key tree structure")
{
    Drbg rng("test", 4);
    for (int i = 0; i < 10000; ++i) {
        auto tree = derive_key_tree(random_key(rng), static_cast<std::uint32_t>(i));
        CHECK(tree.ncc == 0);
        CHECK(tree.nh == tree.k_enb);
        std::set<Key256> distinct;
        for (auto* k : tree.keys())
            distinct.insert(*k);
        CHECK(distinct.size() == 8);
    }
    auto k = random_key(rng);
    CHECK(derive_key_tree(k, 1) == derive_key_tree(k, 1));
    CHECK_FALSE(derive_key_tree(k, 1).k_enb == derive_key_tree(k, 2).k_enb);

    auto text = derive_key_tree(k, 1).render();
    CHECK(text.starts_with("K_ASME " + to_hex(k) + "\n"));
    CHECK(text.find("NCC 0\n") != std::string::npos);
}

TEST_CASE("next-hop chain")
{
    Drbg rng("test", 5);
    auto tree = derive_key_tree(random_key(rng), 0);
    std::set<Key256> seen{tree.nh};
    for (unsigned step = 1; step <= 5; ++step) {
        unsigned before = tree.ncc;
        advance_next_hop(tree);
        CHECK(tree.ncc == before + 1);
        seen.insert(tree.nh);
    }
    CHECK(seen.size() == 6);
    advance_next_hop(tree);
    advance_next_hop(tree);
    CHECK(tree.ncc == kNccMax);
    try {
        advance_next_hop(tree);
        FAIL("expected NccOverflow");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NccOverflow);
    }
}

TEST_CASE("PRF labels are unique")
{
    auto labels = prf_labels();
    std::set<std::string_view> unique(labels.begin(), labels.end());
    CHECK(unique.size() == labels.size());
    for (auto l : {"mac", "ak", "ck", "ik", "res", "asme", "enb", "nas-enc", "nas-int", "rrc-enc", "rrc-int",
                   "up-enc", "up-int", "nh"})
        CHECK(unique.count(l) == 1);
}
