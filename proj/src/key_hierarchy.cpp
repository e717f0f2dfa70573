#include "ipgaka/key_hierarchy.hpp"

#include <algorithm>

namespace ipgaka {

namespace {

std::array<std::uint8_t, 6> be48(Sqn48 v)
{
    std::array<std::uint8_t, 6> out{};
    for (int i = 5; i >= 0; --i, v >>= 8)
        out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
    return out;
}

Sqn48 from_be48(const std::uint8_t* p)
{
    Sqn48 v = 0;
    for (int i = 0; i < 6; ++i)
        v = v << 8 | p[i];
    return v;
}

std::array<std::uint8_t, 4> be32(std::uint32_t v)
{
    return {static_cast<std::uint8_t>(v >> 24), static_cast<std::uint8_t>(v >> 16), static_cast<std::uint8_t>(v >> 8),
            static_cast<std::uint8_t>(v)};
}

Key256 asme_from(const Key256& ck, const Key256& ik, std::uint32_t snid, ByteView concealed_sqn)
{
    std::array<std::uint8_t, 64> ckik{};
    std::copy(ck.begin(), ck.end(), ckik.begin());
    std::copy(ik.begin(), ik.end(), ckik.begin() + 32);
    auto sn = be32(snid);
    return prf(ckik, "asme", {sn, concealed_sqn});
}

std::array<std::uint8_t, 8> mac_of(const Key256& lte_k, const Rand128& rand, Sqn48 sqn)
{
    auto full = prf(lte_k, "mac", {rand, be48(sqn & kSqnMask)});
    std::array<std::uint8_t, 8> mac{};
    std::copy_n(full.begin(), mac.size(), mac.begin());
    return mac;
}

std::array<std::uint8_t, 6> ak_of(const Key256& lte_k, const Rand128& rand)
{
    auto full = prf(lte_k, "ak", {rand});
    std::array<std::uint8_t, 6> ak{};
    std::copy_n(full.begin(), ak.size(), ak.begin());
    return ak;
}

}  // namespace

AkaMaterial aka_material(const Key256& lte_k, const Rand128& rand, Sqn48 sqn, std::uint32_t snid)
{
    AkaMaterial m;
    m.mac = mac_of(lte_k, rand, sqn);
    m.ak = ak_of(lte_k, rand);
    m.ck = prf(lte_k, "ck", {rand});
    m.ik = prf(lte_k, "ik", {rand});
    m.res = compute_res(lte_k, rand);

    auto concealed = be48(sqn & kSqnMask);
    for (std::size_t i = 0; i < concealed.size(); ++i)
        concealed[i] ^= m.ak[i];
    m.k_asme = asme_from(m.ck, m.ik, snid, concealed);
    return m;
}

AuthVector build_auth_vector(const Key256& lte_k, Sqn48 sqn, std::uint32_t snid, const Rand128& rand)
{
    auto m = aka_material(lte_k, rand, sqn, snid);
    AuthVector av;
    av.rand = rand;
    auto concealed = be48(sqn & kSqnMask);
    for (std::size_t i = 0; i < 6; ++i)
        av.autn[i] = concealed[i] ^ m.ak[i];
    av.autn[6] = static_cast<std::uint8_t>(kAmf >> 8);
    av.autn[7] = static_cast<std::uint8_t>(kAmf);
    std::copy(m.mac.begin(), m.mac.end(), av.autn.begin() + 8);
    av.xres = m.res;
    av.k_asme = m.k_asme;
    return av;
}

VerifyResult verify_autn(const Key256& lte_k, const Rand128& rand, const Autn& autn, SqnState& state)
{
    auto ak = ak_of(lte_k, rand);
    std::array<std::uint8_t, 6> plain{};
    for (std::size_t i = 0; i < 6; ++i)
        plain[i] = autn[i] ^ ak[i];
    const Sqn48 sqn = from_be48(plain.data());
    auto mac = mac_of(lte_k, rand, sqn);
    const bool amf_ok = autn[6] == static_cast<std::uint8_t>(kAmf >> 8) && autn[7] == static_cast<std::uint8_t>(kAmf);
    if (!amf_ok || !std::equal(mac.begin(), mac.end(), autn.begin() + 8))
        return {AutnStatus::MacFailure, 0};
    if (!state.acceptable(sqn))
        return {AutnStatus::SqnOutOfRange, sqn};
    state.highest = sqn;
    return {AutnStatus::Ok, sqn};
}

Res compute_res(const Key256& lte_k, const Rand128& rand)
{
    auto full = prf(lte_k, "res", {rand});
    Res out{};
    std::copy_n(full.begin(), out.size(), out.begin());
    return out;
}

Key256 derive_k_asme(const Key256& lte_k, const Rand128& rand, const Autn& autn, std::uint32_t snid)
{
    return asme_from(prf(lte_k, "ck", {rand}), prf(lte_k, "ik", {rand}), snid, ByteView(autn).first(6));
}

std::array<const Key256*, 8> KeyTree::keys() const
{
    return {&k_asme, &k_enb, &k_nas_enc, &k_nas_int, &k_rrc_enc, &k_rrc_int, &k_up_enc, &k_up_int};
}

std::string KeyTree::render() const
{
    static constexpr const char* names[] = {"K_ASME", "K_eNB", "K_NASenc", "K_NASint",
                                            "K_RRCenc", "K_RRCint", "K_UPenc", "K_UPint"};
    std::string out;
    auto k = keys();
    for (std::size_t i = 0; i < k.size(); ++i)
        out += std::string(names[i]) + " " + to_hex(*k[i]) + "\n";
    out += "NH " + to_hex(nh) + "\nNCC " + std::to_string(ncc) + "\n";
    return out;
}

KeyTree derive_key_tree(const Key256& k_asme, std::uint32_t uplink_nas_count)
{
    KeyTree t;
    t.k_asme = k_asme;
    t.k_enb = prf(k_asme, "enb", {be32(uplink_nas_count)});
    // NAS keys hang off K_ASME; RRC and user-plane keys off K_eNB.
    t.k_nas_enc = prf(k_asme, "nas-enc", {});
    t.k_nas_int = prf(k_asme, "nas-int", {});
    t.k_rrc_enc = prf(t.k_enb, "rrc-enc", {});
    t.k_rrc_int = prf(t.k_enb, "rrc-int", {});
    t.k_up_enc = prf(t.k_enb, "up-enc", {});
    t.k_up_int = prf(t.k_enb, "up-int", {});
    // The initial NH is the virtual one: K_eNB itself with NCC zero.
    t.nh = t.k_enb;
    t.ncc = 0;
    return t;
}

std::pair<Key256, unsigned> nh_advance(const Key256& k_asme, const Key256& nh, unsigned ncc)
{
    if (ncc >= kNccMax)
        throw Error(ErrorCode::NccOverflow, "NCC already at " + std::to_string(ncc));
    return {prf(k_asme, "nh", {nh}), ncc + 1};
}

void advance_next_hop(KeyTree& tree)
{
    std::tie(tree.nh, tree.ncc) = nh_advance(tree.k_asme, tree.nh, tree.ncc);
}

}  // namespace ipgaka
