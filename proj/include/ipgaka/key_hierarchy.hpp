#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>

#include "ipgaka/error.hpp"
#include "ipgaka/primitives.hpp"

namespace ipgaka {

using Rand128 = std::array<std::uint8_t, 16>;
using Sqn48 = std::uint64_t;  // only the low 48 bits are meaningful

inline constexpr Sqn48 kSqnMask = (Sqn48{1} << 48) - 1;
inline constexpr std::uint16_t kAmf = 0x8000;
inline constexpr std::size_t kAutnBytes = 16;  // SQN^AK (6) || AMF (2) || MAC (8)
inline constexpr std::size_t kResBytes = 8;

using Autn = std::array<std::uint8_t, kAutnBytes>;
using Res = std::array<std::uint8_t, kResBytes>;

struct AuthVector {
    Rand128 rand{};
    Autn autn{};
    Res xres{};
    Key256 k_asme{};

    bool operator==(const AuthVector&) const = default;
};

/// Everything both sides compute from (LTE-K, RAND, SQN, SNID).
struct AkaMaterial {
    std::array<std::uint8_t, 8> mac{};
    std::array<std::uint8_t, 6> ak{};
    Key256 ck{};
    Key256 ik{};
    Res res{};
    Key256 k_asme{};
};

AkaMaterial aka_material(const Key256& lte_k, const Rand128& rand, Sqn48 sqn, std::uint32_t snid);
AuthVector build_auth_vector(const Key256& lte_k, Sqn48 sqn, std::uint32_t snid, const Rand128& rand);

/// Subscriber-side sequence number bookkeeping. The highest accepted SQN is
/// kept; a new one must be strictly larger and at most window ahead.
struct SqnState {
    Sqn48 highest = 0;
    Sqn48 window = 32;

    bool acceptable(Sqn48 sqn) const { return sqn > highest && sqn - highest <= window; }
};

enum class AutnStatus { Ok, MacFailure, SqnOutOfRange };

struct VerifyResult {
    AutnStatus status;
    Sqn48 sqn = 0;  // recovered value, meaningful only when the MAC checked out

    bool ok() const { return status == AutnStatus::Ok; }
};

/// Checks the MAC first, then the SQN window; advances state only on Ok.
VerifyResult verify_autn(const Key256& lte_k, const Rand128& rand, const Autn& autn, SqnState& state);

/// RES depends on the key and the challenge only.
Res compute_res(const Key256& lte_k, const Rand128& rand);

/// UE-side K_ASME once the AUTN has been accepted.
Key256 derive_k_asme(const Key256& lte_k, const Rand128& rand, const Autn& autn, std::uint32_t snid);

inline constexpr unsigned kNccMax = 7;  // three-bit counter

struct KeyTree {
    Key256 k_asme{};
    Key256 k_enb{};
    Key256 k_nas_enc{};
    Key256 k_nas_int{};
    Key256 k_rrc_enc{};
    Key256 k_rrc_int{};
    Key256 k_up_enc{};
    Key256 k_up_int{};
    Key256 nh{};
    unsigned ncc = 0;

    bool operator==(const KeyTree&) const = default;
    /// The eight keys in declaration order, nh excluded.
    std::array<const Key256*, 8> keys() const;
    /// "label hex" lines for the trace log.
    std::string render() const;
};

KeyTree derive_key_tree(const Key256& k_asme, std::uint32_t uplink_nas_count);

/// nh' = PRF(k_asme, "nh" || nh). Throws NccOverflow at kNccMax.
std::pair<Key256, unsigned> nh_advance(const Key256& k_asme, const Key256& nh, unsigned ncc);

/// Advances tree.nh and tree.ncc in place.
void advance_next_hop(KeyTree& tree);

}  // namespace ipgaka
