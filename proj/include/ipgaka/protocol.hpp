#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ipgaka/cgrid.hpp"
#include "ipgaka/imsi_crypto.hpp"
#include "ipgaka/key_hierarchy.hpp"
#include "ipgaka/keygen.hpp"
#include "ipgaka/messages.hpp"
#include "ipgaka/simnet.hpp"

namespace ipgaka {

enum class ProtocolKind { IpgAka, EpsAka };
std::string_view protocol_name(ProtocolKind k);
/// Accepts "ipg"/"eps" and the full names; throws ConfigInvalid otherwise.
ProtocolKind parse_protocol(std::string_view text);

/// Long-term subscriber material shared by the UE and the HSS. The grid
/// fields drive IPG-AKA; static_key is the EPS-AKA root key.
struct Credentials {
    Imsi imsi;
    std::optional<CGrid> grid;
    KeySequence ks;
    std::uint64_t feeder_seed = 0;
    std::uint64_t epoch = 0;
    Key256 static_key{};
};

/// LTE-K for the current epoch (IPG) or the static key (EPS).
Key256 current_lte_key(const Credentials& c, ProtocolKind kind);

struct UeState {
    enum class Phase { Idle, AwaitAuthRequest, AwaitResult, Done };

    Credentials cred;
    SqnState sqn;
    std::uint32_t snid = 0;  // serving network, as broadcast
    std::array<std::uint8_t, 32> authority_public{};
    std::uint64_t freshness_window = kDefaultFreshnessWindow;
    Drbg rng{"ue", 0};  // ephemerals for IMSI concealment
    OpCounters ops;

    ProtocolKind kind = ProtocolKind::IpgAka;
    Phase phase = Phase::Idle;
    std::optional<Key256> pending_k_asme;
    std::optional<Key256> k_asme;
    std::optional<KeyTree> tree;
    std::optional<RejectReason> rejected;

    // Adversary knobs: a UE run by an attacker holding a stolen key who
    // does not care whether the network authenticates.
    std::optional<Key256> key_override;
    bool verify_network = true;

    void begin_session(ProtocolKind k);
};

struct MmeState {
    enum class Phase { Idle, AwaitIdentity, AwaitVector, AwaitResponse, Done };

    AuthorityKey authority;
    ElGamalParams params;
    SecretKey secret;
    std::uint32_t snid = 0;
    OpCounters ops;

    ProtocolKind kind = ProtocolKind::IpgAka;
    Phase phase = Phase::Idle;
    std::uint8_t next_ksi = 0;
    std::uint8_t ksi = 0;
    std::optional<std::string> imsi;
    std::optional<AuthVector> av;
    std::optional<RejectReason> rejected;
    bool authenticated = false;
    std::optional<KeyTree> tree;

    void begin_session(ProtocolKind k);
};

struct HssRecord {
    Credentials cred;
    Sqn48 sqn = 0;  // last SQN issued
};

struct HssState {
    std::map<std::string, HssRecord> subscribers;
    std::vector<std::uint32_t> snid_allowlist;
    Drbg rng{"hss", 0};  // RAND source
    OpCounters ops;
    ProtocolKind kind = ProtocolKind::IpgAka;  // which root key the session uses

    /// Bookkeeping after the MME reports success: the subscriber's epoch
    /// moves on in step with the UE. Not a wire message.
    void confirm_success(const std::string& imsi, ProtocolKind kind);
};

// One transition per incoming message. Unexpected input yields an
// AuthReject(ProtocolViolation) to the sender; AuthReject is never answered.
std::vector<Message> step(UeState& ue, const Message& in, std::uint64_t now);
std::vector<Message> step(MmeState& mme, const Message& in, std::uint64_t now);
std::vector<Message> step(HssState& hss, const Message& in, std::uint64_t now);

/// Step 1 of IPG-AKA: the signed identity request. Timestamps are whole seconds.
std::vector<Message> mme_start(MmeState& mme, std::uint64_t now);
/// Baseline attach: the UE announces its IMSI in the clear.
std::vector<Message> ue_start(UeState& ue, std::uint64_t now);

inline constexpr std::uint64_t timestamp_of(std::uint64_t now_ms)
{
    return now_ms / 1000;
}

struct SessionResult {
    bool authenticated = false;
    std::optional<RejectReason> reason;
    std::vector<TraceEntry> trace;  // this session's slice of the wire
    std::optional<Key256> ue_k_asme;
    std::optional<Key256> mme_k_asme;
    std::optional<KeyTree> ue_tree;
    std::optional<KeyTree> mme_tree;

    std::size_t message_count() const { return trace.size(); }
    std::size_t air_message_count() const;
    std::string outcome() const;
};

/// Delivers queued events to the actors until the network is quiet.
void pump(UeState& ue, MmeState& mme, HssState& hss, SimNet& net, std::size_t max_events = 10000);

SessionResult run_ipg_aka(UeState& ue, MmeState& mme, HssState& hss, SimNet& net);
SessionResult run_eps_aka(UeState& ue, MmeState& mme, HssState& hss, SimNet& net);
SessionResult run_session(ProtocolKind kind, UeState& ue, MmeState& mme, HssState& hss, SimNet& net);

/// Wire counters plus each actor's operation counters.
Metrics collect_metrics(const SimNet& net, const UeState& ue, const MmeState& mme, const HssState& hss);

/// Everything needed to run sessions for one subscriber.
struct World {
    UeState ue;
    MmeState mme;
    HssState hss;
    SimNet net;
};

struct WorldConfig {
    std::uint64_t seed = 1;
    std::size_t grid_n = 5;
    unsigned prime_bits = kDefaultPrimeBits;
    std::uint32_t snid = 0x00f110;
    std::string imsi = "001010123456789";
    LinkConfig air{};
    LinkConfig core{};
};

/// Provisions one subscriber identically at UE and HSS, and an MME with
/// fresh ElGamal parameters and an authority key, all from the seed.
World make_world(const WorldConfig& cfg);

/// Credentials for a subscriber derived from (imsi, n, seed).
Credentials provision_credentials(const Imsi& imsi, std::size_t grid_n, std::uint64_t seed);

}  // namespace ipgaka
