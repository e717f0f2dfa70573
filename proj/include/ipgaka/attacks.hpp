#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ipgaka/protocol.hpp"

namespace ipgaka {

enum class Scenario { EavesdropImsi, ReplayIdentityRequest, ReplayAuthRequest, MitmRewriteAv, ImpersonateWithStaleKey };

std::string_view scenario_name(Scenario s);
/// Throws UnknownScenario.
Scenario parse_scenario(std::string_view name);
std::span<const Scenario> all_scenarios();

struct AttackReport {
    Scenario scenario = Scenario::EavesdropImsi;
    ProtocolKind protocol = ProtocolKind::IpgAka;
    bool succeeded = false;
    std::string summary;              // one line on what happened
    std::vector<TraceEntry> evidence;  // the wire slice of the attacked session

    /// Header lines, then the evidence trace with hexdumps.
    std::string render() const;
};

/// Runs one scenario in a fresh world built from cfg. The attacker works on
/// bytes only: it captures, replays, injects and rewrites but never breaks
/// the cryptography.
AttackReport run_attack_scenario(Scenario scenario, ProtocolKind protocol, const WorldConfig& cfg = {});
AttackReport run_attack_scenario(std::string_view scenario, ProtocolKind protocol, const WorldConfig& cfg = {});

/// key=value scenario file. '#' starts a comment; blank lines are skipped.
struct ScenarioConfig {
    std::uint64_t seed = 1;
    std::uint64_t latency_ms = 5;
    std::uint64_t jitter_ms = 0;
    double drop_pct = 0.0;
    std::string scenario;  // empty: honest sessions only
    ProtocolKind protocol = ProtocolKind::IpgAka;
    std::uint64_t sessions = 1;
    std::uint64_t subscribers = 1;

    /// World settings implied by this file (air and core links share the model).
    WorldConfig world() const;
};

/// Throws ConfigInvalid on unknown keys, duplicates or bad values.
ScenarioConfig parse_scenario_config(std::string_view text);

}  // namespace ipgaka
