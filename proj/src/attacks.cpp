#include "ipgaka/attacks.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdlib>
#include <memory>
#include <set>
#include <sstream>

namespace ipgaka {

namespace {

constexpr std::array kScenarios = {Scenario::EavesdropImsi, Scenario::ReplayIdentityRequest,
                                   Scenario::ReplayAuthRequest, Scenario::MitmRewriteAv,
                                   Scenario::ImpersonateWithStaleKey};

// Well past the signature freshness window.
constexpr std::uint64_t kReplayDelayMs = 120'000;

std::vector<TraceEntry> slice_from(const SimNet& net, std::size_t first)
{
    const auto& t = net.trace();
    return {t.begin() + static_cast<std::ptrdiff_t>(first), t.end()};
}

bool sent_by(const std::vector<TraceEntry>& trace, Endpoint src, MsgTag tag)
{
    return std::any_of(trace.begin(), trace.end(),
                       [&](const TraceEntry& e) { return e.src == src && !e.dropped && e.tag() == tag; });
}

std::string reason_text(const std::optional<RejectReason>& r)
{
    return r ? std::string(reason_name(*r)) : std::string("none");
}

void begin(World& w, ProtocolKind kind)
{
    w.ue.begin_session(kind);
    w.mme.begin_session(kind);
    w.hss.kind = kind;
}

AttackReport eavesdrop_imsi(World& w, ProtocolKind kind)
{
    AttackReport rep;
    const auto tap = w.net.install_tap(AttackerTap::eavesdrop());
    auto r = run_session(kind, w.ue, w.mme, w.hss, w.net);

    // Look for the digits as text and for the IMSI as a plain big-endian integer.
    const Bytes ascii = bytes_of(w.ue.cred.imsi.digits());
    const mpz_class v = w.ue.cred.imsi.value();
    const Bytes binary = encode_big(v, (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8);
    std::size_t hits = 0;
    for (const auto& c : w.net.tap(tap).captured())
        hits += contains_subsequence(c.bytes, ascii) || contains_subsequence(c.bytes, binary);

    rep.succeeded = hits > 0;
    rep.summary = std::to_string(w.net.tap(tap).captured().size()) + " air frames captured, " + std::to_string(hits) +
                  " carry the IMSI; session " + r.outcome();
    rep.evidence = r.trace;
    return rep;
}

AttackReport replay_identity_request(World& w, ProtocolKind kind)
{
    AttackReport rep;
    const MsgTag target = kind == ProtocolKind::IpgAka ? MsgTag::IdentityRequest : MsgTag::PlainIdentity;
    const auto tap = w.net.install_tap(AttackerTap::eavesdrop());
    run_session(kind, w.ue, w.mme, w.hss, w.net);
    auto old = w.net.tap(tap).first(target);
    w.net.remove_taps();
    if (!old)
        throw Error(ErrorCode::ConfigInvalid, "honest session produced no frame to replay");

    w.net.advance_to(w.net.now() + kReplayDelayMs);
    begin(w, kind);
    const std::size_t first = w.net.trace().size();
    w.net.install_tap(AttackerTap::inject(old->src, old->dst, old->bytes, w.net.now()));
    pump(w.ue, w.mme, w.hss, w.net);
    rep.evidence = slice_from(w.net, first);

    if (kind == ProtocolKind::IpgAka) {
        // Goal: make the UE answer a stale request.
        rep.succeeded = sent_by(rep.evidence, Endpoint::Ue, MsgTag::IdentityResponse);
        rep.summary = "replayed identity request after " + std::to_string(kReplayDelayMs / 1000) +
                      " s; UE verdict " + reason_text(w.ue.rejected);
    } else {
        // Goal: have the network act on an identity claim nobody just made.
        rep.succeeded = sent_by(rep.evidence, Endpoint::Mme, MsgTag::AuthDataRequest);
        rep.summary = std::string("replayed cleartext identity ") +
                      (rep.succeeded ? "accepted; MME fetched a vector" : "ignored") +
                      "; MME verdict " + reason_text(w.mme.rejected);
    }
    return rep;
}

AttackReport replay_auth_request(World& w, ProtocolKind kind)
{
    AttackReport rep;
    // Session one: keep the challenge, kill the answer so the MME never finishes.
    auto stash = std::make_shared<std::optional<Bytes>>();
    w.net.install_tap(AttackerTap::mitm([stash](const Captured& c) -> std::optional<Bytes> {
        const auto tag = frame_tag(c.bytes);
        if (tag == MsgTag::UserAuthRequest && !*stash)
            *stash = c.bytes;
        if (tag == MsgTag::UserAuthResponse)
            return std::nullopt;
        return c.bytes;
    }));
    auto first_run = run_session(kind, w.ue, w.mme, w.hss, w.net);
    w.net.remove_taps();
    if (!*stash)
        throw Error(ErrorCode::ConfigInvalid, "no challenge captured in the first session");

    // Session two: swap the fresh challenge for the old one.
    w.net.install_tap(AttackerTap::mitm([stash](const Captured& c) -> std::optional<Bytes> {
        if (frame_tag(c.bytes) == MsgTag::UserAuthRequest)
            return **stash;
        return c.bytes;
    }));
    auto r = run_session(kind, w.ue, w.mme, w.hss, w.net);
    w.net.remove_taps();

    rep.succeeded = r.authenticated || sent_by(r.trace, Endpoint::Ue, MsgTag::UserAuthResponse);
    rep.summary = "first session " + first_run.outcome() + "; replayed challenge gave " + r.outcome();
    rep.evidence = r.trace;
    return rep;
}

AttackReport mitm_rewrite_av(World& w, ProtocolKind kind)
{
    AttackReport rep;
    w.net.install_tap(AttackerTap::mitm([](const Captured& c) -> std::optional<Bytes> {
        if (frame_tag(c.bytes) != MsgTag::UserAuthRequest)
            return c.bytes;
        Bytes b = c.bytes;
        b[5] ^= 0xff;  // first RAND byte
        return b;
    }));
    auto r = run_session(kind, w.ue, w.mme, w.hss, w.net);
    w.net.remove_taps();

    const bool keys_split = r.ue_k_asme && r.mme_k_asme && *r.ue_k_asme != *r.mme_k_asme;
    rep.succeeded = keys_split || (r.authenticated && !r.ue_k_asme) ||
                    sent_by(r.trace, Endpoint::Ue, MsgTag::UserAuthResponse);
    rep.summary = "rewrote RAND in the challenge; session " + r.outcome();
    rep.evidence = r.trace;
    return rep;
}

AttackReport impersonate_with_stale_key(World& w, ProtocolKind kind)
{
    AttackReport rep;
    const Key256 stolen = current_lte_key(w.ue.cred, kind);
    const std::uint64_t stolen_epoch = w.ue.cred.epoch;
    run_session(kind, w.ue, w.mme, w.hss, w.net);

    // The attacker knows the IMSI and the stolen key, nothing else.
    UeState attacker = w.ue;
    attacker.cred.grid.reset();
    attacker.cred.ks = {};
    attacker.cred.static_key = {};
    attacker.key_override = stolen;
    attacker.verify_network = false;
    attacker.sqn = {};
    auto r = run_session(kind, attacker, w.mme, w.hss, w.net);

    rep.succeeded = r.authenticated;
    rep.summary = "key stolen at epoch " + std::to_string(stolen_epoch) +
                  ", subscriber now at epoch " + std::to_string(w.ue.cred.epoch) + "; impostor " + r.outcome();
    rep.evidence = r.trace;
    return rep;
}

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::uint64_t parse_u64(const std::string& key, const std::string& v)
{
    std::uint64_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        throw Error(ErrorCode::ConfigInvalid, key + ": not an unsigned integer: '" + v + "'");
    return out;
}

}  // namespace

std::string_view scenario_name(Scenario s)
{
    switch (s) {
    case Scenario::EavesdropImsi: return "EavesdropImsi";
    case Scenario::ReplayIdentityRequest: return "ReplayIdentityRequest";
    case Scenario::ReplayAuthRequest: return "ReplayAuthRequest";
    case Scenario::MitmRewriteAv: return "MitmRewriteAv";
    case Scenario::ImpersonateWithStaleKey: return "ImpersonateWithStaleKey";
    }
    return "?";
}

Scenario parse_scenario(std::string_view name)
{
    for (auto s : kScenarios)
        if (scenario_name(s) == name)
            return s;
    throw Error(ErrorCode::UnknownScenario, "'" + std::string(name) + "'");
}

std::span<const Scenario> all_scenarios()
{
    return kScenarios;
}

std::string AttackReport::render() const
{
    std::ostringstream os;
    os << "scenario=" << scenario_name(scenario) << "\n"
       << "protocol=" << protocol_name(protocol) << "\n"
       << "succeeded=" << (succeeded ? "true" : "false") << "\n"
       << "summary=" << summary << "\n"
       << "evidence=" << evidence.size() << " frames\n";
    for (const auto& e : evidence)
        os << render_trace_line(e) << "\n" << hexdump(e.bytes);
    return os.str();
}

AttackReport run_attack_scenario(Scenario scenario, ProtocolKind protocol, const WorldConfig& cfg)
{
    World w = make_world(cfg);
    AttackReport rep;
    switch (scenario) {
    case Scenario::EavesdropImsi: rep = eavesdrop_imsi(w, protocol); break;
    case Scenario::ReplayIdentityRequest: rep = replay_identity_request(w, protocol); break;
    case Scenario::ReplayAuthRequest: rep = replay_auth_request(w, protocol); break;
    case Scenario::MitmRewriteAv: rep = mitm_rewrite_av(w, protocol); break;
    case Scenario::ImpersonateWithStaleKey: rep = impersonate_with_stale_key(w, protocol); break;
    }
    rep.scenario = scenario;
    rep.protocol = protocol;
    return rep;
}

AttackReport run_attack_scenario(std::string_view scenario, ProtocolKind protocol, const WorldConfig& cfg)
{
    return run_attack_scenario(parse_scenario(scenario), protocol, cfg);
}

WorldConfig ScenarioConfig::world() const
{
    WorldConfig w;
    w.seed = seed;
    w.air = LinkConfig{latency_ms, jitter_ms, drop_pct};
    w.core = w.air;
    return w;
}

ScenarioConfig parse_scenario_config(std::string_view text)
{
    ScenarioConfig cfg;
    std::set<std::string> seen;
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::ConfigInvalid, "line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (!seen.insert(key).second)
            throw Error(ErrorCode::ConfigInvalid, "duplicate key '" + key + "'");

        if (key == "seed") {
            cfg.seed = parse_u64(key, value);
        } else if (key == "latency_ms") {
            cfg.latency_ms = parse_u64(key, value);
        } else if (key == "jitter_ms") {
            cfg.jitter_ms = parse_u64(key, value);
        } else if (key == "drop_pct") {
            char* end = nullptr;
            cfg.drop_pct = std::strtod(value.c_str(), &end);
            if (value.empty() || end != value.c_str() + value.size() || !(cfg.drop_pct >= 0.0 && cfg.drop_pct <= 100.0))
                throw Error(ErrorCode::ConfigInvalid, "drop_pct must be a number in [0, 100]");
        } else if (key == "scenario") {
            parse_scenario(value);
            cfg.scenario = value;
        } else if (key == "protocol") {
            cfg.protocol = parse_protocol(value);
        } else if (key == "sessions") {
            cfg.sessions = parse_u64(key, value);
            if (cfg.sessions == 0)
                throw Error(ErrorCode::ConfigInvalid, "sessions must be at least 1");
        } else if (key == "subscribers") {
            cfg.subscribers = parse_u64(key, value);
            if (cfg.subscribers == 0)
                throw Error(ErrorCode::ConfigInvalid, "subscribers must be at least 1");
        } else {
            throw Error(ErrorCode::ConfigInvalid, "unknown key '" + key + "'");
        }
    }
    return cfg;
}

}  // namespace ipgaka
