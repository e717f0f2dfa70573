#include "doctest.h"

#include "ipgaka/attacks.hpp"

using namespace ipgaka;

namespace {

WorldConfig quick(std::uint64_t seed = 1)
{
    WorldConfig cfg;
    cfg.seed = seed;
    cfg.prime_bits = 256;
    return cfg;
}

}  // namespace

TEST_CASE("scenario names round-trip")
{
    for (auto s : all_scenarios())
        CHECK(parse_scenario(scenario_name(s)) == s);
    CHECK(all_scenarios().size() == 5);
    try {
        run_attack_scenario("DowngradeTo2G", ProtocolKind::IpgAka, quick());
        FAIL("expected UnknownScenario");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownScenario);
    }
}

TEST_CASE("eavesdropping: only the baseline leaks the IMSI")
{
    auto ipg = run_attack_scenario(Scenario::EavesdropImsi, ProtocolKind::IpgAka);
    auto eps = run_attack_scenario(Scenario::EavesdropImsi, ProtocolKind::EpsAka);
    CHECK_FALSE(ipg.succeeded);
    CHECK(eps.succeeded);
    CHECK(ipg.evidence.size() == 7);
    CHECK(ipg.summary.find("Authenticated") != std::string::npos);
}

TEST_CASE("replayed identity request")
{
    auto ipg = run_attack_scenario(Scenario::ReplayIdentityRequest, ProtocolKind::IpgAka, quick());
    CHECK_FALSE(ipg.succeeded);
    CHECK(ipg.summary.find("StaleTimestamp") != std::string::npos);
    REQUIRE(ipg.evidence.size() == 2);
    CHECK(ipg.evidence[0].injected);
    CHECK(ipg.evidence[1].tag() == MsgTag::AuthReject);

    auto eps = run_attack_scenario(Scenario::ReplayIdentityRequest, ProtocolKind::EpsAka, quick());
    CHECK(eps.succeeded);
}

TEST_CASE("replayed challenge hits the SQN window")
{
    for (auto kind : {ProtocolKind::IpgAka, ProtocolKind::EpsAka}) {
        auto rep = run_attack_scenario(Scenario::ReplayAuthRequest, kind, quick());
        CAPTURE(protocol_name(kind));
        CHECK_FALSE(rep.succeeded);
        CHECK(rep.summary.find("Rejected(SqnOutOfRange)") != std::string::npos);
    }
}

TEST_CASE("rewritten vector fails the MAC")
{
    for (auto kind : {ProtocolKind::IpgAka, ProtocolKind::EpsAka}) {
        auto rep = run_attack_scenario(Scenario::MitmRewriteAv, kind, quick());
        CAPTURE(protocol_name(kind));
        CHECK_FALSE(rep.succeeded);
        CHECK(rep.summary.find("Rejected(MacFailure)") != std::string::npos);
    }
}

TEST_CASE("a stolen key is worthless after the epoch moves, not before")
{
    auto ipg = run_attack_scenario(Scenario::ImpersonateWithStaleKey, ProtocolKind::IpgAka, quick());
    CHECK_FALSE(ipg.succeeded);
    CHECK(ipg.summary.find("Rejected(ResMismatch)") != std::string::npos);
    CHECK(ipg.summary.find("epoch 0, subscriber now at epoch 1") != std::string::npos);
    auto eps = run_attack_scenario(Scenario::ImpersonateWithStaleKey, ProtocolKind::EpsAka, quick());
    CHECK(eps.succeeded);
}

TEST_CASE("attack matrix holds across seeds")
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        for (auto s : all_scenarios()) {
            CAPTURE(seed);
            CAPTURE(scenario_name(s));
            CHECK_FALSE(run_attack_scenario(s, ProtocolKind::IpgAka, quick(seed)).succeeded);
        }
        CHECK(run_attack_scenario(Scenario::EavesdropImsi, ProtocolKind::EpsAka, quick(seed)).succeeded);
    }
}

TEST_CASE("reports are deterministic and carry hexdumps")
{
    auto a = run_attack_scenario(Scenario::MitmRewriteAv, ProtocolKind::IpgAka, quick(3)).render();
    auto b = run_attack_scenario(Scenario::MitmRewriteAv, ProtocolKind::IpgAka, quick(3)).render();
    CHECK(a == b);
    CHECK(a.rfind("scenario=MitmRewriteAv\nprotocol=IPG-AKA\nsucceeded=false\n", 0) == 0);
    CHECK(a.find("\n0000  00 00 00") != std::string::npos);
}

TEST_CASE("scenario config files")
{
    auto cfg = parse_scenario_config("# demo\nseed = 42\nlatency_ms=3\njitter_ms=2\ndrop_pct=12.5\n\n"
                                     "scenario=ReplayAuthRequest\nprotocol=eps  # baseline\nsessions=10\nsubscribers=4\n");
    CHECK(cfg.seed == 42);
    CHECK(cfg.latency_ms == 3);
    CHECK(cfg.jitter_ms == 2);
    CHECK(cfg.drop_pct == doctest::Approx(12.5));
    CHECK(cfg.scenario == "ReplayAuthRequest");
    CHECK(cfg.protocol == ProtocolKind::EpsAka);
    CHECK(cfg.sessions == 10);
    CHECK(cfg.subscribers == 4);
    auto w = cfg.world();
    CHECK(w.seed == 42);
    CHECK(w.air == LinkConfig{3, 2, 12.5});
    CHECK(w.core == w.air);

    auto defaults = parse_scenario_config("");
    CHECK(defaults.seed == 1);
    CHECK(defaults.scenario.empty());

    auto bad = [](const char* text) {
        try {
            parse_scenario_config(text);
            return ErrorCode::EmptyInput;  // sentinel: nothing thrown
        } catch (const Error& e) {
            return e.code();
        }
    };
    CHECK(bad("seed") == ErrorCode::ConfigInvalid);
    CHECK(bad("seed=-1") == ErrorCode::ConfigInvalid);
    CHECK(bad("seed=1\nseed=2") == ErrorCode::ConfigInvalid);
    CHECK(bad("drop_pct=101") == ErrorCode::ConfigInvalid);
    CHECK(bad("drop_pct=lots") == ErrorCode::ConfigInvalid);
    CHECK(bad("sessions=0") == ErrorCode::ConfigInvalid);
    CHECK(bad("colour=blue") == ErrorCode::ConfigInvalid);
    CHECK(bad("protocol=5g") == ErrorCode::ConfigInvalid);
    CHECK(bad("scenario=Nope") == ErrorCode::UnknownScenario);
}
