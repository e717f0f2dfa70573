#include "doctest.h"

#include "ipgaka/simnet.hpp"

using namespace ipgaka;

namespace {

SimNet three_party(std::uint64_t seed, LinkConfig air = {0, 0, 0}, LinkConfig core = {0, 0, 0})
{
    SimNet net(seed, air, core);
    for (auto e : {Endpoint::Ue, Endpoint::Mme, Endpoint::Hss})
        net.register_endpoint(e);
    return net;
}

Bytes accept_frame(std::uint8_t ksi)
{
    return encode(AuthAcceptMsg{ksi});
}

std::vector<Delivery> drain(SimNet& net)
{
    std::vector<Delivery> out;
    while (auto d = net.tick())
        out.push_back(std::move(*d));
    return out;
}

}  // namespace

TEST_CASE("zero latency keeps per-link FIFO order")
{
    auto net = three_party(1);
    for (std::uint8_t i = 0; i < 20; ++i)
        net.send(Endpoint::Mme, Endpoint::Ue, accept_frame(i));
    auto got = drain(net);
    REQUIRE(got.size() == 20);
    for (std::uint8_t i = 0; i < 20; ++i)
        CHECK(got[i].bytes == accept_frame(i));
    CHECK(net.now() == 0);
}

TEST_CASE("delivery time is send time plus latency, clock never runs back")
{
    auto net = three_party(1, {7, 0, 0}, {2, 0, 0});
    net.send(Endpoint::Ue, Endpoint::Mme, accept_frame(0));
    net.send(Endpoint::Mme, Endpoint::Hss, accept_frame(1));
    auto a = net.tick();
    REQUIRE(a);
    CHECK(a->time == 2);
    CHECK(a->dst == Endpoint::Hss);
    auto b = net.tick();
    REQUIRE(b);
    CHECK(b->time == 7);
    net.advance_to(3);
    CHECK(net.now() == 7);
    net.advance_to(100);
    CHECK(net.now() == 100);
    CHECK(net.idle());
}

TEST_CASE("jitter stays inside its bound and is seed-determined")
{
    auto run = [](std::uint64_t seed) {
        auto net = three_party(seed, {10, 6, 0});
        std::vector<std::uint64_t> times;
        for (int i = 0; i < 200; ++i) {
            net.send(Endpoint::Ue, Endpoint::Mme, accept_frame(0));
            auto d = net.tick();
            times.push_back(d->time);
        }
        return times;
    };
    auto a = run(3);
    CHECK(a == run(3));
    CHECK(a != run(4));
    std::uint64_t prev = 0;
    bool saw_jitter = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::uint64_t sent = prev;
        CHECK(a[i] >= sent + 10);
        CHECK(a[i] <= sent + 16);
        saw_jitter |= a[i] != sent + 10;
        prev = a[i];
    }
    CHECK(saw_jitter);
}

TEST_CASE("fixed seed gives an identical drop pattern")
{
    auto pattern = [](std::uint64_t seed) {
        auto net = three_party(seed, {1, 0, 10.0});
        for (int i = 0; i < 1000; ++i)
            net.send(Endpoint::Ue, Endpoint::Mme, accept_frame(0));
        std::vector<bool> dropped;
        for (const auto& e : net.trace())
            dropped.push_back(e.dropped);
        return std::pair{dropped, net.metrics().drops};
    };
    auto [a, drops] = pattern(11);
    CHECK(a == pattern(11).first);
    CHECK(a != pattern(12).first);
    // 10% of 1000, loosely
    CHECK(drops > 60);
    CHECK(drops < 140);
    auto net = three_party(11, {1, 0, 10.0});
    for (int i = 0; i < 1000; ++i)
        net.send(Endpoint::Ue, Endpoint::Mme, accept_frame(0));
    CHECK(drain(net).size() == 1000 - drops);
}

TEST_CASE("unregistered endpoints are refused")
{
    SimNet net(1);
    net.register_endpoint(Endpoint::Ue);
    try {
        net.send(Endpoint::Ue, Endpoint::Hss, accept_frame(0));
        FAIL("expected UnknownEndpoint");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownEndpoint);
    }
    CHECK(net.trace().empty());
}

TEST_CASE("eavesdropping changes nothing that is delivered")
{
    auto run = [](bool tapped) {
        auto net = three_party(5, {3, 2, 20.0}, {1, 0, 0});
        std::size_t id = 0;
        if (tapped)
            id = net.install_tap(AttackerTap::eavesdrop(false));
        for (std::uint8_t i = 0; i < 50; ++i) {
            net.send(Endpoint::Ue, Endpoint::Mme, accept_frame(i));
            net.send(Endpoint::Mme, Endpoint::Hss, accept_frame(i));
        }
        auto got = drain(net);
        std::size_t captured = tapped ? net.tap(id).captured().size() : 0;
        return std::tuple{got.size(), net.metrics(), captured, net.trace().size()};
    };
    auto [n0, m0, c0, t0] = run(false);
    auto [n1, m1, c1, t1] = run(true);
    CHECK(n0 == n1);
    CHECK(m0 == m1);
    CHECK(t0 == t1);
    CHECK(c1 == 100);

    auto net = three_party(5);
    auto id = net.install_tap(AttackerTap::eavesdrop());
    const Bytes sent = accept_frame(9);
    net.send(Endpoint::Ue, Endpoint::Mme, sent);
    net.send(Endpoint::Mme, Endpoint::Hss, sent);
    auto got = drain(net);
    REQUIRE(got.size() == 2);
    CHECK(got[0].bytes == sent);
    CHECK(got[1].bytes == sent);
    // air-only by default
    REQUIRE(net.tap(id).captured().size() == 1);
    CHECK(net.tap(id).captured()[0].bytes == sent);
}

TEST_CASE("replay re-sends a captured frame once")
{
    auto net = three_party(1, {5, 0, 0});
    net.install_tap(AttackerTap::replay(MsgTag::AuthAccept, 40));
    net.send(Endpoint::Mme, Endpoint::Ue, encode(AuthRejectMsg{}));
    net.send(Endpoint::Mme, Endpoint::Ue, accept_frame(2));
    net.send(Endpoint::Mme, Endpoint::Ue, accept_frame(3));
    auto got = drain(net);
    REQUIRE(got.size() == 4);
    CHECK(got.back().bytes == accept_frame(2));
    CHECK(got.back().time == 40);
    std::size_t injected = 0;
    for (const auto& e : net.trace())
        injected += e.injected;
    CHECK(injected == 1);
}

TEST_CASE("inject places a crafted frame at the requested time")
{
    auto net = three_party(1, {5, 0, 0});
    net.install_tap(AttackerTap::inject(Endpoint::Mme, Endpoint::Ue, accept_frame(4), 12));
    net.send(Endpoint::Mme, Endpoint::Ue, accept_frame(1));
    auto got = drain(net);
    REQUIRE(got.size() == 2);
    CHECK(got[0].time == 5);
    CHECK(got[1].time == 12);
    CHECK(got[1].src == Endpoint::Mme);
    CHECK(got[1].bytes == accept_frame(4));
    CHECK(net.trace().front().injected);
}

TEST_CASE("mitm can rewrite or swallow")
{
    auto net = three_party(1);
    net.install_tap(AttackerTap::mitm([](const Captured& c) -> std::optional<Bytes> {
        if (frame_tag(c.bytes) == MsgTag::AuthReject)
            return std::nullopt;
        Bytes b = c.bytes;
        b.back() ^= 0x01;
        return b;
    }));
    net.send(Endpoint::Mme, Endpoint::Ue, accept_frame(2));
    net.send(Endpoint::Mme, Endpoint::Ue, encode(AuthRejectMsg{}));
    auto got = drain(net);
    REQUIRE(got.size() == 1);
    CHECK(got[0].bytes == accept_frame(3));
    CHECK(net.metrics().drops == 1);
    CHECK(net.trace()[1].dropped);
}

TEST_CASE("byte counters agree with the trace")
{
    auto net = three_party(8, {2, 1, 5.0}, {1, 0, 0});
    for (std::uint8_t i = 0; i < 30; ++i) {
        net.send(Endpoint::Ue, Endpoint::Mme, encode(PlainIdentityMsg{"001010123456789"}));
        net.send(Endpoint::Mme, Endpoint::Hss, accept_frame(i));
    }
    drain(net);
    std::uint64_t sent = 0, air = 0, delivered = 0;
    for (const auto& e : net.trace()) {
        sent += e.bytes.size();
        if (e.air())
            air += e.bytes.size();
        if (!e.dropped)
            delivered += e.bytes.size();
    }
    const auto& m = net.metrics();
    CHECK(m.of(Endpoint::Ue).bytes_sent + m.of(Endpoint::Mme).bytes_sent == sent);
    CHECK(m.of(Endpoint::Mme).bytes_recv + m.of(Endpoint::Hss).bytes_recv == delivered);
    CHECK(m.air_bytes == air);
    CHECK(m.of(Endpoint::Hss).msgs_sent == 0);
}

TEST_CASE("fresh network reports all-zero metrics")
{
    SimNet net(1);
    CHECK(net.metrics() == Metrics{});
    CHECK(net.metrics().of(Endpoint::Mme) == EntityMetrics{});
}

TEST_CASE("trace lines are stable text")
{
    auto net = three_party(1, {5, 0, 0});
    net.send(Endpoint::Mme, Endpoint::Ue, accept_frame(3));
    CHECK(render_trace_line(net.trace()[0]) == "0 | MME→UE | AuthAccept | 6 | 000000020803");
    TraceEntry e = net.trace()[0];
    e.dropped = true;
    e.injected = true;
    CHECK(render_trace_line(e) == "0 | MME→UE | AuthAccept | 6 | 000000020803 | dropped | injected");
    CHECK(render_trace(net.trace()) == "0 | MME→UE | AuthAccept | 6 | 000000020803\n");
}
