#include "ipgaka/simnet.hpp"

#include <algorithm>
#include <sstream>

namespace ipgaka {

std::string render_trace_line(const TraceEntry& e)
{
    std::ostringstream os;
    os << e.time << " | " << endpoint_name(e.src) << "→" << endpoint_name(e.dst) << " | ";
    try {
        os << tag_name(e.tag());
    } catch (const Error&) {
        os << "?";
    }
    os << " | " << e.bytes.size() << " | " << to_hex(e.bytes);
    if (e.dropped)
        os << " | dropped";
    if (e.injected)
        os << " | injected";
    return os.str();
}

std::string render_trace(const std::vector<TraceEntry>& trace)
{
    std::string out;
    for (const auto& e : trace)
        out += render_trace_line(e) + "\n";
    return out;
}

AttackerTap AttackerTap::eavesdrop(bool air_only)
{
    AttackerTap t;
    t.mode_ = Mode::Eavesdrop;
    t.air_only_ = air_only;
    return t;
}

AttackerTap AttackerTap::replay(MsgTag target, std::uint64_t delay_ms)
{
    AttackerTap t;
    t.mode_ = Mode::Replay;
    t.target_ = target;
    t.delay_ = delay_ms;
    return t;
}

AttackerTap AttackerTap::inject(Endpoint spoofed_src, Endpoint dst, Bytes frame, std::uint64_t at)
{
    AttackerTap t;
    t.mode_ = Mode::Inject;
    t.crafted_ = Captured{at, spoofed_src, dst, std::move(frame)};
    return t;
}

AttackerTap AttackerTap::mitm(RewriteRule rule)
{
    AttackerTap t;
    t.mode_ = Mode::Mitm;
    t.rule_ = std::move(rule);
    return t;
}

std::optional<Captured> AttackerTap::first(MsgTag tag) const
{
    for (const auto& c : captured_) {
        if (c.bytes.size() >= 5 && frame_tag(c.bytes) == tag)
            return c;
    }
    return std::nullopt;
}

OpCounters& OpCounters::operator+=(const OpCounters& o)
{
    key_derivations += o.key_derivations;
    exponentiations += o.exponentiations;
    av_builds += o.av_builds;
    signatures += o.signatures;
    return *this;
}

const EntityMetrics& Metrics::of(Endpoint e) const
{
    static const EntityMetrics kEmpty{};
    auto it = entity.find(e);
    return it == entity.end() ? kEmpty : it->second;
}

SimNet::SimNet(std::uint64_t seed, LinkConfig air, LinkConfig core) : rng_("simnet", seed), air_(air), core_(core) {}

void SimNet::register_endpoint(Endpoint e)
{
    if (std::find(endpoints_.begin(), endpoints_.end(), e) == endpoints_.end())
        endpoints_.push_back(e);
}

std::uint16_t SimNet::link_key(Endpoint a, Endpoint b)
{
    auto lo = std::min(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b));
    auto hi = std::max(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b));
    return static_cast<std::uint16_t>(lo << 8 | hi);
}

void SimNet::set_link(Endpoint a, Endpoint b, LinkConfig cfg)
{
    links_[link_key(a, b)] = cfg;
}

const LinkConfig& SimNet::link(Endpoint a, Endpoint b) const
{
    auto it = links_.find(link_key(a, b));
    if (it != links_.end())
        return it->second;
    return on_air(a, b) ? air_ : core_;
}

void SimNet::advance_to(std::uint64_t t)
{
    now_ = std::max(now_, t);
}

std::size_t SimNet::install_tap(AttackerTap tap)
{
    if (tap.mode_ == AttackerTap::Mode::Inject) {
        const auto& c = tap.crafted_;
        register_endpoint(c.src);
        trace_.push_back({std::max(c.time, now_), c.src, c.dst, c.bytes, false, true});
        enqueue(std::max(c.time, now_), c.src, c.dst, c.bytes);
    }
    taps_.push_back(std::move(tap));
    return taps_.size() - 1;
}

void SimNet::send(Endpoint src, Endpoint dst, Bytes frame)
{
    transmit(src, dst, std::move(frame), false);
}

void SimNet::transmit(Endpoint src, Endpoint dst, Bytes frame, bool injected)
{
    auto known = [&](Endpoint e) { return std::find(endpoints_.begin(), endpoints_.end(), e) != endpoints_.end(); };
    if (!known(src) || !known(dst))
        throw Error(ErrorCode::UnknownEndpoint, std::string(endpoint_name(!known(src) ? src : dst)) + " not registered");

    auto& sender = metrics_.entity[src];
    ++sender.msgs_sent;
    sender.bytes_sent += frame.size();

    const bool air = on_air(src, dst);
    bool swallowed = false;
    for (auto& tap : taps_) {
        if (tap.air_only_ && !air)
            continue;
        Captured seen{now_, src, dst, frame};
        tap.captured_.push_back(seen);
        switch (tap.mode_) {
        case AttackerTap::Mode::Eavesdrop:
        case AttackerTap::Mode::Inject: break;
        case AttackerTap::Mode::Replay:
            if (!tap.fired_ && frame.size() >= 5 && frame_tag(frame) == tap.target_) {
                tap.fired_ = true;
                trace_.push_back({now_ + tap.delay_, src, dst, frame, false, true});
                enqueue(now_ + tap.delay_, src, dst, frame);
            }
            break;
        case AttackerTap::Mode::Mitm: {
            auto out = tap.rule_(seen);
            if (!out)
                swallowed = true;
            else
                frame = std::move(*out);
            break;
        }
        }
        if (swallowed)
            break;
    }

    // Two draws per transmission, always, so the pattern depends only on the seed.
    const LinkConfig& cfg = link(src, dst);
    const std::uint64_t jitter_draw = rng_.next_u64();
    const std::uint64_t drop_draw = rng_.next_u64();
    const double u = static_cast<double>(drop_draw >> 11) * 0x1.0p-53;
    const bool dropped = swallowed || u * 100.0 < cfg.drop_pct;

    trace_.push_back({now_, src, dst, frame, dropped, injected});
    if (air)
        metrics_.air_bytes += frame.size();
    if (dropped) {
        ++metrics_.drops;
        return;
    }
    const std::uint64_t jitter = cfg.jitter_ms ? jitter_draw % (cfg.jitter_ms + 1) : 0;
    enqueue(now_ + cfg.latency_ms + jitter, src, dst, std::move(frame));
}

void SimNet::enqueue(std::uint64_t at, Endpoint src, Endpoint dst, Bytes frame)
{
    queue_.push(Event{at, seq_++, src, dst, std::move(frame)});
}

std::optional<Delivery> SimNet::tick()
{
    if (queue_.empty())
        return std::nullopt;
    Event ev = queue_.top();
    queue_.pop();
    now_ = std::max(now_, ev.time);
    metrics_.logical_time_ms = now_;
    auto& receiver = metrics_.entity[ev.dst];
    ++receiver.msgs_recv;
    receiver.bytes_recv += ev.bytes.size();
    return Delivery{now_, ev.src, ev.dst, std::move(ev.bytes)};
}

}  // namespace ipgaka
