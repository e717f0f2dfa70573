#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "ipgaka/messages.hpp"
#include "ipgaka/primitives.hpp"

namespace ipgaka {

/// Logical time is in milliseconds.
struct LinkConfig {
    std::uint64_t latency_ms = 5;
    std::uint64_t jitter_ms = 0;  // uniform extra delay in [0, jitter_ms]
    double drop_pct = 0.0;        // 0..100

    bool operator==(const LinkConfig&) const = default;
};

struct TraceEntry {
    std::uint64_t time = 0;  // when it was put on the wire
    Endpoint src = Endpoint::Ue;
    Endpoint dst = Endpoint::Mme;
    Bytes bytes;
    bool dropped = false;
    bool injected = false;  // originated from a tap, not an actor

    MsgTag tag() const { return frame_tag(bytes); }
    bool air() const { return on_air(src, dst); }
};

/// "time | src→dst | tag | bytes | hexdump"
std::string render_trace_line(const TraceEntry& e);
std::string render_trace(const std::vector<TraceEntry>& trace);

struct Delivery {
    std::uint64_t time = 0;
    Endpoint src = Endpoint::Ue;
    Endpoint dst = Endpoint::Mme;
    Bytes bytes;
};

struct Captured {
    std::uint64_t time = 0;
    Endpoint src = Endpoint::Ue;
    Endpoint dst = Endpoint::Mme;
    Bytes bytes;
};

/// Returns the bytes to forward, or nullopt to swallow the frame.
using RewriteRule = std::function<std::optional<Bytes>(const Captured&)>;

/// Byte-level adversary sitting on the radio link (or every link).
class AttackerTap {
public:
    enum class Mode { Eavesdrop, Replay, Inject, Mitm };

    static AttackerTap eavesdrop(bool air_only = true);
    /// Re-sends a copy of the first frame with the target tag, delay ms later.
    static AttackerTap replay(MsgTag target, std::uint64_t delay_ms);
    /// Puts a crafted frame on the wire at the given time.
    static AttackerTap inject(Endpoint spoofed_src, Endpoint dst, Bytes frame, std::uint64_t at);
    static AttackerTap mitm(RewriteRule rule);

    Mode mode() const { return mode_; }
    bool air_only() const { return air_only_; }
    const std::vector<Captured>& captured() const { return captured_; }
    /// First captured frame carrying the tag, if any.
    std::optional<Captured> first(MsgTag tag) const;

private:
    friend class SimNet;

    Mode mode_ = Mode::Eavesdrop;
    bool air_only_ = true;
    std::vector<Captured> captured_;
    MsgTag target_ = MsgTag::IdentityRequest;
    std::uint64_t delay_ = 0;
    bool fired_ = false;
    Captured crafted_;
    RewriteRule rule_;
};

/// Operation counters an actor keeps about itself.
struct OpCounters {
    std::uint64_t key_derivations = 0;  // LTE-K derivations from the grid or static store
    std::uint64_t exponentiations = 0;  // modular exponentiations
    std::uint64_t av_builds = 0;
    std::uint64_t signatures = 0;  // signs plus verifies

    OpCounters& operator+=(const OpCounters& o);
    bool operator==(const OpCounters&) const = default;
};

struct EntityMetrics {
    std::uint64_t msgs_sent = 0;
    std::uint64_t msgs_recv = 0;
    std::uint64_t bytes_sent = 0;
    std::uint64_t bytes_recv = 0;
    OpCounters ops;

    bool operator==(const EntityMetrics&) const = default;
};

struct Metrics {
    std::map<Endpoint, EntityMetrics> entity;
    std::uint64_t drops = 0;
    std::uint64_t air_bytes = 0;
    std::uint64_t logical_time_ms = 0;

    const EntityMetrics& of(Endpoint e) const;
    bool operator==(const Metrics&) const = default;
};

/// Deterministic discrete-event transport. Events are ordered by
/// (delivery time, sequence number); all randomness comes from the seed.
class SimNet {
public:
    explicit SimNet(std::uint64_t seed, LinkConfig air = {}, LinkConfig core = {});

    void register_endpoint(Endpoint e);
    void set_link(Endpoint a, Endpoint b, LinkConfig cfg);
    const LinkConfig& link(Endpoint a, Endpoint b) const;

    /// Throws UnknownEndpoint for unregistered endpoints.
    void send(Endpoint src, Endpoint dst, Bytes frame);
    void send(const Message& msg) { send(msg.src, msg.dst, encode(msg.body)); }

    /// Delivers the next event and advances the clock to it.
    std::optional<Delivery> tick();
    bool idle() const { return queue_.empty(); }

    std::uint64_t now() const { return now_; }
    /// Moves the clock forward (never back).
    void advance_to(std::uint64_t t);

    std::size_t install_tap(AttackerTap tap);
    const AttackerTap& tap(std::size_t id) const { return taps_.at(id); }
    void remove_taps() { taps_.clear(); }

    const std::vector<TraceEntry>& trace() const { return trace_; }
    /// Traffic counters as seen by the wire.
    const Metrics& metrics() const { return metrics_; }

private:
    struct Event {
        std::uint64_t time;
        std::uint64_t seq;
        Endpoint src;
        Endpoint dst;
        Bytes bytes;

        bool operator>(const Event& o) const { return time != o.time ? time > o.time : seq > o.seq; }
    };

    void transmit(Endpoint src, Endpoint dst, Bytes frame, bool injected);
    void enqueue(std::uint64_t at, Endpoint src, Endpoint dst, Bytes frame);
    static std::uint16_t link_key(Endpoint a, Endpoint b);

    Drbg rng_;
    std::uint64_t now_ = 0;
    std::uint64_t seq_ = 0;
    std::vector<Endpoint> endpoints_;
    std::map<std::uint16_t, LinkConfig> links_;
    LinkConfig air_;
    LinkConfig core_;
    std::priority_queue<Event, std::vector<Event>, std::greater<>> queue_;
    std::vector<AttackerTap> taps_;
    std::vector<TraceEntry> trace_;
    Metrics metrics_;
};

}  // namespace ipgaka
