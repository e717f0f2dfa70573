#include "ipgaka/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <set>
#include <sstream>

namespace ipgaka {

namespace {

using Clock = std::chrono::steady_clock;

double micros(Clock::duration d)
{
    return std::chrono::duration<double, std::micro>(d).count();
}

double median(std::vector<double> v)
{
    if (v.empty())
        throw Error(ErrorCode::ConfigInvalid, "no timing samples");
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos)
            return out;
        start = pos + 1;
    }
}

std::uint64_t to_u64(const std::string& what, const std::string& v)
{
    std::uint64_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || p != v.data() + v.size())
        throw Error(ErrorCode::ConfigInvalid, what + ": not an unsigned integer: '" + v + "'");
    return out;
}

double to_double(const std::string& what, const std::string& v)
{
    double out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || p != v.data() + v.size())
        throw Error(ErrorCode::ConfigInvalid, what + ": not a number: '" + v + "'");
    return out;
}

std::vector<std::size_t> size_list(const std::string& key, const std::string& v, std::size_t min)
{
    std::vector<std::size_t> out;
    for (const auto& item : split(v, ','))
        out.push_back(static_cast<std::size_t>(to_u64(key, item)));
    for (auto x : out)
        if (x < min)
            throw Error(ErrorCode::ConfigInvalid, key + ": values must be at least " + std::to_string(min));
    return out;
}

std::string format_double(double v)
{
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

Imsi subscriber_imsi(std::size_t i)
{
    char digits[16];
    std::snprintf(digits, sizeof digits, "00101%010zu", i);
    return Imsi::parse(digits);
}

}  // namespace

BenchConfig parse_bench_config(std::string_view text)
{
    BenchConfig cfg;
    std::set<std::string> seen;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        if (auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::ConfigInvalid, "expected key=value: '" + line + "'");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (!seen.insert(key).second)
            throw Error(ErrorCode::ConfigInvalid, "duplicate key '" + key + "'");

        if (key == "protocols") {
            cfg.protocols.clear();
            for (const auto& item : split(value, ','))
                cfg.protocols.push_back(parse_protocol(item));
        } else if (key == "subscribers") {
            cfg.subscribers = size_list(key, value, 1);
        } else if (key == "grid_sizes") {
            cfg.grid_sizes = size_list(key, value, 3);
        } else if (key == "sessions") {
            cfg.sessions = static_cast<std::size_t>(to_u64(key, value));
        } else if (key == "keygen_reps") {
            cfg.keygen_reps = static_cast<std::size_t>(to_u64(key, value));
        } else if (key == "seed") {
            cfg.seed = to_u64(key, value);
        } else if (key == "prime_bits") {
            cfg.prime_bits = static_cast<unsigned>(to_u64(key, value));
        } else if (key == "latency_ms") {
            cfg.link.latency_ms = to_u64(key, value);
        } else if (key == "jitter_ms") {
            cfg.link.jitter_ms = to_u64(key, value);
        } else if (key == "drop_pct") {
            cfg.link.drop_pct = to_double(key, value);
            if (!(cfg.link.drop_pct >= 0 && cfg.link.drop_pct <= 100))
                throw Error(ErrorCode::ConfigInvalid, "drop_pct must be in [0, 100]");
        } else {
            throw Error(ErrorCode::ConfigInvalid, "unknown key '" + key + "'");
        }
    }
    if (cfg.sessions == 0 || cfg.keygen_reps == 0)
        throw Error(ErrorCode::ConfigInvalid, "sessions and keygen_reps must be positive");
    if (cfg.protocols.empty() || cfg.subscribers.empty() || cfg.grid_sizes.empty())
        throw Error(ErrorCode::ConfigInvalid, "empty list");
    return cfg;
}

double keygen_time_us(std::size_t n, std::size_t reps, std::uint64_t seed)
{
    std::vector<double> samples;
    samples.reserve(reps);
    const auto widths = ColumnWidths::pyramid(n);
    for (std::size_t r = 0; r < reps; ++r) {
        const auto t0 = Clock::now();
        auto grid = generate_grid(n, widths, seed + r);
        auto ks = form_key_sequence(grid, seed + r);
        auto key = derive_lte_key(grid, ks, seed + r, 0);
        const auto t1 = Clock::now();
        if (key.bits.empty())
            throw Error(ErrorCode::ConfigInvalid, "empty key");
        samples.push_back(micros(t1 - t0));
    }
    return median(std::move(samples));
}

double derive_time_us(std::size_t n, std::size_t reps, std::uint64_t seed)
{
    const auto grid = generate_grid(n, ColumnWidths::pyramid(n), seed);
    const auto ks = form_key_sequence(grid, seed);
    std::vector<double> samples;
    samples.reserve(reps);
    for (std::size_t r = 0; r < reps; ++r) {
        const auto t0 = Clock::now();
        auto key = derive_lte_key(grid, ks, seed, r);
        const auto t1 = Clock::now();
        if (key.bits.empty())
            throw Error(ErrorCode::ConfigInvalid, "empty key");
        samples.push_back(micros(t1 - t0));
    }
    return median(std::move(samples));
}

CellResult run_cell(ProtocolKind kind, std::size_t subscribers, std::size_t grid_n, const BenchConfig& cfg)
{
    WorldConfig wc;
    wc.seed = cfg.seed;
    wc.grid_n = grid_n;
    wc.prime_bits = cfg.prime_bits;
    wc.imsi = subscriber_imsi(0).digits();
    wc.air = cfg.link;
    wc.core = cfg.link;
    World w = make_world(wc);

    std::vector<UeState> ues{w.ue};
    for (std::size_t i = 1; i < subscribers; ++i) {
        UeState ue = w.ue;
        ue.cred = provision_credentials(subscriber_imsi(i), grid_n, cfg.seed + i);
        ue.rng = Drbg("ue", cfg.seed + i);
        w.hss.subscribers[ue.cred.imsi.digits()] = HssRecord{ue.cred, 0};
        ues.push_back(std::move(ue));
    }

    CellResult out;
    OpCounters ue_ops;
    double wall = 0;
    for (std::size_t s = 0; s < cfg.sessions; ++s) {
        for (auto& ue : ues) {
            const auto t0 = Clock::now();
            auto r = run_session(kind, ue, w.mme, w.hss, w.net);
            wall += micros(Clock::now() - t0);
            ++out.sessions;
            out.authenticated += r.authenticated;
            out.messages += r.message_count();
        }
    }
    for (const auto& ue : ues)
        ue_ops += ue.ops;
    UeState summed;
    summed.ops = ue_ops;
    out.metrics = collect_metrics(w.net, summed, w.mme, w.hss);
    out.wall_us_per_session = wall / static_cast<double>(out.sessions);
    return out;
}

std::vector<BenchRow> run_benchmarks(const BenchConfig& cfg)
{
    std::vector<BenchRow> rows;
    for (std::size_t n : cfg.grid_sizes) {
        const std::string ipg(protocol_name(ProtocolKind::IpgAka));
        rows.push_back({ipg, 1, n, "keygen_time", "us", keygen_time_us(n, cfg.keygen_reps, cfg.seed), false});
        rows.push_back({ipg, 1, n, "key_derive_time", "us", derive_time_us(n, cfg.keygen_reps, cfg.seed), false});
    }
    for (ProtocolKind kind : cfg.protocols) {
        const std::string name(protocol_name(kind));
        for (std::size_t subs : cfg.subscribers) {
            for (std::size_t n : cfg.grid_sizes) {
                const CellResult c = run_cell(kind, subs, n, cfg);
                const auto& m = c.metrics;
                const auto& mme = m.of(Endpoint::Mme);
                const auto& hss = m.of(Endpoint::Hss);
                const auto& ue = m.of(Endpoint::Ue);
                const double per = static_cast<double>(c.sessions);
                auto add = [&](std::string metric, std::string unit, double v, bool det = true) {
                    rows.push_back({name, subs, n, std::move(metric), std::move(unit), v, det});
                };
                add("auth_time_per_session", "us", c.wall_us_per_session, false);
                add("sessions", "count", per);
                add("authenticated", "count", static_cast<double>(c.authenticated));
                add("messages_per_session", "msgs", static_cast<double>(c.messages) / per);
                add("air_bytes_per_session", "bytes", static_cast<double>(m.air_bytes) / per);
                add("mme_msgs", "msgs", static_cast<double>(mme.msgs_sent + mme.msgs_recv));
                add("mme_bytes", "bytes", static_cast<double>(mme.bytes_sent + mme.bytes_recv));
                add("mme_exponentiations", "ops", static_cast<double>(mme.ops.exponentiations));
                add("mme_signatures", "ops", static_cast<double>(mme.ops.signatures));
                add("hss_msgs", "msgs", static_cast<double>(hss.msgs_sent + hss.msgs_recv));
                add("hss_bytes", "bytes", static_cast<double>(hss.bytes_sent + hss.bytes_recv));
                add("hss_av_builds", "ops", static_cast<double>(hss.ops.av_builds));
                add("hss_key_derivations", "ops", static_cast<double>(hss.ops.key_derivations));
                add("ue_exponentiations", "ops", static_cast<double>(ue.ops.exponentiations));
                add("logical_time", "ms", static_cast<double>(m.logical_time_ms));
            }
        }
    }
    return rows;
}

std::string to_csv(const std::vector<BenchRow>& rows)
{
    std::string out(kBenchCsvHeader);
    out += "\n";
    for (const auto& r : rows) {
        for (const auto* field : {&r.protocol, &r.metric, &r.unit})
            if (field->find_first_of(",\n\"") != std::string::npos)
                throw Error(ErrorCode::ConfigInvalid, "field needs quoting: '" + *field + "'");
        out += r.protocol + "," + std::to_string(r.subscribers) + "," + std::to_string(r.grid_n) + "," + r.metric +
               "," + r.unit + "," + format_double(r.value) + "," + (r.deterministic ? "true" : "false") + "\n";
    }
    return out;
}

std::vector<BenchRow> parse_csv(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || trim(line) != kBenchCsvHeader)
        throw Error(ErrorCode::ConfigInvalid, "missing CSV header");
    std::vector<BenchRow> rows;
    while (std::getline(in, line)) {
        if (trim(line).empty())
            continue;
        auto f = split(line, ',');
        if (f.size() != 7)
            throw Error(ErrorCode::ConfigInvalid, "expected 7 columns: '" + line + "'");
        if (f[6] != "true" && f[6] != "false")
            throw Error(ErrorCode::ConfigInvalid, "deterministic must be true or false");
        rows.push_back({f[0], static_cast<std::size_t>(to_u64("subscribers", f[1])),
                        static_cast<std::size_t>(to_u64("grid_n", f[2])), f[3], f[4], to_double("value", f[5]),
                        f[6] == "true"});
    }
    return rows;
}

}  // namespace ipgaka
