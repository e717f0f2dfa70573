#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ipgaka/protocol.hpp"

namespace ipgaka {

struct BenchConfig {
    std::vector<ProtocolKind> protocols{ProtocolKind::EpsAka, ProtocolKind::IpgAka};
    std::vector<std::size_t> subscribers{1, 10, 50};
    std::vector<std::size_t> grid_sizes{5, 7, 9};
    std::size_t sessions = 1;      // per subscriber
    std::size_t keygen_reps = 101;  // timing samples per grid size; the median is reported
    std::uint64_t seed = 1;
    unsigned prime_bits = kDefaultPrimeBits;
    LinkConfig link{};
};

/// key=value lines: protocols, subscribers and grid_sizes take comma lists;
/// sessions, keygen_reps, seed, prime_bits, latency_ms, jitter_ms, drop_pct
/// take one value. Throws ConfigInvalid.
BenchConfig parse_bench_config(std::string_view text);

struct BenchRow {
    std::string protocol;
    std::size_t subscribers = 0;
    std::size_t grid_n = 0;
    std::string metric;
    std::string unit;
    double value = 0;
    bool deterministic = true;  // false for wall-clock rows

    bool operator==(const BenchRow&) const = default;
};

std::vector<BenchRow> run_benchmarks(const BenchConfig& cfg);

inline constexpr std::string_view kBenchCsvHeader = "protocol,subscribers,grid_n,metric,unit,value,deterministic";
std::string to_csv(const std::vector<BenchRow>& rows);
/// Inverse of to_csv. Throws ConfigInvalid on a malformed table.
std::vector<BenchRow> parse_csv(std::string_view text);

/// Median wall time in microseconds of going from a seed to an LTE-K:
/// grid generation, key-sequence formation and one derivation.
double keygen_time_us(std::size_t n, std::size_t reps, std::uint64_t seed);
/// Median wall time in microseconds of derive_lte_key alone.
double derive_time_us(std::size_t n, std::size_t reps, std::uint64_t seed);

/// One honest session per subscriber (times sessions) through a shared MME and HSS.
struct CellResult {
    std::size_t sessions = 0;
    std::size_t authenticated = 0;
    double wall_us_per_session = 0;
    Metrics metrics;
    std::uint64_t messages = 0;
};
CellResult run_cell(ProtocolKind kind, std::size_t subscribers, std::size_t grid_n, const BenchConfig& cfg);

}  // namespace ipgaka
