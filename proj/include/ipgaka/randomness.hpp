#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ipgaka/keygen.hpp"

namespace ipgaka {

/// One bit per element (0 or 1).
using BitStream = std::vector<std::uint8_t>;

BitStream to_bits(std::span<const LteKey> keys);

// Frequency tests in the style of NIST SP 800-22; each returns a p-value.
double monobit_p_value(const BitStream& bits);
/// Returns 0 when the prerequisite frequency check fails.
double runs_p_value(const BitStream& bits);

struct SerialPValues {
    double p1;
    double p2;
};
SerialPValues serial_p_values(const BitStream& bits, unsigned m);

struct StatTest {
    std::string name;
    double statistic;
    double p_value;
    double alpha;
    bool pass;
};

struct StatReport {
    std::vector<StatTest> tests;
    std::size_t key_count = 0;
    /// Mean Hamming distance between consecutive keys (about 128 when independent).
    double hamming_mean = 0.0;
    std::size_t consecutive_collisions = 0;

    bool all_pass() const;
    std::size_t failures() const;
    const StatTest* find(const std::string& name) const;
};

inline constexpr std::size_t kMinRandomnessSample = 100;

/// Monobit, runs and serial (m = 2) over the concatenated keys. Throws
/// InsufficientSample below kMinRandomnessSample keys.
StatReport randomness_suite(std::span<const LteKey> keys, double alpha = 0.01);

}  // namespace ipgaka
