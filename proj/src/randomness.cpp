#include "ipgaka/randomness.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>

namespace ipgaka {

BitStream to_bits(std::span<const LteKey> keys)
{
    BitStream bits;
    bits.reserve(keys.size() * kLteKeyBits);
    for (const auto& k : keys)
        for (auto byte : k.bits)
            for (int b = 7; b >= 0; --b)
                bits.push_back(static_cast<std::uint8_t>((byte >> b) & 1));
    return bits;
}

double monobit_p_value(const BitStream& bits)
{
    const double n = static_cast<double>(bits.size());
    long long sum = 0;
    for (auto b : bits)
        sum += b ? 1 : -1;
    const double s_obs = std::fabs(static_cast<double>(sum)) / std::sqrt(n);
    return std::erfc(s_obs / std::sqrt(2.0));
}

double runs_p_value(const BitStream& bits)
{
    const double n = static_cast<double>(bits.size());
    std::size_t ones = 0;
    for (auto b : bits)
        ones += b;
    const double pi = static_cast<double>(ones) / n;
    if (std::fabs(pi - 0.5) >= 2.0 / std::sqrt(n))
        return 0.0;

    std::size_t runs = 1;
    for (std::size_t k = 1; k < bits.size(); ++k)
        if (bits[k] != bits[k - 1])
            ++runs;
    const double v = static_cast<double>(runs);
    const double num = std::fabs(v - 2.0 * n * pi * (1.0 - pi));
    const double den = 2.0 * std::sqrt(2.0 * n) * pi * (1.0 - pi);
    return std::erfc(num / den);
}

namespace {

// psi^2_m over overlapping m-bit patterns with wrap-around.
double psi_squared(const BitStream& bits, unsigned m)
{
    if (m == 0)
        return 0.0;
    const std::size_t n = bits.size();
    std::vector<std::uint64_t> counts(std::size_t{1} << m, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t pattern = 0;
        for (unsigned k = 0; k < m; ++k)
            pattern = pattern << 1 | bits[(i + k) % n];
        ++counts[pattern];
    }
    double sum = 0.0;
    for (auto c : counts)
        sum += static_cast<double>(c) * static_cast<double>(c);
    const double dn = static_cast<double>(n);
    return sum * static_cast<double>(counts.size()) / dn - dn;
}

}  // namespace

SerialPValues serial_p_values(const BitStream& bits, unsigned m)
{
    const double psi_m = psi_squared(bits, m);
    const double psi_m1 = psi_squared(bits, m - 1);
    const double psi_m2 = m >= 2 ? psi_squared(bits, m - 2) : 0.0;
    const double del1 = psi_m - psi_m1;
    const double del2 = psi_m - 2.0 * psi_m1 + psi_m2;
    const double p1 = boost::math::gamma_q(std::ldexp(1.0, static_cast<int>(m) - 2), del1 / 2.0);
    const double p2 = boost::math::gamma_q(std::ldexp(1.0, static_cast<int>(m) - 3), del2 / 2.0);
    return {p1, p2};
}

bool StatReport::all_pass() const
{
    return failures() == 0;
}

std::size_t StatReport::failures() const
{
    std::size_t f = 0;
    for (const auto& t : tests)
        f += !t.pass;
    return f;
}

const StatTest* StatReport::find(const std::string& name) const
{
    for (const auto& t : tests)
        if (t.name == name)
            return &t;
    return nullptr;
}

StatReport randomness_suite(std::span<const LteKey> keys, double alpha)
{
    if (keys.size() < kMinRandomnessSample)
        throw Error(ErrorCode::InsufficientSample,
                    std::to_string(keys.size()) + " keys, need " + std::to_string(kMinRandomnessSample));

    StatReport report;
    report.key_count = keys.size();
    const auto bits = to_bits(keys);

    long long sum = 0;
    for (auto b : bits)
        sum += b ? 1 : -1;
    const double s_obs = std::fabs(static_cast<double>(sum)) / std::sqrt(static_cast<double>(bits.size()));
    const double p_mono = monobit_p_value(bits);
    report.tests.push_back({"monobit", s_obs, p_mono, alpha, p_mono >= alpha});

    std::size_t runs = 1;
    for (std::size_t k = 1; k < bits.size(); ++k)
        runs += bits[k] != bits[k - 1];
    const double p_runs = runs_p_value(bits);
    report.tests.push_back({"runs", static_cast<double>(runs), p_runs, alpha, p_runs >= alpha});

    const auto serial = serial_p_values(bits, 2);
    const double p_serial = std::min(serial.p1, serial.p2);
    report.tests.push_back({"serial", psi_squared(bits, 2), p_serial, alpha, p_serial >= alpha});

    double total = 0.0;
    for (std::size_t k = 1; k < keys.size(); ++k) {
        total += static_cast<double>(hamming_distance(keys[k - 1].bits, keys[k].bits));
        report.consecutive_collisions += keys[k - 1].bits == keys[k].bits;
    }
    report.hamming_mean = total / static_cast<double>(keys.size() - 1);
    return report;
}

}  // namespace ipgaka
