#include "ipgaka/analysis.hpp"

#include "ipgaka/error.hpp"
#include "ipgaka/keygen.hpp"

namespace ipgaka {

mpz_class pow2(unsigned k)
{
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
    return r;
}

GridComplexityParams GridComplexityParams::for_grid(std::size_t n, const ColumnWidths& widths)
{
    if (widths.size() != n)
        throw Error(ErrorCode::WidthCountMismatch, "need one width per column");
    GridComplexityParams p;
    p.mu_b = widths.bits;
    p.e_c = static_cast<unsigned long>(n);
    p.e_r = static_cast<unsigned long>(n);
    p.n_v = static_cast<unsigned long>(n);  // one null per row
    p.n = n;
    return p;
}

GridComplexityParams GridComplexityParams::defaults(std::size_t n)
{
    return for_grid(n, ColumnWidths::pyramid(n));
}

mpz_class position_time(unsigned mu_b, const GridComplexityParams& p)
{
    return pow2(mu_b) * p.e_c * p.e_r * p.e * p.n_v;
}

mpz_class breach_time(const GridComplexityParams& p)
{
    mpz_class sum = 0;
    for (unsigned b : p.mu_b)
        sum += position_time(b, p);
    return sum;
}

mpz_class total_compromise_time(std::span<const mpz_class> position_times)
{
    if (position_times.empty())
        throw Error(ErrorCode::EmptyInput, "no position times");
    mpz_class sum = 0;
    for (const auto& t : position_times)
        sum += t;
    return sum;
}

std::vector<mpz_class> all_position_times(const GridComplexityParams& p)
{
    std::vector<mpz_class> out;
    out.reserve(p.n * p.mu_b.size());
    for (std::size_t row = 0; row < p.n; ++row)
        for (unsigned b : p.mu_b)
            out.push_back(position_time(b, p));
    return out;
}

mpz_class key_lifetime(const mpz_class& breach_iterations, const mpz_class& ks_iterations,
                       const mpz_class& grid_complexity)
{
    return breach_iterations * ks_iterations * grid_complexity;
}

mpq_class throughput(const mpz_class& messages, const mpz_class& security_level, const mpz_class& lifetime)
{
    if (lifetime == 0)
        throw Error(ErrorCode::ZeroLifetime, "lifetime must be positive");
    mpq_class q(messages * security_level, lifetime);
    q.canonicalize();
    return q;
}

mpz_class unique_key_count(const mpz_class& e_c, const mpz_class& n_c, const mpz_class& n_mc, const mpz_class& e)
{
    if (e_c < 1)
        throw Error(ErrorCode::ConfigInvalid, "e_c must be at least 1");
    return (e_c - 1) * n_c * n_mc * e;
}

mpz_class grid_complexity(const ColumnWidths& widths)
{
    return pow2(static_cast<unsigned>(widths.size() * widths.total()));
}

mpz_class default_security_level()
{
    return pow2(kLteKeyBits);
}

LifetimeInputs default_lifetime_inputs(std::size_t n)
{
    const auto widths = ColumnWidths::pyramid(n);
    const auto grid = generate_grid(n, widths, 0);
    const auto ks = form_key_sequence(grid, 0);
    return {breach_time(GridComplexityParams::for_grid(n, widths)),
            mpz_class(static_cast<unsigned long>(ks.entries.size())), grid_complexity(widths)};
}

}  // namespace ipgaka
