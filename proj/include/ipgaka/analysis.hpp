#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <vector>

#include "ipgaka/cgrid.hpp"

namespace ipgaka {

/// Exact 2^k.
mpz_class pow2(unsigned k);

/// Inputs of the breach-time estimate. mu_b holds one exponent per column.
struct GridComplexityParams {
    std::vector<unsigned> mu_b;
    mpz_class e_c;      // elements per column
    mpz_class e_r;      // elements per row
    mpz_class e = 26;   // symbol alphabet
    mpz_class n_v;      // null cells
    std::size_t n = 0;  // grid dimension

    /// Square grid: e_c = e_r = n_v = n, mu_b = the column widths.
    static GridComplexityParams for_grid(std::size_t n, const ColumnWidths& widths);
    /// for_grid with the pyramid widths.
    static GridComplexityParams defaults(std::size_t n);
};

/// Cost of attacking one position of width mu_b: 2^mu_b * e_c * e_r * e * n_v.
mpz_class position_time(unsigned mu_b, const GridComplexityParams& p);

/// Sum of position_time over the columns.
mpz_class breach_time(const GridComplexityParams& p);

/// Sum of the per-position times. Throws EmptyInput.
mpz_class total_compromise_time(std::span<const mpz_class> position_times);

/// Per-position times for every cell of an n x n grid, row-major.
std::vector<mpz_class> all_position_times(const GridComplexityParams& p);

mpz_class key_lifetime(const mpz_class& breach_iterations, const mpz_class& ks_iterations,
                       const mpz_class& grid_complexity);

/// messages * security_level / lifetime, reduced. Throws ZeroLifetime.
mpq_class throughput(const mpz_class& messages, const mpz_class& security_level, const mpz_class& lifetime);

/// (e_c - 1) * n_c * n_mc * e. Throws ConfigInvalid when e_c < 1.
mpz_class unique_key_count(const mpz_class& e_c, const mpz_class& n_c, const mpz_class& n_mc, const mpz_class& e);

/// 2^(n * sum of widths): one guess per possible grid filling.
mpz_class grid_complexity(const ColumnWidths& widths);

/// Security level assumed by the throughput formula unless overridden.
mpz_class default_security_level();

/// Lifetime operands for a pyramid grid of size n: breach time, the number
/// of entries in the grid's key sequence, and the grid complexity.
struct LifetimeInputs {
    mpz_class breach_iterations;
    mpz_class ks_iterations;
    mpz_class grid_complexity;
};
LifetimeInputs default_lifetime_inputs(std::size_t n);

}  // namespace ipgaka
