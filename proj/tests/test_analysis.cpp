#include "doctest.h"

#include "ipgaka/analysis.hpp"
#include "ipgaka/error.hpp"

using namespace ipgaka;

namespace {

mpz_class big(const char* dec)
{
    return mpz_class(dec, 10);
}

}  // namespace

TEST_CASE("single position cost")
{
    GridComplexityParams p = GridComplexityParams::defaults(5);
    // 2^32 * 25 * 26 * 5
    CHECK(position_time(32, p) == big("13958643712000"));
}

TEST_CASE("breach time over the default grids")
{
    CHECK(breach_time(GridComplexityParams::defaults(5)) == big("54953600000"));
    CHECK(breach_time(GridComplexityParams::defaults(7)) == big("38602930236416"));
}

TEST_CASE("breach time edge behaviour")
{
    auto p = GridComplexityParams::defaults(5);
    p.n_v = 0;
    CHECK(breach_time(p) == 0);

    GridComplexityParams one = GridComplexityParams::defaults(5);
    one.mu_b = {20};
    GridComplexityParams doubled = one;
    doubled.mu_b = {40};
    const mpz_class rest = one.e_c * one.e_r * one.e * one.n_v;
    const mpz_class f1 = breach_time(one) / rest;
    CHECK(breach_time(doubled) / rest == f1 * f1);

    CHECK_THROWS_AS(GridComplexityParams::for_grid(5, ColumnWidths::pyramid(7)), Error);
}

TEST_CASE("total compromise time")
{
    std::vector<mpz_class> v{1, 2, 3};
    CHECK(total_compromise_time(v) == 6);
    try {
        total_compromise_time({});
        FAIL("expected EmptyInput");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptyInput);
    }

    auto p = GridComplexityParams::defaults(5);
    const mpz_class pi = position_time(32, p);
    std::vector<mpz_class> copies(5, pi);
    CHECK(total_compromise_time(copies) == 5 * pi);

    // every cell of the 5x5 grid, summed independently
    auto cells = all_position_times(p);
    CHECK(cells.size() == 25);
    CHECK(total_compromise_time(cells) == big("274768000000"));
    CHECK(total_compromise_time(cells) == 5 * breach_time(p));
}

TEST_CASE("key lifetime")
{
    CHECK(key_lifetime(pow2(256), 1, 1) == pow2(256));
    CHECK(key_lifetime(2, 3, 7) == 42);
    CHECK(key_lifetime(3, 3, 7) > key_lifetime(2, 3, 7));
    CHECK(key_lifetime(2, 4, 7) > key_lifetime(2, 3, 7));
    CHECK(key_lifetime(2, 3, 8) > key_lifetime(2, 3, 7));

    auto in = default_lifetime_inputs(5);
    CHECK(in.grid_complexity == pow2(360));
    CHECK(in.ks_iterations > 0);
    CHECK(key_lifetime(in.breach_iterations, in.ks_iterations, in.grid_complexity) > pow2(256));
}

TEST_CASE("throughput is an exact rational")
{
    const mpz_class L = pow2(300) + 17;
    CHECK(throughput(7, L, L) == 7);
    CHECK(throughput(0, L, 5) == 0);
    CHECK(throughput(7, 10, 6) == mpq_class(35, 3));
    CHECK(throughput(7, pow2(256), 2 * pow2(200)) * 2 == throughput(7, pow2(256), pow2(200)));
    CHECK(throughput(7, pow2(256), 3 * pow2(200)).get_str() == "504403158265495552/3");
    try {
        throughput(1, 1, 0);
        FAIL("expected ZeroLifetime");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZeroLifetime);
    }
}

TEST_CASE("unique key count")
{
    const auto w = ColumnWidths::pyramid(5);
    CHECK(mirror_pair_count(w) == 2);
    CHECK(unique_key_count(5, 5, mirror_pair_count(w), 26) == 1040);
    CHECK(unique_key_count(1, 5, 2, 26) == 0);
    CHECK(unique_key_count(5, 5, 4, 26) == 2 * unique_key_count(5, 5, 2, 26));
    CHECK_THROWS_AS(unique_key_count(0, 5, 2, 26), Error);
}

TEST_CASE("grid complexity ordering")
{
    const auto c5 = grid_complexity(ColumnWidths::pyramid(5));
    const auto c7 = grid_complexity(ColumnWidths::pyramid(7));
    CHECK(c5 == pow2(360));
    CHECK(c7 == pow2(896));
    CHECK(c7 > c5);
    CHECK(c5 > default_security_level());
    CHECK(default_security_level() == pow2(256));
}
