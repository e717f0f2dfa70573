#include "doctest.h"

#include "ipgaka/bench.hpp"

using namespace ipgaka;

namespace {

BenchConfig tiny()
{
    BenchConfig cfg;
    cfg.subscribers = {1, 3};
    cfg.grid_sizes = {5, 7};
    cfg.keygen_reps = 5;
    cfg.prime_bits = 256;
    return cfg;
}

const BenchRow& find(const std::vector<BenchRow>& rows, std::string_view proto, std::size_t subs, std::size_t n,
                     std::string_view metric)
{
    for (const auto& r : rows)
        if (r.protocol == proto && r.subscribers == subs && r.grid_n == n && r.metric == metric)
            return r;
    throw std::runtime_error("row not found: " + std::string(metric));
}

}  // namespace

TEST_CASE("config parsing")
{
    auto cfg = parse_bench_config("protocols=ipg\nsubscribers=1, 20\ngrid_sizes=5,7,9\nsessions=3\n"
                                  "keygen_reps=11\nseed=9\nprime_bits=512\nlatency_ms=2\njitter_ms=1\ndrop_pct=0\n");
    CHECK(cfg.protocols == std::vector<ProtocolKind>{ProtocolKind::IpgAka});
    CHECK(cfg.subscribers == std::vector<std::size_t>{1, 20});
    CHECK(cfg.grid_sizes == std::vector<std::size_t>{5, 7, 9});
    CHECK(cfg.sessions == 3);
    CHECK(cfg.keygen_reps == 11);
    CHECK(cfg.seed == 9);
    CHECK(cfg.prime_bits == 512);
    CHECK(cfg.link == LinkConfig{2, 1, 0});

    for (const char* bad : {"subscribers=0", "grid_sizes=2", "sessions=0", "protocols=umts", "colour=red",
                            "seed=1\nseed=1", "subscribers=1,,2", "drop_pct=200"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_bench_config(bad), Error);
    }
}

TEST_CASE("benchmark rows")
{
    const auto cfg = tiny();
    const auto rows = run_benchmarks(cfg);
    const std::string ipg = "IPG-AKA", eps = "EPS-AKA";

    for (std::size_t subs : {1u, 3u}) {
        for (std::size_t n : {5u, 7u}) {
            CHECK(find(rows, ipg, subs, n, "authenticated").value == subs);
            CHECK(find(rows, eps, subs, n, "authenticated").value == subs);
            CHECK(find(rows, ipg, subs, n, "messages_per_session").value == 7);
            CHECK(find(rows, eps, subs, n, "messages_per_session").value == 6);
            CHECK(find(rows, ipg, subs, n, "air_bytes_per_session").value >
                  find(rows, eps, subs, n, "air_bytes_per_session").value);
            CHECK(find(rows, ipg, subs, n, "hss_av_builds").value == subs);
            CHECK(find(rows, ipg, subs, n, "mme_msgs").value == 7 * subs);
            CHECK(find(rows, eps, subs, n, "mme_msgs").value == 6 * subs);
            CHECK(find(rows, eps, subs, n, "mme_exponentiations").value == 0);
            CHECK_FALSE(find(rows, ipg, subs, n, "auth_time_per_session").deterministic);
        }
    }
    CHECK(find(rows, ipg, 1, 5, "keygen_time").unit == "us");
    CHECK(find(rows, ipg, 3, 7, "mme_bytes").value > find(rows, ipg, 1, 7, "mme_bytes").value);
}

TEST_CASE("count columns repeat exactly under the same seed")
{
    auto cfg = tiny();
    cfg.protocols = {ProtocolKind::EpsAka};
    auto strip = [](std::vector<BenchRow> rows) {
        std::erase_if(rows, [](const BenchRow& r) { return !r.deterministic; });
        return rows;
    };
    CHECK(strip(run_benchmarks(cfg)) == strip(run_benchmarks(cfg)));
}

TEST_CASE("CSV round trip")
{
    std::vector<BenchRow> rows{{"IPG-AKA", 10, 7, "keygen_time", "us", 12.345678901234567, false},
                               {"EPS-AKA", 1, 5, "mme_msgs", "msgs", 6, true},
                               {"EPS-AKA", 1, 5, "tiny", "s", 1e-300, true}};
    const auto csv = to_csv(rows);
    CHECK(csv.rfind("protocol,subscribers,grid_n,metric,unit,value,deterministic\n", 0) == 0);
    CHECK(csv.find("EPS-AKA,1,5,mme_msgs,msgs,6,true\n") != std::string::npos);
    CHECK(parse_csv(csv) == rows);

    auto real = run_benchmarks(tiny());
    CHECK(parse_csv(to_csv(real)) == real);

    CHECK_THROWS_AS(parse_csv("nope\n"), Error);
    CHECK_THROWS_AS(parse_csv(std::string(kBenchCsvHeader) + "\na,1,2,m,u,x,true\n"), Error);
    CHECK_THROWS_AS(parse_csv(std::string(kBenchCsvHeader) + "\na,1,2,m,u,1\n"), Error);
    CHECK_THROWS_AS(to_csv({{"a,b", 1, 1, "m", "u", 1, true}}), Error);
}

TEST_CASE("timing helpers return positive medians")
{
    CHECK(keygen_time_us(5, 3, 1) > 0);
    CHECK(derive_time_us(5, 3, 1) > 0);
}
