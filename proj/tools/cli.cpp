#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "ipgaka/analysis.hpp"
#include "ipgaka/attacks.hpp"
#include "ipgaka/bench.hpp"
#include "ipgaka/protocol.hpp"

namespace ipgaka::cli {

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text))
        throw std::runtime_error("cannot write " + path);
}

std::uint64_t seed_of(const std::string& hex)
{
    auto v = parse_seed_hex(hex);
    if (!v)
        throw CLI::ValidationError("seed", "expected 1 to 16 hex digits, got '" + hex + "'");
    return *v;
}

std::string seed_hex(std::uint64_t v)
{
    return to_hex(be64(v));
}

const auto kSeedCheck = CLI::Validator(
    [](std::string& s) { return parse_seed_hex(s) ? std::string() : "expected 1 to 16 hex digits"; }, "HEX");

// ---- state files -----------------------------------------------------------
//
// Credentials are a function of (imsi, grid_n, provision_seed), so the files
// carry those plus the mutable counters. The HSS file also names the network
// (MME keys come from network_seed).

struct SubscriberFile {
    std::string magic;
    std::map<std::string, std::string> kv;

    std::string get(const std::string& key) const
    {
        auto it = kv.find(key);
        if (it == kv.end())
            throw Error(ErrorCode::MalformedStateFile, magic + ": missing '" + key + "'");
        return it->second;
    }
    std::uint64_t num(const std::string& key) const
    {
        const auto v = get(key);
        try {
            std::size_t used = 0;
            const auto n = std::stoull(v, &used, 10);
            if (used != v.size())
                throw std::invalid_argument(v);
            return n;
        } catch (const std::logic_error&) {
            throw Error(ErrorCode::MalformedStateFile, key + " is not a number");
        }
    }
    std::uint64_t hex(const std::string& key) const
    {
        auto v = parse_seed_hex(get(key));
        if (!v)
            throw Error(ErrorCode::MalformedStateFile, key + " is not hex");
        return *v;
    }
    std::string render() const
    {
        std::string out = magic + "\n";
        for (const auto& [k, v] : kv)
            out += k + "=" + v + "\n";
        return out;
    }
};

SubscriberFile parse_state(const std::string& text, const std::string& magic)
{
    SubscriberFile f;
    f.magic = magic;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != magic)
        throw Error(ErrorCode::MalformedStateFile, "expected header '" + magic + "'");
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::MalformedStateFile, "bad line '" + line + "'");
        f.kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return f;
}

constexpr const char* kUeMagic = "UESTATE v1";
constexpr const char* kHssMagic = "HSSSTATE v1";

// ---- analyze parameters ----------------------------------------------------

std::map<std::string, std::string> parse_params(const std::string& text)
{
    std::map<std::string, std::string> out;
    if (text.empty())
        return out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw Error(ErrorCode::ConfigInvalid, "expected k=v, got '" + item + "'");
        out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

// Decimal, or 2^k.
mpz_class parse_big(const std::string& key, const std::string& v)
{
    if (v.starts_with("2^")) {
        const auto e = v.substr(2);
        if (e.empty() || e.find_first_not_of("0123456789") != std::string::npos || e.size() > 7)
            throw Error(ErrorCode::ConfigInvalid, key + ": bad exponent");
        return pow2(static_cast<unsigned>(std::stoul(e)));
    }
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
        throw Error(ErrorCode::ConfigInvalid, key + ": expected a non-negative integer or 2^k");
    return mpz_class(v, 10);
}

class Params {
public:
    explicit Params(const std::string& text) : kv_(parse_params(text)) {}

    bool has(const std::string& k) const { return kv_.count(k) != 0; }
    mpz_class big(const std::string& k, const mpz_class& fallback)
    {
        used_.insert(k);
        auto it = kv_.find(k);
        return it == kv_.end() ? fallback : parse_big(k, it->second);
    }
    std::size_t size(const std::string& k, std::size_t fallback)
    {
        return big(k, fallback).get_ui();
    }
    std::vector<unsigned> widths(const std::string& k, std::vector<unsigned> fallback)
    {
        used_.insert(k);
        auto it = kv_.find(k);
        if (it == kv_.end())
            return fallback;
        std::vector<unsigned> out;
        std::istringstream in(it->second);
        std::string w;
        while (std::getline(in, w, ':'))
            out.push_back(static_cast<unsigned>(parse_big(k, w).get_ui()));
        return out;
    }
    void reject_unused() const
    {
        for (const auto& [k, v] : kv_)
            if (!used_.count(k))
                throw Error(ErrorCode::ConfigInvalid, "unknown parameter '" + k + "'");
    }

private:
    std::map<std::string, std::string> kv_;
    std::set<std::string> used_;
};

std::string analyze(const std::string& what, const std::string& text)
{
    Params p(text);
    const std::size_t n = p.size("n", 5);
    if (what == "breach") {
        GridComplexityParams g;
        g.n = n;
        g.mu_b = p.widths("widths", ColumnWidths::pyramid(n).bits);
        g.e_c = p.big("e_c", static_cast<unsigned long>(n));
        g.e_r = p.big("e_r", static_cast<unsigned long>(n));
        g.e = p.big("e", 26);
        g.n_v = p.big("n_v", static_cast<unsigned long>(n));
        p.reject_unused();
        return breach_time(g).get_str();
    }
    if (what == "lifetime") {
        const bool all_given = p.has("breach") && p.has("ks") && p.has("grid");
        LifetimeInputs d = all_given ? LifetimeInputs{} : default_lifetime_inputs(n);
        auto b = p.big("breach", d.breach_iterations);
        auto k = p.big("ks", d.ks_iterations);
        auto c = p.big("grid", d.grid_complexity);
        p.reject_unused();
        return key_lifetime(b, k, c).get_str();
    }
    if (what == "throughput") {
        auto msgs = p.big("messages", 7);
        auto sec = p.big("security", default_security_level());
        mpz_class life;
        if (p.has("lifetime")) {
            life = p.big("lifetime", 0);
        } else {
            auto d = default_lifetime_inputs(n);
            life = key_lifetime(d.breach_iterations, d.ks_iterations, d.grid_complexity);
        }
        p.reject_unused();
        return throughput(msgs, sec, life).get_str();
    }
    if (what == "keys") {
        const auto w = ColumnWidths::pyramid(n);
        auto e_c = p.big("e_c", static_cast<unsigned long>(n));
        auto n_c = p.big("n_c", static_cast<unsigned long>(n));
        auto n_mc = p.big("n_mc", static_cast<unsigned long>(mirror_pair_count(w)));
        auto e = p.big("e", 26);
        p.reject_unused();
        return unique_key_count(e_c, n_c, n_mc, e).get_str();
    }
    throw CLI::ValidationError("analyze", "unknown quantity '" + what + "'");
}

// ---- ciphertext file -------------------------------------------------------

std::string render_ciphertexts(const std::vector<ImsiCiphertext>& cts, std::size_t width)
{
    std::string out = "IMSICT v1\nwidth=" + std::to_string(width) + "\n";
    for (const auto& c : cts)
        out += "block=" + std::to_string(c.block_index) + " " + to_hex(encode_big(c.r, width)) + " " +
               to_hex(encode_big(c.t, width)) + "\n";
    return out;
}

std::vector<ImsiCiphertext> parse_ciphertexts(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "IMSICT v1")
        throw Error(ErrorCode::MalformedMessage, "expected header 'IMSICT v1'");
    std::vector<ImsiCiphertext> out;
    while (std::getline(in, line)) {
        if (line.empty() || line.starts_with("width="))
            continue;
        if (!line.starts_with("block="))
            throw Error(ErrorCode::MalformedMessage, "bad line '" + line + "'");
        std::istringstream fields(line.substr(6));
        std::string idx, r, t;
        if (!(fields >> idx >> r >> t))
            throw Error(ErrorCode::MalformedMessage, "bad block line");
        auto rb = from_hex(r);
        auto tb = from_hex(t);
        if (!rb || !tb || idx.find_first_not_of("0123456789") != std::string::npos)
            throw Error(ErrorCode::MalformedMessage, "bad block line");
        out.push_back({decode_big(*rb), decode_big(*tb), static_cast<std::uint32_t>(std::stoul(idx))});
    }
    return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"IPG-AKA reference implementation and test harness", "ipgaka"};
    app.require_subcommand(1);
    std::function<void()> action;

    // gen-grid
    struct {
        std::size_t n = 5;
        std::string seed = "1", out;
        std::vector<unsigned> widths;
    } gg;
    auto* gen_grid = app.add_subcommand("gen-grid", "Generate and validate a C-GRID");
    gen_grid->add_option("--n", gg.n, "Grid dimension")->check(CLI::Range(3, 64));
    gen_grid->add_option("--seed", gg.seed, "Seed (hex)")->required()->check(kSeedCheck);
    gen_grid->add_option("--widths", gg.widths, "Column widths in bits")->delimiter(',');
    gen_grid->add_option("--out", gg.out, "Grid file to write")->required();
    gen_grid->callback([&] {
        action = [&] {
            auto widths = gg.widths.empty() ? ColumnWidths::pyramid(gg.n) : ColumnWidths{gg.widths};
            auto grid = generate_grid(gg.n, widths, seed_of(gg.seed));
            write_file(gg.out, serialize_grid(grid));
            out << "grid_id=" << grid.grid_id() << "\n"
                << "capacity_bits=" << capacity_bits(grid) << "\n"
                << "usable_bits=" << usable_bits(grid) << "\n";
        };
    });

    // gen-kseq
    struct {
        std::string grid, seed, out;
    } gk;
    auto* gen_kseq = app.add_subcommand("gen-kseq", "Form a key sequence for a grid");
    gen_kseq->add_option("--grid", gk.grid, "Grid file")->required()->check(CLI::ExistingFile);
    gen_kseq->add_option("--seed", gk.seed, "Seed (hex)")->required()->check(kSeedCheck);
    gen_kseq->add_option("--out", gk.out, "Key sequence file to write")->required();
    gen_kseq->callback([&] {
        action = [&] {
            auto grid = deserialize_grid(read_file(gk.grid));
            auto ks = form_key_sequence(grid, seed_of(gk.seed));
            write_file(gk.out, serialize_key_sequence(ks));
            out << "sequence_id=" << ks.sequence_id << "\nentries=" << ks.entries.size() << "\n";
        };
    });

    // derive-key
    struct {
        std::string grid, kseq, feeder_seed;
        std::uint64_t epoch = 0;
        bool cells = false;
    } dk;
    auto* derive = app.add_subcommand("derive-key", "Derive the LTE-K for an epoch");
    derive->add_option("--grid", dk.grid, "Grid file")->required()->check(CLI::ExistingFile);
    derive->add_option("--kseq", dk.kseq, "Key sequence file")->required()->check(CLI::ExistingFile);
    derive->add_option("--feeder-seed", dk.feeder_seed, "Key feeder seed (hex)")->required()->check(kSeedCheck);
    derive->add_option("--epoch", dk.epoch, "Epoch");
    derive->add_flag("--cells", dk.cells, "Also list the cells read");
    derive->callback([&] {
        action = [&] {
            auto grid = deserialize_grid(read_file(dk.grid));
            auto ks = deserialize_key_sequence(read_file(dk.kseq));
            DerivationTrace trace;
            auto key = derive_lte_key(grid, ks, seed_of(dk.feeder_seed), dk.epoch, &trace);
            out << key.hex() << "\n";
            if (dk.cells)
                for (auto [r, c] : trace.cells)
                    out << "cell " << r << " " << c << "\n";
        };
    });

    // imsi gen-params | encrypt | decrypt
    auto* imsi = app.add_subcommand("imsi", "ElGamal IMSI concealment");
    imsi->require_subcommand(1);
    struct {
        unsigned bits = kDefaultPrimeBits;
        std::string seed, params, secret, imsi, in, out;
    } ic;
    auto* gp = imsi->add_subcommand("gen-params", "Generate group parameters and a secret");
    gp->add_option("--bits", ic.bits, "Modulus size")->check(CLI::Range(16u, 4096u));
    gp->add_option("--seed", ic.seed, "Seed (hex)")->required()->check(kSeedCheck);
    gp->add_option("--params-out", ic.params, "Public parameter file")->required();
    gp->add_option("--secret-out", ic.secret, "Secret key file")->required();
    gp->callback([&] {
        action = [&] {
            auto [params, sk] = gen_params(ic.bits, seed_of(ic.seed));
            write_file(ic.params, serialize_params(params));
            write_file(ic.secret, serialize_secret(sk));
            out << "bits=" << mpz_sizeinbase(params.p.get_mpz_t(), 2) << "\n";
        };
    });
    auto* enc = imsi->add_subcommand("encrypt", "Conceal an IMSI");
    enc->add_option("--params", ic.params, "Public parameter file")->required()->check(CLI::ExistingFile);
    enc->add_option("--imsi", ic.imsi, "15-digit IMSI")->required();
    enc->add_option("--seed", ic.seed, "Ephemeral seed (hex)")->required()->check(kSeedCheck);
    enc->add_option("--out", ic.out, "Ciphertext file (default: stdout)");
    enc->callback([&] {
        action = [&] {
            auto params = deserialize_params(read_file(ic.params));
            Drbg rng("imsi-encrypt", seed_of(ic.seed));
            auto text = render_ciphertexts(conceal_imsi(params, Imsi::parse(ic.imsi), rng), params.width());
            if (ic.out.empty())
                out << text;
            else
                write_file(ic.out, text);
        };
    });
    auto* dec = imsi->add_subcommand("decrypt", "Reveal a concealed IMSI");
    dec->add_option("--params", ic.params, "Public parameter file")->required()->check(CLI::ExistingFile);
    dec->add_option("--secret", ic.secret, "Secret key file")->required()->check(CLI::ExistingFile);
    dec->add_option("--in", ic.in, "Ciphertext file")->required()->check(CLI::ExistingFile);
    dec->callback([&] {
        action = [&] {
            auto params = deserialize_params(read_file(ic.params));
            auto sk = deserialize_secret(read_file(ic.secret));
            out << reveal_imsi(params, sk, parse_ciphertexts(read_file(ic.in))).digits() << "\n";
        };
    });

    // provision
    struct {
        std::string imsi = "001010123456789", seed, network_seed, ue_out, hss_out;
        std::size_t n = 5;
        unsigned prime_bits = kDefaultPrimeBits;
        std::uint32_t snid = 0x00f110;
    } pv;
    auto* provision = app.add_subcommand("provision", "Write matching UE and HSS state files");
    provision->add_option("--imsi", pv.imsi, "15-digit IMSI");
    provision->add_option("--n", pv.n, "Grid dimension")->check(CLI::Range(3, 64));
    provision->add_option("--seed", pv.seed, "Subscriber provisioning seed (hex)")->required()->check(kSeedCheck);
    provision->add_option("--network-seed", pv.network_seed, "Network seed (hex, default: --seed)")->check(kSeedCheck);
    provision->add_option("--prime-bits", pv.prime_bits, "ElGamal modulus size")->check(CLI::Range(16u, 4096u));
    provision->add_option("--ue-out", pv.ue_out, "UE state file")->required();
    provision->add_option("--hss-out", pv.hss_out, "HSS state file")->required();
    provision->callback([&] {
        action = [&] {
            const auto imsi_v = Imsi::parse(pv.imsi);
            const auto seed = seed_of(pv.seed);
            const auto net_seed = pv.network_seed.empty() ? seed : seed_of(pv.network_seed);
            auto cred = provision_credentials(imsi_v, pv.n, seed);  // validates n
            SubscriberFile ue{kUeMagic, {}}, hss{kHssMagic, {}};
            for (auto* f : {&ue, &hss}) {
                f->kv["imsi"] = imsi_v.digits();
                f->kv["grid_n"] = std::to_string(pv.n);
                f->kv["provision_seed"] = seed_hex(seed);
                f->kv["epoch"] = "0";
                f->kv["sqn"] = "0";
                f->kv["snid"] = std::to_string(pv.snid);
            }
            ue.kv["authority_public"] = to_hex(AuthorityKey::from_seed(net_seed).public_key);
            hss.kv["network_seed"] = seed_hex(net_seed);
            hss.kv["prime_bits"] = std::to_string(pv.prime_bits);
            write_file(pv.ue_out, ue.render());
            write_file(pv.hss_out, hss.render());
            out << "grid_id=" << cred.grid->grid_id() << "\nsequence_id=" << cred.ks.sequence_id << "\n";
        };
    });

    // run-session
    struct {
        std::string protocol = "ipg", ue, hss;
        bool trace = false, keys = false, dry_run = false;
        std::uint64_t latency = 5;
    } rs;
    auto* run = app.add_subcommand("run-session", "Run one authentication between provisioned parties");
    run->add_option("--protocol", rs.protocol, "ipg or eps")->check(CLI::IsMember({"ipg", "eps"}));
    run->add_option("--ue", rs.ue, "UE state file")->required()->check(CLI::ExistingFile);
    run->add_option("--hss", rs.hss, "HSS state file")->required()->check(CLI::ExistingFile);
    run->add_option("--latency-ms", rs.latency, "One-way link latency");
    run->add_flag("--trace", rs.trace, "Print the wire trace");
    run->add_flag("--keys", rs.keys, "Print the derived key tree");
    run->add_flag("--dry-run", rs.dry_run, "Do not write updated state back");
    int session_exit = kExitOk;
    run->callback([&] {
        action = [&] {
            auto ue_f = parse_state(read_file(rs.ue), kUeMagic);
            auto hss_f = parse_state(read_file(rs.hss), kHssMagic);
            const auto kind = parse_protocol(rs.protocol);

            WorldConfig cfg;
            cfg.seed = hss_f.hex("network_seed");
            cfg.grid_n = hss_f.num("grid_n");
            cfg.prime_bits = static_cast<unsigned>(hss_f.num("prime_bits"));
            cfg.snid = static_cast<std::uint32_t>(hss_f.num("snid"));
            cfg.imsi = hss_f.get("imsi");
            cfg.air.latency_ms = cfg.core.latency_ms = rs.latency;
            World w = make_world(cfg);

            auto load = [](const SubscriberFile& f) {
                auto c = provision_credentials(Imsi::parse(f.get("imsi")), f.num("grid_n"), f.hex("provision_seed"));
                c.epoch = f.num("epoch");
                return c;
            };
            const auto hss_sqn = hss_f.num("sqn");
            w.hss.subscribers.clear();
            w.hss.subscribers[cfg.imsi] = HssRecord{load(hss_f), hss_sqn};
            w.hss.rng = Drbg("hss-" + std::to_string(hss_sqn), cfg.seed);
            w.ue.cred = load(ue_f);
            w.ue.sqn.highest = ue_f.num("sqn");
            w.ue.snid = static_cast<std::uint32_t>(ue_f.num("snid"));
            auto pub = from_hex(ue_f.get("authority_public"));
            if (!pub || pub->size() != w.ue.authority_public.size())
                throw Error(ErrorCode::MalformedStateFile, "authority_public must be 32 bytes of hex");
            std::copy(pub->begin(), pub->end(), w.ue.authority_public.begin());
            w.ue.rng = Drbg("ue-" + std::to_string(w.ue.sqn.highest), ue_f.hex("provision_seed"));

            auto r = run_session(kind, w.ue, w.mme, w.hss, w.net);
            out << "protocol=" << protocol_name(kind) << "\n"
                << "outcome=" << r.outcome() << "\n"
                << "messages=" << r.message_count() << "\n"
                << "air_messages=" << r.air_message_count() << "\n";
            if (r.mme_k_asme)
                out << "k_asme=" << to_hex(*r.mme_k_asme) << "\n";
            if (rs.keys && r.mme_tree)
                out << r.mme_tree->render();
            if (rs.trace)
                out << render_trace(r.trace);

            if (!rs.dry_run) {
                ue_f.kv["epoch"] = std::to_string(w.ue.cred.epoch);
                ue_f.kv["sqn"] = std::to_string(w.ue.sqn.highest);
                const auto& rec = w.hss.subscribers.at(cfg.imsi);
                hss_f.kv["epoch"] = std::to_string(rec.cred.epoch);
                hss_f.kv["sqn"] = std::to_string(rec.sqn);
                write_file(rs.ue, ue_f.render());
                write_file(rs.hss, hss_f.render());
            }
            if (!r.authenticated) {
                err << "error: " << reason_name(r.reason.value_or(RejectReason::DeliveryFailure))
                    << ": session rejected\n";
                session_exit = kExitDomain;
            }
        };
    });

    // attack
    struct {
        std::string scenario, protocol = "ipg", seed = "1", config;
        unsigned prime_bits = kDefaultPrimeBits;
    } at;
    auto* attack = app.add_subcommand("attack", "Run an attack scenario");
    attack->add_option("--scenario", at.scenario, "Scenario name");
    attack->add_option("--protocol", at.protocol, "ipg or eps")->check(CLI::IsMember({"ipg", "eps"}));
    attack->add_option("--seed", at.seed, "Seed (hex)")->check(kSeedCheck);
    attack->add_option("--config", at.config, "Scenario file (key=value)")->check(CLI::ExistingFile);
    attack->add_option("--prime-bits", at.prime_bits, "ElGamal modulus size")->check(CLI::Range(16u, 4096u));
    attack->callback([&] {
        action = [&] {
            WorldConfig wc;
            std::string scenario = at.scenario;
            ProtocolKind kind = parse_protocol(at.protocol);
            if (!at.config.empty()) {
                auto sc = parse_scenario_config(read_file(at.config));
                wc = sc.world();
                if (scenario.empty())
                    scenario = sc.scenario;
                if (attack->count("--protocol") == 0)
                    kind = sc.protocol;
            } else {
                wc.seed = seed_of(at.seed);
            }
            if (scenario.empty())
                throw CLI::ValidationError("--scenario", "no scenario given");
            wc.prime_bits = at.prime_bits;
            out << run_attack_scenario(scenario, kind, wc).render();
        };
    });

    // bench
    struct {
        std::string config, out;
    } bc;
    auto* bench = app.add_subcommand("bench", "Run the benchmark grid and write CSV");
    bench->add_option("--config", bc.config, "Benchmark config (key=value)")->check(CLI::ExistingFile);
    bench->add_option("--out", bc.out, "CSV file (default: stdout)");
    bench->callback([&] {
        action = [&] {
            auto cfg = bc.config.empty() ? BenchConfig{} : parse_bench_config(read_file(bc.config));
            auto csv = to_csv(run_benchmarks(cfg));
            if (bc.out.empty())
                out << csv;
            else
                write_file(bc.out, csv);
        };
    });

    // analyze
    struct {
        std::string what, params;
    } an;
    auto* analyze_cmd = app.add_subcommand("analyze", "Evaluate a complexity formula exactly");
    analyze_cmd->add_option("quantity", an.what, "breach | lifetime | throughput | keys")
        ->required()
        ->check(CLI::IsMember({"breach", "lifetime", "throughput", "keys"}));
    analyze_cmd->add_option("--params", an.params, "Comma-separated k=v overrides");
    analyze_cmd->callback([&] { action = [&] { out << analyze(an.what, an.params) << "\n"; }; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (action)
            action();
    } catch (const CLI::ValidationError& e) {
        err << "usage: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        err << "error: IoError: " << e.what() << "\n";
        return kExitDomain;
    }
    return session_exit;
}

}  // namespace ipgaka::cli
