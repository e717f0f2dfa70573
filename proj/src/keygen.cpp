#include "ipgaka/keygen.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>

#include "ipgaka/primitives.hpp"

namespace ipgaka {

std::vector<unsigned> KeySequence::bits_per_entry(const CGrid& grid) const
{
    std::vector<unsigned> out;
    out.reserve(entries.size());
    for (auto c : entries)
        out.push_back(c >= 1 && c <= grid.n() ? grid.width(c) : 0);
    return out;
}

KeySequence make_key_sequence(std::vector<std::size_t> entries, std::string grid_id)
{
    ByteWriter w;
    w.raw(bytes_of(grid_id));
    for (auto e : entries)
        w.u16(static_cast<std::uint16_t>(e));
    auto digest = sha256(w.bytes());
    return KeySequence{std::move(entries), std::move(grid_id), to_hex(ByteView(digest).first(8))};
}

std::vector<std::size_t> effective_columns(const KeySequence& ks, const CGrid& grid)
{
    const std::size_t n = grid.n();
    std::vector<std::size_t> eff;
    eff.reserve(ks.entries.size());
    for (std::size_t k = 0; k < ks.entries.size(); ++k) {
        std::size_t col = ks.entries[k];
        if (k > 0 && col >= 1 && col <= n && grid.width(col) == grid.width(eff.back()))
            col = n + 1 - eff.back();
        eff.push_back(col);
    }
    return eff;
}

void check_key_sequence(const KeySequence& ks, const CGrid& grid)
{
    const std::size_t n = grid.n();
    if (!ks.grid_id.empty() && ks.grid_id != grid.grid_id())
        throw Error(ErrorCode::SequenceGridMismatch,
                    "sequence formed for grid " + ks.grid_id + ", not " + grid.grid_id());
    unsigned total = 0;
    for (auto c : ks.entries) {
        if (c < 1 || c > n)
            throw Error(ErrorCode::SequenceGridMismatch, "column " + std::to_string(c) + " outside grid");
        total += grid.width(c);
    }
    if (total != kLteKeyBits)
        throw Error(ErrorCode::SequenceGridMismatch, "entries cover " + std::to_string(total) + " bits");

    std::vector<std::size_t> load(n + 1, 0);
    for (auto c : effective_columns(ks, grid))
        if (++load[c] > n - 1)
            throw Error(ErrorCode::ColumnExhausted, "column " + std::to_string(c) + " selected more than n-1 times");
}

namespace {

struct WidthClass {
    unsigned width;
    std::vector<std::size_t> columns;
    std::size_t cap;
};

bool compose(const std::vector<WidthClass>& classes, std::size_t idx, unsigned remaining,
             std::vector<std::size_t>& counts)
{
    if (remaining == 0) {
        std::fill(counts.begin() + static_cast<std::ptrdiff_t>(idx), counts.end(), 0);
        return true;
    }
    if (idx == classes.size())
        return false;
    const auto& cls = classes[idx];
    std::size_t most = std::min<std::size_t>(cls.cap, remaining / cls.width);
    for (std::size_t take = most + 1; take-- > 0;) {
        counts[idx] = take;
        if (compose(classes, idx + 1, remaining - static_cast<unsigned>(take * cls.width), counts))
            return true;
    }
    return false;
}

// Lays out the shuffled widths so the mirror-adjusted load of every column
// stays within n-1. Returns false if the greedy choice paints itself into a corner.
bool assign_columns(const CGrid& grid, const std::vector<unsigned>& order,
                    const std::map<unsigned, std::vector<std::size_t>>& columns_of, Drbg& rng,
                    std::vector<std::size_t>& out)
{
    const std::size_t n = grid.n();
    std::vector<std::size_t> load(n + 1, 0);
    out.clear();
    std::size_t k = 0;
    while (k < order.size()) {
        std::size_t run = 1;
        while (k + run < order.size() && order[k + run] == order[k])
            ++run;

        const auto& candidates = columns_of.at(order[k]);
        std::vector<std::size_t> best;
        std::size_t best_peak = SIZE_MAX;
        for (auto c : candidates) {
            std::size_t m = n + 1 - c;
            std::size_t lc = load[c], lm = load[m];
            if (m == c) {
                lc += run;
                lm = lc;
            } else {
                lc += (run + 1) / 2;
                lm += run / 2;
            }
            std::size_t peak = std::max(lc, lm);
            if (peak > n - 1)
                continue;
            if (peak < best_peak) {
                best_peak = peak;
                best.clear();
            }
            if (peak == best_peak)
                best.push_back(c);
        }
        if (best.empty())
            return false;
        std::size_t col = best[rng.uniform(best.size())];
        for (std::size_t r = 0; r < run; ++r) {
            out.push_back(col);
            ++load[col];
            col = n + 1 - col;
        }
        k += run;
    }
    return true;
}

}  // namespace

KeySequence form_key_sequence(const CGrid& grid, std::uint64_t seed)
{
    if (usable_bits(grid) < kLteKeyBits)
        throw Error(ErrorCode::GridTooSmall, std::to_string(usable_bits(grid)) + " usable bits");

    const std::size_t n = grid.n();
    std::map<unsigned, std::vector<std::size_t>> columns_of;
    for (std::size_t c = 1; c <= n; ++c)
        columns_of[grid.width(c)].push_back(c);

    std::vector<WidthClass> classes;
    for (auto it = columns_of.rbegin(); it != columns_of.rend(); ++it)
        classes.push_back({it->first, it->second, (n - 1) * it->second.size()});

    std::vector<std::size_t> counts(classes.size(), 0);
    if (!compose(classes, 0, kLteKeyBits, counts))
        throw Error(ErrorCode::NoCompositionFound, "widths cannot tile 256 bits under per-column caps");

    std::vector<unsigned> order;
    for (std::size_t i = 0; i < classes.size(); ++i)
        order.insert(order.end(), counts[i], classes[i].width);

    Drbg rng("kseq", seed);
    std::vector<std::size_t> entries;
    for (int attempt = 0; attempt < 64; ++attempt) {
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[rng.uniform(i)]);
        if (assign_columns(grid, order, columns_of, rng, entries))
            return make_key_sequence(std::move(entries), grid.grid_id());
    }
    throw Error(ErrorCode::NoCompositionFound, "could not place entries within column caps");
}

std::string serialize_key_sequence(const KeySequence& ks)
{
    std::ostringstream os;
    os << "KSEQ v1\n";
    os << "grid=" << ks.grid_id << "\n";
    os << "entries=";
    for (std::size_t i = 0; i < ks.entries.size(); ++i)
        os << (i ? "," : "") << ks.entries[i];
    os << "\n";
    return os.str();
}

KeySequence deserialize_key_sequence(std::string_view text)
{
    auto bad = [](const std::string& why) { return Error(ErrorCode::MalformedKeySequenceFile, why); };
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        auto pos = text.find('\n', start);
        if (pos == std::string_view::npos)
            pos = text.size();
        lines.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    if (lines.size() != 3 || lines[0] != "KSEQ v1" || !lines[1].starts_with("grid=") ||
        !lines[2].starts_with("entries="))
        throw bad("expected KSEQ v1 / grid= / entries= lines");

    std::vector<std::size_t> entries;
    std::string_view list = lines[2].substr(8);
    while (!list.empty()) {
        auto comma = list.find(',');
        auto tok = list.substr(0, comma);
        std::size_t v = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || p != tok.data() + tok.size() || tok.empty())
            throw bad("bad entry '" + std::string(tok) + "'");
        entries.push_back(v);
        if (comma == std::string_view::npos)
            break;
        list.remove_prefix(comma + 1);
        if (list.empty())
            throw bad("trailing comma");
    }
    if (entries.empty())
        throw bad("no entries");
    return make_key_sequence(std::move(entries), std::string(lines[1].substr(5)));
}

FeederOutput feeder_step(const FeederState& s)
{
    FeederState next = s;
    next.y = s.y * s.x + (s.y + s.x);
    std::uint64_t x_raw = (s.x * next.y + s.i) * (1024 + s.i) * (s.i * s.j);
    next.x = x_raw != 0 ? x_raw : kFeederReseed;
    if (++next.j > s.inner_bound) {
        next.j = 1;
        ++next.i;
    }
    // The low two bits of x_raw depend only on the low two bits of x, y, i, j
    // (ring arithmetic mod 4), so x_raw mod 4 admits at most four sequences per
    // derivation. The top two bits see every bit of the product.
    return {next, static_cast<unsigned>(x_raw >> 62)};
}

FeederState feeder_init(std::uint64_t feeder_seed, std::uint64_t epoch, std::size_t inner_bound)
{
    auto key = be64(feeder_seed);
    auto e = be64(epoch);
    auto out = prf(key, "feeder-init", {e});
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < 8; ++i)
        v = v << 8 | out[i];
    FeederState s;
    s.x = (v & 0xffffffffULL) | 1;
    s.y = (v >> 32) | 1;
    s.i = 1;
    s.j = 1;
    s.inner_bound = inner_bound;
    return s;
}

LteKey derive_lte_key(const CGrid& grid, const KeySequence& ks, std::uint64_t feeder_seed, std::uint64_t epoch,
                      DerivationTrace* trace)
{
    check_key_sequence(ks, grid);
    const std::size_t n = grid.n();
    const auto columns = effective_columns(ks, grid);

    LteKey key;
    key.grid_id = grid.grid_id();
    key.sequence_id = ks.sequence_id;
    key.epoch = epoch;

    std::vector<bool> consumed(n * n, false);
    FeederState state = feeder_init(feeder_seed, epoch, n);
    std::size_t offset = 0;
    for (auto col : columns) {
        auto [next, selector] = feeder_step(state);
        state = next;

        bool fetched = false;
        for (std::size_t step = 0; step < n; ++step) {
            std::size_t row = (selector + step) % n + 1;
            std::size_t idx = (row - 1) * n + (col - 1);
            const Cell& cell = grid.at(row, col);
            if (cell.is_null() || consumed[idx])
                continue;
            consumed[idx] = true;
            std::copy(cell.payload.begin(), cell.payload.end(), key.bits.begin() + static_cast<std::ptrdiff_t>(offset));
            offset += cell.payload.size();
            if (trace) {
                trace->cells.emplace_back(row, col);
                trace->selectors.push_back(selector);
                trace->max_probes = std::max(trace->max_probes, step + 1);
            }
            fetched = true;
            break;
        }
        if (!fetched)
            throw Error(ErrorCode::ColumnExhausted, "no usable cell left in column " + std::to_string(col));
    }
    return key;
}

bool key_refresh_due(std::uint64_t epoch_started_at, std::uint64_t ttl, std::uint64_t now)
{
    if (ttl == 0)
        throw Error(ErrorCode::ConfigInvalid, "key ttl must be positive");
    return now >= epoch_started_at && now - epoch_started_at >= ttl;
}

}  // namespace ipgaka
