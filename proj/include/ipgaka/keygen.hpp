#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ipgaka/cgrid.hpp"

namespace ipgaka {

inline constexpr unsigned kLteKeyBits = 256;

/// Pre-shared column-selection pattern. Entries are 1-based column indices
/// whose widths sum to exactly 256 bits.
struct KeySequence {
    std::vector<std::size_t> entries;
    std::string grid_id;
    std::string sequence_id;

    std::vector<unsigned> bits_per_entry(const CGrid& grid) const;
    bool operator==(const KeySequence&) const = default;
};

/// Builds a sequence and stamps its identifier.
KeySequence make_key_sequence(std::vector<std::size_t> entries, std::string grid_id);

/// Columns actually read once the mirror rule is applied: after a fetch from
/// column i, an immediately following entry of equal width reads column n+1-i.
std::vector<std::size_t> effective_columns(const KeySequence& ks, const CGrid& grid);

/// Throws SequenceGridMismatch (bad index, foreign grid id, widths not summing
/// to 256) or ColumnExhausted (a column asked for more than its n-1 cells).
void check_key_sequence(const KeySequence& ks, const CGrid& grid);

/// Chooses the widest-first composition of the grid's widths that tiles 256
/// bits within per-column caps, then orders it from the seed.
KeySequence form_key_sequence(const CGrid& grid, std::uint64_t seed);

std::string serialize_key_sequence(const KeySequence& ks);
KeySequence deserialize_key_sequence(std::string_view text);

/// Recurrence state of the key feeder. Counters start at 1 and advance like
/// the nested loop they come from: j runs 1..inner_bound, then i steps.
struct FeederState {
    std::uint64_t x = 1;
    std::uint64_t y = 1;
    std::uint64_t i = 1;
    std::uint64_t j = 1;
    std::uint64_t inner_bound = 5;

    bool operator==(const FeederState&) const = default;
};

/// Replaces x when the product wraps to zero.
inline constexpr std::uint64_t kFeederReseed = 0x9e3779b97f4a7c15ULL;

struct FeederOutput {
    FeederState next;
    unsigned selector;  // 0..3
};

/// y' = y*x + y + x; x_raw = (x*y' + i)(1024 + i)(i*j), all mod 2^64.
/// The selector is the top two bits of x_raw; the full x_raw is carried forward.
FeederOutput feeder_step(const FeederState& state);

/// x and y come from the low and high halves of PRF(feeder_seed, epoch), forced odd.
FeederState feeder_init(std::uint64_t feeder_seed, std::uint64_t epoch, std::size_t inner_bound);

struct LteKey {
    std::array<std::uint8_t, kLteKeyBits / 8> bits{};
    std::string grid_id;
    std::string sequence_id;
    std::uint64_t epoch = 0;

    std::string hex() const { return to_hex(bits); }
};

/// Optional instrumentation for derive_lte_key.
struct DerivationTrace {
    std::vector<std::pair<std::size_t, std::size_t>> cells;  // (row, col) in fetch order
    std::vector<unsigned> selectors;
    std::size_t max_probes = 0;
};

LteKey derive_lte_key(const CGrid& grid, const KeySequence& ks, std::uint64_t feeder_seed, std::uint64_t epoch,
                      DerivationTrace* trace = nullptr);

/// True once ttl logical time units have elapsed since the epoch started.
bool key_refresh_due(std::uint64_t epoch_started_at, std::uint64_t ttl, std::uint64_t now);

}  // namespace ipgaka
