#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ipgaka/bytes.hpp"
#include "ipgaka/error.hpp"

namespace ipgaka {

/// Per-column payload sizes in bits. Legal widths are positive multiples
/// of 8 and read the same left-to-right as right-to-left.
struct ColumnWidths {
    std::vector<unsigned> bits;

    std::size_t size() const { return bits.size(); }
    unsigned operator[](std::size_t i) const { return bits[i]; }
    unsigned total() const;

    /// 8, 16, ... rising to the centre column and back down, e.g.
    /// n=5 -> 8,16,24,16,8 and n=7 -> 8,16,24,32,24,16,8.
    static ColumnWidths pyramid(std::size_t n);

    bool operator==(const ColumnWidths&) const = default;
};

/// Throws WidthCountMismatch / WidthNotByteMultiple / NonPalindromicWidths /
/// InvalidDimension when (n, widths) is not a legal grid layout.
void check_layout(std::size_t n, const ColumnWidths& widths);

struct Cell {
    enum class Kind : std::uint8_t { Null, Filled };

    Kind kind = Kind::Null;
    char symbol = 0;
    Bytes payload;

    static Cell null() { return {}; }
    static Cell filled(char symbol, Bytes payload) { return {Kind::Filled, symbol, std::move(payload)}; }

    bool is_null() const { return kind == Kind::Null; }
    bool operator==(const Cell&) const = default;
};

/// n x n lookup table of symbol-tagged payloads with exactly one null per
/// row and column. Values are immutable once built; use generate_grid or
/// deserialize_grid to obtain a validated instance.
class CGrid {
public:
    /// Assembles a grid without validating it (validate_grid reports problems).
    CGrid(std::size_t n, ColumnWidths widths, std::vector<Cell> cells, std::uint64_t created_at = 0);

    std::size_t n() const { return n_; }
    const ColumnWidths& widths() const { return widths_; }
    /// Width of a 1-based column.
    unsigned width(std::size_t col) const { return widths_[col - 1]; }
    const std::string& grid_id() const { return grid_id_; }
    std::uint64_t created_at() const { return created_at_; }

    /// 1-based access; throws IndexOutOfRange.
    const Cell& lookup(std::size_t row, std::size_t col) const;
    /// 1-based access without bounds checking against n.
    const Cell& at(std::size_t row, std::size_t col) const { return cells_[(row - 1) * n_ + (col - 1)]; }
    const std::vector<Cell>& cells() const { return cells_; }

    bool operator==(const CGrid& other) const;

private:
    std::size_t n_;
    ColumnWidths widths_;
    std::vector<Cell> cells_;
    std::string grid_id_;
    std::uint64_t created_at_;
};

struct Violation {
    enum class Kind {
        InvalidLayout,
        CellCountMismatch,
        RowNullCount,
        ColumnNullCount,
        PayloadWidthMismatch,
        NullWithPayload,
        InvalidSymbol,
        MirrorColumnDeficit,
    };

    Kind kind;
    std::size_t row = 0;  // 1-based, 0 when not applicable
    std::size_t col = 0;
    std::string detail;
};

std::string_view violation_name(Violation::Kind kind);

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

class GridValidationError : public Error {
public:
    explicit GridValidationError(ValidationReport report);
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

CGrid generate_grid(std::size_t n, const ColumnWidths& widths, std::uint64_t seed, std::uint64_t created_at = 0);

ValidationReport validate_grid(const CGrid& grid);

/// n * sum(widths): every cell, nulls included.
std::uint64_t capacity_bits(const CGrid& grid);
/// capacity minus one payload per column (the null).
std::uint64_t usable_bits(const CGrid& grid);

/// Number of equal-width column pairs (i, n+1-i).
std::size_t mirror_pair_count(const ColumnWidths& widths);

std::string serialize_grid(const CGrid& grid);
/// Throws MalformedGridFile on syntax errors and GridValidationError when
/// the parsed grid breaks an invariant.
CGrid deserialize_grid(std::string_view text);

}  // namespace ipgaka
