#include "ipgaka/cgrid.hpp"

#include <charconv>
#include <numeric>
#include <sstream>

#include "ipgaka/primitives.hpp"

namespace ipgaka {

unsigned ColumnWidths::total() const
{
    return std::accumulate(bits.begin(), bits.end(), 0u);
}

ColumnWidths ColumnWidths::pyramid(std::size_t n)
{
    ColumnWidths w;
    w.bits.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t from_edge = std::min(i, n - 1 - i);
        w.bits[i] = static_cast<unsigned>(8 * (from_edge + 1));
    }
    return w;
}

void check_layout(std::size_t n, const ColumnWidths& widths)
{
    if (n < 5 || n % 2 == 0)
        throw Error(ErrorCode::InvalidDimension, "grid dimension must be odd and >= 5, got " + std::to_string(n));
    if (widths.size() != n)
        throw Error(ErrorCode::WidthCountMismatch,
                    "expected " + std::to_string(n) + " widths, got " + std::to_string(widths.size()));
    for (std::size_t i = 0; i < n; ++i) {
        if (widths[i] == 0 || widths[i] % 8 != 0)
            throw Error(ErrorCode::WidthNotByteMultiple,
                        "column " + std::to_string(i + 1) + " width " + std::to_string(widths[i]));
    }
    for (std::size_t i = 0; i < n / 2; ++i) {
        if (widths[i] != widths[n - 1 - i])
            throw Error(ErrorCode::NonPalindromicWidths,
                        "column " + std::to_string(i + 1) + " and column " + std::to_string(n - i) + " differ");
    }
}

namespace {

std::string compute_grid_id(std::size_t n, const ColumnWidths& widths, const std::vector<Cell>& cells)
{
    ByteWriter w;
    w.u32(static_cast<std::uint32_t>(n));
    for (auto b : widths.bits)
        w.u32(b);
    for (const auto& c : cells) {
        w.u8(static_cast<std::uint8_t>(c.kind));
        w.u8(static_cast<std::uint8_t>(c.symbol));
        w.u32(static_cast<std::uint32_t>(c.payload.size()));
        w.raw(c.payload);
    }
    auto digest = sha256(w.bytes());
    return to_hex(ByteView(digest).first(8));
}

}  // namespace

CGrid::CGrid(std::size_t n, ColumnWidths widths, std::vector<Cell> cells, std::uint64_t created_at)
    : n_(n),
      widths_(std::move(widths)),
      cells_(std::move(cells)),
      grid_id_(compute_grid_id(n_, widths_, cells_)),
      created_at_(created_at)
{
}

const Cell& CGrid::lookup(std::size_t row, std::size_t col) const
{
    if (row < 1 || row > n_ || col < 1 || col > n_)
        throw Error(ErrorCode::IndexOutOfRange,
                    "(" + std::to_string(row) + "," + std::to_string(col) + ") outside 1.." + std::to_string(n_));
    return at(row, col);
}

bool CGrid::operator==(const CGrid& other) const
{
    return n_ == other.n_ && widths_ == other.widths_ && cells_ == other.cells_;
}

std::string_view violation_name(Violation::Kind kind)
{
    switch (kind) {
    case Violation::Kind::InvalidLayout: return "InvalidLayout";
    case Violation::Kind::CellCountMismatch: return "CellCountMismatch";
    case Violation::Kind::RowNullCount: return "RowNullCount";
    case Violation::Kind::ColumnNullCount: return "ColumnNullCount";
    case Violation::Kind::PayloadWidthMismatch: return "PayloadWidthMismatch";
    case Violation::Kind::NullWithPayload: return "NullWithPayload";
    case Violation::Kind::InvalidSymbol: return "InvalidSymbol";
    case Violation::Kind::MirrorColumnDeficit: return "MirrorColumnDeficit";
    }
    return "Unknown";
}

std::string ValidationReport::summary() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        const auto& v = violations[i];
        if (i)
            os << "; ";
        os << violation_name(v.kind);
        if (v.row || v.col)
            os << " at (" << v.row << "," << v.col << ")";
        if (!v.detail.empty())
            os << " " << v.detail;
    }
    return os.str();
}

GridValidationError::GridValidationError(ValidationReport report)
    : Error(ErrorCode::ValidationFailed, report.summary()), report_(std::move(report))
{
}

std::size_t mirror_pair_count(const ColumnWidths& widths)
{
    std::size_t n = widths.size();
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < n / 2; ++i)
        if (widths[i] == widths[n - 1 - i])
            ++pairs;
    return pairs;
}

ValidationReport validate_grid(const CGrid& grid)
{
    ValidationReport report;
    auto add = [&](Violation::Kind k, std::size_t r, std::size_t c, std::string d = {}) {
        report.violations.push_back({k, r, c, std::move(d)});
    };

    const std::size_t n = grid.n();
    try {
        check_layout(n, grid.widths());
    } catch (const Error& e) {
        add(Violation::Kind::InvalidLayout, 0, 0, e.what());
        return report;
    }
    if (grid.cells().size() != n * n) {
        add(Violation::Kind::CellCountMismatch, 0, 0,
            "expected " + std::to_string(n * n) + " cells, got " + std::to_string(grid.cells().size()));
        return report;
    }

    std::vector<std::size_t> row_nulls(n + 1, 0), col_nulls(n + 1, 0);
    for (std::size_t r = 1; r <= n; ++r) {
        for (std::size_t c = 1; c <= n; ++c) {
            const Cell& cell = grid.at(r, c);
            if (cell.is_null()) {
                ++row_nulls[r];
                ++col_nulls[c];
                if (!cell.payload.empty() || cell.symbol != 0)
                    add(Violation::Kind::NullWithPayload, r, c);
                continue;
            }
            if (cell.symbol < 'A' || cell.symbol > 'Z')
                add(Violation::Kind::InvalidSymbol, r, c);
            if (cell.payload.size() * 8 != grid.width(c))
                add(Violation::Kind::PayloadWidthMismatch, r, c,
                    std::to_string(cell.payload.size() * 8) + " bits in a " + std::to_string(grid.width(c)) +
                        "-bit column");
        }
    }
    for (std::size_t r = 1; r <= n; ++r)
        if (row_nulls[r] != 1)
            add(Violation::Kind::RowNullCount, r, 0, std::to_string(row_nulls[r]) + " nulls in row");
    for (std::size_t c = 1; c <= n; ++c)
        if (col_nulls[c] != 1)
            add(Violation::Kind::ColumnNullCount, 0, c, std::to_string(col_nulls[c]) + " nulls in column");

    std::size_t required = (n + 1) / 2 - 1;
    if (mirror_pair_count(grid.widths()) < required)
        add(Violation::Kind::MirrorColumnDeficit, 0, 0);
    return report;
}

CGrid generate_grid(std::size_t n, const ColumnWidths& widths, std::uint64_t seed, std::uint64_t created_at)
{
    check_layout(n, widths);
    Drbg rng("cgrid", seed);

    // Null column for each row: a uniformly drawn permutation (Fisher-Yates).
    std::vector<std::size_t> null_col(n);
    std::iota(null_col.begin(), null_col.end(), std::size_t{1});
    for (std::size_t i = n - 1; i > 0; --i)
        std::swap(null_col[i], null_col[rng.uniform(i + 1)]);

    std::vector<Cell> cells;
    cells.reserve(n * n);
    for (std::size_t r = 1; r <= n; ++r) {
        for (std::size_t c = 1; c <= n; ++c) {
            if (null_col[r - 1] == c) {
                cells.push_back(Cell::null());
                continue;
            }
            char symbol = static_cast<char>('A' + rng.uniform(26));
            cells.push_back(Cell::filled(symbol, rng.bytes(widths[c - 1] / 8)));
        }
    }
    return CGrid(n, widths, std::move(cells), created_at);
}

std::uint64_t capacity_bits(const CGrid& grid)
{
    return static_cast<std::uint64_t>(grid.n()) * grid.widths().total();
}

std::uint64_t usable_bits(const CGrid& grid)
{
    return capacity_bits(grid) - grid.widths().total();
}

std::string serialize_grid(const CGrid& grid)
{
    std::ostringstream os;
    os << "CGRID v1\n";
    os << "n=" << grid.n() << "\n";
    os << "widths=";
    for (std::size_t i = 0; i < grid.widths().size(); ++i)
        os << (i ? "," : "") << grid.widths()[i];
    os << "\n";
    for (std::size_t r = 1; r <= grid.n(); ++r) {
        for (std::size_t c = 1; c <= grid.n(); ++c) {
            const Cell& cell = grid.at(r, c);
            if (c > 1)
                os << ' ';
            if (cell.is_null())
                os << "NULL";
            else
                os << cell.symbol << ':' << to_hex(cell.payload);
        }
        os << "\n";
    }
    return os.str();
}

namespace {

[[noreturn]] void malformed(const std::string& why)
{
    throw Error(ErrorCode::MalformedGridFile, why);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

std::size_t parse_count(std::string_view s, const char* what)
{
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
        malformed(std::string("bad ") + what + " '" + std::string(s) + "'");
    return v;
}

}  // namespace

CGrid deserialize_grid(std::string_view text)
{
    auto lines = split(text, '\n');
    if (!lines.empty() && lines.back().empty())
        lines.pop_back();
    if (lines.size() < 3)
        malformed("missing header lines");
    if (lines[0] != "CGRID v1")
        malformed("bad magic line");
    if (!lines[1].starts_with("n="))
        malformed("expected n=");
    std::size_t n = parse_count(lines[1].substr(2), "dimension");
    if (n == 0 || n > 255)
        malformed("dimension out of range");
    if (!lines[2].starts_with("widths="))
        malformed("expected widths=");
    ColumnWidths widths;
    for (auto tok : split(lines[2].substr(7), ','))
        widths.bits.push_back(static_cast<unsigned>(parse_count(tok, "width")));
    if (lines.size() != 3 + n)
        malformed("expected " + std::to_string(n) + " grid rows, got " + std::to_string(lines.size() - 3));

    std::vector<Cell> cells;
    cells.reserve(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        auto toks = split(lines[3 + r], ' ');
        if (toks.size() != n)
            malformed("row " + std::to_string(r + 1) + " has " + std::to_string(toks.size()) + " cells");
        for (auto tok : toks) {
            if (tok == "NULL") {
                cells.push_back(Cell::null());
                continue;
            }
            if (tok.size() < 3 || tok[1] != ':')
                malformed("bad cell '" + std::string(tok) + "'");
            auto payload = from_hex(tok.substr(2));
            if (!payload)
                malformed("bad payload hex in '" + std::string(tok) + "'");
            cells.push_back(Cell::filled(tok[0], std::move(*payload)));
        }
    }

    CGrid grid(n, std::move(widths), std::move(cells));
    auto report = validate_grid(grid);
    if (!report.ok())
        throw GridValidationError(std::move(report));
    return grid;
}

}  // namespace ipgaka
