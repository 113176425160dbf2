#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cellflow {

inline constexpr int kMaxColumns = 16384;
inline constexpr int kMaxRows = 1048576;

/// Position on a worksheet grid, 1-based. Ordered row-major.
struct Coord {
    int row = 1;
    int col = 1;

    friend constexpr auto operator<=>(const Coord&, const Coord&) = default;
};

constexpr bool in_grid(Coord c) noexcept {
    return c.row >= 1 && c.row <= kMaxRows && c.col >= 1 && c.col <= kMaxColumns;
}

/// Inclusive rectangle of grid positions.
struct Rect {
    int top = 1;
    int left = 1;
    int bottom = 1;
    int right = 1;

    constexpr bool contains(Coord c) const noexcept {
        return c.row >= top && c.row <= bottom && c.col >= left && c.col <= right;
    }
    constexpr bool intersects(const Rect& o) const noexcept {
        return top <= o.bottom && o.top <= bottom && left <= o.right && o.left <= right;
    }
    /// True when the rectangles overlap or share an edge or corner.
    constexpr bool touches(const Rect& o) const noexcept {
        return top <= o.bottom + 1 && o.top <= bottom + 1 && left <= o.right + 1 &&
               o.left <= right + 1;
    }
    constexpr Rect united(const Rect& o) const noexcept {
        return {top < o.top ? top : o.top, left < o.left ? left : o.left,
                bottom > o.bottom ? bottom : o.bottom, right > o.right ? right : o.right};
    }
    constexpr std::int64_t area() const noexcept {
        return std::int64_t(bottom - top + 1) * std::int64_t(right - left + 1);
    }

    friend constexpr auto operator<=>(const Rect&, const Rect&) = default;
};

/// "A" for 1, "Z" for 26, "AA" for 27 ...
std::string column_name(int col);
/// Inverse of column_name; nullopt for anything that is not 1-3 letters within grid bounds.
std::optional<int> column_index(std::string_view letters);

/// "B3" for {row 3, col 2}.
std::string a1(Coord c);
/// "A1:C4" for a rectangle; single cells still use the range form.
std::string a1(const Rect& r);
/// Parses "B3" or "$B$3" (case-insensitive). nullopt if malformed or out of grid.
std::optional<Coord> parse_a1(std::string_view text);

/// ASCII case-insensitive comparison used for sheet, name and function matching.
bool iequals(std::string_view a, std::string_view b) noexcept;
int icompare(std::string_view a, std::string_view b) noexcept;
std::string to_upper(std::string_view s);

/// A cell on a named worksheet. Sheet names compare case-insensitively.
struct CellAddress {
    std::string sheet;
    int col = 1;
    int row = 1;

    Coord coord() const noexcept { return {row, col}; }

    friend bool operator==(const CellAddress& a, const CellAddress& b) noexcept {
        return a.row == b.row && a.col == b.col && iequals(a.sheet, b.sheet);
    }
    friend std::strong_ordering operator<=>(const CellAddress& a, const CellAddress& b) noexcept {
        if (int c = icompare(a.sheet, b.sheet); c != 0) return c <=> 0;
        if (a.row != b.row) return a.row <=> b.row;
        return a.col <=> b.col;
    }
};

/// "Sheet!B3" using the sheet name verbatim (no quoting).
std::string to_string(const CellAddress& a);

} // namespace cellflow
