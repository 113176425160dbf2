#include "cellflow/address.hpp"

#include <algorithm>
#include <cctype>

namespace cellflow {

namespace {

char lower(char c) noexcept {
    return (c >= 'A' && c <= 'Z') ? char(c - 'A' + 'a') : c;
}

bool is_alpha(char c) noexcept {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
}

bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }

} // namespace

std::string column_name(int col) {
    std::string out;
    while (col > 0) {
        int rem = (col - 1) % 26;
        out.push_back(char('A' + rem));
        col = (col - 1) / 26;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::optional<int> column_index(std::string_view letters) {
    if (letters.empty() || letters.size() > 3) return std::nullopt;
    int col = 0;
    for (char c : letters) {
        if (!is_alpha(c)) return std::nullopt;
        col = col * 26 + (lower(c) - 'a' + 1);
    }
    if (col > kMaxColumns) return std::nullopt;
    return col;
}

std::string a1(Coord c) { return column_name(c.col) + std::to_string(c.row); }

std::string a1(const Rect& r) { return a1(Coord{r.top, r.left}) + ":" + a1(Coord{r.bottom, r.right}); }

std::optional<Coord> parse_a1(std::string_view text) {
    std::size_t i = 0;
    if (i < text.size() && text[i] == '$') ++i;
    std::size_t letters_begin = i;
    while (i < text.size() && is_alpha(text[i])) ++i;
    auto col = column_index(text.substr(letters_begin, i - letters_begin));
    if (!col) return std::nullopt;
    if (i < text.size() && text[i] == '$') ++i;
    std::size_t digits_begin = i;
    long row = 0;
    while (i < text.size() && is_digit(text[i])) {
        row = row * 10 + (text[i] - '0');
        if (row > kMaxRows) return std::nullopt;
        ++i;
    }
    if (i == digits_begin || i != text.size() || row < 1) return std::nullopt;
    return Coord{int(row), *col};
}

bool iequals(std::string_view a, std::string_view b) noexcept {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) { return lower(x) == lower(y); });
}

int icompare(std::string_view a, std::string_view b) noexcept {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        auto x = static_cast<unsigned char>(lower(a[i]));
        auto y = static_cast<unsigned char>(lower(b[i]));
        if (x != y) return x < y ? -1 : 1;
    }
    if (a.size() == b.size()) return 0;
    return a.size() < b.size() ? -1 : 1;
}

std::string to_upper(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'a' && c <= 'z') c = char(c - 'a' + 'A');
    return out;
}

std::string to_string(const CellAddress& a) { return a.sheet + "!" + a1(a.coord()); }

} // namespace cellflow
