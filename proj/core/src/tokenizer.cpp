#include <array>
#include <charconv>

#include "cellflow/error.hpp"
#include "cellflow/formula.hpp"
#include "formula_detail.hpp"

namespace cellflow::formula {

namespace {

constexpr std::array<std::string_view, 10> kErrorLiterals = {
    "#NULL!", "#DIV/0!", "#VALUE!", "#REF!", "#NAME?", "#NUM!", "#N/A", "#GETTING_DATA", "#SPILL!", "#CALC!",
};

bool is_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }
bool is_word_start(char c) { return is_alpha(c) || c == '_' || c == '\\' || c == '$'; }
bool is_word_char(char c) { return is_alpha(c) || is_digit(c) || c == '_' || c == '.' || c == '\\' || c == '$'; }
bool is_sheet_word_char(char c) { return is_alpha(c) || is_digit(c) || c == '_' || c == '.'; }

std::size_t skip_space(std::string_view s, std::size_t i) {
    while (i < s.size() && is_space(s[i])) ++i;
    return i;
}

/// "$A", "AB" -> column index when the word is a bare column.
std::optional<int> bare_column(std::string_view w) {
    if (!w.empty() && w.front() == '$') w.remove_prefix(1);
    return column_index(w);
}

/// "$3", "17" -> row index when the word is a bare row number.
std::optional<int> bare_row(std::string_view w) {
    if (!w.empty() && w.front() == '$') w.remove_prefix(1);
    if (w.empty() || w.size() > 7) return std::nullopt;
    int v = 0;
    for (char c : w) {
        if (!is_digit(c)) return std::nullopt;
        v = v * 10 + (c - '0');
    }
    if (v < 1 || v > kMaxRows) return std::nullopt;
    return v;
}

bool can_be_column_endpoint(const Token& t) {
    return (t.kind == TokenKind::Ident || t.kind == TokenKind::ColumnRef) && bare_column(t.text).has_value();
}

bool can_be_row_endpoint(const Token& t) {
    return (t.kind == TokenKind::Number || t.kind == TokenKind::Ident || t.kind == TokenKind::RowRef) &&
           bare_row(t.text).has_value();
}

} // namespace

const char* to_string(TokenKind kind) noexcept {
    switch (kind) {
    case TokenKind::Number: return "Number";
    case TokenKind::String: return "StringLit";
    case TokenKind::Bool: return "Bool";
    case TokenKind::Error: return "Error";
    case TokenKind::Ident: return "Ident";
    case TokenKind::CellRef: return "CellRef";
    case TokenKind::ColumnRef: return "ColumnRef";
    case TokenKind::RowRef: return "RowRef";
    case TokenKind::SheetName: return "SheetName";
    case TokenKind::ExternalSheet: return "ExternalSheet";
    case TokenKind::Bracket: return "Bracket";
    case TokenKind::Bang: return "Bang";
    case TokenKind::Colon: return "Colon";
    case TokenKind::Comma: return "Comma";
    case TokenKind::LParen: return "LParen";
    case TokenKind::RParen: return "RParen";
    case TokenKind::LBrace: return "LBrace";
    case TokenKind::RBrace: return "RBrace";
    case TokenKind::Operator: return "Operator";
    }
    return "?";
}

namespace detail {

std::optional<CellWord> parse_cell_word(std::string_view w) {
    CellWord out;
    std::size_t i = 0;
    if (i < w.size() && w[i] == '$') {
        out.col_abs = true;
        ++i;
    }
    std::size_t letters = i;
    while (i < w.size() && is_alpha(w[i])) ++i;
    auto col = column_index(w.substr(letters, i - letters));
    if (!col) return std::nullopt;
    if (i < w.size() && w[i] == '$') {
        out.row_abs = true;
        ++i;
    }
    auto row = bare_row(w.substr(i));
    if (!row || w[i] == '$') return std::nullopt;
    out.col = *col;
    out.row = *row;
    return out;
}

} // namespace detail

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (is_space(c)) {
            ++i;
            continue;
        }
        std::size_t start = i;

        if (c == '"') {
            std::string value;
            ++i;
            bool closed = false;
            while (i < s.size()) {
                if (s[i] == '"') {
                    if (i + 1 < s.size() && s[i + 1] == '"') {
                        value += '"';
                        i += 2;
                        continue;
                    }
                    ++i;
                    closed = true;
                    break;
                }
                value += s[i++];
            }
            if (!closed) throw LexError(start, "unterminated string literal");
            out.push_back({TokenKind::String, std::move(value), start});
            continue;
        }

        if (c == '\'') {
            std::string name;
            ++i;
            bool closed = false;
            while (i < s.size()) {
                if (s[i] == '\'') {
                    if (i + 1 < s.size() && s[i + 1] == '\'') {
                        name += '\'';
                        i += 2;
                        continue;
                    }
                    ++i;
                    closed = true;
                    break;
                }
                name += s[i++];
            }
            if (!closed) throw LexError(start, "unterminated quoted sheet name");
            if (skip_space(s, i) >= s.size() || s[skip_space(s, i)] != '!')
                throw LexError(start, "quoted sheet name must be followed by '!'");
            if (name.empty()) throw LexError(start, "empty sheet name");
            out.push_back({TokenKind::SheetName, std::move(name), start});
            continue;
        }

        if (c == '#') {
            bool matched = false;
            for (auto lit : kErrorLiterals) {
                if (s.size() - i >= lit.size() && iequals(s.substr(i, lit.size()), lit)) {
                    out.push_back({TokenKind::Error, std::string(lit), start});
                    i += lit.size();
                    matched = true;
                    break;
                }
            }
            if (!matched) throw LexError(start, "unknown error literal");
            continue;
        }

        if (is_digit(c) || (c == '.' && i + 1 < s.size() && is_digit(s[i + 1]))) {
            while (i < s.size() && is_digit(s[i])) ++i;
            if (i < s.size() && s[i] == '.') {
                ++i;
                while (i < s.size() && is_digit(s[i])) ++i;
            }
            if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
                std::size_t j = i + 1;
                if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
                if (j < s.size() && is_digit(s[j])) {
                    i = j;
                    while (i < s.size() && is_digit(s[i])) ++i;
                } else {
                    throw LexError(i, "malformed exponent");
                }
            }
            out.push_back({TokenKind::Number, std::string(s.substr(start, i - start)), start});
            continue;
        }

        if (c == '[') {
            std::size_t close = s.find(']', i);
            if (close == std::string_view::npos) throw LexError(start, "unterminated '['");
            std::string bracket(s.substr(i, close - i + 1));
            i = close + 1;
            // "[Book]Sheet!" names a sheet in another workbook.
            std::size_t j = i;
            while (j < s.size() && is_sheet_word_char(s[j])) ++j;
            if (j > i && j < s.size() && s[j] == '!') {
                out.push_back({TokenKind::ExternalSheet, bracket + std::string(s.substr(i, j - i)), start});
                i = j;
            } else {
                out.push_back({TokenKind::Bracket, std::move(bracket), start});
            }
            continue;
        }

        if (is_word_start(c)) {
            while (i < s.size() && is_word_char(s[i])) ++i;
            std::string word(s.substr(start, i - start));
            std::size_t next = skip_space(s, i);
            char la = next < s.size() ? s[next] : '\0';
            if (i < s.size() && s[i] == '!') {
                if (word.find('$') != std::string::npos) throw LexError(start, "'$' in sheet name");
                out.push_back({TokenKind::SheetName, std::move(word), start});
            } else if (la == '(') {
                out.push_back({TokenKind::Ident, std::move(word), start});
            } else if (detail::parse_cell_word(word)) {
                out.push_back({TokenKind::CellRef, std::move(word), start});
            } else if (iequals(word, "TRUE") || iequals(word, "FALSE")) {
                out.push_back({TokenKind::Bool, to_upper(word), start});
            } else {
                out.push_back({TokenKind::Ident, std::move(word), start});
            }
            continue;
        }

        switch (c) {
        case '!': out.push_back({TokenKind::Bang, "!", start}); ++i; continue;
        case ':': out.push_back({TokenKind::Colon, ":", start}); ++i; continue;
        case ',': out.push_back({TokenKind::Comma, ",", start}); ++i; continue;
        case '(': out.push_back({TokenKind::LParen, "(", start}); ++i; continue;
        case ')': out.push_back({TokenKind::RParen, ")", start}); ++i; continue;
        case '{': out.push_back({TokenKind::LBrace, "{", start}); ++i; continue;
        case '}': out.push_back({TokenKind::RBrace, "}", start}); ++i; continue;
        case '+': case '-': case '*': case '/': case '^': case '&': case '=': case '%':
            out.push_back({TokenKind::Operator, std::string(1, c), start});
            ++i;
            continue;
        case '<':
            if (i + 1 < s.size() && (s[i + 1] == '>' || s[i + 1] == '=')) {
                out.push_back({TokenKind::Operator, std::string(s.substr(i, 2)), start});
                i += 2;
            } else {
                out.push_back({TokenKind::Operator, "<", start});
                ++i;
            }
            continue;
        case '>':
            if (i + 1 < s.size() && s[i + 1] == '=') {
                out.push_back({TokenKind::Operator, ">=", start});
                i += 2;
            } else {
                out.push_back({TokenKind::Operator, ">", start});
                ++i;
            }
            continue;
        default:
            throw LexError(start, std::string("illegal character '") + c + "'");
        }
    }

    // Endpoints of "A:C" and "3:5" are lexed as identifiers or numbers above;
    // promote them once the surrounding colon is known.
    for (std::size_t k = 1; k + 1 < out.size(); ++k) {
        if (out[k].kind != TokenKind::Colon) continue;
        Token& left = out[k - 1];
        Token& right = out[k + 1];
        if (can_be_column_endpoint(left) && can_be_column_endpoint(right)) {
            left.kind = right.kind = TokenKind::ColumnRef;
        } else if (left.text.find_first_of(".eE") == std::string::npos && can_be_row_endpoint(left) &&
                   right.text.find_first_of(".eE") == std::string::npos && can_be_row_endpoint(right)) {
            left.kind = right.kind = TokenKind::RowRef;
        }
    }
    for (const auto& t : out)
        if (t.kind == TokenKind::Ident && t.text.find('$') != std::string::npos)
            throw LexError(t.offset, "'$' outside a reference");
    return out;
}

} // namespace cellflow::formula
