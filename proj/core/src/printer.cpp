#include <cctype>
#include <charconv>
#include <regex>

#include "cellflow/error.hpp"
#include "cellflow/formula.hpp"

namespace cellflow::formula {

namespace {

std::string external_prefix(std::string_view book_sheet);

enum Level : int {
    kComparison = 1,
    kConcat,
    kAdditive,
    kMultiplicative,
    kPower,
    kPrefix,
    kPostfix,
    kPrimary,
};

int level_of(BinaryOperator op) {
    switch (op) {
    case BinaryOperator::Eq:
    case BinaryOperator::Ne:
    case BinaryOperator::Lt:
    case BinaryOperator::Le:
    case BinaryOperator::Gt:
    case BinaryOperator::Ge: return kComparison;
    case BinaryOperator::Concat: return kConcat;
    case BinaryOperator::Add:
    case BinaryOperator::Sub: return kAdditive;
    case BinaryOperator::Mul:
    case BinaryOperator::Div: return kMultiplicative;
    case BinaryOperator::Pow: return kPower;
    }
    return kPrimary;
}

int level_of(const Expr& e) {
    if (auto* b = std::get_if<BinaryOp>(&e.node)) return level_of(b->op);
    if (auto* u = std::get_if<UnaryOp>(&e.node)) return u->op == UnaryOperator::Percent ? kPostfix : kPrefix;
    return kPrimary;
}

std::string number(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

std::string column_part(int col, bool abs) { return (abs ? "$" : "") + column_name(col); }
std::string row_part(int row, bool abs) { return (abs ? "$" : "") + std::to_string(row); }

std::string sheet_prefix(const std::optional<std::string>& sheet) {
    return sheet ? quote_sheet_name(*sheet) + "!" : std::string();
}

std::string cell_text(const CellRef& r) { return column_part(r.col, r.col_abs) + row_part(r.row, r.row_abs); }

void print(const Expr& e, int min_level, std::string& out);

struct Printer {
    std::string& out;

    void operator()(const NumberLit& n) { out += number(n.value); }
    void operator()(const TextLit& t) {
        out += '"';
        for (char c : t.value) {
            if (c == '"') out += '"';
            out += c;
        }
        out += '"';
    }
    void operator()(const BoolLit& b) { out += b.value ? "TRUE" : "FALSE"; }
    void operator()(const ErrorLit& e) { out += e.code; }
    void operator()(const CellRef& r) { out += sheet_prefix(r.sheet) + cell_text(r); }
    void operator()(const RangeRef& r) { out += sheet_prefix(r.start.sheet) + cell_text(r.start) + ":" + cell_text(r.end); }
    void operator()(const LineRangeRef& l) {
        out += sheet_prefix(l.sheet);
        if (l.axis == LineRangeRef::Axis::Column)
            out += column_part(l.first, l.first_abs) + ":" + column_part(l.last, l.last_abs);
        else
            out += row_part(l.first, l.first_abs) + ":" + row_part(l.last, l.last_abs);
    }
    void operator()(const ExternalRef& x) { out += external_prefix(x.book_sheet) + "!" + x.target; }
    void operator()(const NameRef& n) { out += n.identifier; }
    void operator()(const MissingArg&) {}
    void operator()(const FunctionCall& f) {
        out += f.name;
        out += '(';
        for (std::size_t i = 0; i < f.args.size(); ++i) {
            if (i) out += ',';
            print(f.args[i], kComparison, out);
        }
        out += ')';
    }
    void operator()(const BinaryOp& b) {
        int p = level_of(b.op);
        if (b.op == BinaryOperator::Pow) {
            print(*b.left, kPrefix, out);
            out += '^';
            print(*b.right, kPower, out);
        } else {
            print(*b.left, p, out);
            out += to_string(b.op);
            print(*b.right, p + 1, out);
        }
    }
    void operator()(const UnaryOp& u) {
        if (u.op == UnaryOperator::Percent) {
            print(*u.operand, kPostfix, out);
            out += '%';
        } else {
            out += to_string(u.op);
            print(*u.operand, kPrefix, out);
        }
    }
};

void print(const Expr& e, int min_level, std::string& out) {
    bool parens = level_of(e) < min_level;
    if (parens) out += '(';
    std::visit(Printer{out}, e.node);
    if (parens) out += ')';
}

bool plain_sheet_name(std::string_view s) {
    if (s.empty()) return false;
    char f = s.front();
    if (!((f >= 'A' && f <= 'Z') || (f >= 'a' && f <= 'z') || f == '_')) return false;
    for (char c : s) {
        bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '.';
        if (!ok) return false;
    }
    std::string upper;
    for (char c : s) upper += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (upper == "TRUE" || upper == "FALSE") return false;
    // Names that read as a cell address in either notation need quotes.
    if (parse_a1(upper)) return false;
    static const std::regex r1c1("R[0-9]*C?[0-9]*|C[0-9]*");
    return !std::regex_match(upper, r1c1);
}

bool plain_book_name(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.') return false;
    return true;
}

/// "[Book]Sheet" prefix, quoted only when either part needs it.
std::string external_prefix(std::string_view book_sheet) {
    auto close = book_sheet.find(']');
    if (!book_sheet.empty() && book_sheet.front() == '[' && close != std::string_view::npos &&
        plain_book_name(book_sheet.substr(1, close - 1)) && plain_sheet_name(book_sheet.substr(close + 1)))
        return std::string(book_sheet);
    return quote_sheet_name(book_sheet);
}

} // namespace

std::string quote_sheet_name(std::string_view sheet) {
    if (plain_sheet_name(sheet)) return std::string(sheet);
    std::string out = "'";
    for (char c : sheet) {
        if (c == '\'') out += '\'';
        out += c;
    }
    out += '\'';
    return out;
}

std::string to_formula(const Expr& e) {
    std::string out;
    print(e, kComparison, out);
    return out;
}

std::string shift_relative_refs(std::string_view text, int row_delta, int col_delta) {
    std::vector<Token> tokens;
    try {
        tokens = tokenize(text);
    } catch (const Error&) {
        return std::string(text);
    }
    std::string out;
    std::size_t copied = 0;
    for (const auto& t : tokens) {
        if (t.kind != TokenKind::CellRef && t.kind != TokenKind::ColumnRef && t.kind != TokenKind::RowRef) continue;
        out.append(text.substr(copied, t.offset - copied));
        copied = t.offset + t.text.size();

        std::string_view w = t.text;
        std::string replacement;
        bool off_grid = false;
        if (t.kind == TokenKind::CellRef) {
            bool col_abs = w.front() == '$';
            std::size_t i = col_abs ? 1 : 0;
            std::size_t letters = i;
            while (i < w.size() && ((w[i] >= 'A' && w[i] <= 'Z') || (w[i] >= 'a' && w[i] <= 'z'))) ++i;
            int col = *column_index(w.substr(letters, i - letters));
            bool row_abs = i < w.size() && w[i] == '$';
            if (row_abs) ++i;
            int row = std::stoi(std::string(w.substr(i)));
            if (!col_abs) col += col_delta;
            if (!row_abs) row += row_delta;
            off_grid = !in_grid(Coord{row, col});
            replacement = column_part(col, col_abs) + row_part(row, row_abs);
        } else {
            bool abs = w.front() == '$';
            std::string_view body = abs ? w.substr(1) : w;
            if (t.kind == TokenKind::ColumnRef) {
                int col = *column_index(body) + (abs ? 0 : col_delta);
                off_grid = col < 1 || col > kMaxColumns;
                replacement = off_grid ? "" : column_part(col, abs);
            } else {
                int row = std::stoi(std::string(body)) + (abs ? 0 : row_delta);
                off_grid = row < 1 || row > kMaxRows;
                replacement = off_grid ? "" : row_part(row, abs);
            }
        }
        out += off_grid ? std::string("#REF!") : replacement;
    }
    out.append(text.substr(copied));
    return out;
}

} // namespace cellflow::formula
