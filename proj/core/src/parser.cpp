#include <charconv>

#include "cellflow/error.hpp"
#include "cellflow/formula.hpp"
#include "formula_detail.hpp"

namespace cellflow::formula {

namespace {

bool is_r1c1_word(std::string_view w) {
    std::size_t i = 0;
    auto digits = [&] {
        while (i < w.size() && w[i] >= '0' && w[i] <= '9') ++i;
    };
    if (i < w.size() && (w[i] == 'R' || w[i] == 'r')) {
        ++i;
        digits();
    }
    if (i < w.size() && (w[i] == 'C' || w[i] == 'c')) {
        ++i;
        digits();
    }
    return i > 0 && i == w.size();
}

class Parser {
public:
    Parser(std::string_view text) : text_(text), tokens_(tokenize(text)) {}

    Expr parse_formula() {
        Expr e = comparison();
        if (!at_end()) fail("operator or end of formula");
        return e;
    }

private:
    std::string_view text_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;

    bool at_end() const { return pos_ >= tokens_.size(); }
    const Token* peek(std::size_t ahead = 0) const {
        return pos_ + ahead < tokens_.size() ? &tokens_[pos_ + ahead] : nullptr;
    }
    std::size_t offset() const { return at_end() ? text_.size() : tokens_[pos_].offset; }

    [[noreturn]] void fail(const std::string& expected) const { throw ParseError(offset(), expected); }

    bool peek_is(TokenKind k) const { return peek() && peek()->kind == k; }
    bool peek_op(std::string_view op) const { return peek_is(TokenKind::Operator) && peek()->text == op; }

    const Token& expect(TokenKind k, const char* what) {
        if (!peek_is(k)) fail(what);
        return tokens_[pos_++];
    }

    // comparison := concat (cmp concat)*
    Expr comparison() {
        Expr left = concat();
        while (peek_is(TokenKind::Operator)) {
            const std::string& t = peek()->text;
            BinaryOperator op;
            if (t == "=") op = BinaryOperator::Eq;
            else if (t == "<>") op = BinaryOperator::Ne;
            else if (t == "<") op = BinaryOperator::Lt;
            else if (t == "<=") op = BinaryOperator::Le;
            else if (t == ">") op = BinaryOperator::Gt;
            else if (t == ">=") op = BinaryOperator::Ge;
            else break;
            ++pos_;
            Expr right = concat();
            left = BinaryOp{op, std::move(left), std::move(right)};
        }
        return left;
    }

    Expr concat() {
        Expr left = additive();
        while (peek_op("&")) {
            ++pos_;
            Expr right = additive();
            left = BinaryOp{BinaryOperator::Concat, std::move(left), std::move(right)};
        }
        return left;
    }

    Expr additive() {
        Expr left = multiplicative();
        while (peek_op("+") || peek_op("-")) {
            auto op = peek()->text == "+" ? BinaryOperator::Add : BinaryOperator::Sub;
            ++pos_;
            Expr right = multiplicative();
            left = BinaryOp{op, std::move(left), std::move(right)};
        }
        return left;
    }

    Expr multiplicative() {
        Expr left = power();
        while (peek_op("*") || peek_op("/")) {
            auto op = peek()->text == "*" ? BinaryOperator::Mul : BinaryOperator::Div;
            ++pos_;
            Expr right = power();
            left = BinaryOp{op, std::move(left), std::move(right)};
        }
        return left;
    }

    // power := prefix ('^' power)?
    Expr power() {
        Expr base = prefix();
        if (peek_op("^")) {
            ++pos_;
            Expr exponent = power();
            return BinaryOp{BinaryOperator::Pow, std::move(base), std::move(exponent)};
        }
        return base;
    }

    Expr prefix() {
        if (peek_op("-")) {
            ++pos_;
            return UnaryOp{UnaryOperator::Neg, prefix()};
        }
        if (peek_op("+")) {
            ++pos_;
            return UnaryOp{UnaryOperator::Plus, prefix()};
        }
        return postfix();
    }

    Expr postfix() {
        Expr e = primary();
        while (peek_op("%")) {
            ++pos_;
            e = UnaryOp{UnaryOperator::Percent, std::move(e)};
        }
        return e;
    }

    Expr primary() {
        if (at_end()) fail("operand");
        const Token& t = *peek();
        switch (t.kind) {
        case TokenKind::Number: {
            ++pos_;
            double v = 0;
            auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
            if (ec != std::errc() || p != t.text.data() + t.text.size()) throw ParseError(t.offset, "number");
            return NumberLit{v};
        }
        case TokenKind::String: ++pos_; return TextLit{t.text};
        case TokenKind::Bool: ++pos_; return BoolLit{t.text == "TRUE"};
        case TokenKind::Error: ++pos_; return ErrorLit{t.text};
        case TokenKind::LParen: {
            ++pos_;
            Expr inner = comparison();
            if (peek_is(TokenKind::Comma)) fail("')' (union operator is not supported)");
            expect(TokenKind::RParen, "')'");
            return inner;
        }
        case TokenKind::LBrace: fail("operand (array literals are not supported)");
        case TokenKind::Bracket: fail("operand (structured or R1C1 references are not supported)");
        case TokenKind::SheetName:
        case TokenKind::ExternalSheet: return qualified_reference();
        case TokenKind::CellRef:
        case TokenKind::ColumnRef:
        case TokenKind::RowRef: return reference(std::nullopt);
        case TokenKind::Ident: return identifier();
        default: fail("operand");
        }
    }

    Expr identifier() {
        const Token& t = tokens_[pos_++];
        if (peek_is(TokenKind::LParen)) {
            ++pos_;
            FunctionCall call{to_upper(t.text), {}};
            if (peek_is(TokenKind::RParen)) {
                ++pos_;
                return call;
            }
            for (;;) {
                if (peek_is(TokenKind::Comma) || peek_is(TokenKind::RParen))
                    call.args.emplace_back(MissingArg{});
                else
                    call.args.push_back(comparison());
                if (peek_is(TokenKind::Comma)) {
                    ++pos_;
                    continue;
                }
                expect(TokenKind::RParen, "',' or ')'");
                break;
            }
            return call;
        }
        if (peek_is(TokenKind::Bracket)) fail("operator (structured references are not supported)");
        if (is_r1c1_word(t.text)) throw ParseError(t.offset, "A1-style reference (R1C1 is not supported)");
        return NameRef{t.text};
    }

    Expr qualified_reference() {
        const Token& sheet = tokens_[pos_++];
        expect(TokenKind::Bang, "'!'");
        bool external = sheet.kind == TokenKind::ExternalSheet || sheet.text.front() == '[';
        if (peek_is(TokenKind::Error)) {
            // Sheet1!#REF! is how spreadsheets record a deleted target.
            return ErrorLit{tokens_[pos_++].text};
        }
        if (!peek_is(TokenKind::CellRef) && !peek_is(TokenKind::ColumnRef) && !peek_is(TokenKind::RowRef))
            fail("cell reference after '!'");
        if (external) {
            Expr target = reference(std::nullopt);
            return ExternalRef{sheet.text, to_formula(target)};
        }
        return reference(sheet.text);
    }

    CellRef cell(const Token& t, const std::optional<std::string>& sheet) {
        auto w = detail::parse_cell_word(t.text);
        if (!w) throw ParseError(t.offset, "cell reference");
        return CellRef{sheet, w->col, w->row, w->col_abs, w->row_abs};
    }

    Expr reference(const std::optional<std::string>& sheet) {
        const Token& t = tokens_[pos_++];
        if (t.kind == TokenKind::ColumnRef || t.kind == TokenKind::RowRef) {
            expect(TokenKind::Colon, "':'");
            const Token& end = expect(t.kind, t.kind == TokenKind::ColumnRef ? "column" : "row");
            LineRangeRef line;
            line.sheet = sheet;
            line.axis = t.kind == TokenKind::ColumnRef ? LineRangeRef::Axis::Column : LineRangeRef::Axis::Row;
            auto endpoint = [&](const Token& tok, int& index, bool& abs) {
                std::string_view w = tok.text;
                abs = !w.empty() && w.front() == '$';
                if (abs) w.remove_prefix(1);
                if (line.axis == LineRangeRef::Axis::Column) {
                    index = *column_index(w);
                } else {
                    index = 0;
                    for (char c : w) index = index * 10 + (c - '0');
                }
            };
            endpoint(t, line.first, line.first_abs);
            endpoint(end, line.last, line.last_abs);
            return line;
        }

        CellRef start = cell(t, sheet);
        if (!peek_is(TokenKind::Colon)) return start;
        ++pos_;
        std::optional<std::string> end_sheet;
        std::size_t end_sheet_at = 0;
        if (peek_is(TokenKind::SheetName)) {
            end_sheet_at = tokens_[pos_].offset;
            end_sheet = tokens_[pos_++].text;
            expect(TokenKind::Bang, "'!'");
        }
        if (!peek_is(TokenKind::CellRef)) fail("cell reference after ':'");
        if (end_sheet && (!sheet || !iequals(*end_sheet, *sheet)))
            throw ParseError(end_sheet_at, "range endpoint on the same sheet (3-D references are not supported)");
        CellRef end = cell(tokens_[pos_++], sheet);
        return RangeRef{std::move(start), std::move(end)};
    }
};

} // namespace

const char* to_string(BinaryOperator op) noexcept {
    switch (op) {
    case BinaryOperator::Add: return "+";
    case BinaryOperator::Sub: return "-";
    case BinaryOperator::Mul: return "*";
    case BinaryOperator::Div: return "/";
    case BinaryOperator::Pow: return "^";
    case BinaryOperator::Concat: return "&";
    case BinaryOperator::Eq: return "=";
    case BinaryOperator::Ne: return "<>";
    case BinaryOperator::Lt: return "<";
    case BinaryOperator::Le: return "<=";
    case BinaryOperator::Gt: return ">";
    case BinaryOperator::Ge: return ">=";
    }
    return "?";
}

const char* to_string(UnaryOperator op) noexcept {
    switch (op) {
    case UnaryOperator::Neg: return "-";
    case UnaryOperator::Plus: return "+";
    case UnaryOperator::Percent: return "%";
    }
    return "?";
}

Expr parse(std::string_view text) { return Parser(text).parse_formula(); }

} // namespace cellflow::formula
