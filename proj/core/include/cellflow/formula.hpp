#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "cellflow/address.hpp"
#include "cellflow/workbook.hpp"

namespace cellflow::formula {

// ---------------------------------------------------------------------------
// Tokens
// ---------------------------------------------------------------------------

enum class TokenKind {
    Number,
    String,        // text is the unescaped literal
    Bool,
    Error,         // "#N/A", "#REF!" ...
    Ident,         // function name or defined name
    CellRef,       // "A1", "$B$2"
    ColumnRef,     // "A", "$C" as an endpoint of a full-column range
    RowRef,        // "3", "$7" as an endpoint of a full-row range
    SheetName,     // unquoted/unescaped sheet name preceding '!'
    ExternalSheet, // "[Book2]Sheet1" preceding '!'
    Bracket,       // any other "[...]" group (structured or R1C1 syntax)
    Bang,
    Colon,
    Comma,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Operator,      // + - * / ^ & = <> < <= > >= %
};

const char* to_string(TokenKind kind) noexcept;

struct Token {
    TokenKind kind;
    std::string text;
    std::size_t offset = 0;

    friend bool operator==(const Token&, const Token&) = default;
};

/// Splits a formula body (no leading '=') into tokens. Whitespace is dropped.
/// Throws LexError on an unterminated string or an illegal character.
std::vector<Token> tokenize(std::string_view text);

// ---------------------------------------------------------------------------
// AST
// ---------------------------------------------------------------------------

/// Heap-allocated value with deep copy and deep equality.
template <class T>
class Box {
public:
    Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}
    Box(const Box& o) : ptr_(std::make_unique<T>(*o.ptr_)) {}
    Box(Box&&) noexcept = default;
    Box& operator=(const Box& o) {
        if (this != &o) ptr_ = std::make_unique<T>(*o.ptr_);
        return *this;
    }
    Box& operator=(Box&&) noexcept = default;

    T& operator*() noexcept { return *ptr_; }
    const T& operator*() const noexcept { return *ptr_; }
    T* operator->() noexcept { return ptr_.get(); }
    const T* operator->() const noexcept { return ptr_.get(); }

    friend bool operator==(const Box& a, const Box& b) { return *a.ptr_ == *b.ptr_; }

private:
    std::unique_ptr<T> ptr_;
};

struct Expr;

struct NumberLit {
    double value = 0;
    friend bool operator==(const NumberLit&, const NumberLit&) = default;
};
struct TextLit {
    std::string value;
    friend bool operator==(const TextLit&, const TextLit&) = default;
};
struct BoolLit {
    bool value = false;
    friend bool operator==(const BoolLit&, const BoolLit&) = default;
};
struct ErrorLit {
    std::string code;
    friend bool operator==(const ErrorLit&, const ErrorLit&) = default;
};
struct CellRef {
    std::optional<std::string> sheet;
    int col = 1;
    int row = 1;
    bool col_abs = false;
    bool row_abs = false;
    friend bool operator==(const CellRef&, const CellRef&) = default;
};
/// Both endpoints carry the same sheet qualifier (or none).
struct RangeRef {
    CellRef start;
    CellRef end;
    friend bool operator==(const RangeRef&, const RangeRef&) = default;
};
/// Full-column ("A:C") or full-row ("3:5") reference.
struct LineRangeRef {
    enum class Axis { Column, Row };
    std::optional<std::string> sheet;
    Axis axis = Axis::Column;
    int first = 1;
    int last = 1;
    bool first_abs = false;
    bool last_abs = false;
    friend bool operator==(const LineRangeRef&, const LineRangeRef&) = default;
};
/// Reference into another workbook, kept as canonical text.
struct ExternalRef {
    std::string book_sheet;  // "[Book2]Sheet1"
    std::string target;      // "A1" or "A1:B2"
    friend bool operator==(const ExternalRef&, const ExternalRef&) = default;
};
struct NameRef {
    std::string identifier;
    friend bool operator==(const NameRef&, const NameRef&) = default;
};
/// Omitted function argument, as in IF(A1,,0).
struct MissingArg {
    friend bool operator==(const MissingArg&, const MissingArg&) = default;
};
struct FunctionCall {
    std::string name;  // uppercased
    std::vector<Expr> args;
    friend bool operator==(const FunctionCall&, const FunctionCall&) = default;
};

enum class BinaryOperator { Add, Sub, Mul, Div, Pow, Concat, Eq, Ne, Lt, Le, Gt, Ge };
enum class UnaryOperator { Neg, Plus, Percent };

const char* to_string(BinaryOperator op) noexcept;
const char* to_string(UnaryOperator op) noexcept;

struct BinaryOp {
    BinaryOperator op;
    Box<Expr> left;
    Box<Expr> right;
    friend bool operator==(const BinaryOp&, const BinaryOp&) = default;
};
struct UnaryOp {
    UnaryOperator op;
    Box<Expr> operand;
    friend bool operator==(const UnaryOp&, const UnaryOp&) = default;
};

struct Expr {
    using Node = std::variant<NumberLit, TextLit, BoolLit, ErrorLit, CellRef, RangeRef,
                              LineRangeRef, ExternalRef, NameRef, MissingArg, FunctionCall,
                              BinaryOp, UnaryOp>;
    Node node;

    template <class T>
        requires(!std::is_same_v<std::remove_cvref_t<T>, Expr>)
    Expr(T n) : node(std::move(n)) {}

    friend bool operator==(const Expr&, const Expr&) = default;
};

/// Parses a formula body. Precedence from loosest to tightest: comparisons,
/// '&', '+ -', '* /', '^', prefix '-'/'+', postfix '%'. '^' is right
/// associative, everything else left associative. Throws LexError/ParseError.
Expr parse(std::string_view text);

/// Prints an expression so that parse(to_formula(e)) == e. Inserts only the
/// parentheses the precedence table requires.
std::string to_formula(const Expr& e);

/// Sheet name as it must appear before '!' ("Data" or "'My Sheet'").
std::string quote_sheet_name(std::string_view sheet);

/// Moves every relative reference in text by the given offsets, as when a
/// shared formula is filled from its anchor cell. Absolute parts stay put.
/// References pushed off the grid become #REF!.
std::string shift_relative_refs(std::string_view text, int row_delta, int col_delta);

// ---------------------------------------------------------------------------
// Precedents
// ---------------------------------------------------------------------------

/// Ranges larger than this are not enumerated cell by cell; they are
/// recorded like full-column references.
inline constexpr std::int64_t kMaxExpandedRangeCells = std::int64_t(1) << 20;

struct Unresolved {
    enum class Reason { ExternalWorkbook, DefinedName, FullColumnOrRow, UnknownSheet };
    Reason reason;
    std::string text;
    /// Resolved sheet and covered area for FullColumnOrRow entries.
    std::optional<std::string> sheet;
    std::optional<Rect> area;

    friend bool operator==(const Unresolved&, const Unresolved&) = default;
};

const char* to_string(Unresolved::Reason reason) noexcept;

struct PrecedentSet {
    /// Sorted, duplicate-free; every sheet spelled as in the workbook.
    std::vector<CellAddress> cells;
    std::vector<Unresolved> unresolved;

    friend bool operator==(const PrecedentSet&, const PrecedentSet&) = default;
};

/// Resolves every reference of ast relative to home_sheet. Never throws for
/// unresolvable references; those land in PrecedentSet::unresolved.
PrecedentSet extract_precedents(const Expr& ast, std::string_view home_sheet,
                                const Workbook& workbook);

} // namespace cellflow::formula
