#include "random_formula.hpp"

namespace cellflow::testing {

using namespace formula;

const std::vector<std::string>& reference_sheet_pool() {
    static const std::vector<std::string> pool{"Sheet1", "data", "DATA", "My Sheet", "O'Brien",
                                               "lab-osiris", "2019", "A1", "Ghost"};
    return pool;
}

const std::vector<std::string>& name_pool() {
    static const std::vector<std::string> pool{"Rate", "rate", "Block", "LocalRate", "Ext",
                                               "Pair", "Chain", "Missing", "_total"};
    return pool;
}

Workbook reference_workbook() {
    std::vector<Worksheet> sheets;
    for (const char* n : {"Sheet1", "Data", "My Sheet", "O'Brien", "lab-osiris", "2019", "A1"}) {
        Worksheet ws;
        ws.name = n;
        ws.cells[{1, 1}] = Constant{1.0};
        sheets.push_back(std::move(ws));
    }
    std::vector<DefinedName> names{
        {"Rate", std::nullopt, "Sheet1!$B$1"},
        {"Block", std::nullopt, "Data!$A$1:$C$3"},
        {"LocalRate", std::string("My Sheet"), "$D$4"},
        {"Ext", std::nullopt, "[Book2]Sheet1!A1"},
        {"Pair", std::nullopt, "Sheet1!A1 Sheet1!B2"},
        {"Chain", std::nullopt, "Rate"},
        {"_total", std::nullopt, "SUM(Sheet1!A1:A3)"},
    };
    return Workbook("reference", std::move(sheets), std::move(names));
}

std::string FormulaGenerator::text() {
    static const std::vector<std::string> atoms{"a", "b", "Z", "0", " ", "\"", "\"\"", "é", "&", ",", "(", "!", "'", "%"};
    std::string s;
    int n = pick(0, 6);
    for (int i = 0; i < n; ++i) s += atoms[pick(0, static_cast<int>(atoms.size()) - 1)];
    return s;
}

CellRef FormulaGenerator::cell_ref(bool qualify) {
    CellRef c;
    if (qualify) {
        const auto& pool = reference_sheet_pool();
        c.sheet = pool[pick(0, static_cast<int>(pool.size()) - 1)];
    }
    c.col = chance(0.05) ? pick(1, kMaxColumns) : pick(1, 30);
    c.row = chance(0.05) ? pick(1, kMaxRows) : pick(1, 60);
    c.col_abs = chance(0.3);
    c.row_abs = chance(0.3);
    return c;
}

RangeRef FormulaGenerator::range_ref(bool small_only) {
    RangeRef r;
    r.start = cell_ref(chance(0.4));
    r.end = cell_ref(false);
    r.end.sheet = r.start.sheet;
    if (!small_only && chance(0.05)) {
        // Too large to enumerate.
        r.start.col = pick(1, 10);
        r.start.row = pick(1, 10);
        r.end.col = r.start.col + pick(40, 200);
        r.end.row = r.start.row + pick(30000, 60000);
        return r;
    }
    r.start.col = std::min(r.start.col, kMaxColumns - 9);
    r.start.row = std::min(r.start.row, kMaxRows - 9);
    r.end.col = r.start.col + pick(0, 9);
    r.end.row = r.start.row + pick(0, 9);
    if (chance(0.3)) std::swap(r.start.col, r.end.col);
    if (chance(0.3)) std::swap(r.start.row, r.end.row);
    return r;
}

Expr FormulaGenerator::leaf() {
    static const std::vector<double> numbers{0, 1, 2, 3.5, 10, 0.25, 1e-3, 12345.678, 1e20, 6.02e23, 100, 0.1};
    static const std::vector<std::string> errors{"#N/A", "#DIV/0!", "#REF!", "#VALUE!", "#NAME?", "#NUM!", "#NULL!"};
    switch (pick(0, 10)) {
    case 0: return NumberLit{numbers[pick(0, static_cast<int>(numbers.size()) - 1)]};
    case 1: return NumberLit{static_cast<double>(pick(0, 100000))};
    case 2: return TextLit{text()};
    case 3: return BoolLit{chance(0.5)};
    case 4: return ErrorLit{errors[pick(0, static_cast<int>(errors.size()) - 1)]};
    case 5:
    case 6: return cell_ref(chance(0.4));
    case 7: return range_ref(false);
    case 8: {
        if (chance(0.5)) return NameRef{name_pool()[pick(0, static_cast<int>(name_pool().size()) - 1)]};
        if (chance(0.5)) {
            LineRangeRef l;
            if (chance(0.4)) l.sheet = reference_sheet_pool()[pick(0, static_cast<int>(reference_sheet_pool().size()) - 1)];
            l.axis = chance(0.5) ? LineRangeRef::Axis::Column : LineRangeRef::Axis::Row;
            int limit = l.axis == LineRangeRef::Axis::Column ? kMaxColumns : kMaxRows;
            l.first = chance(0.1) ? pick(1, limit) : pick(1, 30);
            l.last = chance(0.1) ? pick(1, limit) : pick(1, 30);
            l.first_abs = chance(0.3);
            l.last_abs = chance(0.3);
            return l;
        }
        static const std::vector<std::string> books{"[Book2]Sheet1", "[1]Data", "[Other Book.xlsx]My Sheet"};
        ExternalRef x{books[pick(0, static_cast<int>(books.size()) - 1)], ""};
        RangeRef r = range_ref(true);
        r.start.sheet = r.end.sheet = std::nullopt;
        x.target = chance(0.5) ? to_formula(Expr(cell_ref(false))) : to_formula(Expr(r));
        return x;
    }
    default: return cell_ref(false);
    }
}

Expr FormulaGenerator::expr(int depth) {
    if (depth >= max_depth_ || chance(0.25 + 0.15 * depth)) return leaf();
    switch (pick(0, 5)) {
    case 0:
    case 1: {
        static const std::vector<BinaryOperator> ops{
            BinaryOperator::Add, BinaryOperator::Sub, BinaryOperator::Mul, BinaryOperator::Div,
            BinaryOperator::Pow, BinaryOperator::Concat, BinaryOperator::Eq, BinaryOperator::Ne,
            BinaryOperator::Lt,  BinaryOperator::Le,     BinaryOperator::Gt, BinaryOperator::Ge};
        auto op = ops[pick(0, static_cast<int>(ops.size()) - 1)];
        return BinaryOp{op, expr(depth + 1), expr(depth + 1)};
    }
    case 2: {
        static const std::vector<UnaryOperator> ops{UnaryOperator::Neg, UnaryOperator::Plus, UnaryOperator::Percent};
        return UnaryOp{ops[pick(0, 2)], expr(depth + 1)};
    }
    case 3:
    case 4: {
        static const std::vector<std::string> names{"SUM", "IF", "AVERAGE", "ROUND", "VLOOKUP", "MYFUNC", "NOW", "LOG10"};
        FunctionCall f{names[pick(0, static_cast<int>(names.size()) - 1)], {}};
        int n = pick(0, 4);
        for (int i = 0; i < n; ++i) f.args.push_back(n >= 2 && chance(0.1) ? Expr(MissingArg{}) : expr(depth + 1));
        return f;
    }
    default: return leaf();
    }
}

} // namespace cellflow::testing
