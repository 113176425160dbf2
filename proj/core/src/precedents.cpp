#include <algorithm>

#include "cellflow/error.hpp"
#include "cellflow/formula.hpp"

namespace cellflow::formula {

namespace {

class Collector {
public:
    Collector(std::string_view home, const Workbook& wb) : home_(home), wb_(wb) {}

    void visit(const Expr& e) { std::visit([this](const auto& n) { on(n); }, e.node); }

    PrecedentSet finish() {
        std::sort(result_.cells.begin(), result_.cells.end());
        result_.cells.erase(std::unique(result_.cells.begin(), result_.cells.end()), result_.cells.end());
        return std::move(result_);
    }

private:
    std::string_view home_;
    const Workbook& wb_;
    PrecedentSet result_;
    int name_depth_ = 0;

    template <class T>
    void on(const T&) {}

    void on(const FunctionCall& f) {
        for (const auto& a : f.args) visit(a);
    }
    void on(const BinaryOp& b) {
        visit(*b.left);
        visit(*b.right);
    }
    void on(const UnaryOp& u) { visit(*u.operand); }

    /// Ingest spelling of the sheet a reference points at.
    const std::string* sheet_of(const std::optional<std::string>& qualifier) const {
        auto idx = wb_.sheet_index(qualifier ? std::string_view(*qualifier) : home_);
        return idx ? &wb_.sheets()[*idx].name : nullptr;
    }

    void unknown_sheet(const Expr& e) {
        result_.unresolved.push_back({Unresolved::Reason::UnknownSheet, to_formula(e), std::nullopt, std::nullopt});
    }

    void add_rect(const std::string& sheet, Rect r, const Expr& source) {
        if (r.area() > kMaxExpandedRangeCells) {
            result_.unresolved.push_back({Unresolved::Reason::FullColumnOrRow, to_formula(source), sheet, r});
            return;
        }
        for (int row = r.top; row <= r.bottom; ++row)
            for (int col = r.left; col <= r.right; ++col) result_.cells.push_back(CellAddress{sheet, col, row});
    }

    void on(const CellRef& c) {
        const std::string* sheet = sheet_of(c.sheet);
        if (!sheet) return unknown_sheet(c);
        result_.cells.push_back(CellAddress{*sheet, c.col, c.row});
    }

    void on(const RangeRef& r) {
        const std::string* sheet = sheet_of(r.start.sheet);
        if (!sheet) return unknown_sheet(r);
        Rect rect{std::min(r.start.row, r.end.row), std::min(r.start.col, r.end.col),
                  std::max(r.start.row, r.end.row), std::max(r.start.col, r.end.col)};
        add_rect(*sheet, rect, r);
    }

    void on(const LineRangeRef& l) {
        const std::string* sheet = sheet_of(l.sheet);
        if (!sheet) return unknown_sheet(l);
        int lo = std::min(l.first, l.last);
        int hi = std::max(l.first, l.last);
        Rect area = l.axis == LineRangeRef::Axis::Column ? Rect{1, lo, kMaxRows, hi} : Rect{lo, 1, hi, kMaxColumns};
        result_.unresolved.push_back({Unresolved::Reason::FullColumnOrRow, to_formula(l), *sheet, area});
    }

    void on(const ExternalRef& x) {
        result_.unresolved.push_back({Unresolved::Reason::ExternalWorkbook, to_formula(x), std::nullopt, std::nullopt});
    }

    void on(const NameRef& n) {
        const DefinedName* def = wb_.defined_name(n.identifier, home_);
        auto unresolved = [&] {
            result_.unresolved.push_back({Unresolved::Reason::DefinedName, n.identifier, std::nullopt, std::nullopt});
        };
        if (!def || name_depth_ > 0) return unresolved();
        std::string_view body = def->text;
        if (!body.empty() && body.front() == '=') body.remove_prefix(1);
        std::optional<Expr> target;
        try {
            target = parse(body);
        } catch (const Error&) {
            return unresolved();
        }
        // Only a single rectangle on a known sheet resolves.
        const CellRef* cell = std::get_if<CellRef>(&target->node);
        const RangeRef* range = std::get_if<RangeRef>(&target->node);
        const std::optional<std::string>* qualifier = cell ? &cell->sheet : range ? &range->start.sheet : nullptr;
        if (!qualifier) return unresolved();
        std::optional<std::string> sheet_name = *qualifier ? *qualifier : (def->scope ? def->scope : std::nullopt);
        if (!sheet_name || !wb_.sheet_index(*sheet_name)) return unresolved();
        ++name_depth_;
        if (cell) {
            CellRef c = *cell;
            c.sheet = sheet_name;
            on(c);
        } else {
            RangeRef r = *range;
            r.start.sheet = r.end.sheet = sheet_name;
            on(r);
        }
        --name_depth_;
    }
};

} // namespace

const char* to_string(Unresolved::Reason reason) noexcept {
    switch (reason) {
    case Unresolved::Reason::ExternalWorkbook: return "ExternalWorkbook";
    case Unresolved::Reason::DefinedName: return "DefinedName";
    case Unresolved::Reason::FullColumnOrRow: return "FullColumnOrRow";
    case Unresolved::Reason::UnknownSheet: return "UnknownSheet";
    }
    return "?";
}

PrecedentSet extract_precedents(const Expr& ast, std::string_view home_sheet, const Workbook& workbook) {
    Collector c(home_sheet, workbook);
    c.visit(ast);
    return c.finish();
}

} // namespace cellflow::formula
