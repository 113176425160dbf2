#include "cellflow/workbook.hpp"

namespace cellflow {

Workbook::Workbook(std::string name, std::vector<Worksheet> sheets, std::vector<DefinedName> names)
    : name_(std::move(name)), sheets_(std::move(sheets)), names_(std::move(names)) {}

std::optional<std::size_t> Workbook::sheet_index(std::string_view name) const {
    for (std::size_t i = 0; i < sheets_.size(); ++i)
        if (iequals(sheets_[i].name, name)) return i;
    return std::nullopt;
}

const Worksheet* Workbook::sheet(std::string_view name) const {
    auto i = sheet_index(name);
    return i ? &sheets_[*i] : nullptr;
}

const DefinedName* Workbook::defined_name(std::string_view name, std::string_view home_sheet) const {
    const DefinedName* global = nullptr;
    for (const auto& n : names_) {
        if (!iequals(n.name, name)) continue;
        if (n.scope) {
            if (iequals(*n.scope, home_sheet)) return &n;
        } else if (!global) {
            global = &n;
        }
    }
    return global;
}

const CellContent* Workbook::find(const CellAddress& a) const {
    const Worksheet* ws = sheet(a.sheet);
    return ws ? ws->find(a.coord()) : nullptr;
}

bool equivalent(const Workbook& a, const Workbook& b) {
    if (a.sheets().size() != b.sheets().size()) return false;
    for (std::size_t i = 0; i < a.sheets().size(); ++i) {
        const auto& x = a.sheets()[i];
        const auto& y = b.sheets()[i];
        if (x.name != y.name || x.hidden != y.hidden || x.cells != y.cells) return false;
    }
    return a.names() == b.names();
}

} // namespace cellflow
