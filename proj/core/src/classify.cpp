#include <set>

#include "cellflow/structure.hpp"

namespace cellflow::structure {

const char* to_string(CellType t) noexcept {
    switch (t) {
    case CellType::Data: return "Data";
    case CellType::Formula: return "Formula";
    case CellType::Label: return "Label";
    case CellType::Empty: return "Empty";
    }
    return "?";
}

CellType CellTypes::at(std::size_t sheet, Coord c) const {
    if (sheet >= sheets_.size()) return CellType::Empty;
    auto it = sheets_[sheet].find(c);
    return it == sheets_[sheet].end() ? CellType::Empty : it->second;
}

CellType CellTypes::at(const Workbook& wb, const CellAddress& a) const {
    auto idx = wb.sheet_index(a.sheet);
    return idx ? at(*idx, a.coord()) : CellType::Empty;
}

CellTypes classify_cells(const Workbook& workbook, const PrecedentMap& precedents) {
    std::set<CellAddress> referenced;
    for (const auto& [_, set] : precedents) referenced.insert(set.cells.begin(), set.cells.end());

    CellTypes types(workbook.sheets().size());
    for (std::size_t s = 0; s < workbook.sheets().size(); ++s) {
        const Worksheet& ws = workbook.sheets()[s];
        for (const auto& [coord, content] : ws.cells) {
            CellType t = CellType::Data;
            if (is_formula(content)) {
                t = CellType::Formula;
            } else if (std::holds_alternative<std::string>(std::get<Constant>(content).value) &&
                       !referenced.contains(CellAddress{ws.name, coord.col, coord.row})) {
                t = CellType::Label;
            }
            types.set(s, coord, t);
        }
    }
    return types;
}

} // namespace cellflow::structure
