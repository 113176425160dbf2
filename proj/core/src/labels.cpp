#include <charconv>

#include "cellflow/structure.hpp"

namespace cellflow::structure {

std::string label_text(const CellContent& content) {
    if (const auto* c = std::get_if<Constant>(&content)) {
        if (const auto* s = std::get_if<std::string>(&c->value)) return *s;
        if (const auto* d = std::get_if<double>(&c->value)) {
            char buf[64];
            auto [end, ec] = std::to_chars(buf, buf + sizeof buf, *d);
            return std::string(buf, end);
        }
        if (const auto* b = std::get_if<bool>(&c->value)) return *b ? "TRUE" : "FALSE";
        return std::get<ErrorValue>(c->value).code;
    }
    return "=" + std::get<Formula>(content).text;
}

std::map<Coord, CellLabel> compute_labels(const DataBlock& block, const Worksheet& sheet, const CellTypes& types,
                                          std::size_t sheet_index) {
    // Members are row-major, so the nearest Label to the left is the last one
    // seen on the current row and the nearest above is the last one seen in
    // the column.
    std::map<Coord, CellLabel> out;
    std::map<int, std::string> above;
    int current_row = 0;
    std::optional<std::string> left;
    for (const Coord& c : block.members) {
        if (!block.rect.contains(c)) continue;
        if (c.row != current_row) {
            current_row = c.row;
            left.reset();
        }
        CellType t = types.at(sheet_index, c);
        if (t == CellType::Label) {
            std::string text = label_text(*sheet.find(c));
            left = text;
            above[c.col] = std::move(text);
            continue;
        }
        if (t != CellType::Data && t != CellType::Formula) continue;

        CellLabel label;
        label.row_label = left;
        if (auto it = above.find(c.col); it != above.end()) label.col_label = it->second;
        if (label.row_label && label.col_label)
            label.display = *label.col_label + " " + *label.row_label;
        else if (label.row_label)
            label.display = *label.row_label;
        else if (label.col_label)
            label.display = *label.col_label;
        else
            label.display = a1(c);
        out.emplace(c, std::move(label));
    }
    return out;
}

} // namespace cellflow::structure
