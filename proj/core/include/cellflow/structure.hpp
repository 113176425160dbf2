#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cellflow/address.hpp"
#include "cellflow/formula.hpp"
#include "cellflow/workbook.hpp"

namespace cellflow::structure {

enum class CellType { Data, Formula, Label, Empty };

const char* to_string(CellType t) noexcept;

/// Precedents of every formula cell, keyed by the formula's address.
using PrecedentMap = std::map<CellAddress, formula::PrecedentSet>;

/// Cell types for a whole workbook. Addresses that are not stored report Empty.
class CellTypes {
public:
    explicit CellTypes(std::size_t sheet_count = 0) : sheets_(sheet_count) {}

    CellType at(std::size_t sheet, Coord c) const;
    CellType at(const Workbook& wb, const CellAddress& a) const;

    void set(std::size_t sheet, Coord c, CellType t) { sheets_.at(sheet)[c] = t; }
    const std::map<Coord, CellType>& sheet(std::size_t index) const { return sheets_.at(index); }
    std::size_t sheet_count() const noexcept { return sheets_.size(); }

private:
    std::vector<std::map<Coord, CellType>> sheets_;
};

/// Formula cells are Formula; text constants that no formula references are
/// Label; every other constant is Data.
CellTypes classify_cells(const Workbook& workbook, const PrecedentMap& precedents);

/// Rectangle of non-empty cells separated from other blocks by empty cells.
struct DataBlock {
    std::string id;  // "<sheet>!<top-left>:<bottom-right>"
    std::string sheet;
    Rect rect;
    std::vector<Coord> members;  // row-major
    std::string name;

    friend bool operator==(const DataBlock&, const DataBlock&) = default;
};

std::string block_id(std::string_view sheet, const Rect& rect);

/// Groups 8-connected non-empty cells, takes bounding rectangles and merges
/// rectangles that overlap or touch until none do. Sorted by (top, left).
/// The name of each block is left equal to its id; name_blocks() fills it in.
std::vector<DataBlock> detect_blocks(const Worksheet& sheet);

/// Text of the first Label cell in row-major order inside the block, or the
/// block id when the block has none.
void name_blocks(std::vector<DataBlock>& blocks, const Worksheet& sheet, const CellTypes& types,
                 std::size_t sheet_index);

struct CellLabel {
    std::optional<std::string> row_label;
    std::optional<std::string> col_label;
    std::string display;

    friend bool operator==(const CellLabel&, const CellLabel&) = default;
};

/// Labels for the Data and Formula cells of one block: the nearest Label to
/// the left in the same row and the nearest Label above in the same column,
/// both searched inside the block rectangle only.
std::map<Coord, CellLabel> compute_labels(const DataBlock& block, const Worksheet& sheet,
                                          const CellTypes& types, std::size_t sheet_index);

/// Display text of a Label cell.
std::string label_text(const CellContent& content);

} // namespace cellflow::structure
