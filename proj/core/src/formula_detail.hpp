#pragma once

#include <optional>
#include <string_view>

namespace cellflow::formula::detail {

struct CellWord {
    int col = 1;
    int row = 1;
    bool col_abs = false;
    bool row_abs = false;
};

/// "$B$2" style word -> parts; nullopt when not a valid in-grid A1 reference.
std::optional<CellWord> parse_cell_word(std::string_view w);

} // namespace cellflow::formula::detail
