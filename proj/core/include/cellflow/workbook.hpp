#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cellflow/address.hpp"

namespace cellflow {

/// Spreadsheet error literal such as "#N/A" or "#DIV/0!".
struct ErrorValue {
    std::string code;
    friend bool operator==(const ErrorValue&, const ErrorValue&) = default;
};

/// A constant cell value. Dates arrive as their serial number.
using Value = std::variant<double, std::string, bool, ErrorValue>;

struct Constant {
    Value value;
    friend bool operator==(const Constant&, const Constant&) = default;
};

/// Formula body without the leading '='. cached_value is the last value
/// the authoring application stored, when there was one.
struct Formula {
    std::string text;
    std::optional<Value> cached_value;
    friend bool operator==(const Formula&, const Formula&) = default;
};

/// Content of a non-empty cell. Empty cells are never stored.
using CellContent = std::variant<Constant, Formula>;

inline bool is_formula(const CellContent& c) noexcept {
    return std::holds_alternative<Formula>(c);
}

struct Worksheet {
    std::string name;
    bool hidden = false;
    std::map<Coord, CellContent> cells;

    const CellContent* find(Coord c) const {
        auto it = cells.find(c);
        return it == cells.end() ? nullptr : &it->second;
    }
    bool empty() const noexcept { return cells.empty(); }
};

/// Named range. scope is the owning sheet for sheet-local names.
struct DefinedName {
    std::string name;
    std::optional<std::string> scope;
    std::string text;
    friend bool operator==(const DefinedName&, const DefinedName&) = default;
};

/// Immutable after loading: sheet names are unique ignoring case and no
/// cell is stored empty.
class Workbook {
public:
    Workbook() = default;
    Workbook(std::string name, std::vector<Worksheet> sheets, std::vector<DefinedName> names = {});

    const std::string& name() const noexcept { return name_; }
    const std::vector<Worksheet>& sheets() const noexcept { return sheets_; }
    const std::vector<DefinedName>& names() const noexcept { return names_; }

    /// Case-insensitive sheet lookup.
    std::optional<std::size_t> sheet_index(std::string_view name) const;
    const Worksheet* sheet(std::string_view name) const;

    /// Sheet-local definitions take precedence over workbook-level ones.
    const DefinedName* defined_name(std::string_view name, std::string_view home_sheet) const;

    const CellContent* find(const CellAddress& a) const;

private:
    std::string name_;
    std::vector<Worksheet> sheets_;
    std::vector<DefinedName> names_;
};

/// Canonical comparison: same sheets in the same order (names, hidden flags,
/// sparse cell maps) and the same defined names. The workbook name is ignored.
bool equivalent(const Workbook& a, const Workbook& b);

} // namespace cellflow
