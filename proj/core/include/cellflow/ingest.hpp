#pragma once

#include <filesystem>
#include <string_view>

#include "cellflow/workbook.hpp"

namespace cellflow {

inline constexpr std::string_view kFixtureVersion = "cellflow-fixture/1";

/// Reads values and formulas from an OOXML SpreadsheetML package. Shared
/// formulas are expanded to per-cell text and shared strings resolved.
/// Throws IngestError.
Workbook load_xlsx(const std::filesystem::path& path);
Workbook load_xlsx_bytes(std::string_view bytes, std::string workbook_name);

/// Reads the JSON fixture format. Throws IngestError.
Workbook load_fixture(const std::filesystem::path& path);
Workbook load_fixture_text(std::string_view text);

/// Picks load_xlsx or load_fixture by sniffing the first bytes of the file.
Workbook load_workbook(const std::filesystem::path& path);

} // namespace cellflow
