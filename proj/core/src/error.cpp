#include "cellflow/error.hpp"

namespace cellflow {

namespace {

std::string ingest_message(IngestError::Kind kind, const std::string& where,
                           const std::string& detail) {
    std::string msg = to_string(kind);
    if (!where.empty()) msg += "(" + where + ")";
    if (!detail.empty()) msg += ": " + detail;
    return msg;
}

} // namespace

IngestError::IngestError(Kind kind, std::string where, const std::string& detail)
    : Error(ingest_message(kind, where, detail)), kind_(kind), where_(std::move(where)) {}

const char* to_string(IngestError::Kind kind) noexcept {
    switch (kind) {
    case IngestError::Kind::Io: return "IoError";
    case IngestError::Kind::NotAZip: return "NotAZip";
    case IngestError::Kind::MissingWorkbookPart: return "MissingWorkbookPart";
    case IngestError::Kind::MalformedSheetXml: return "MalformedSheetXml";
    case IngestError::Kind::SchemaViolation: return "SchemaViolation";
    case IngestError::Kind::DuplicateSheetName: return "DuplicateSheetName";
    case IngestError::Kind::DuplicateCellAddress: return "DuplicateCellAddress";
    }
    return "?";
}

LexError::LexError(std::size_t offset, const std::string& detail)
    : FormulaError(offset, "LexError at offset " + std::to_string(offset) + ": " + detail) {}

ParseError::ParseError(std::size_t offset, std::string expected)
    : FormulaError(offset, "ParseError at offset " + std::to_string(offset) + ": expected " + expected),
      expected_(std::move(expected)) {}

FormulaCellError::FormulaCellError(std::string cell, std::string formula, const FormulaError& cause)
    : Error(cell + ": " + cause.what() + " in '=" + formula + "'"),
      cell_(std::move(cell)),
      formula_(std::move(formula)),
      offset_(cause.offset()) {}

ViewError::ViewError(Kind kind, std::string subject)
    : Error(std::string(kind == Kind::UnknownSheet ? "UnknownSheet" : "UnknownBlock") + ": " + subject),
      kind_(kind),
      subject_(std::move(subject)) {}

} // namespace cellflow
