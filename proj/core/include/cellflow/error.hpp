#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cellflow {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Failure while reading a workbook from disk or from a fixture document.
class IngestError : public Error {
public:
    enum class Kind {
        Io,
        NotAZip,
        MissingWorkbookPart,
        MalformedSheetXml,
        SchemaViolation,
        DuplicateSheetName,
        DuplicateCellAddress,
    };

    IngestError(Kind kind, std::string where, const std::string& detail = {});

    Kind kind() const noexcept { return kind_; }
    /// Archive member, JSON pointer, sheet name or address the error refers to.
    const std::string& where() const noexcept { return where_; }

private:
    Kind kind_;
    std::string where_;
};

const char* to_string(IngestError::Kind kind) noexcept;

/// Lexing or parsing failure inside a formula body; offset is a byte index.
class FormulaError : public Error {
public:
    FormulaError(std::size_t offset, const std::string& what)
        : Error(what), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class LexError : public FormulaError {
public:
    LexError(std::size_t offset, const std::string& detail);
};

class ParseError : public FormulaError {
public:
    ParseError(std::size_t offset, std::string expected);
    const std::string& expected() const noexcept { return expected_; }

private:
    std::string expected_;
};

/// A formula cell that could not be parsed while analysing a workbook.
class FormulaCellError : public Error {
public:
    FormulaCellError(std::string cell, std::string formula, const FormulaError& cause);
    const std::string& cell() const noexcept { return cell_; }
    const std::string& formula() const noexcept { return formula_; }
    std::size_t offset() const noexcept { return offset_; }

private:
    std::string cell_;
    std::string formula_;
    std::size_t offset_;
};

/// View selection that names a sheet or block the graph does not contain.
class ViewError : public Error {
public:
    enum class Kind { UnknownSheet, UnknownBlock };
    ViewError(Kind kind, std::string subject);
    Kind kind() const noexcept { return kind_; }
    const std::string& subject() const noexcept { return subject_; }

private:
    Kind kind_;
    std::string subject_;
};

/// Malformed or version-mismatched GraphDocument.
class DocumentError : public Error {
public:
    using Error::Error;
};

} // namespace cellflow
