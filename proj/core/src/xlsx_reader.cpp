#include <charconv>
#include <chrono>
#include <fstream>
#include <map>
#include <sstream>

#include "cellflow/error.hpp"
#include "cellflow/formula.hpp"
#include "cellflow/ingest.hpp"
#include "xml_dom.hpp"
#include "zip_archive.hpp"

namespace cellflow {

namespace {

using detail::XmlElement;
using detail::ZipArchive;

constexpr std::string_view kOfficeDocument = "/officeDocument";
constexpr std::string_view kWorksheetRel = "/worksheet";
constexpr std::string_view kSharedStringsRel = "/sharedStrings";

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::string directory_of(std::string_view part) {
    auto slash = part.rfind('/');
    return slash == std::string_view::npos ? std::string() : std::string(part.substr(0, slash + 1));
}

/// Resolves a relationship target against the directory of its source part.
std::string resolve_target(std::string_view base_dir, std::string_view target) {
    std::string joined = (!target.empty() && target.front() == '/') ? std::string(target.substr(1))
                                                                     : std::string(base_dir) + std::string(target);
    std::vector<std::string> parts;
    std::stringstream ss(joined);
    std::string piece;
    while (std::getline(ss, piece, '/')) {
        if (piece.empty() || piece == ".") continue;
        if (piece == "..") {
            if (!parts.empty()) parts.pop_back();
        } else {
            parts.push_back(piece);
        }
    }
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += '/';
        out += parts[i];
    }
    return out;
}

std::string rels_part_for(std::string_view part) {
    auto slash = part.rfind('/');
    std::string dir = slash == std::string_view::npos ? "" : std::string(part.substr(0, slash + 1));
    std::string file(slash == std::string_view::npos ? part : part.substr(slash + 1));
    return dir + "_rels/" + file + ".rels";
}

struct Relationship {
    std::string type;
    std::string target;
};

std::map<std::string, Relationship> read_rels(const ZipArchive& zip, std::string_view source_part) {
    std::map<std::string, Relationship> out;
    std::string rels_name = rels_part_for(source_part);
    auto bytes = zip.read(rels_name);
    if (!bytes) return out;
    XmlElement root = detail::parse_xml(*bytes, rels_name);
    std::string base = directory_of(source_part);
    for (const auto& r : root.children) {
        if (r.name != "Relationship") continue;
        const std::string* id = r.attr("Id");
        const std::string* type = r.attr("Type");
        const std::string* target = r.attr("Target");
        const std::string* mode = r.attr("TargetMode");
        if (!id || !type || !target) continue;
        if (mode && *mode == "External") continue;
        out[*id] = Relationship{*type, resolve_target(base, *target)};
    }
    return out;
}

std::string locate_workbook_part(const ZipArchive& zip) {
    if (auto bytes = zip.read("_rels/.rels")) {
        XmlElement root = detail::parse_xml(*bytes, "_rels/.rels");
        for (const auto& r : root.children) {
            const std::string* type = r.attr("Type");
            const std::string* target = r.attr("Target");
            if (type && target && ends_with(*type, kOfficeDocument)) return resolve_target("", *target);
        }
    }
    return "xl/workbook.xml";
}

std::vector<std::string> read_shared_strings(const ZipArchive& zip, const std::string& part) {
    std::vector<std::string> out;
    auto bytes = zip.read(part);
    if (!bytes) return out;
    XmlElement root = detail::parse_xml(*bytes, part);
    for (const auto& si : root.children)
        if (si.name == "si") out.push_back(si.inner_t_text());
    return out;
}

[[noreturn]] void malformed(const std::string& member, const std::string& detail) {
    throw IngestError(IngestError::Kind::MalformedSheetXml, member, detail);
}

double parse_number(const std::string& text, const std::string& member) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) malformed(member, "bad numeric value '" + text + "'");
    return v;
}

/// ISO 8601 date or date-time ("2011-03-01", "2011-03-01T12:00:00") to a
/// 1900-system serial number.
double parse_iso_date(const std::string& text, const std::string& member) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0;
    double sec = 0;
    auto bad = [&]() { malformed(member, "bad ISO 8601 date '" + text + "'"); };
    auto field = [&](std::size_t pos, std::size_t len, int& out) {
        if (pos + len > text.size()) bad();
        auto [p, ec] = std::from_chars(text.data() + pos, text.data() + pos + len, out);
        if (ec != std::errc() || p != text.data() + pos + len) bad();
    };
    if (text.size() < 10 || text[4] != '-' || text[7] != '-') bad();
    field(0, 4, y);
    field(5, 2, mo);
    field(8, 2, d);
    if (text.size() > 10) {
        if (text[10] != 'T' || text.size() < 19 || text[13] != ':' || text[16] != ':') bad();
        field(11, 2, h);
        field(14, 2, mi);
        std::string rest = text.substr(17);
        if (!rest.empty() && rest.back() == 'Z') rest.pop_back();
        auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), sec);
        if (ec != std::errc() || p != rest.data() + rest.size()) bad();
    }
    using namespace std::chrono;
    year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) bad();
    double days = static_cast<double>((sys_days{ymd} - sys_days{year{1899} / December / 30}).count());
    return days + (h * 3600.0 + mi * 60.0 + sec) / 86400.0;
}

struct SharedFormula {
    Coord anchor;
    std::string text;
};

Worksheet read_sheet(const ZipArchive& zip, const std::string& part, std::string name, bool hidden,
                     const std::vector<std::string>& shared_strings) {
    auto bytes = zip.read(part);
    if (!bytes) throw IngestError(IngestError::Kind::MissingWorkbookPart, part, "worksheet part missing");
    XmlElement root = detail::parse_xml(*bytes, part);

    Worksheet ws;
    ws.name = std::move(name);
    ws.hidden = hidden;
    std::map<std::string, SharedFormula> shared;

    const XmlElement* data = root.child("sheetData");
    if (!data) return ws;

    int implicit_row = 0;
    for (const auto& row : data->children) {
        if (row.name != "row") continue;
        int row_index = implicit_row + 1;
        if (const std::string* r = row.attr("r")) {
            int parsed = 0;
            auto [p, ec] = std::from_chars(r->data(), r->data() + r->size(), parsed);
            if (ec != std::errc() || p != r->data() + r->size() || parsed < 1 || parsed > kMaxRows)
                malformed(part, "bad row index '" + *r + "'");
            row_index = parsed;
        }
        implicit_row = row_index;

        int implicit_col = 0;
        for (const auto& c : row.children) {
            if (c.name != "c") continue;
            Coord at{row_index, implicit_col + 1};
            if (const std::string* ref = c.attr("r")) {
                auto parsed = parse_a1(*ref);
                if (!parsed) malformed(part, "bad cell reference '" + *ref + "'");
                at = *parsed;
            }
            implicit_col = at.col;

            std::string type = c.attr("t") ? *c.attr("t") : "n";
            const XmlElement* v = c.child("v");
            const XmlElement* f = c.child("f");
            const XmlElement* is = c.child("is");

            std::optional<Value> value;
            if (type == "inlineStr") {
                if (is) value = is->inner_t_text();
            } else if (v) {
                if (type == "s") {
                    std::size_t idx = 0;
                    auto [p, ec] = std::from_chars(v->text.data(), v->text.data() + v->text.size(), idx);
                    if (ec != std::errc() || idx >= shared_strings.size())
                        malformed(part, "shared string index out of range at " + a1(at));
                    value = shared_strings[idx];
                } else if (type == "str") {
                    value = v->text;
                } else if (type == "d") {
                    value = parse_iso_date(v->text, part);
                } else if (type == "b") {
                    value = v->text == "1" || v->text == "true";
                } else if (type == "e") {
                    value = ErrorValue{v->text};
                } else {
                    value = parse_number(v->text, part);
                }
            }

            std::optional<std::string> formula_text;
            if (f) {
                std::string ftype = f->attr("t") ? *f->attr("t") : "normal";
                if (ftype == "shared") {
                    const std::string* si = f->attr("si");
                    if (!si) malformed(part, "shared formula without si at " + a1(at));
                    if (!f->text.empty()) {
                        shared[*si] = SharedFormula{at, f->text};
                        formula_text = f->text;
                    } else {
                        auto it = shared.find(*si);
                        if (it == shared.end()) malformed(part, "shared formula " + *si + " used before its anchor");
                        formula_text = formula::shift_relative_refs(it->second.text, at.row - it->second.anchor.row,
                                                                    at.col - it->second.anchor.col);
                    }
                } else if (!f->text.empty()) {
                    formula_text = f->text;
                }
            }

            CellContent content;
            if (formula_text) {
                content = Formula{*formula_text, value};
            } else if (value) {
                content = Constant{*value};
            } else {
                continue;  // styled but empty
            }
            if (!ws.cells.emplace(at, std::move(content)).second)
                malformed(part, "duplicate cell " + a1(at));
        }
    }
    return ws;
}

} // namespace

Workbook load_xlsx_bytes(std::string_view bytes, std::string workbook_name) {
    ZipArchive zip{std::string(bytes)};

    std::string workbook_part = locate_workbook_part(zip);
    auto workbook_bytes = zip.read(workbook_part);
    if (!workbook_bytes) throw IngestError(IngestError::Kind::MissingWorkbookPart, workbook_part);
    XmlElement book = detail::parse_xml(*workbook_bytes, workbook_part);

    auto rels = read_rels(zip, workbook_part);
    std::string shared_part = directory_of(workbook_part) + "sharedStrings.xml";
    for (const auto& [id, rel] : rels)
        if (ends_with(rel.type, kSharedStringsRel)) shared_part = rel.target;
    auto shared_strings = read_shared_strings(zip, shared_part);

    std::vector<Worksheet> sheets;
    const XmlElement* sheet_list = book.child("sheets");
    if (!sheet_list) throw IngestError(IngestError::Kind::MissingWorkbookPart, workbook_part, "no <sheets> element");
    std::vector<std::string> all_sheet_names;  // includes chartsheets, for localSheetId
    for (const auto& s : sheet_list->children) {
        if (s.name != "sheet") continue;
        const std::string* name = s.attr("name");
        const std::string* rid = s.attr("id");
        if (!name || !rid) malformed(workbook_part, "sheet without name or r:id");
        all_sheet_names.push_back(*name);
        auto rel = rels.find(*rid);
        if (rel == rels.end()) throw IngestError(IngestError::Kind::MissingWorkbookPart, *rid, "unknown relationship");
        if (!ends_with(rel->second.type, kWorksheetRel)) continue;  // chartsheets, dialogs
        const std::string* state = s.attr("state");
        bool hidden = state && (*state == "hidden" || *state == "veryHidden");
        for (const auto& existing : sheets)
            if (iequals(existing.name, *name)) throw IngestError(IngestError::Kind::DuplicateSheetName, *name);
        sheets.push_back(read_sheet(zip, rel->second.target, *name, hidden, shared_strings));
    }

    std::vector<DefinedName> names;
    if (const XmlElement* defined = book.child("definedNames")) {
        for (const auto& d : defined->children) {
            const std::string* name = d.attr("name");
            if (d.name != "definedName" || !name) continue;
            if (name->rfind("_xlnm.", 0) == 0) continue;  // print areas and other built-ins
            DefinedName dn{*name, std::nullopt, d.text};
            if (const std::string* local = d.attr("localSheetId")) {
                std::size_t idx = std::stoul(*local);
                if (idx < all_sheet_names.size()) dn.scope = all_sheet_names[idx];
            }
            names.push_back(std::move(dn));
        }
    }
    return Workbook(std::move(workbook_name), std::move(sheets), std::move(names));
}

Workbook load_xlsx(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestError(IngestError::Kind::Io, path.string(), "cannot open file");
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return load_xlsx_bytes(bytes, path.stem().string());
}

Workbook load_workbook(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestError(IngestError::Kind::Io, path.string(), "cannot open file");
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.size() >= 4 && bytes.compare(0, 4, "PK\x03\x04") == 0) return load_xlsx_bytes(bytes, path.stem().string());
    auto first = bytes.find_first_not_of(" \t\r\n");
    // UTF-8 BOM before a JSON document
    if (bytes.compare(0, 3, "\xEF\xBB\xBF") == 0) first = bytes.find_first_not_of(" \t\r\n", 3);
    if (first != std::string::npos && bytes[first] == '{') return load_fixture_text(bytes);
    throw IngestError(IngestError::Kind::NotAZip, path.string(), "neither an OOXML package nor a JSON fixture");
}

} // namespace cellflow
