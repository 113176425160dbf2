#include <fstream>
#include <set>

#include <json.hpp>

#include "cellflow/error.hpp"
#include "cellflow/ingest.hpp"

namespace cellflow {

namespace {

using nlohmann::json;

std::string escape_pointer_token(std::string_view token) {
    std::string out;
    for (char c : token) {
        if (c == '~')
            out += "~0";
        else if (c == '/')
            out += "~1";
        else
            out += c;
    }
    return out;
}

[[noreturn]] void violation(const std::string& pointer, const std::string& detail) {
    throw IngestError(IngestError::Kind::SchemaViolation, pointer.empty() ? "/" : pointer, detail);
}

void only_keys(const json& obj, const std::string& pointer, std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (auto a : allowed) ok = ok || key == a;
        if (!ok) violation(pointer + "/" + escape_pointer_token(key), "unexpected key");
    }
}

const json& require(const json& obj, const std::string& pointer, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) violation(pointer + "/" + key, "missing required key");
    return *it;
}

Value read_value(const json& v, const std::string& pointer) {
    if (v.is_boolean()) return v.get<bool>();
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return v.get<std::string>();
    violation(pointer, "value must be a number, string or boolean");
}

std::optional<Value> read_cell_value(const json& cell, const std::string& pointer) {
    auto v = cell.find("v");
    auto e = cell.find("e");
    if (v != cell.end() && e != cell.end()) violation(pointer + "/e", "'v' and 'e' are mutually exclusive");
    if (v != cell.end()) return read_value(*v, pointer + "/v");
    if (e != cell.end()) {
        if (!e->is_string() || e->get<std::string>().empty() || e->get<std::string>().front() != '#')
            violation(pointer + "/e", "error literal must be a string starting with '#'");
        return ErrorValue{e->get<std::string>()};
    }
    return std::nullopt;
}

bool canonical_a1(std::string_view key) {
    for (char c : key)
        if (!((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9'))) return false;
    auto coord = parse_a1(key);
    return coord && a1(*coord) == key;
}

/// nlohmann keeps only the last of duplicated keys; this catches them first.
class DuplicateKeyGuard {
public:
    bool operator()(int /*depth*/, json::parse_event_t event, json& parsed) {
        switch (event) {
        case json::parse_event_t::object_start:
            frames_.push_back({true, {}, {}});
            break;
        case json::parse_event_t::array_start:
            frames_.push_back({false, {}, {}});
            break;
        case json::parse_event_t::object_end:
        case json::parse_event_t::array_end:
            frames_.pop_back();
            break;
        case json::parse_event_t::key: {
            auto& top = frames_.back();
            std::string key = parsed.get<std::string>();
            if (!top.keys.insert(key).second) {
                bool in_cells = frames_.size() >= 2 && frames_[frames_.size() - 2].current_key == "cells";
                if (in_cells) throw IngestError(IngestError::Kind::DuplicateCellAddress, key);
                violation("", "duplicate key '" + key + "'");
            }
            top.current_key = std::move(key);
            break;
        }
        case json::parse_event_t::value:
            break;
        }
        return true;
    }

private:
    struct Frame {
        bool object;
        std::set<std::string> keys;
        std::string current_key;
    };
    std::vector<Frame> frames_;
};

} // namespace

Workbook load_fixture_text(std::string_view text) {
    json doc;
    try {
        DuplicateKeyGuard guard;
        doc = json::parse(text.begin(), text.end(), std::ref(guard));
    } catch (const json::parse_error& e) {
        violation("", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) violation("", "document must be an object");
    only_keys(doc, "", {"version", "name", "sheets", "names"});
    if (auto v = doc.find("version"); v != doc.end() && (!v->is_string() || *v != kFixtureVersion))
        violation("/version", "expected \"" + std::string(kFixtureVersion) + "\"");

    const json& name = require(doc, "", "name");
    if (!name.is_string()) violation("/name", "must be a string");
    const json& sheets_json = require(doc, "", "sheets");
    if (!sheets_json.is_array()) violation("/sheets", "must be an array");

    std::vector<Worksheet> sheets;
    for (std::size_t i = 0; i < sheets_json.size(); ++i) {
        std::string sp = "/sheets/" + std::to_string(i);
        const json& s = sheets_json[i];
        if (!s.is_object()) violation(sp, "sheet must be an object");
        only_keys(s, sp, {"name", "hidden", "cells"});
        const json& sname = require(s, sp, "name");
        if (!sname.is_string() || sname.get<std::string>().empty()) violation(sp + "/name", "must be a non-empty string");
        Worksheet ws;
        ws.name = sname.get<std::string>();
        for (const auto& existing : sheets)
            if (iequals(existing.name, ws.name)) throw IngestError(IngestError::Kind::DuplicateSheetName, ws.name);
        if (auto h = s.find("hidden"); h != s.end()) {
            if (!h->is_boolean()) violation(sp + "/hidden", "must be a boolean");
            ws.hidden = h->get<bool>();
        }
        if (auto cells = s.find("cells"); cells != s.end()) {
            if (!cells->is_object()) violation(sp + "/cells", "must be an object");
            for (const auto& [addr, cell] : cells->items()) {
                std::string cp = sp + "/cells/" + escape_pointer_token(addr);
                if (!canonical_a1(addr)) violation(cp, "address must be uppercase A1 notation");
                if (!cell.is_object()) violation(cp, "cell must be an object");
                only_keys(cell, cp, {"v", "f", "e"});
                Coord at = *parse_a1(addr);
                auto value = read_cell_value(cell, cp);
                if (auto f = cell.find("f"); f != cell.end()) {
                    if (!f->is_string()) violation(cp + "/f", "must be a string");
                    std::string body = f->get<std::string>();
                    if (!body.empty() && body.front() == '=') body.erase(0, 1);
                    if (body.empty()) violation(cp + "/f", "formula text must be non-empty");
                    ws.cells.emplace(at, Formula{std::move(body), std::move(value)});
                } else {
                    if (!value) violation(cp, "cell needs 'v', 'e' or 'f'");
                    ws.cells.emplace(at, Constant{std::move(*value)});
                }
            }
        }
        sheets.push_back(std::move(ws));
    }

    std::vector<DefinedName> names;
    if (auto ns = doc.find("names"); ns != doc.end()) {
        if (!ns->is_array()) violation("/names", "must be an array");
        for (std::size_t i = 0; i < ns->size(); ++i) {
            std::string np = "/names/" + std::to_string(i);
            const json& n = (*ns)[i];
            if (!n.is_object()) violation(np, "must be an object");
            only_keys(n, np, {"name", "scope", "ref"});
            const json& nn = require(n, np, "name");
            const json& ref = require(n, np, "ref");
            if (!nn.is_string() || !ref.is_string()) violation(np, "'name' and 'ref' must be strings");
            DefinedName dn{nn.get<std::string>(), std::nullopt, ref.get<std::string>()};
            if (auto sc = n.find("scope"); sc != n.end()) {
                if (!sc->is_string()) violation(np + "/scope", "must be a string");
                dn.scope = sc->get<std::string>();
            }
            names.push_back(std::move(dn));
        }
    }
    return Workbook(name.get<std::string>(), std::move(sheets), std::move(names));
}

Workbook load_fixture(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestError(IngestError::Kind::Io, path.string(), "cannot open file");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return load_fixture_text(text);
}

} // namespace cellflow
