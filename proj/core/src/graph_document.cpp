#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "cellflow/error.hpp"
#include "cellflow/export.hpp"

namespace cellflow::exporters {

using nlohmann::json;

namespace {

json metric_value(double v) {
    if (std::isfinite(v) && v == std::trunc(v) && std::fabs(v) < 9.0e15) return static_cast<std::int64_t>(v);
    return v;
}

json view_to_json(const graph::ViewGraph& view) {
    json nodes = json::array();
    for (const auto& n : view.nodes) {
        json node{{"id", n.id}, {"label", n.label}, {"kind", graph::to_string(n.kind)},
                  {"smell_badges", n.smell_badges}};
        if (n.foreign) node["foreign"] = true;
        nodes.push_back(std::move(node));
    }
    json edges = json::array();
    for (const auto& e : view.edges)
        edges.push_back({{"from", e.from}, {"to", e.to}, {"multiplicity", e.multiplicity}, {"approximate", e.approximate}});
    return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

json smell_to_json(const smells::Smell& s) {
    json metrics = json::object();
    for (const auto& [k, v] : s.metrics) metrics[k] = metric_value(v);
    return {{"kind", smells::to_string(s.kind)}, {"subjects", s.subjects}, {"metrics", std::move(metrics)},
            {"message", s.message}};
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw DocumentError(where + ": " + what);
}

const json& member(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) fail(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(where, std::string("missing \"") + key + "\"");
    return *it;
}

std::string string_member(const json& obj, const char* key, const std::string& where) {
    const auto& v = member(obj, key, where);
    if (!v.is_string()) fail(where + "/" + key, "expected a string");
    return v.get<std::string>();
}

const json& array_member(const json& obj, const char* key, const std::string& where) {
    const auto& v = member(obj, key, where);
    if (!v.is_array()) fail(where + "/" + key, "expected an array");
    return v;
}

std::vector<std::string> string_array(const json& v, const std::string& where) {
    if (!v.is_array()) fail(where, "expected an array");
    std::vector<std::string> out;
    for (const auto& s : v) {
        if (!s.is_string()) fail(where, "expected strings");
        out.push_back(s.get<std::string>());
    }
    return out;
}

std::optional<structure::CellType> cell_type_from_string(std::string_view s) {
    using structure::CellType;
    for (auto t : {CellType::Data, CellType::Formula, CellType::Label, CellType::Empty})
        if (s == structure::to_string(t)) return t;
    return std::nullopt;
}

smells::Smell smell_from_json(const json& j, const std::string& where) {
    smells::Smell s{};
    auto kind = smells::smell_kind_from_string(string_member(j, "kind", where));
    if (!kind) fail(where + "/kind", "unknown smell kind");
    s.kind = *kind;
    s.subjects = string_array(member(j, "subjects", where), where + "/subjects");
    const auto& metrics = member(j, "metrics", where);
    if (!metrics.is_object()) fail(where + "/metrics", "expected an object");
    for (const auto& [k, v] : metrics.items()) {
        if (!v.is_number()) fail(where + "/metrics/" + k, "expected a number");
        s.metrics[k] = v.get<double>();
    }
    s.message = string_member(j, "message", where);
    return s;
}

void check_view(const json& view, const std::set<std::string>& ids, const std::string& where) {
    std::set<std::string> view_ids;
    const auto& nodes = array_member(view, "nodes", where);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        auto id = string_member(nodes[i], "id", where + "/nodes/" + std::to_string(i));
        if (!ids.count(id)) fail(where + "/nodes/" + std::to_string(i), "unknown node id " + id);
        view_ids.insert(id);
    }
    const auto& edges = array_member(view, "edges", where);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto at = where + "/edges/" + std::to_string(i);
        for (const char* end : {"from", "to"})
            if (!view_ids.count(string_member(edges[i], end, at))) fail(at, std::string("dangling \"") + end + "\"");
        const auto& m = member(edges[i], "multiplicity", at);
        if (!m.is_number_integer() || m.get<long long>() < 1) fail(at + "/multiplicity", "expected a positive integer");
    }
}

} // namespace

std::string to_json(const graph::LeveledGraph& graph, const std::vector<smells::Smell>& smells) {
    json nodes = json::array();
    for (const auto& n : graph.nodes()) {
        json node{{"id", n.id}, {"kind", graph::to_string(n.kind)}, {"label", n.label}};
        if (n.parent) node["parent"] = *n.parent;
        if (n.cell_type) node["cell_type"] = structure::to_string(*n.cell_type);
        if (n.formula) node["formula"] = *n.formula;
        if (n.hidden) node["hidden"] = true;
        nodes.push_back(std::move(node));
    }
    json edges = json::array();
    for (const auto& e : graph.cell_edges())
        edges.push_back({{"from", e.from}, {"to", e.to}, {"approximate", e.approximate}});

    auto global = graph::global_view(graph);
    smells::annotate(global, smells);
    json worksheets = json::object();
    for (const auto* ws : graph.worksheets()) worksheets[ws->label] = view_to_json(graph::worksheet_view(graph, ws->label));

    json smell_list = json::array();
    for (const auto& s : smells) smell_list.push_back(smell_to_json(s));
    json warnings = json::array();
    for (const auto& w : graph.warnings())
        warnings.push_back({{"kind", graph::to_string(w.kind)}, {"subjects", w.subjects}, {"message", w.message}});

    json doc{{"version", kGraphDocumentVersion},
             {"workbook_name", graph.root().label},
             {"nodes", std::move(nodes)},
             {"cell_edges", std::move(edges)},
             {"views", {{"global", view_to_json(global)}, {"worksheets", std::move(worksheets)}}},
             {"smells", std::move(smell_list)},
             {"warnings", std::move(warnings)}};
    return doc.dump(2) + "\n";
}

GraphDocument from_json(std::string_view text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw DocumentError("document is not valid JSON");
    if (!doc.is_object()) fail("", "expected an object");
    auto version = string_member(doc, "version", "");
    if (version != kGraphDocumentVersion) fail("/version", "unsupported version " + version);
    string_member(doc, "workbook_name", "");

    std::vector<graph::GraphNode> nodes;
    std::set<std::string> ids;
    const auto& jnodes = array_member(doc, "nodes", "");
    for (std::size_t i = 0; i < jnodes.size(); ++i) {
        auto at = "/nodes/" + std::to_string(i);
        const auto& j = jnodes[i];
        graph::GraphNode n;
        n.id = string_member(j, "id", at);
        auto kind = graph::node_kind_from_string(string_member(j, "kind", at));
        if (!kind) fail(at + "/kind", "unknown node kind");
        n.kind = *kind;
        n.label = string_member(j, "label", at);
        if (j.contains("parent")) n.parent = string_member(j, "parent", at);
        if (j.contains("cell_type")) {
            n.cell_type = cell_type_from_string(string_member(j, "cell_type", at));
            if (!n.cell_type) fail(at + "/cell_type", "unknown cell type");
        }
        if (j.contains("formula")) n.formula = string_member(j, "formula", at);
        if (j.contains("hidden")) {
            if (!j["hidden"].is_boolean()) fail(at + "/hidden", "expected a boolean");
            n.hidden = j["hidden"].get<bool>();
        }
        ids.insert(n.id);
        nodes.push_back(std::move(n));
    }

    std::vector<graph::CellEdge> edges;
    const auto& jedges = array_member(doc, "cell_edges", "");
    for (std::size_t i = 0; i < jedges.size(); ++i) {
        auto at = "/cell_edges/" + std::to_string(i);
        graph::CellEdge e{string_member(jedges[i], "from", at), string_member(jedges[i], "to", at), false};
        const auto& approx = member(jedges[i], "approximate", at);
        if (!approx.is_boolean()) fail(at + "/approximate", "expected a boolean");
        e.approximate = approx.get<bool>();
        edges.push_back(std::move(e));
    }

    std::vector<graph::Warning> warnings;
    const auto& jwarn = array_member(doc, "warnings", "");
    for (std::size_t i = 0; i < jwarn.size(); ++i) {
        auto at = "/warnings/" + std::to_string(i);
        auto kind = graph::warning_kind_from_string(string_member(jwarn[i], "kind", at));
        if (!kind) fail(at + "/kind", "unknown warning kind");
        auto subjects = string_array(member(jwarn[i], "subjects", at), at + "/subjects");
        for (const auto& s : subjects)
            if (!ids.count(s)) fail(at + "/subjects", "unknown node id " + s);
        warnings.push_back({*kind, std::move(subjects), string_member(jwarn[i], "message", at)});
    }

    const auto& views = member(doc, "views", "");
    check_view(member(views, "global", "/views"), ids, "/views/global");
    const auto& sheets = member(views, "worksheets", "/views");
    if (!sheets.is_object()) fail("/views/worksheets", "expected an object");
    for (const auto& [name, view] : sheets.items()) check_view(view, ids, "/views/worksheets/" + name);

    std::vector<smells::Smell> smell_list;
    const auto& jsmells = array_member(doc, "smells", "");
    for (std::size_t i = 0; i < jsmells.size(); ++i) smell_list.push_back(smell_from_json(jsmells[i], "/smells/" + std::to_string(i)));

    try {
        return {graph::LeveledGraph(std::move(nodes), std::move(edges), std::move(warnings)), std::move(smell_list)};
    } catch (const DocumentError&) {
        throw;
    } catch (const Error& e) {
        throw DocumentError(e.what());
    }
}

std::string smells_to_text(const std::vector<smells::Smell>& smells) {
    std::string out;
    for (const auto& s : smells) {
        out += smells::to_string(s.kind);
        out += ": ";
        out += s.message;
        out += '\n';
    }
    return out;
}

std::string smells_to_json(const std::vector<smells::Smell>& smells) {
    json list = json::array();
    for (const auto& s : smells) list.push_back(smell_to_json(s));
    return json{{"smells", std::move(list)}}.dump(2) + "\n";
}

} // namespace cellflow::exporters
