#include "cellflow/export.hpp"
#include "text_util.hpp"

namespace cellflow::exporters {

namespace {

using detail::xml_escape;

void open_graph(std::string& out, std::string_view title) {
    out += "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n";
    out += "<DirectedGraph Title=\"" + xml_escape(title) + "\" xmlns=\"" + std::string(kDgmlNamespace) + "\">\n";
}

std::string level_title(const graph::ViewSelector& s) {
    switch (s.level) {
    case graph::ViewLevel::Global: return "global";
    case graph::ViewLevel::Worksheet: return "worksheet:" + s.sheet;
    case graph::ViewLevel::Formula: return "formula:" + s.sheet + ":" + s.block;
    }
    return "";
}

} // namespace

std::string to_dgml(const graph::LeveledGraph& graph, const DgmlOptions& options) {
    using graph::NodeKind;
    std::string out;
    open_graph(out, graph.root().label);

    out += "  <Nodes>\n";
    for (const auto& n : graph.nodes()) {
        out += "    <Node Id=\"" + xml_escape(n.id) + "\" Label=\"" + xml_escape(n.label) + "\" Category=\"" +
               graph::to_string(n.kind) + "\"";
        if (n.kind == NodeKind::Workbook || n.kind == NodeKind::Worksheet)
            out += " Group=\"Expanded\"";
        else if (n.kind == NodeKind::Block)
            out += options.collapse_blocks ? " Group=\"Collapsed\"" : " Group=\"Expanded\"";
        if (n.cell_type) out += std::string(" CellType=\"") + structure::to_string(*n.cell_type) + "\"";
        if (n.formula) out += " Formula=\"" + xml_escape("=" + *n.formula) + "\"";
        if (n.hidden) out += " Hidden=\"true\"";
        out += " />\n";
    }
    out += "  </Nodes>\n";

    out += "  <Links>\n";
    for (const auto& n : graph.nodes()) {
        if (!n.parent) continue;
        out += "    <Link Source=\"" + xml_escape(*n.parent) + "\" Target=\"" + xml_escape(n.id) +
               "\" Category=\"Contains\" />\n";
    }
    for (const auto& e : graph.cell_edges()) {
        out += "    <Link Source=\"" + xml_escape(e.from) + "\" Target=\"" + xml_escape(e.to) + "\"";
        if (e.approximate) out += " Approximate=\"true\"";
        out += " />\n";
    }
    out += "  </Links>\n";
    out += "</DirectedGraph>\n";
    return out;
}

std::string to_dgml(const graph::ViewGraph& view) {
    using graph::NodeKind;
    std::string out;
    open_graph(out, level_title(view.level));

    out += "  <Nodes>\n";
    for (const auto& n : view.nodes) {
        out += "    <Node Id=\"" + xml_escape(n.id) + "\" Label=\"" + xml_escape(n.label) + "\" Category=\"" +
               graph::to_string(n.kind) + "\"";
        if (n.kind != NodeKind::Cell) out += " Group=\"Collapsed\"";
        if (n.foreign) out += " Foreign=\"true\"";
        if (!n.smell_badges.empty()) {
            std::string badges;
            for (const auto& b : n.smell_badges) badges += (badges.empty() ? "" : ";") + b;
            out += " Smells=\"" + xml_escape(badges) + "\"";
        }
        out += " />\n";
    }
    out += "  </Nodes>\n";

    out += "  <Links>\n";
    for (const auto& e : view.edges) {
        out += "    <Link Source=\"" + xml_escape(e.from) + "\" Target=\"" + xml_escape(e.to) + "\" Weight=\"" +
               std::to_string(e.multiplicity) + "\"";
        if (e.approximate) out += " Approximate=\"true\"";
        out += " />\n";
    }
    out += "  </Links>\n";
    out += "</DirectedGraph>\n";
    return out;
}

} // namespace cellflow::exporters
