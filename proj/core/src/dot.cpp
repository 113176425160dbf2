#include <cmath>
#include <map>

#include "cellflow/export.hpp"
#include "text_util.hpp"

namespace cellflow::exporters {

namespace {

/// Quoted DOT string; non-ASCII code points become HTML character references.
std::string quoted(std::string_view s) {
    std::string out = "\"";
    for (std::size_t i = 0; i < s.size();) {
        auto c = static_cast<unsigned char>(s[i]);
        if (c < 0x80) {
            if (c == '"' || c == '\\')
                out += '\\', out += char(c);
            else if (c == '\n')
                out += "\\n";
            else if (c >= 0x20)
                out += char(c);
            ++i;
            continue;
        }
        int extra = c >= 0xF0 ? 3 : c >= 0xE0 ? 2 : c >= 0xC0 ? 1 : 0;
        std::uint32_t cp = extra == 3 ? c & 0x07 : extra == 2 ? c & 0x0F : extra == 1 ? c & 0x1F : 0xFFFD;
        std::size_t j = i + 1;
        for (int k = 0; k < extra; ++k, ++j) {
            if (j >= s.size() || (static_cast<unsigned char>(s[j]) & 0xC0) != 0x80) {
                cp = 0xFFFD;
                break;
            }
            cp = (cp << 6) | (static_cast<unsigned char>(s[j]) & 0x3F);
        }
        out += "&#" + std::to_string(cp) + ";";
        i = j;
    }
    out += '"';
    return out;
}

const char* shape(graph::NodeKind k) {
    switch (k) {
    case graph::NodeKind::Workbook:
    case graph::NodeKind::Worksheet: return "box";
    case graph::NodeKind::Block: return "box, style=rounded";
    case graph::NodeKind::Cell: return "ellipse";
    }
    return "box";
}

void edge_line(std::string& out, const std::string& from, const std::string& to, int multiplicity, bool approximate,
               const DotOptions& options, std::string_view indent) {
    const std::string& a = options.reverse_edges ? to : from;
    const std::string& b = options.reverse_edges ? from : to;
    out += std::string(indent) + quoted(a) + " -> " + quoted(b) + " [penwidth=" +
           detail::fixed(pen_width(multiplicity, options.width), 4);
    if (multiplicity > 1) out += ", label=\"" + std::to_string(multiplicity) + "\"";
    if (approximate) out += ", style=dashed";
    out += "];\n";
}

} // namespace

double pen_width(int multiplicity, PenWidth mode) {
    if (multiplicity < 1) multiplicity = 1;
    return mode == PenWidth::Log ? 1.0 + std::log(static_cast<double>(multiplicity)) : static_cast<double>(multiplicity);
}

std::string to_dot(const graph::ViewGraph& view, const DotOptions& options) {
    std::string out = "digraph {\n";
    if (!view.nodes.empty()) out += "  rankdir=LR;\n";
    for (const auto& n : view.nodes) {
        out += "  " + quoted(n.id) + " [label=" + quoted(n.label) + ", shape=" + shape(n.kind);
        if (n.foreign) out += ", style=dashed";
        if (!n.smell_badges.empty()) {
            std::string badges;
            for (const auto& b : n.smell_badges) badges += (badges.empty() ? "" : ", ") + b;
            out += ", color=red, tooltip=" + quoted(badges);
        }
        out += "];\n";
    }
    for (const auto& e : view.edges) edge_line(out, e.from, e.to, e.multiplicity, e.approximate, options, "  ");
    out += "}\n";
    return out;
}

std::string to_dot(const graph::LeveledGraph& graph, const DotOptions& options) {
    using graph::NodeKind;
    std::string out = "digraph {\n  rankdir=LR;\n  compound=true;\n  label=" + quoted(graph.root().label) + ";\n";
    std::size_t sheet_no = 0;
    for (const auto* ws : graph.worksheets()) {
        std::string cluster = "cluster_" + std::to_string(sheet_no++);
        out += "  subgraph " + quoted(cluster) + " {\n    label=" + quoted(ws->label) + ";\n";
        std::size_t block_no = 0;
        for (const auto* block : graph.children(ws->id)) {
            out += "    subgraph " + quoted(cluster + "_" + std::to_string(block_no++)) +
                   " {\n      label=" + quoted(block->label) + ";\n      style=rounded;\n";
            for (const auto* cell : graph.children(block->id)) {
                out += "      " + quoted(cell->id) + " [label=" + quoted(cell->label) + ", shape=ellipse";
                if (cell->cell_type == structure::CellType::Formula) out += ", tooltip=" + quoted("=" + *cell->formula);
                out += "];\n";
            }
            out += "    }\n";
        }
        out += "  }\n";
    }
    for (const auto& e : graph.cell_edges()) edge_line(out, e.from, e.to, 1, e.approximate, options, "  ");
    out += "}\n";
    return out;
}

} // namespace cellflow::exporters
