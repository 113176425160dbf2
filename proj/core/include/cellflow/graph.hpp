#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cellflow/structure.hpp"

namespace cellflow::graph {

enum class NodeKind { Workbook, Worksheet, Block, Cell };

const char* to_string(NodeKind k) noexcept;
std::optional<NodeKind> node_kind_from_string(std::string_view s);

struct GraphNode {
    std::string id;
    NodeKind kind = NodeKind::Cell;
    std::string label;
    std::optional<std::string> parent;
    // Cell metadata.
    std::optional<structure::CellType> cell_type;
    std::optional<std::string> formula;
    // Worksheet metadata.
    bool hidden = false;

    friend bool operator==(const GraphNode&, const GraphNode&) = default;
};

/// Precedent -> dependent.
struct CellEdge {
    std::string from;
    std::string to;
    bool approximate = false;

    friend bool operator==(const CellEdge&, const CellEdge&) = default;
};

enum class WarningKind { CircularReference, UnresolvedReference, ExternalWorkbook, UnparsableFormula };

const char* to_string(WarningKind k) noexcept;
std::optional<WarningKind> warning_kind_from_string(std::string_view s);

struct Warning {
    WarningKind kind;
    std::vector<std::string> subjects;  // node ids
    std::string message;

    friend bool operator==(const Warning&, const Warning&) = default;
};

std::string workbook_node_id();
std::string sheet_node_id(std::string_view sheet);
std::string block_node_id(std::string_view block_id);
std::string cell_node_id(const CellAddress& a);

/// Hierarchical dataflow diagram: Workbook > Worksheet > Block > Cell
/// containers over cell-level edges.
class LeveledGraph {
public:
    LeveledGraph() = default;
    /// Validates the hierarchy and edge endpoints; throws Error when broken.
    LeveledGraph(std::vector<GraphNode> nodes, std::vector<CellEdge> edges,
                 std::vector<Warning> warnings);

    const std::vector<GraphNode>& nodes() const noexcept { return nodes_; }
    const std::vector<CellEdge>& cell_edges() const noexcept { return edges_; }
    const std::vector<Warning>& warnings() const noexcept { return warnings_; }

    const GraphNode* find(std::string_view id) const;
    const GraphNode& root() const { return nodes_.front(); }

    /// Nearest ancestor (or the node itself) of the given kind.
    const GraphNode* ancestor(std::string_view id, NodeKind kind) const;
    std::vector<const GraphNode*> children(std::string_view id) const;
    std::vector<const GraphNode*> worksheets() const;
    /// Worksheet node by sheet name, ignoring case.
    const GraphNode* worksheet(std::string_view sheet) const;

    friend bool operator==(const LeveledGraph& a, const LeveledGraph& b) {
        return a.nodes_ == b.nodes_ && a.edges_ == b.edges_ && a.warnings_ == b.warnings_;
    }

private:
    std::vector<GraphNode> nodes_;
    std::vector<CellEdge> edges_;
    std::vector<Warning> warnings_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Blocks of every sheet, indexed like Workbook::sheets().
using BlockTable = std::vector<std::vector<structure::DataBlock>>;
using LabelMap = std::map<CellAddress, structure::CellLabel>;

/// Creates a node per Data and Formula cell labelled with its computed label,
/// an edge per (precedent, formula) pair, and the sheet/block containers.
/// Full-column references become one approximate edge per intersected block.
LeveledGraph build_graph(const Workbook& workbook, const structure::CellTypes& types,
                         const BlockTable& blocks, const LabelMap& labels,
                         const structure::PrecedentMap& precedents,
                         std::vector<Warning> extra_warnings = {});

// ---------------------------------------------------------------------------
// Views
// ---------------------------------------------------------------------------

enum class ViewLevel { Global, Worksheet, Formula };

struct ViewSelector {
    ViewLevel level = ViewLevel::Global;
    std::string sheet;
    std::string block;  // block id for the formula level

    friend bool operator==(const ViewSelector&, const ViewSelector&) = default;
};

struct ViewNode {
    std::string id;
    std::string label;
    NodeKind kind;
    std::vector<std::string> smell_badges;
    /// Foreign worksheet shown collapsed inside a worksheet view.
    bool foreign = false;

    friend bool operator==(const ViewNode&, const ViewNode&) = default;
};

struct ViewEdge {
    std::string from;
    std::string to;
    int multiplicity = 1;
    bool approximate = false;

    friend bool operator==(const ViewEdge&, const ViewEdge&) = default;
};

struct ViewGraph {
    ViewSelector level;
    std::vector<ViewNode> nodes;
    std::vector<ViewEdge> edges;  // unique per (from, to), sorted by node order

    const ViewNode* find(std::string_view id) const;
    friend bool operator==(const ViewGraph&, const ViewGraph&) = default;
};

/// One node per worksheet; cross-sheet cell edges grouped per sheet pair.
ViewGraph global_view(const LeveledGraph& graph);

/// Blocks of one sheet plus a collapsed node per foreign sheet that
/// exchanges edges with it. Throws ViewError(UnknownSheet).
ViewGraph worksheet_view(const LeveledGraph& graph, std::string_view sheet);

/// Formula cells of one block and their direct precedents.
/// Throws ViewError(UnknownSheet / UnknownBlock).
ViewGraph formula_view(const LeveledGraph& graph, std::string_view sheet,
                       std::string_view block_id);

ViewGraph project(const LeveledGraph& graph, const ViewSelector& selector);

/// Resolves a block by id ("S!A1:B4"), by range ("A1:B4") or by display name.
/// Throws ViewError.
std::string resolve_block(const LeveledGraph& graph, std::string_view sheet,
                          std::string_view selector);

/// Longest-path layer of every node over the view's condensation; nodes
/// sharing a strongly connected component share a rank; sources are 0.
std::map<std::string, int> topological_ranks(const ViewGraph& view);

} // namespace cellflow::graph
