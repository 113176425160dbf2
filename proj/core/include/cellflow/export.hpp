#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cellflow/graph.hpp"
#include "cellflow/smells.hpp"

namespace cellflow::exporters {

inline constexpr std::string_view kDgmlNamespace = "http://schemas.microsoft.com/vs/2009/dgml";
inline constexpr std::string_view kGraphDocumentVersion = "cellflow-graph/1";

struct DgmlOptions {
    /// Blocks start Collapsed; false leaves them Expanded.
    bool collapse_blocks = true;
};

/// Whole leveled graph: a Node per graph node, Contains links for the
/// hierarchy and one plain Link per cell edge.
std::string to_dgml(const graph::LeveledGraph& graph, const DgmlOptions& options = {});
/// A single view with multiplicity carried in Weight.
std::string to_dgml(const graph::ViewGraph& view);

enum class PenWidth { Log, Linear };

struct DotOptions {
    PenWidth width = PenWidth::Log;
    /// Draw dependent -> precedent instead of the dataflow direction.
    bool reverse_edges = false;
};

/// 1 + ln(multiplicity) for Log, multiplicity for Linear.
double pen_width(int multiplicity, PenWidth mode);

std::string to_dot(const graph::ViewGraph& view, const DotOptions& options = {});
/// Whole graph with clusters per worksheet and block.
std::string to_dot(const graph::LeveledGraph& graph, const DotOptions& options = {});

/// Versioned JSON document carrying the graph, its aggregated views, smells
/// and warnings. Keys sorted, byte-stable.
std::string to_json(const graph::LeveledGraph& graph, const std::vector<smells::Smell>& smells);

struct GraphDocument {
    graph::LeveledGraph graph;
    std::vector<smells::Smell> smells;
};

/// Inverse of to_json. Throws DocumentError on schema or version mismatch.
GraphDocument from_json(std::string_view text);

std::string smells_to_text(const std::vector<smells::Smell>& smells);
std::string smells_to_json(const std::vector<smells::Smell>& smells);

} // namespace cellflow::exporters
