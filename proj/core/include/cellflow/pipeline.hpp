#pragma once

#include "cellflow/graph.hpp"
#include "cellflow/structure.hpp"

namespace cellflow {

struct AnalysisOptions {
    /// Unparsable formulas throw FormulaCellError when true; otherwise they
    /// become UnparsableFormula warnings and contribute no precedents.
    bool strict = true;
};

/// Every intermediate product of the extraction, in pipeline order.
struct Analysis {
    structure::PrecedentMap precedents;
    structure::CellTypes types;
    graph::BlockTable blocks;
    graph::LabelMap labels;
    graph::LeveledGraph graph;
};

/// Formulas are parsed first because classification needs to know which
/// text constants are referenced; then types, blocks, labels, graph.
Analysis analyze(const Workbook& workbook, const AnalysisOptions& options = {});

} // namespace cellflow
