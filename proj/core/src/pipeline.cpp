#include "cellflow/pipeline.hpp"

#include "cellflow/error.hpp"

namespace cellflow {

Analysis analyze(const Workbook& workbook, const AnalysisOptions& options) {
    Analysis result;
    std::vector<graph::Warning> warnings;

    for (const auto& sheet : workbook.sheets()) {
        for (const auto& [coord, content] : sheet.cells) {
            const auto* f = std::get_if<Formula>(&content);
            if (!f) continue;
            CellAddress addr{sheet.name, coord.col, coord.row};
            try {
                auto ast = formula::parse(f->text);
                result.precedents.emplace(addr, formula::extract_precedents(ast, sheet.name, workbook));
            } catch (const FormulaError& e) {
                if (options.strict) throw FormulaCellError(to_string(addr), f->text, e);
                // Unparsable formulas stay in the graph with no precedents.
                result.precedents.emplace(addr, formula::PrecedentSet{});
                warnings.push_back({graph::WarningKind::UnparsableFormula,
                                    {graph::cell_node_id(addr)},
                                    to_string(addr) + ": " + e.what()});
            }
        }
    }

    result.types = structure::classify_cells(workbook, result.precedents);

    const auto& sheets = workbook.sheets();
    result.blocks.resize(sheets.size());
    for (std::size_t i = 0; i < sheets.size(); ++i) {
        auto blocks = structure::detect_blocks(sheets[i]);
        structure::name_blocks(blocks, sheets[i], result.types, i);
        for (const auto& block : blocks)
            for (const auto& [coord, label] : structure::compute_labels(block, sheets[i], result.types, i))
                result.labels.emplace(CellAddress{sheets[i].name, coord.col, coord.row}, label);
        result.blocks[i] = std::move(blocks);
    }

    result.graph = graph::build_graph(workbook, result.types, result.blocks, result.labels, result.precedents,
                                      std::move(warnings));
    return result;
}

} // namespace cellflow
