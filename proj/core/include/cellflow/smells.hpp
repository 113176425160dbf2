#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cellflow/graph.hpp"

namespace cellflow::smells {

enum class SmellKind { InterWorksheetCycle, AgainstTheStream, DisconnectedWorksheet, HeavyCoupling };

const char* to_string(SmellKind k) noexcept;
std::optional<SmellKind> smell_kind_from_string(std::string_view s);

struct Smell {
    SmellKind kind;
    std::vector<std::string> subjects;  // worksheet names; (from, to) for an edge
    std::map<std::string, double> metrics;
    std::string message;

    friend bool operator==(const Smell&, const Smell&) = default;
};

/// Thresholds are not prescribed anywhere; these defaults are configurable.
struct SmellConfig {
    int heavy_abs_min = 20;
    double heavy_rel_min = 0.3;
    bool report_empty_sheets = false;

    /// Throws Error when a threshold is outside its domain.
    void validate() const;
};

/// One smell per strongly connected component of two or more worksheets.
std::vector<Smell> detect_cycles(const graph::ViewGraph& global);

/// A cycle that one edge removal would break, inside a component of at least
/// three worksheets. Reports the cheapest such edge; ties go to the
/// lexicographically smallest (from, to).
std::vector<Smell> detect_against_stream(const graph::ViewGraph& global);

/// Non-empty worksheets with no cross-sheet edges, when at least two
/// worksheets take part.
std::vector<Smell> detect_disconnected(const graph::ViewGraph& global,
                                       const std::set<std::string>& empty_sheets,
                                       const SmellConfig& config);
std::vector<Smell> detect_disconnected(const graph::ViewGraph& global, const Workbook& workbook,
                                       const SmellConfig& config);

std::vector<Smell> detect_heavy_coupling(const graph::ViewGraph& global,
                                         const SmellConfig& config);

/// Cycles, against-the-stream, disconnected, heavy coupling, in that order.
std::vector<Smell> detect_all(const graph::ViewGraph& global,
                              const std::set<std::string>& empty_sheets,
                              const SmellConfig& config);
std::vector<Smell> detect_all(const graph::ViewGraph& global, const Workbook& workbook,
                              const SmellConfig& config);

/// Sheets whose worksheet node has no block beneath it.
std::set<std::string> empty_sheets(const graph::LeveledGraph& graph);

/// Attaches smell kind badges to the global-view nodes each smell names.
void annotate(graph::ViewGraph& global, const std::vector<Smell>& smells);

} // namespace cellflow::smells
