#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "cellflow/error.hpp"
#include "cellflow/smells.hpp"
#include "graph_algo.hpp"

namespace cellflow::smells {

namespace {

/// Global view as integer adjacency; names are the worksheet labels.
struct SheetGraph {
    std::vector<std::string> names;
    detail::Adjacency adj;
    std::map<std::pair<int, int>, int> multiplicity;

    explicit SheetGraph(const graph::ViewGraph& view) {
        std::unordered_map<std::string, int> index;
        for (const auto& n : view.nodes) {
            index.emplace(n.id, static_cast<int>(names.size()));
            names.push_back(n.label);
        }
        adj.resize(names.size());
        for (const auto& e : view.edges) {
            int a = index.at(e.from);
            int b = index.at(e.to);
            if (a == b) continue;
            if (multiplicity.emplace(std::pair(a, b), e.multiplicity).second)
                adj[a].push_back(b);
            else
                multiplicity[{a, b}] += e.multiplicity;
        }
    }
};

bool acyclic_without(const SheetGraph& g, const std::vector<int>& nodes, std::pair<int, int> removed) {
    std::unordered_map<int, int> indegree;
    for (int v : nodes) indegree[v] = 0;
    for (int v : nodes)
        for (int w : g.adj[v])
            if (indegree.contains(w) && std::pair(v, w) != removed) ++indegree[w];
    std::deque<int> ready;
    for (auto [v, d] : indegree)
        if (d == 0) ready.push_back(v);
    std::size_t seen = 0;
    while (!ready.empty()) {
        int v = ready.front();
        ready.pop_front();
        ++seen;
        for (int w : g.adj[v]) {
            if (!indegree.contains(w) || std::pair(v, w) == removed) continue;
            if (--indegree[w] == 0) ready.push_back(w);
        }
    }
    return seen == nodes.size();
}

/// Some cycle through the component, as a closed list of nodes.
std::vector<int> find_cycle(const SheetGraph& g, const std::vector<int>& component) {
    std::vector<bool> inside(g.names.size(), false);
    for (int v : component) inside[v] = true;
    int start = component.front();
    std::vector<int> parent(g.names.size(), -1);
    std::deque<int> queue;
    for (int w : g.adj[start]) {
        if (!inside[w] || parent[w] != -1) continue;
        parent[w] = start;
        queue.push_back(w);
    }
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (v == start) break;
        for (int w : g.adj[v]) {
            if (!inside[w] || parent[w] != -1) continue;
            parent[w] = v;
            queue.push_back(w);
        }
    }
    std::vector<int> cycle{start};
    for (int v = parent[start]; v != start; v = parent[v]) cycle.push_back(v);
    cycle.push_back(start);
    std::reverse(cycle.begin(), cycle.end());
    return cycle;
}

std::string join_quoted(const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += i + 1 == names.size() ? " and " : ", ";
        out += "'" + names[i] + "'";
    }
    return out;
}

std::string format_number(double v) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << v;
    return os.str();
}

} // namespace

const char* to_string(SmellKind k) noexcept {
    switch (k) {
    case SmellKind::InterWorksheetCycle: return "InterWorksheetCycle";
    case SmellKind::AgainstTheStream: return "AgainstTheStream";
    case SmellKind::DisconnectedWorksheet: return "DisconnectedWorksheet";
    case SmellKind::HeavyCoupling: return "HeavyCoupling";
    }
    return "?";
}

std::optional<SmellKind> smell_kind_from_string(std::string_view s) {
    for (auto k : {SmellKind::InterWorksheetCycle, SmellKind::AgainstTheStream, SmellKind::DisconnectedWorksheet,
                   SmellKind::HeavyCoupling})
        if (s == to_string(k)) return k;
    return std::nullopt;
}

void SmellConfig::validate() const {
    if (heavy_abs_min < 1) throw Error("heavy_abs_min must be at least 1");
    if (!(heavy_rel_min > 0.0 && heavy_rel_min <= 1.0)) throw Error("heavy_rel_min must be in (0, 1]");
}

std::vector<Smell> detect_cycles(const graph::ViewGraph& global) {
    SheetGraph g(global);
    auto comps = detail::strongly_connected(g.adj);
    std::vector<Smell> out;
    for (const auto& members : comps.members) {
        if (members.size() < 2) continue;
        Smell s{SmellKind::InterWorksheetCycle, {}, {}, {}};
        double internal = 0;
        for (int v : members) {
            s.subjects.push_back(g.names[v]);
            for (int w : g.adj[v])
                if (comps.component[w] == comps.component[v]) internal += g.multiplicity.at({v, w});
        }
        std::sort(s.subjects.begin(), s.subjects.end());
        s.metrics["size"] = static_cast<double>(members.size());
        s.metrics["multiplicity"] = internal;
        s.message = members.size() == 2 ? "direct loop between worksheets " + join_quoted(s.subjects)
                                        : "cycle among worksheets " + join_quoted(s.subjects);
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const Smell& a, const Smell& b) { return a.subjects < b.subjects; });
    return out;
}

std::vector<Smell> detect_against_stream(const graph::ViewGraph& global) {
    SheetGraph g(global);
    auto comps = detail::strongly_connected(g.adj);
    const std::vector<int>* cyclic = nullptr;
    for (const auto& members : comps.members) {
        if (members.size() < 2) continue;
        if (cyclic) return {};  // two independent cycles: no single edge fixes both
        cyclic = &members;
    }
    // A two-sheet loop is a cycle smell in its own right; a stream needs at
    // least three worksheets.
    if (!cyclic || cyclic->size() < 3) return {};

    // Any edge whose removal breaks every cycle lies on this one.
    auto cycle = find_cycle(g, *cyclic);
    std::optional<std::pair<int, int>> best;
    for (std::size_t i = 0; i + 1 < cycle.size(); ++i) {
        std::pair<int, int> e{cycle[i], cycle[i + 1]};
        if (!acyclic_without(g, *cyclic, e)) continue;
        if (!best) {
            best = e;
            continue;
        }
        int m = g.multiplicity.at(e);
        int bm = g.multiplicity.at(*best);
        auto names = std::pair(g.names[e.first], g.names[e.second]);
        auto best_names = std::pair(g.names[best->first], g.names[best->second]);
        if (m < bm || (m == bm && names < best_names)) best = e;
    }
    if (!best) return {};

    Smell s{SmellKind::AgainstTheStream, {g.names[best->first], g.names[best->second]}, {}, {}};
    int m = g.multiplicity.at(*best);
    s.metrics["multiplicity"] = m;
    s.message = "link '" + s.subjects[0] + "' -> '" + s.subjects[1] + "' (" + std::to_string(m) +
                " reference" + (m == 1 ? "" : "s") + ") runs against the stream of the other worksheets";
    return {std::move(s)};
}

std::vector<Smell> detect_disconnected(const graph::ViewGraph& global, const std::set<std::string>& empty_sheets,
                                       const SmellConfig& config) {
    std::set<std::string> connected;
    for (const auto& e : global.edges) {
        if (e.from == e.to) continue;
        connected.insert(e.from);
        connected.insert(e.to);
    }
    std::vector<const graph::ViewNode*> considered;
    for (const auto& n : global.nodes)
        if (config.report_empty_sheets || !empty_sheets.contains(n.label)) considered.push_back(&n);
    if (considered.size() < 2) return {};

    std::vector<Smell> out;
    for (const auto* n : considered) {
        if (connected.contains(n->id)) continue;
        Smell s{SmellKind::DisconnectedWorksheet, {n->label}, {}, {}};
        s.message = "worksheet '" + n->label + "' is not connected to any other worksheet";
        if (empty_sheets.contains(n->label)) s.message += " (empty)";
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<Smell> detect_disconnected(const graph::ViewGraph& global, const Workbook& workbook,
                                       const SmellConfig& config) {
    std::set<std::string> empty;
    for (const auto& ws : workbook.sheets())
        if (ws.empty()) empty.insert(ws.name);
    return detect_disconnected(global, empty, config);
}

std::vector<Smell> detect_heavy_coupling(const graph::ViewGraph& global, const SmellConfig& config) {
    SheetGraph g(global);
    long total = 0;
    for (const auto& [_, m] : g.multiplicity) total += m;
    if (total == 0) return {};

    std::map<std::pair<std::string, std::string>, long> coupling;
    for (const auto& [e, m] : g.multiplicity) {
        auto a = g.names[e.first];
        auto b = g.names[e.second];
        if (b < a) std::swap(a, b);
        coupling[{a, b}] += m;
    }
    std::vector<Smell> out;
    for (const auto& [pair, c] : coupling) {
        if (c < config.heavy_abs_min) continue;
        if (static_cast<double>(c) < config.heavy_rel_min * static_cast<double>(total)) continue;
        Smell s{SmellKind::HeavyCoupling, {pair.first, pair.second}, {}, {}};
        s.metrics["coupling"] = static_cast<double>(c);
        s.metrics["total_cross_refs"] = static_cast<double>(total);
        s.metrics["heavy_abs_min"] = config.heavy_abs_min;
        s.metrics["heavy_rel_min"] = config.heavy_rel_min;
        s.message = "worksheets '" + pair.first + "' and '" + pair.second + "' share " + std::to_string(c) + " of " +
                    std::to_string(total) + " cross-sheet references (thresholds " +
                    std::to_string(config.heavy_abs_min) + " and " + format_number(config.heavy_rel_min) +
                    "); consider merging them";
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<Smell> detect_all(const graph::ViewGraph& global, const std::set<std::string>& empty_sheets,
                              const SmellConfig& config) {
    config.validate();
    std::vector<Smell> out = detect_cycles(global);
    for (auto&& part : {detect_against_stream(global), detect_disconnected(global, empty_sheets, config),
                        detect_heavy_coupling(global, config)})
        out.insert(out.end(), part.begin(), part.end());
    return out;
}

std::vector<Smell> detect_all(const graph::ViewGraph& global, const Workbook& workbook, const SmellConfig& config) {
    std::set<std::string> empty;
    for (const auto& ws : workbook.sheets())
        if (ws.empty()) empty.insert(ws.name);
    return detect_all(global, empty, config);
}

std::set<std::string> empty_sheets(const graph::LeveledGraph& graph) {
    std::set<std::string> out;
    for (const auto* ws : graph.worksheets())
        if (graph.children(ws->id).empty()) out.insert(ws->label);
    return out;
}

void annotate(graph::ViewGraph& global, const std::vector<Smell>& smells) {
    for (const auto& s : smells) {
        for (const auto& subject : s.subjects) {
            for (auto& n : global.nodes) {
                if (n.label != subject) continue;
                std::string badge = to_string(s.kind);
                if (std::find(n.smell_badges.begin(), n.smell_badges.end(), badge) == n.smell_badges.end())
                    n.smell_badges.push_back(std::move(badge));
            }
        }
    }
}

} // namespace cellflow::smells
