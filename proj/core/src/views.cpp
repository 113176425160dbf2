#include <algorithm>
#include <set>
#include <unordered_map>

#include "cellflow/error.hpp"
#include "cellflow/graph.hpp"
#include "graph_algo.hpp"

namespace cellflow::graph {

namespace {

struct Aggregate {
    int multiplicity = 0;
    bool approximate = false;
};

/// Turns (from, to) -> aggregate into edges ordered by the nodes' view order.
std::vector<ViewEdge> ordered_edges(const std::map<std::pair<std::string, std::string>, Aggregate>& agg,
                                    const std::vector<ViewNode>& nodes) {
    std::unordered_map<std::string, std::size_t> order;
    for (std::size_t i = 0; i < nodes.size(); ++i) order.emplace(nodes[i].id, i);
    std::vector<ViewEdge> edges;
    edges.reserve(agg.size());
    for (const auto& [pair, a] : agg) edges.push_back({pair.first, pair.second, a.multiplicity, a.approximate});
    std::sort(edges.begin(), edges.end(), [&](const ViewEdge& x, const ViewEdge& y) {
        return std::pair(order.at(x.from), order.at(x.to)) < std::pair(order.at(y.from), order.at(y.to));
    });
    return edges;
}

/// Worksheet node id and block node id of every cell node.
struct Containers {
    std::unordered_map<std::string, std::pair<std::string, std::string>> of_cell;

    explicit Containers(const LeveledGraph& g) {
        std::unordered_map<std::string, std::string> sheet_of_block;
        for (const auto& n : g.nodes())
            if (n.kind == NodeKind::Block) sheet_of_block.emplace(n.id, *n.parent);
        for (const auto& n : g.nodes())
            if (n.kind == NodeKind::Cell) of_cell.emplace(n.id, std::pair(sheet_of_block.at(*n.parent), *n.parent));
    }
    const std::string& sheet(const std::string& cell) const { return of_cell.at(cell).first; }
    const std::string& block(const std::string& cell) const { return of_cell.at(cell).second; }
};

const GraphNode& require_sheet(const LeveledGraph& g, std::string_view sheet) {
    const GraphNode* ws = g.worksheet(sheet);
    if (!ws) throw ViewError(ViewError::Kind::UnknownSheet, std::string(sheet));
    return *ws;
}

} // namespace

const ViewNode* ViewGraph::find(std::string_view id) const {
    for (const auto& n : nodes)
        if (n.id == id) return &n;
    return nullptr;
}

ViewGraph global_view(const LeveledGraph& graph) {
    ViewGraph view;
    view.level = {ViewLevel::Global, {}, {}};
    for (const GraphNode* ws : graph.worksheets()) view.nodes.push_back({ws->id, ws->label, NodeKind::Worksheet, {}, false});

    Containers where(graph);
    std::map<std::pair<std::string, std::string>, Aggregate> agg;
    for (const auto& e : graph.cell_edges()) {
        const std::string& a = where.sheet(e.from);
        const std::string& b = where.sheet(e.to);
        if (a == b) continue;
        auto& slot = agg[{a, b}];
        ++slot.multiplicity;
        slot.approximate = slot.approximate || e.approximate;
    }
    view.edges = ordered_edges(agg, view.nodes);
    return view;
}

ViewGraph worksheet_view(const LeveledGraph& graph, std::string_view sheet) {
    const GraphNode& ws = require_sheet(graph, sheet);
    ViewGraph view;
    view.level = {ViewLevel::Worksheet, ws.label, {}};
    for (const GraphNode* b : graph.children(ws.id)) view.nodes.push_back({b->id, b->label, NodeKind::Block, {}, false});

    Containers where(graph);
    auto container = [&](const std::string& cell) -> const std::string& {
        const std::string& s = where.sheet(cell);
        return s == ws.id ? where.block(cell) : s;
    };
    std::map<std::pair<std::string, std::string>, Aggregate> agg;
    std::set<std::string> foreign;
    for (const auto& e : graph.cell_edges()) {
        bool from_here = where.sheet(e.from) == ws.id;
        bool to_here = where.sheet(e.to) == ws.id;
        if (!from_here && !to_here) continue;
        const std::string& a = container(e.from);
        const std::string& b = container(e.to);
        if (a == b) continue;
        if (!from_here) foreign.insert(a);
        if (!to_here) foreign.insert(b);
        auto& slot = agg[{a, b}];
        ++slot.multiplicity;
        slot.approximate = slot.approximate || e.approximate;
    }
    for (const GraphNode* other : graph.worksheets())
        if (foreign.contains(other->id)) view.nodes.push_back({other->id, other->label, NodeKind::Worksheet, {}, true});
    view.edges = ordered_edges(agg, view.nodes);
    return view;
}

ViewGraph formula_view(const LeveledGraph& graph, std::string_view sheet, std::string_view block_id) {
    const GraphNode& ws = require_sheet(graph, sheet);
    std::string bid = block_node_id(block_id);
    const GraphNode* block = graph.find(bid);
    if (!block || block->kind != NodeKind::Block || block->parent != ws.id)
        throw ViewError(ViewError::Kind::UnknownBlock, std::string(block_id));

    std::unordered_map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < graph.nodes().size(); ++i) position.emplace(graph.nodes()[i].id, i);

    std::set<std::string> formulas;
    for (const GraphNode* c : graph.children(bid))
        if (c->cell_type == structure::CellType::Formula) formulas.insert(c->id);

    std::set<std::size_t> included;
    for (const auto& f : formulas) included.insert(position.at(f));
    std::map<std::pair<std::string, std::string>, Aggregate> agg;
    for (const auto& e : graph.cell_edges()) {
        if (!formulas.contains(e.to)) continue;
        included.insert(position.at(e.from));
        agg[{e.from, e.to}] = Aggregate{1, e.approximate};
    }

    ViewGraph view;
    view.level = {ViewLevel::Formula, ws.label, std::string(block_id)};
    for (std::size_t i : included) {
        const GraphNode& n = graph.nodes()[i];
        view.nodes.push_back({n.id, n.label, NodeKind::Cell, {}, false});
    }
    view.edges = ordered_edges(agg, view.nodes);
    return view;
}

ViewGraph project(const LeveledGraph& graph, const ViewSelector& selector) {
    switch (selector.level) {
    case ViewLevel::Global: return global_view(graph);
    case ViewLevel::Worksheet: return worksheet_view(graph, selector.sheet);
    case ViewLevel::Formula: return formula_view(graph, selector.sheet, resolve_block(graph, selector.sheet, selector.block));
    }
    return global_view(graph);
}

std::string resolve_block(const LeveledGraph& graph, std::string_view sheet, std::string_view selector) {
    const GraphNode& ws = require_sheet(graph, sheet);
    auto blocks = graph.children(ws.id);
    const std::string prefix = "block:";
    for (const GraphNode* b : blocks) {
        std::string_view id = std::string_view(b->id).substr(prefix.size());
        if (iequals(id, selector)) return std::string(id);
        if (iequals(id, ws.label + "!" + std::string(selector))) return std::string(id);
    }
    for (const GraphNode* b : blocks)
        if (iequals(b->label, selector)) return b->id.substr(prefix.size());
    throw ViewError(ViewError::Kind::UnknownBlock, std::string(selector));
}

std::map<std::string, int> topological_ranks(const ViewGraph& view) {
    std::unordered_map<std::string, int> index;
    for (std::size_t i = 0; i < view.nodes.size(); ++i) index.emplace(view.nodes[i].id, static_cast<int>(i));
    detail::Adjacency adj(view.nodes.size());
    for (const auto& e : view.edges) {
        int a = index.at(e.from);
        int b = index.at(e.to);
        if (a != b) adj[a].push_back(b);
    }
    auto comps = detail::strongly_connected(adj);

    // Components close sinks-first, so walking them in reverse visits every
    // component after all of its predecessors.
    std::vector<int> rank(comps.members.size(), 0);
    for (int c = static_cast<int>(comps.members.size()) - 1; c >= 0; --c)
        for (int v : comps.members[c])
            for (int w : adj[v])
                if (int cw = comps.component[w]; cw != c) rank[cw] = std::max(rank[cw], rank[c] + 1);

    std::map<std::string, int> out;
    for (std::size_t i = 0; i < view.nodes.size(); ++i) out[view.nodes[i].id] = rank[comps.component[i]];
    return out;
}

} // namespace cellflow::graph
