#include <algorithm>
#include <set>
#include <tuple>

#include "cellflow/error.hpp"
#include "cellflow/graph.hpp"
#include "graph_algo.hpp"

namespace cellflow::graph {

const char* to_string(NodeKind k) noexcept {
    switch (k) {
    case NodeKind::Workbook: return "Workbook";
    case NodeKind::Worksheet: return "Worksheet";
    case NodeKind::Block: return "Block";
    case NodeKind::Cell: return "Cell";
    }
    return "?";
}

std::optional<NodeKind> node_kind_from_string(std::string_view s) {
    for (auto k : {NodeKind::Workbook, NodeKind::Worksheet, NodeKind::Block, NodeKind::Cell})
        if (s == to_string(k)) return k;
    return std::nullopt;
}

const char* to_string(WarningKind k) noexcept {
    switch (k) {
    case WarningKind::CircularReference: return "CircularReference";
    case WarningKind::UnresolvedReference: return "UnresolvedReference";
    case WarningKind::ExternalWorkbook: return "ExternalWorkbook";
    case WarningKind::UnparsableFormula: return "UnparsableFormula";
    }
    return "?";
}

std::optional<WarningKind> warning_kind_from_string(std::string_view s) {
    for (auto k : {WarningKind::CircularReference, WarningKind::UnresolvedReference, WarningKind::ExternalWorkbook,
                   WarningKind::UnparsableFormula})
        if (s == to_string(k)) return k;
    return std::nullopt;
}

std::string workbook_node_id() { return "book"; }
std::string sheet_node_id(std::string_view sheet) { return "sheet:" + std::string(sheet); }
std::string block_node_id(std::string_view block_id) { return "block:" + std::string(block_id); }
std::string cell_node_id(const CellAddress& a) { return "cell:" + to_string(a); }

// ---------------------------------------------------------------------------
// LeveledGraph
// ---------------------------------------------------------------------------

namespace {

std::optional<NodeKind> expected_parent(NodeKind k) {
    switch (k) {
    case NodeKind::Workbook: return std::nullopt;
    case NodeKind::Worksheet: return NodeKind::Workbook;
    case NodeKind::Block: return NodeKind::Worksheet;
    case NodeKind::Cell: return NodeKind::Block;
    }
    return std::nullopt;
}

} // namespace

LeveledGraph::LeveledGraph(std::vector<GraphNode> nodes, std::vector<CellEdge> edges, std::vector<Warning> warnings)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), warnings_(std::move(warnings)) {
    if (nodes_.empty() || nodes_.front().kind != NodeKind::Workbook)
        throw Error("graph must start with its Workbook node");
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (!index_.emplace(nodes_[i].id, i).second) throw Error("duplicate node id '" + nodes_[i].id + "'");
    for (const auto& n : nodes_) {
        auto want = expected_parent(n.kind);
        if (!want) {
            if (n.parent || &n != &nodes_.front()) throw Error("only the first node may be a root: '" + n.id + "'");
            continue;
        }
        const GraphNode* p = n.parent ? find(*n.parent) : nullptr;
        if (!p || p->kind != *want)
            throw Error("node '" + n.id + "' must have a " + to_string(*want) + " parent");
    }
    for (const auto& e : edges_) {
        const GraphNode* a = find(e.from);
        const GraphNode* b = find(e.to);
        if (!a || !b || a->kind != NodeKind::Cell || b->kind != NodeKind::Cell)
            throw Error("edge " + e.from + " -> " + e.to + " must join two cell nodes");
    }
}

const GraphNode* LeveledGraph::find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    return it == index_.end() ? nullptr : &nodes_[it->second];
}

const GraphNode* LeveledGraph::ancestor(std::string_view id, NodeKind kind) const {
    const GraphNode* n = find(id);
    while (n && n->kind != kind) n = n->parent ? find(*n->parent) : nullptr;
    return n;
}

std::vector<const GraphNode*> LeveledGraph::children(std::string_view id) const {
    std::vector<const GraphNode*> out;
    for (const auto& n : nodes_)
        if (n.parent && *n.parent == id) out.push_back(&n);
    return out;
}

std::vector<const GraphNode*> LeveledGraph::worksheets() const {
    std::vector<const GraphNode*> out;
    for (const auto& n : nodes_)
        if (n.kind == NodeKind::Worksheet) out.push_back(&n);
    return out;
}

const GraphNode* LeveledGraph::worksheet(std::string_view sheet) const {
    for (const auto& n : nodes_)
        if (n.kind == NodeKind::Worksheet && iequals(n.label, sheet)) return &n;
    return nullptr;
}

// ---------------------------------------------------------------------------
// build_graph
// ---------------------------------------------------------------------------

namespace {

using structure::CellType;

struct CellKey {
    std::size_t sheet;
    Coord coord;
    friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

bool is_node_type(CellType t) { return t == CellType::Data || t == CellType::Formula; }

} // namespace

LeveledGraph build_graph(const Workbook& workbook, const structure::CellTypes& types, const BlockTable& blocks,
                         const LabelMap& labels, const structure::PrecedentMap& precedents,
                         std::vector<Warning> extra_warnings) {
    std::vector<GraphNode> nodes;
    nodes.push_back({workbook_node_id(), NodeKind::Workbook, workbook.name(), std::nullopt, {}, {}, false});

    const auto& sheets = workbook.sheets();
    for (std::size_t s = 0; s < sheets.size(); ++s) {
        const Worksheet& ws = sheets[s];
        std::string sheet_id = sheet_node_id(ws.name);
        nodes.push_back({sheet_id, NodeKind::Worksheet, ws.name, workbook_node_id(), {}, {}, ws.hidden});
        if (s >= blocks.size()) continue;
        for (const auto& b : blocks[s]) {
            std::string bid = block_node_id(b.id);
            nodes.push_back({bid, NodeKind::Block, b.name, sheet_id, {}, {}, false});
            for (const Coord& c : b.members) {
                CellType t = types.at(s, c);
                if (!is_node_type(t)) continue;
                CellAddress addr{ws.name, c.col, c.row};
                auto label = labels.find(addr);
                GraphNode cell{cell_node_id(addr), NodeKind::Cell,
                               label != labels.end() ? label->second.display : a1(c), bid, t, {}, false};
                if (t == CellType::Formula) cell.formula = std::get<Formula>(*ws.find(c)).text;
                nodes.push_back(std::move(cell));
            }
        }
    }

    auto key_of = [&](const CellAddress& a) -> std::optional<CellKey> {
        auto s = workbook.sheet_index(a.sheet);
        if (!s) return std::nullopt;
        return CellKey{*s, a.coord()};
    };

    // (precedent, dependent) -> approximate; exact wins over approximate.
    std::map<std::pair<CellKey, CellKey>, bool> edge_set;
    std::vector<std::pair<CellKey, Warning>> unresolved_warnings;

    for (const auto& [formula_addr, set] : precedents) {
        auto dep = key_of(formula_addr);
        if (!dep || types.at(dep->sheet, dep->coord) != CellType::Formula) continue;
        for (const CellAddress& p : set.cells) {
            auto pk = key_of(p);
            if (!pk || !is_node_type(types.at(pk->sheet, pk->coord))) continue;
            edge_set[{*pk, *dep}] = false;
        }
        std::string dep_id = cell_node_id(CellAddress{sheets[dep->sheet].name, dep->coord.col, dep->coord.row});
        for (const auto& u : set.unresolved) {
            using Reason = formula::Unresolved::Reason;
            if (u.reason == Reason::FullColumnOrRow && u.sheet && u.area) {
                auto s = workbook.sheet_index(*u.sheet);
                if (!s || *s >= blocks.size()) continue;
                for (const auto& b : blocks[*s]) {
                    if (!b.rect.intersects(*u.area)) continue;
                    for (const Coord& c : b.members) {
                        if (!u.area->contains(c) || !is_node_type(types.at(*s, c))) continue;
                        edge_set.try_emplace({CellKey{*s, c}, *dep}, true);
                        break;
                    }
                }
                continue;
            }
            WarningKind kind =
                u.reason == Reason::ExternalWorkbook ? WarningKind::ExternalWorkbook : WarningKind::UnresolvedReference;
            unresolved_warnings.push_back(
                {*dep, {kind, {dep_id}, to_string(formula_addr) + ": " + formula::to_string(u.reason) + " " + u.text}});
        }
    }

    auto id_of = [&](const CellKey& k) {
        return cell_node_id(CellAddress{sheets[k.sheet].name, k.coord.col, k.coord.row});
    };
    std::vector<CellEdge> edges;
    edges.reserve(edge_set.size());
    for (const auto& [pair, approx] : edge_set) edges.push_back({id_of(pair.first), id_of(pair.second), approx});

    // Cell-level cycles.
    std::map<CellKey, int> dense;
    for (const auto& [pair, _] : edge_set) {
        dense.emplace(pair.first, 0);
        dense.emplace(pair.second, 0);
    }
    std::vector<CellKey> keys;
    for (auto& [k, idx] : dense) {
        idx = static_cast<int>(keys.size());
        keys.push_back(k);
    }
    detail::Adjacency adj(keys.size());
    for (const auto& [pair, _] : edge_set) adj[dense[pair.first]].push_back(dense[pair.second]);
    auto comps = detail::strongly_connected(adj);
    std::vector<std::pair<CellKey, Warning>> cycle_warnings;
    for (const auto& members : comps.members) {
        if (members.size() < 2 && !detail::has_self_loop(adj, members.front())) continue;
        Warning w{WarningKind::CircularReference, {}, {}};
        std::string list;
        for (int m : members) {
            w.subjects.push_back(id_of(keys[m]));
            if (!list.empty()) list += ", ";
            list += to_string(CellAddress{sheets[keys[m].sheet].name, keys[m].coord.col, keys[m].coord.row});
        }
        w.message = "circular reference: " + list;
        cycle_warnings.push_back({keys[members.front()], std::move(w)});
    }

    auto by_key = [](const auto& a, const auto& b) { return a.first < b.first; };
    std::stable_sort(unresolved_warnings.begin(), unresolved_warnings.end(), by_key);
    std::sort(cycle_warnings.begin(), cycle_warnings.end(), by_key);
    std::vector<Warning> warnings = std::move(extra_warnings);
    for (auto& [_, w] : unresolved_warnings) warnings.push_back(std::move(w));
    for (auto& [_, w] : cycle_warnings) warnings.push_back(std::move(w));
    return LeveledGraph(std::move(nodes), std::move(edges), std::move(warnings));
}

} // namespace cellflow::graph
