#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <regex>

#include "random_formula.hpp"

namespace cellflow::testing {

using namespace formula;

namespace {

constexpr std::int64_t kLimit = std::int64_t(1) << 20;

std::optional<std::string> spelling(const Workbook& wb, const std::string& sheet) {
    for (const auto& ws : wb.sheets()) {
        if (ws.name.size() != sheet.size()) continue;
        bool same = true;
        for (std::size_t i = 0; i < sheet.size() && same; ++i)
            same = std::tolower(static_cast<unsigned char>(ws.name[i])) == std::tolower(static_cast<unsigned char>(sheet[i]));
        if (same) return ws.name;
    }
    return std::nullopt;
}

struct Walker {
    const Workbook& wb;
    std::string home;
    OraclePrecedents out;
    bool in_name = false;

    void unresolved(Unresolved::Reason r, std::string sheet = {}, Rect area = {}) {
        out.unresolved.insert({static_cast<int>(r), sheet, area});
    }

    void rect(const std::optional<std::string>& qualifier, int r1, int c1, int r2, int c2) {
        auto sheet = spelling(wb, qualifier.value_or(home));
        if (!sheet) return unresolved(Unresolved::Reason::UnknownSheet);
        int top = std::min(r1, r2), bottom = std::max(r1, r2);
        int left = std::min(c1, c2), right = std::max(c1, c2);
        if (std::int64_t(bottom - top + 1) * (right - left + 1) > kLimit)
            return unresolved(Unresolved::Reason::FullColumnOrRow, *sheet, Rect{top, left, bottom, right});
        for (int r = top; r <= bottom; ++r)
            for (int c = left; c <= right; ++c) out.cells.insert(CellAddress{*sheet, c, r});
    }

    void name(const std::string& id) {
        // Mirror of reference_workbook()'s table.
        std::string key = to_upper(id);
        if (!in_name) {
            if (key == "RATE") return rect(std::string("Sheet1"), 1, 2, 1, 2);
            if (key == "BLOCK") return rect(std::string("Data"), 1, 1, 3, 3);
            if (key == "LOCALRATE" && iequals(home, "My Sheet")) return rect(std::string("My Sheet"), 4, 4, 4, 4);
        }
        unresolved(Unresolved::Reason::DefinedName);
    }

    void walk(const Expr& e) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, CellRef>) {
                    rect(n.sheet, n.row, n.col, n.row, n.col);
                } else if constexpr (std::is_same_v<T, RangeRef>) {
                    rect(n.start.sheet, n.start.row, n.start.col, n.end.row, n.end.col);
                } else if constexpr (std::is_same_v<T, LineRangeRef>) {
                    auto sheet = spelling(wb, n.sheet.value_or(home));
                    if (!sheet) return unresolved(Unresolved::Reason::UnknownSheet);
                    int lo = std::min(n.first, n.last), hi = std::max(n.first, n.last);
                    Rect area = n.axis == LineRangeRef::Axis::Column ? Rect{1, lo, kMaxRows, hi}
                                                                     : Rect{lo, 1, hi, kMaxColumns};
                    unresolved(Unresolved::Reason::FullColumnOrRow, *sheet, area);
                } else if constexpr (std::is_same_v<T, ExternalRef>) {
                    unresolved(Unresolved::Reason::ExternalWorkbook);
                } else if constexpr (std::is_same_v<T, NameRef>) {
                    name(n.identifier);
                } else if constexpr (std::is_same_v<T, FunctionCall>) {
                    for (const auto& a : n.args) walk(a);
                } else if constexpr (std::is_same_v<T, BinaryOp>) {
                    walk(*n.left);
                    walk(*n.right);
                } else if constexpr (std::is_same_v<T, UnaryOp>) {
                    walk(*n.operand);
                }
            },
            e.node);
    }
};

} // namespace

OraclePrecedents oracle_precedents(const Expr& ast, const std::string& home, const Workbook& wb) {
    Walker w{wb, home, {}};
    w.walk(ast);
    return std::move(w.out);
}

OraclePrecedents reduce(const PrecedentSet& set) {
    OraclePrecedents out;
    out.cells.insert(set.cells.begin(), set.cells.end());
    for (const auto& u : set.unresolved) {
        bool keep_area = u.reason == Unresolved::Reason::FullColumnOrRow;
        out.unresolved.insert({static_cast<int>(u.reason), keep_area ? u.sheet.value_or("") : "",
                               keep_area ? u.area.value_or(Rect{}) : Rect{}});
    }
    return out;
}

// ---- blocks --------------------------------------------------------------

std::vector<OracleBlock> oracle_blocks(const std::vector<std::vector<bool>>& grid) {
    int rows = static_cast<int>(grid.size());
    int cols = rows ? static_cast<int>(grid[0].size()) : 0;
    std::vector<std::vector<int>> comp(rows, std::vector<int>(cols, -1));
    std::vector<Rect> rects;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (!grid[r][c] || comp[r][c] >= 0) continue;
            int id = static_cast<int>(rects.size());
            Rect box{r + 1, c + 1, r + 1, c + 1};
            std::deque<std::pair<int, int>> queue{{r, c}};
            comp[r][c] = id;
            while (!queue.empty()) {
                auto [y, x] = queue.front();
                queue.pop_front();
                box = box.united(Rect{y + 1, x + 1, y + 1, x + 1});
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        int ny = y + dy, nx = x + dx;
                        if (ny < 0 || nx < 0 || ny >= rows || nx >= cols) continue;
                        if (!grid[ny][nx] || comp[ny][nx] >= 0) continue;
                        comp[ny][nx] = id;
                        queue.push_back({ny, nx});
                    }
            }
            rects.push_back(box);
        }

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < rects.size() && !changed; ++i)
            for (std::size_t j = i + 1; j < rects.size() && !changed; ++j) {
                const Rect& a = rects[i];
                const Rect& b = rects[j];
                bool touch = a.top <= b.bottom + 1 && b.top <= a.bottom + 1 && a.left <= b.right + 1 &&
                             b.left <= a.right + 1;
                if (!touch) continue;
                rects[i] = a.united(b);
                rects.erase(rects.begin() + static_cast<std::ptrdiff_t>(j));
                changed = true;
            }
    }

    std::vector<OracleBlock> out;
    for (const auto& rect : rects) {
        OracleBlock b{rect, {}};
        for (int r = rect.top; r <= rect.bottom; ++r)
            for (int c = rect.left; c <= rect.right; ++c)
                if (grid[r - 1][c - 1]) b.members.push_back({r, c});
        out.push_back(std::move(b));
    }
    std::sort(out.begin(), out.end(), [](const OracleBlock& a, const OracleBlock& b) {
        return std::pair(a.rect.top, a.rect.left) < std::pair(b.rect.top, b.rect.left);
    });
    return out;
}

// ---- smells --------------------------------------------------------------

graph::ViewGraph SmallDigraph::to_view() const {
    graph::ViewGraph v;
    for (int i = 0; i < n; ++i)
        v.nodes.push_back({graph::sheet_node_id(name(i)), name(i), graph::NodeKind::Worksheet, {}, false});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (multiplicity[i][j] > 0)
                v.edges.push_back({graph::sheet_node_id(name(i)), graph::sheet_node_id(name(j)), multiplicity[i][j], false});
    return v;
}

namespace {

using Reach = std::vector<std::vector<bool>>;

Reach closure(const SmallDigraph& g, int skip_from = -1, int skip_to = -1) {
    Reach r(g.n, std::vector<bool>(g.n, false));
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) r[i][j] = g.multiplicity[i][j] > 0 && !(i == skip_from && j == skip_to);
    for (int k = 0; k < g.n; ++k)
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                if (r[i][k] && r[k][j]) r[i][j] = true;
    return r;
}

std::vector<std::vector<int>> cyclic_sets(const SmallDigraph& g, const Reach& r) {
    std::vector<std::vector<int>> sets;
    std::vector<bool> seen(g.n, false);
    for (int i = 0; i < g.n; ++i) {
        if (seen[i] || !r[i][i]) continue;
        std::vector<int> s;
        for (int j = 0; j < g.n; ++j)
            if (i == j || (r[i][j] && r[j][i])) {
                s.push_back(j);
                seen[j] = true;
            }
        sets.push_back(s);
    }
    return sets;
}

} // namespace

std::vector<OracleCycle> oracle_cycles(const SmallDigraph& g) {
    std::vector<OracleCycle> out;
    for (const auto& s : cyclic_sets(g, closure(g))) {
        OracleCycle c;
        for (int a : s) {
            c.members.push_back(SmallDigraph::name(a));
            for (int b : s) c.internal_multiplicity += g.multiplicity[a][b];
        }
        std::sort(c.members.begin(), c.members.end());
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.members < b.members; });
    return out;
}

std::optional<std::pair<std::string, std::string>> oracle_against_stream(const SmallDigraph& g) {
    auto sets = cyclic_sets(g, closure(g));
    if (sets.size() != 1 || sets[0].size() < 3) return std::nullopt;
    std::optional<std::tuple<int, std::string, std::string>> best;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            if (g.multiplicity[i][j] == 0) continue;
            auto r = closure(g, i, j);
            bool acyclic = true;
            for (int k = 0; k < g.n; ++k) acyclic = acyclic && !r[k][k];
            if (!acyclic) continue;
            std::tuple<int, std::string, std::string> cand{g.multiplicity[i][j], SmallDigraph::name(i),
                                                           SmallDigraph::name(j)};
            if (!best || cand < *best) best = cand;
        }
    if (!best) return std::nullopt;
    return std::pair(std::get<1>(*best), std::get<2>(*best));
}

// ---- text-level reference count ------------------------------------------

std::set<std::pair<CellAddress, CellAddress>> scan_references(const Workbook& wb) {
    static const std::regex ref(
        R"((?:'((?:[^']|'')+)'!|([A-Za-z_][A-Za-z0-9_.\-]*)!)?\$?([A-Z]{1,3})\$?([0-9]+)(?::\$?([A-Z]{1,3})\$?([0-9]+))?)");
    std::set<std::pair<CellAddress, CellAddress>> pairs;
    for (const auto& ws : wb.sheets()) {
        for (const auto& [coord, content] : ws.cells) {
            const auto* f = std::get_if<Formula>(&content);
            if (!f) continue;
            // Drop string literals so their contents are not mistaken for references.
            std::string body;
            bool in_string = false;
            for (char ch : f->text) {
                if (ch == '"') in_string = !in_string;
                else if (!in_string) body += ch;
            }
            CellAddress dependent{ws.name, coord.col, coord.row};
            for (std::sregex_iterator it(body.begin(), body.end(), ref), end; it != end; ++it) {
                const auto& m = *it;
                // Skip function names such as LOG10( that look like references.
                auto after = static_cast<std::size_t>(m.position() + m.length());
                if (after < body.size() && body[after] == '(') continue;
                std::string sheet = ws.name;
                if (m[1].matched) {
                    sheet = m[1].str();
                    for (std::size_t p = sheet.find("''"); p != std::string::npos; p = sheet.find("''", p + 1))
                        sheet.erase(p, 1);
                } else if (m[2].matched) {
                    sheet = m[2].str();
                }
                const Worksheet* target = wb.sheet(sheet);
                if (!target) continue;
                int c1 = *column_index(m[3].str()), r1 = std::stoi(m[4].str());
                int c2 = m[5].matched ? *column_index(m[5].str()) : c1;
                int r2 = m[6].matched ? std::stoi(m[6].str()) : r1;
                for (int r = std::min(r1, r2); r <= std::max(r1, r2); ++r)
                    for (int c = std::min(c1, c2); c <= std::max(c1, c2); ++c)
                        if (target->find({r, c})) pairs.insert({CellAddress{target->name, c, r}, dependent});
            }
        }
    }
    return pairs;
}

} // namespace cellflow::testing
