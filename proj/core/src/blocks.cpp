#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "cellflow/structure.hpp"

namespace cellflow::structure {

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

std::uint64_t key(Coord c) { return (std::uint64_t(std::uint32_t(c.row)) << 32) | std::uint32_t(c.col); }

} // namespace

std::string block_id(std::string_view sheet, const Rect& rect) { return std::string(sheet) + "!" + a1(rect); }

std::vector<DataBlock> detect_blocks(const Worksheet& sheet) {
    std::vector<Coord> cells;
    cells.reserve(sheet.cells.size());
    for (const auto& [c, _] : sheet.cells) cells.push_back(c);

    std::unordered_map<std::uint64_t, std::size_t> index;
    index.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) index.emplace(key(cells[i]), i);

    // 8-connected components. Looking back at the four already-visited
    // neighbours (row-major) is enough to see every adjacency once.
    DisjointSets sets(cells.size());
    constexpr int kBack[4][2] = {{0, -1}, {-1, -1}, {-1, 0}, {-1, 1}};
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (auto [dr, dc] : kBack) {
            Coord n{cells[i].row + dr, cells[i].col + dc};
            if (auto it = index.find(key(n)); it != index.end()) sets.unite(i, it->second);
        }
    }

    struct Piece {
        Rect rect;
        std::vector<std::size_t> roots;  // components inside this rectangle
    };
    std::map<std::size_t, Rect> boxes;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        Rect cell{cells[i].row, cells[i].col, cells[i].row, cells[i].col};
        auto [it, fresh] = boxes.emplace(sets.find(i), cell);
        if (!fresh) it->second = it->second.united(cell);
    }
    std::vector<Piece> pieces;
    for (const auto& [root, r] : boxes) pieces.push_back({r, {root}});

    // Merge touching rectangles until stable. Sorting by top edge lets each
    // pass stop scanning once candidates start below the current bottom.
    auto by_rect = [](const Piece& a, const Piece& b) { return a.rect < b.rect; };
    bool changed = true;
    while (changed) {
        changed = false;
        std::sort(pieces.begin(), pieces.end(), by_rect);
        std::vector<Piece> merged;
        std::vector<bool> used(pieces.size(), false);
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            if (used[i]) continue;
            Piece acc = std::move(pieces[i]);
            bool grew = true;
            while (grew) {
                grew = false;
                for (std::size_t j = i + 1; j < pieces.size(); ++j) {
                    if (used[j]) continue;
                    if (pieces[j].rect.top > acc.rect.bottom + 1) break;
                    if (acc.rect.touches(pieces[j].rect)) {
                        acc.rect = acc.rect.united(pieces[j].rect);
                        acc.roots.insert(acc.roots.end(), pieces[j].roots.begin(), pieces[j].roots.end());
                        used[j] = true;
                        grew = changed = true;
                    }
                }
            }
            merged.push_back(std::move(acc));
        }
        pieces = std::move(merged);
    }
    std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
        return std::tie(a.rect.top, a.rect.left) < std::tie(b.rect.top, b.rect.left);
    });

    std::vector<DataBlock> blocks;
    blocks.reserve(pieces.size());
    std::unordered_map<std::size_t, std::size_t> block_of_root;
    for (std::size_t p = 0; p < pieces.size(); ++p) {
        DataBlock b;
        b.sheet = sheet.name;
        b.rect = pieces[p].rect;
        b.id = block_id(sheet.name, b.rect);
        b.name = b.id;
        blocks.push_back(std::move(b));
        for (std::size_t root : pieces[p].roots) block_of_root.emplace(root, p);
    }
    // Cells are visited row-major, so members come out row-major too.
    for (std::size_t i = 0; i < cells.size(); ++i) blocks[block_of_root.at(sets.find(i))].members.push_back(cells[i]);
    return blocks;
}

void name_blocks(std::vector<DataBlock>& blocks, const Worksheet& sheet, const CellTypes& types,
                 std::size_t sheet_index) {
    for (auto& b : blocks) {
        b.name = b.id;
        for (const Coord& c : b.members) {
            if (types.at(sheet_index, c) == CellType::Label) {
                b.name = label_text(*sheet.find(c));
                break;
            }
        }
    }
}

} // namespace cellflow::structure
