#pragma once

#include <algorithm>
#include <vector>

namespace cellflow::detail {

using Adjacency = std::vector<std::vector<int>>;

/// Strongly connected components (iterative Tarjan). component[v] numbers
/// components in the order Tarjan closes them, so every edge between two
/// components goes from a higher number to a lower one.
struct Components {
    std::vector<int> component;
    std::vector<std::vector<int>> members;  // each sorted ascending
};

inline Components strongly_connected(const Adjacency& adj) {
    const int n = static_cast<int>(adj.size());
    Components out;
    out.component.assign(n, -1);
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int counter = 0;

    struct Frame {
        int v;
        std::size_t next;
    };
    std::vector<Frame> call;
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.next < adj[f.v].size()) {
                int w = adj[f.v][f.next++];
                if (index[w] == -1) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            int v = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == index[v]) {
                std::vector<int> comp;
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    out.component[w] = static_cast<int>(out.members.size());
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                out.members.push_back(std::move(comp));
            }
        }
    }
    return out;
}

inline bool has_self_loop(const Adjacency& adj, int v) {
    return std::find(adj[v].begin(), adj[v].end(), v) != adj[v].end();
}

} // namespace cellflow::detail
