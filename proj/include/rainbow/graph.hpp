#pragma once

#include "rainbow/budget.hpp"
#include "rainbow/error.hpp"
#include "rainbow/rational.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace rainbow {

// Image of a pattern's vertices in some host, one entry per pattern vertex.
using VertexMap = std::vector<int>;

// Simple undirected pattern graph. Edges are stored as (u, v) with u < v,
// sorted lexicographically, so edge indices are stable across runs.
struct Graph {
    int n_vertices = 0;
    std::vector<std::pair<int, int>> edges;

    int n() const { return n_vertices; }
    int e() const { return static_cast<int>(edges.size()); }

    std::vector<std::vector<bool>> adjacency_matrix() const {
        std::vector<std::vector<bool>> adj(n_vertices, std::vector<bool>(n_vertices, false));
        for (auto [u, v] : edges)
            adj[u][v] = adj[v][u] = true;
        return adj;
    }

    std::vector<std::vector<int>> adjacency_lists() const {
        std::vector<std::vector<int>> adj(n_vertices);
        for (auto [u, v] : edges) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        return adj;
    }

    std::vector<int> degrees() const {
        std::vector<int> deg(n_vertices, 0);
        for (auto [u, v] : edges) {
            ++deg[u];
            ++deg[v];
        }
        return deg;
    }

    bool operator==(const Graph&) const = default;
};

inline Graph make_graph(int n, std::vector<std::pair<int, int>> edges) {
    if (n < 0)
        throw Error(ErrorKind::InvalidInput, "negative vertex count");
    std::set<std::pair<int, int>> seen;
    for (auto& [u, v] : edges) {
        if (u == v)
            throw Error(ErrorKind::InvalidInput, "self-loop at vertex " + std::to_string(u));
        if (u > v)
            std::swap(u, v);
        if (u < 0 || v >= n)
            throw Error(ErrorKind::InvalidInput,
                        "edge (" + std::to_string(u) + ", " + std::to_string(v) +
                            ") out of range for n=" + std::to_string(n));
        if (!seen.insert({u, v}).second)
            throw Error(ErrorKind::InvalidInput,
                        "duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    }
    std::sort(edges.begin(), edges.end());
    return Graph{n, std::move(edges)};
}

inline Graph cycle_graph(int s) {
    if (s < 3)
        throw Error(ErrorKind::InvalidInput, "cycle needs at least 3 vertices");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < s; ++i)
        edges.push_back({i, (i + 1) % s});
    return make_graph(s, std::move(edges));
}

inline Graph complete_graph(int s) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < s; ++u)
        for (int v = u + 1; v < s; ++v)
            edges.push_back({u, v});
    return make_graph(s, std::move(edges));
}

// Path with s edges (s + 1 vertices).
inline Graph path_graph(int s) {
    if (s < 1)
        throw Error(ErrorKind::InvalidInput, "path needs at least 1 edge");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < s; ++i)
        edges.push_back({i, i + 1});
    return make_graph(s + 1, std::move(edges));
}

inline Graph read_graph(std::istream& in) {
    int n = 0, m = 0;
    if (!(in >> n >> m))
        throw Error(ErrorKind::InvalidInput, "graph file: expected 'n m' header");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < m; ++i) {
        int u, v;
        if (!(in >> u >> v))
            throw Error(ErrorKind::InvalidInput, "graph file: expected " + std::to_string(m) +
                                                     " edge lines, got " + std::to_string(i));
        edges.push_back({u, v});
    }
    return make_graph(n, std::move(edges));
}

inline void write_graph(std::ostream& out, const Graph& g) {
    out << g.n() << " " << g.e() << "\n";
    for (auto [u, v] : g.edges)
        out << u << " " << v << "\n";
}

// Accepts the named built-ins C<s>, K<s>, P<s>; anything else is a file path.
inline Graph load_graph(const std::string& source) {
    if (source.size() >= 2 && (source[0] == 'C' || source[0] == 'K' || source[0] == 'P') &&
        std::all_of(source.begin() + 1, source.end(), [](char c) { return std::isdigit(c); })) {
        int s = std::stoi(source.substr(1));
        switch (source[0]) {
        case 'C': return cycle_graph(s);
        case 'K': return complete_graph(s);
        default: return path_graph(s);
        }
    }
    std::ifstream in(source);
    if (!in)
        throw Error(ErrorKind::InvalidInput, "cannot open graph file: " + source);
    return read_graph(in);
}

// Length of a shortest cycle; nullopt for forests. BFS from every vertex:
// the first cross edge seen from root x gives a closed walk of length
// dist[a] + dist[b] + 1, and the minimum over all roots is exact.
inline std::optional<int> girth(const Graph& g) {
    auto adj = g.adjacency_lists();
    int best = -1;
    std::vector<int> dist(g.n()), parent(g.n());
    for (int root = 0; root < g.n(); ++root) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(parent.begin(), parent.end(), -1);
        dist[root] = 0;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int y : adj[x]) {
                if (dist[y] == -1) {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    q.push(y);
                } else if (y != parent[x]) {
                    int len = dist[x] + dist[y] + 1;
                    if (best == -1 || len < best)
                        best = len;
                }
            }
        }
    }
    if (best == -1)
        return std::nullopt;
    return best;
}

namespace detail {

template <typename Visit>
void automorphism_search(const Graph& g, const std::vector<std::vector<bool>>& adj,
                         const std::vector<int>& deg, VertexMap& map, std::vector<bool>& used,
                         int depth, Visit&& visit) {
    if (depth == g.n()) {
        visit(map);
        return;
    }
    for (int target = 0; target < g.n(); ++target) {
        if (used[target] || deg[target] != deg[depth])
            continue;
        bool ok = true;
        for (int j = 0; j < depth && ok; ++j)
            ok = adj[depth][j] == adj[target][map[j]];
        if (!ok)
            continue;
        map[depth] = target;
        used[target] = true;
        automorphism_search(g, adj, deg, map, used, depth + 1, visit);
        used[target] = false;
    }
}

} // namespace detail

// All vertex permutations preserving the edge set, in lexicographic order.
inline std::vector<VertexMap> automorphisms(const Graph& g, int cap = Budget{}.automorphism_cap) {
    if (g.n() > cap)
        throw Error(ErrorKind::CapExceeded, "automorphism search capped at " + std::to_string(cap) +
                                                " vertices, got " + std::to_string(g.n()));
    auto adj = g.adjacency_matrix();
    auto deg = g.degrees();
    VertexMap map(g.n());
    std::vector<bool> used(g.n(), false);
    std::vector<VertexMap> out;
    detail::automorphism_search(g, adj, deg, map, used, 0,
                                [&](const VertexMap& m) { out.push_back(m); });
    return out;
}

inline std::uint64_t automorphism_count(const Graph& g, int cap = Budget{}.automorphism_cap) {
    return automorphisms(g, cap).size();
}

} // namespace rainbow
