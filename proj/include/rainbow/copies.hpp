#pragma once

#include "rainbow/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <thread>
#include <utility>
#include <vector>

namespace rainbow {

// A labeled placement of the pattern on positions {0..v-1}: the edge list a
// vertex permutation induces, as position pairs (i, j) with i < j. The set of
// distinct placements has size v! / |Aut|; applying each to an ascending
// vertex subset of K_n yields every unlabeled copy exactly once.
using CopyPattern = std::vector<std::pair<int, int>>;

inline std::vector<CopyPattern> copy_patterns(const Graph& h,
                                              int cap = Budget{}.automorphism_cap) {
    if (h.n() > cap)
        throw Error(ErrorKind::CapExceeded, "pattern too large for copy enumeration");
    std::vector<int> perm(h.n());
    for (int i = 0; i < h.n(); ++i)
        perm[i] = i;
    std::set<CopyPattern> seen;
    do {
        CopyPattern pat;
        pat.reserve(h.edges.size());
        for (auto [u, v] : h.edges) {
            int a = perm[u], b = perm[v];
            if (a > b)
                std::swap(a, b);
            pat.push_back({a, b});
        }
        std::sort(pat.begin(), pat.end());
        seen.insert(std::move(pat));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {seen.begin(), seen.end()};
}

// Total number of copies of h in K_n: (n)_{v(h)} / |Aut(h)|.
inline BigInt copy_count(const Graph& h, int n) {
    if (h.n() > n)
        return 0;
    return falling_factorial(n, h.n()) / automorphism_count(h);
}

namespace detail {

// Ascending v-subsets of [lo, n) with a fixed first element, then each
// pattern, in a deterministic order. visit(subset, pattern).
template <typename Visit>
void copies_with_first(int first, int n, int v, const std::vector<CopyPattern>& patterns,
                       std::vector<int>& subset, Visit&& visit) {
    subset[0] = first;
    std::function<void(int, int)> rec = [&](int pos, int next) {
        if (pos == v) {
            for (const auto& pat : patterns)
                visit(subset, pat);
            return;
        }
        for (int x = next; x <= n - (v - pos); ++x) {
            subset[pos] = x;
            rec(pos + 1, x + 1);
        }
    };
    rec(1, first + 1);
}

} // namespace detail

// Every unlabeled copy of h in K_n exactly once. visit(subset, pattern);
// the copy's edges are (subset[i], subset[j]) for (i, j) in the pattern.
template <typename Visit>
void for_each_copy(const Graph& h, int n, Visit&& visit) {
    if (h.n() > n || h.n() == 0)
        return;
    auto patterns = copy_patterns(h);
    std::vector<int> subset(h.n());
    for (int first = 0; first + h.n() <= n; ++first)
        detail::copies_with_first(first, n, h.n(), patterns, subset, visit);
}

// Parallel count of copies satisfying pred, partitioned by the smallest
// vertex of the copy. pred must be safe to call concurrently.
template <typename Pred>
std::uint64_t count_copies_if(const Graph& h, int n, Pred&& pred, ExecPolicy policy = {}) {
    if (h.n() > n || h.n() == 0)
        return 0;
    auto patterns = copy_patterns(h);
    int firsts = n - h.n() + 1;
    int workers = std::min(policy.resolve(), firsts);
    std::vector<std::uint64_t> partial(firsts, 0);
    auto run = [&](int w) {
        std::vector<int> subset(h.n());
        for (int first = w; first < firsts; first += workers) {
            std::uint64_t local = 0;
            detail::copies_with_first(first, n, h.n(), patterns, subset,
                                      [&](const std::vector<int>& s, const CopyPattern& pat) {
                                          if (pred(s, pat))
                                              ++local;
                                      });
            partial[first] = local;
        }
    };
    if (workers <= 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(run, w);
        for (auto& t : pool)
            t.join();
    }
    std::uint64_t total = 0;
    for (auto c : partial)
        total += c;
    return total;
}

// A materialized copy, for callers that want to look at one.
struct Copy {
    std::vector<int> vertices;                 // ascending image of the pattern
    std::vector<std::pair<int, int>> edges;    // edge subset of K_n
};

inline std::vector<Copy> enumerate_copies(const Graph& h, int n) {
    std::vector<Copy> out;
    for_each_copy(h, n, [&](const std::vector<int>& subset, const CopyPattern& pat) {
        Copy c;
        c.vertices = subset;
        for (auto [i, j] : pat)
            c.edges.push_back({subset[i], subset[j]});
        out.push_back(std::move(c));
    });
    return out;
}

// True iff every vertex touched by the subset has even degree within it.
// Edge indices refer to h.edges.
inline bool is_even_graph(const Graph& h, const std::vector<int>& edge_subset) {
    std::vector<int> deg(h.n(), 0);
    for (int e : edge_subset) {
        ++deg[h.edges[e].first];
        ++deg[h.edges[e].second];
    }
    for (int d : deg)
        if (d % 2 != 0)
            return false;
    return true;
}

// All subgraphs of h isomorphic to C_s, each as an ascending list of edge
// indices. Found by walking injective vertex cycles anchored at their
// smallest vertex, orientation fixed by second < last.
inline std::vector<std::vector<int>> cycle_subgraphs(const Graph& h, int s) {
    if (s < 3)
        throw Error(ErrorKind::InvalidInput, "cycles have at least 3 edges");
    std::vector<std::vector<int>> edge_index(h.n(), std::vector<int>(h.n(), -1));
    for (int e = 0; e < h.e(); ++e)
        edge_index[h.edges[e].first][h.edges[e].second] =
            edge_index[h.edges[e].second][h.edges[e].first] = e;
    auto adj = h.adjacency_lists();
    for (auto& a : adj)
        std::sort(a.begin(), a.end());

    std::vector<std::vector<int>> out;
    std::vector<int> walk;
    std::vector<bool> used(h.n(), false);
    std::function<void(int)> extend = [&](int depth) {
        int cur = walk.back();
        if (depth == s) {
            if (edge_index[cur][walk[0]] >= 0 && walk[1] < cur) {
                std::vector<int> cyc;
                for (int i = 0; i < s; ++i)
                    cyc.push_back(edge_index[walk[i]][walk[(i + 1) % s]]);
                std::sort(cyc.begin(), cyc.end());
                out.push_back(std::move(cyc));
            }
            return;
        }
        for (int next : adj[cur]) {
            if (used[next] || next < walk[0])
                continue;
            used[next] = true;
            walk.push_back(next);
            extend(depth + 1);
            walk.pop_back();
            used[next] = false;
        }
    };
    for (int start = 0; start < h.n(); ++start) {
        walk = {start};
        std::fill(used.begin(), used.end(), false);
        used[start] = true;
        extend(1);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace rainbow
