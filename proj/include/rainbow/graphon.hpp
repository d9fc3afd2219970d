#pragma once

#include "rainbow/coloring.hpp"
#include "rainbow/graph.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace rainbow {

// An r-tuple of piecewise-constant symmetric [0,1] functions on a q x q block
// grid, summing to 1 cellwise. `associated` marks graphons built from a
// concrete coloring: their diagonal cells are identically zero for every
// color (no self-loops) and are exempt from the partition-of-unity check.
struct StepColoringGraphon {
    int r = 0;
    int q = 0;
    bool associated = false;
    std::vector<Rational> block_weights;                  // q entries, positive, sum 1
    std::vector<std::vector<std::vector<Rational>>> values; // [r][q][q]

    const Rational& value(int color, int a, int b) const { return values[color][a][b]; }
};

inline void validate(const StepColoringGraphon& w) {
    if (w.r < 1 || w.q < 1)
        throw Error(ErrorKind::InvalidInput, "graphon needs r >= 1 and q >= 1");
    if (static_cast<int>(w.block_weights.size()) != w.q)
        throw Error(ErrorKind::InvalidInput, "graphon: wrong number of block weights");
    Rational wsum = 0;
    for (const auto& bw : w.block_weights) {
        if (bw <= 0)
            throw Error(ErrorKind::InvalidInput, "graphon: block weights must be positive");
        wsum += bw;
    }
    if (wsum != 1)
        throw Error(ErrorKind::InvalidInput, "graphon: block weights must sum to 1");
    if (static_cast<int>(w.values.size()) != w.r)
        throw Error(ErrorKind::InvalidInput, "graphon: wrong number of color planes");
    for (const auto& plane : w.values) {
        if (static_cast<int>(plane.size()) != w.q)
            throw Error(ErrorKind::InvalidInput, "graphon: value matrix must be q x q");
        for (const auto& row : plane)
            if (static_cast<int>(row.size()) != w.q)
                throw Error(ErrorKind::InvalidInput, "graphon: value matrix must be q x q");
    }
    for (int a = 0; a < w.q; ++a) {
        for (int b = 0; b < w.q; ++b) {
            Rational cell_sum = 0;
            for (int i = 0; i < w.r; ++i) {
                const Rational& x = w.values[i][a][b];
                if (x != w.values[i][b][a])
                    throw Error(ErrorKind::InvalidInput, "graphon: values must be symmetric");
                if (x < 0 || x > 1)
                    throw Error(ErrorKind::InvalidInput, "graphon: values must lie in [0, 1]");
                cell_sum += x;
            }
            if (a == b && w.associated) {
                if (cell_sum != 0)
                    throw Error(ErrorKind::InvalidInput,
                                "associated graphon: diagonal cells must be zero");
            } else if (cell_sum != 1) {
                throw Error(ErrorKind::InvalidInput, "graphon: cell sums must equal 1");
            }
        }
    }
}

// The uniform random r-coloring as a graphon: one block, every value 1/r.
inline StepColoringGraphon uniform_graphon(int r) {
    if (r < 1)
        throw Error(ErrorKind::InvalidInput, "need r >= 1");
    StepColoringGraphon w;
    w.r = r;
    w.q = 1;
    w.block_weights = {Rational(1)};
    w.values.assign(r, {{Rational(1, r)}});
    return w;
}

// Indicator graphon of a concrete coloring: n blocks of weight 1/n, color i
// equal to 1 exactly on the off-diagonal cells of color-i edges.
inline StepColoringGraphon associated_graphon(const EdgeColoring& c) {
    StepColoringGraphon w;
    w.r = c.r();
    w.q = c.n();
    w.associated = true;
    w.block_weights.assign(c.n(), Rational(1, c.n()));
    w.values.assign(c.r(), std::vector<std::vector<Rational>>(
                               c.n(), std::vector<Rational>(c.n(), Rational(0))));
    for (int u = 0; u < c.n(); ++u)
        for (int v = 0; v < c.n(); ++v)
            if (u != v)
                w.values[c.color(u, v)][u][v] = 1;
    return w;
}

struct DensityResult {
    Rational value;
    BigInt injection_count; // (r)_{e(H)}, the rainbow color assignments summed over
};

enum class DensityStrategy {
    Auto,          // direct for small patterns, elimination DP beyond 7 vertices
    Direct,        // plain double enumeration, the reference path
    EliminationDp, // per-injection sum factored over a vertex elimination order
};

namespace detail {

// Integerized view: value numerators over a common denominator, so the inner
// loops run on integers only.
struct ScaledGraphon {
    BigInt value_den;
    BigInt weight_den;
    std::vector<std::vector<std::vector<BigInt>>> num; // [r][q][q]
    std::vector<BigInt> weight_num;                    // [q]
};

inline ScaledGraphon scale_graphon(const StepColoringGraphon& w) {
    ScaledGraphon s;
    s.value_den = 1;
    for (const auto& plane : w.values)
        for (const auto& row : plane)
            for (const auto& x : row)
                s.value_den = lcm(s.value_den, denominator(x));
    s.weight_den = 1;
    for (const auto& bw : w.block_weights)
        s.weight_den = lcm(s.weight_den, denominator(bw));
    s.num.assign(w.r, std::vector<std::vector<BigInt>>(w.q, std::vector<BigInt>(w.q)));
    for (int i = 0; i < w.r; ++i)
        for (int a = 0; a < w.q; ++a)
            for (int b = 0; b < w.q; ++b)
                s.num[i][a][b] = numerator(w.values[i][a][b]) *
                                 (s.value_den / denominator(w.values[i][a][b]));
    s.weight_num.resize(w.q);
    for (int a = 0; a < w.q; ++a)
        s.weight_num[a] =
            numerator(w.block_weights[a]) * (s.weight_den / denominator(w.block_weights[a]));
    return s;
}

// Sum over all block assignments of prod(edge numerators) * prod(weight
// numerators), for one fixed color injection. Direct odometer.
inline BigInt block_sum_direct(const Graph& h, const ScaledGraphon& s, int q,
                               const std::vector<int>& edge_color) {
    std::vector<int> blocks(h.n(), 0);
    BigInt sum = 0;
    while (true) {
        BigInt term = 1;
        for (int v = 0; v < h.n(); ++v)
            term *= s.weight_num[blocks[v]];
        for (int e = 0; e < h.e(); ++e)
            term *= s.num[edge_color[e]][blocks[h.edges[e].first]][blocks[h.edges[e].second]];
        sum += term;
        int pos = 0;
        while (pos < h.n() && ++blocks[pos] == q)
            blocks[pos++] = 0;
        if (pos == h.n())
            break;
    }
    return sum;
}

// Same sum, computed by eliminating vertices in index order. The table is
// keyed by the blocks of the current boundary (vertices already placed that
// still have neighbors ahead).
inline BigInt block_sum_elimination(const Graph& h, const ScaledGraphon& s, int q,
                                    const std::vector<int>& edge_color) {
    int v = h.n();
    // last_neighbor[x]: highest-index neighbor, so we know when x leaves the boundary
    std::vector<int> last_neighbor(v, -1);
    for (auto [a, b] : h.edges) {
        last_neighbor[a] = std::max(last_neighbor[a], std::max(a, b));
        last_neighbor[b] = std::max(last_neighbor[b], std::max(a, b));
    }
    std::vector<std::vector<std::pair<int, int>>> back_edges(v); // (lower endpoint, edge index)
    for (int e = 0; e < h.e(); ++e) {
        auto [a, b] = h.edges[e];
        back_edges[std::max(a, b)].push_back({std::min(a, b), e});
    }

    std::vector<int> boundary; // sorted vertex indices with pending neighbors
    std::map<std::vector<int>, BigInt> table{{{}, BigInt(1)}};
    for (int t = 0; t < v; ++t) {
        std::map<std::vector<int>, BigInt> next;
        std::vector<int> new_boundary = boundary;
        new_boundary.push_back(t);
        std::vector<std::size_t> keep; // positions in new_boundary surviving past t
        for (std::size_t i = 0; i < new_boundary.size(); ++i)
            if (last_neighbor[new_boundary[i]] > t)
                keep.push_back(i);
        for (const auto& [assign, acc] : table) {
            for (int b = 0; b < q; ++b) {
                BigInt term = acc * s.weight_num[b];
                for (auto [x, e] : back_edges[t]) {
                    std::size_t pos =
                        std::lower_bound(boundary.begin(), boundary.end(), x) - boundary.begin();
                    term *= s.num[edge_color[e]][assign[pos]][b];
                }
                if (term == 0)
                    continue;
                std::vector<int> full = assign;
                full.push_back(b);
                std::vector<int> key;
                key.reserve(keep.size());
                for (auto i : keep)
                    key.push_back(full[i]);
                next[key] += term;
            }
        }
        table = std::move(next);
        boundary.clear();
        for (auto i : keep)
            boundary.push_back(new_boundary[i]);
    }
    BigInt sum = 0;
    for (const auto& [key, acc] : table)
        sum += acc;
    return sum;
}

template <typename PerInjection>
void for_each_color_injection(int edges, int r, PerInjection&& visit) {
    std::vector<int> edge_color(edges);
    std::vector<bool> used(r, false);
    std::function<void(int)> rec = [&](int e) {
        if (e == edges) {
            visit(edge_color);
            return;
        }
        for (int c = 0; c < r; ++c) {
            if (used[c])
                continue;
            used[c] = true;
            edge_color[e] = c;
            rec(e + 1);
            used[c] = false;
        }
    };
    rec(0);
}

} // namespace detail

// Exact rainbow homomorphism density of h in w: the sum over injective color
// assignments E(h) -> [r] and block assignments V(h) -> [q] of the product of
// cell values, weighted by block measures.
inline DensityResult rainbow_density(const Graph& h, const StepColoringGraphon& w,
                                     const Budget& budget = Budget{},
                                     DensityStrategy strategy = DensityStrategy::Auto) {
    DensityResult out;
    out.injection_count = falling_factorial(w.r, h.e());
    if (out.injection_count == 0) { // r < e(h): no rainbow assignment exists
        out.value = 0;
        return out;
    }
    BigInt cells = out.injection_count * int_pow(w.q, h.n());
    if (cells > budget.graphon_cells)
        throw Error(ErrorKind::ComplexityGuard,
                    "density sum needs " + cells.str() + " cell products, budget " +
                        std::to_string(budget.graphon_cells));
    bool use_dp = strategy == DensityStrategy::EliminationDp ||
                  (strategy == DensityStrategy::Auto && h.n() > 7);
    auto scaled = detail::scale_graphon(w);
    BigInt sum = 0;
    detail::for_each_color_injection(h.e(), w.r, [&](const std::vector<int>& edge_color) {
        sum += use_dp ? detail::block_sum_elimination(h, scaled, w.q, edge_color)
                      : detail::block_sum_direct(h, scaled, w.q, edge_color);
    });
    BigInt den = int_pow(scaled.value_den, h.e()) * int_pow(scaled.weight_den, h.n());
    out.value = Rational(sum, den);
    return out;
}

// Closed form for the uniform graphon: (r)_e / r^e.
inline Rational baseline_density(const Graph& h, int r) {
    if (r < 1)
        throw Error(ErrorKind::InvalidInput, "need r >= 1");
    return Rational(falling_factorial(r, h.e()), int_pow(r, h.e()));
}

// Brute-force oracle for the density bridge: the number of maps V(h) -> [n]
// sending every pattern edge to a K_n edge with all e(h) image colors
// pairwise distinct. Maps collapsing an edge contribute nothing, and two
// pattern edges on one K_n edge can never be rainbow.
inline BigInt rainbow_hom_count(const Graph& h, const EdgeColoring& c,
                                const Budget& budget = Budget{}) {
    BigInt maps = int_pow(c.n(), h.n());
    if (maps > budget.hom_maps)
        throw Error(ErrorKind::CapExceeded,
                    "homomorphism oracle needs " + maps.str() + " maps, cap " +
                        std::to_string(budget.hom_maps));
    std::vector<int> image(h.n(), 0);
    std::uint64_t count = 0;
    while (true) {
        std::uint64_t mask = 0;
        bool ok = true;
        for (auto [u, v] : h.edges) {
            if (image[u] == image[v]) {
                ok = false;
                break;
            }
            std::uint64_t bit = std::uint64_t{1} << c.color(image[u], image[v]);
            if (mask & bit) {
                ok = false;
                break;
            }
            mask |= bit;
        }
        if (ok)
            ++count;
        int pos = 0;
        while (pos < h.n() && ++image[pos] == c.n())
            image[pos++] = 0;
        if (pos == h.n())
            break;
    }
    return count;
}

// Text format: "r q", q block weights, then r matrices of q x q fractions.
// A file whose diagonal cells are all zero parses as an associated graphon.
inline StepColoringGraphon read_graphon(std::istream& in) {
    int r = 0, q = 0;
    if (!(in >> r >> q))
        throw Error(ErrorKind::InvalidInput, "graphon file: expected 'r q' header");
    if (r < 1 || q < 1)
        throw Error(ErrorKind::InvalidInput, "graphon file: need r >= 1 and q >= 1");
    auto next_rational = [&in]() {
        std::string tok;
        if (!(in >> tok))
            throw Error(ErrorKind::InvalidInput, "graphon file: truncated");
        try {
            return parse_rational(tok);
        } catch (const std::exception& e) {
            throw Error(ErrorKind::InvalidInput, std::string("graphon file: ") + e.what());
        }
    };
    StepColoringGraphon w;
    w.r = r;
    w.q = q;
    for (int a = 0; a < q; ++a)
        w.block_weights.push_back(next_rational());
    w.values.assign(r, std::vector<std::vector<Rational>>(q, std::vector<Rational>(q)));
    for (int i = 0; i < r; ++i)
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b)
                w.values[i][a][b] = next_rational();
    bool diagonal_zero = true;
    for (int a = 0; a < q && diagonal_zero; ++a)
        for (int i = 0; i < r && diagonal_zero; ++i)
            diagonal_zero = w.values[i][a][a] == 0;
    w.associated = q > 1 && diagonal_zero;
    validate(w);
    return w;
}

inline void write_graphon(std::ostream& out, const StepColoringGraphon& w) {
    out << w.r << " " << w.q << "\n";
    for (int a = 0; a < w.q; ++a)
        out << (a ? " " : "") << to_fraction_string(w.block_weights[a]);
    out << "\n";
    for (int i = 0; i < w.r; ++i) {
        for (int a = 0; a < w.q; ++a) {
            for (int b = 0; b < w.q; ++b)
                out << (b ? " " : "") << to_fraction_string(w.values[i][a][b]);
            out << "\n";
        }
    }
}

} // namespace rainbow
