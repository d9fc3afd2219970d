#pragma once

#include "rainbow/copies.hpp"
#include "rainbow/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace rainbow {

// An r-coloring of E(K_n). Colors are small integers; the rainbow test uses
// a 64-bit mask of seen colors, so r is capped at 64.
class EdgeColoring {
public:
    EdgeColoring() = default;

    EdgeColoring(int n, int r, int fill = 0) : n_(n), r_(r) {
        if (n < 2)
            throw Error(ErrorKind::InvalidInput, "coloring needs at least 2 vertices");
        if (r < 1 || r > 64)
            throw Error(ErrorKind::InvalidInput, "color count must be in [1, 64]");
        if (fill < 0 || fill >= r)
            throw Error(ErrorKind::InvalidInput, "fill color out of range");
        colors_.assign(static_cast<std::size_t>(n) * (n - 1) / 2, fill);
    }

    int n() const { return n_; }
    int r() const { return r_; }

    int color(int u, int v) const { return colors_[index(u, v)]; }

    void set_color(int u, int v, int c) {
        if (c < 0 || c >= r_)
            throw Error(ErrorKind::InvalidInput, "color out of range");
        colors_[index(u, v)] = c;
    }

    bool operator==(const EdgeColoring&) const = default;

private:
    std::size_t index(int u, int v) const {
        if (u > v)
            std::swap(u, v);
        if (u < 0 || v >= n_ || u == v)
            throw Error(ErrorKind::InvalidInput, "edge endpoints out of range");
        // row-major triangle: all pairs (u, *) before (u+1, *)
        return static_cast<std::size_t>(u) * n_ - static_cast<std::size_t>(u) * (u + 1) / 2 +
               (v - u - 1);
    }

    int n_ = 0;
    int r_ = 0;
    std::vector<std::int8_t> colors_;
};

// Text format: first line "n r", then n(n-1)/2 lines "u v c".
inline EdgeColoring read_coloring(std::istream& in) {
    int n = 0, r = 0;
    if (!(in >> n >> r))
        throw Error(ErrorKind::InvalidInput, "coloring file: expected 'n r' header");
    EdgeColoring c(n, r);
    std::vector<bool> seen(static_cast<std::size_t>(n) * (n - 1) / 2, false);
    std::size_t edges = seen.size();
    for (std::size_t i = 0; i < edges; ++i) {
        int u, v, col;
        if (!(in >> u >> v >> col))
            throw Error(ErrorKind::InvalidInput, "coloring file: expected " +
                                                     std::to_string(edges) + " edge lines");
        if (u == v || u < 0 || u >= n || v < 0 || v >= n)
            throw Error(ErrorKind::InvalidInput, "coloring file: bad edge (" +
                                                     std::to_string(u) + ", " + std::to_string(v) + ")");
        std::size_t idx = static_cast<std::size_t>(std::min(u, v)) * n -
                          static_cast<std::size_t>(std::min(u, v)) * (std::min(u, v) + 1) / 2 +
                          (std::max(u, v) - std::min(u, v) - 1);
        if (seen[idx])
            throw Error(ErrorKind::InvalidInput, "coloring file: duplicate edge (" +
                                                     std::to_string(u) + ", " + std::to_string(v) + ")");
        seen[idx] = true;
        c.set_color(u, v, col);
    }
    return c;
}

inline void write_coloring(std::ostream& out, const EdgeColoring& c) {
    out << c.n() << " " << c.r() << "\n";
    for (int u = 0; u < c.n(); ++u)
        for (int v = u + 1; v < c.n(); ++v)
            out << u << " " << v << " " << c.color(u, v) << "\n";
}

inline EdgeColoring permute_colors(const EdgeColoring& c, const std::vector<int>& perm) {
    EdgeColoring out(c.n(), c.r());
    for (int u = 0; u < c.n(); ++u)
        for (int v = u + 1; v < c.n(); ++v)
            out.set_color(u, v, perm.at(c.color(u, v)));
    return out;
}

inline EdgeColoring relabel_vertices(const EdgeColoring& c, const std::vector<int>& perm) {
    EdgeColoring out(c.n(), c.r());
    for (int u = 0; u < c.n(); ++u)
        for (int v = u + 1; v < c.n(); ++v)
            out.set_color(perm.at(u), perm.at(v), c.color(u, v));
    return out;
}

struct RainbowCount {
    BigInt copies;
    BigInt total;
    Rational density_per_copy;
};

// Number of copies of h in K_n whose edges carry pairwise distinct colors.
// A pattern larger than the host has no copies: copies = total = 0.
inline RainbowCount count_rainbow(const Graph& h, const EdgeColoring& c, ExecPolicy policy = {}) {
    if (h.n() < 1)
        throw Error(ErrorKind::InvalidInput, "pattern needs at least one vertex");
    if (h.n() > c.n())
        return RainbowCount{};
    std::uint64_t copies =
        count_copies_if(h, c.n(),
                        [&](const std::vector<int>& subset, const CopyPattern& pat) {
                            std::uint64_t mask = 0;
                            for (auto [i, j] : pat) {
                                std::uint64_t bit = std::uint64_t{1}
                                                    << c.color(subset[i], subset[j]);
                                if (mask & bit)
                                    return false;
                                mask |= bit;
                            }
                            return true;
                        },
                        policy);
    RainbowCount out;
    out.copies = copies;
    out.total = copy_count(h, c.n());
    out.density_per_copy = Rational(out.copies, out.total);
    return out;
}

// Expected rainbow copies under the uniform random r-coloring of E(K_n):
// (r)_e * (n)_v / (r^e * |Aut|), exactly.
inline Rational expected_uniform_count(const Graph& h, int r, int n) {
    BigInt num = falling_factorial(r, h.e()) * falling_factorial(n, h.n());
    BigInt den = int_pow(r, h.e()) * automorphism_count(h);
    return Rational(num, den);
}

// Exact average of count_rainbow over all r^(n(n-1)/2) colorings.
inline Rational empirical_uniform_mean(const Graph& h, int r, int n,
                                       const Budget& budget = Budget{}) {
    if (n < 2 || r < 1)
        throw Error(ErrorKind::InvalidInput, "need n >= 2 and r >= 1");
    std::uint64_t edges = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    BigInt space = int_pow(r, edges);
    if (space > budget.coloring_space)
        throw Error(ErrorKind::CapExceeded,
                    "coloring space " + space.str() + " above cap " +
                        std::to_string(budget.coloring_space));
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            pairs.push_back({u, v});
    EdgeColoring c(n, r);
    BigInt sum = 0;
    std::vector<int> digit(edges, 0);
    while (true) {
        sum += count_rainbow(h, c, ExecPolicy{1}).copies;
        std::size_t pos = 0;
        while (pos < edges) {
            if (++digit[pos] < r) {
                c.set_color(pairs[pos].first, pairs[pos].second, digit[pos]);
                break;
            }
            digit[pos] = 0;
            c.set_color(pairs[pos].first, pairs[pos].second, 0);
            ++pos;
        }
        if (pos == edges)
            break;
    }
    return Rational(sum, space);
}

// Rainbow copies a seed coloring of K_m must exceed for the iterated blowup
// to beat the uniform baseline: (m^v - m) * (r)_e / (r^e * |Aut|).
inline Rational blowup_threshold(const Graph& h, int r, int m) {
    BigInt num = (int_pow(m, h.n()) - m) * falling_factorial(r, h.e());
    BigInt den = int_pow(r, h.e()) * automorphism_count(h);
    return Rational(num, den);
}

} // namespace rainbow
