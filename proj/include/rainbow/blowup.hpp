#pragma once

#include "rainbow/coloring.hpp"
#include "rainbow/graph.hpp"

#include <fstream>
#include <string>
#include <vector>

namespace rainbow {

// Iterated blowup of a seed coloring of K_m to K_{m^d}: vertices are base-m
// strings of length d (most significant digit first), and an edge takes the
// seed color of its first differing digit pair.
struct BlowupSpec {
    EdgeColoring seed;
    int depth = 1;
};

namespace detail {

inline std::vector<int> digits(std::uint64_t v, int m, int d) {
    std::vector<int> out(d);
    for (int i = d - 1; i >= 0; --i) {
        out[i] = static_cast<int>(v % m);
        v /= m;
    }
    return out;
}

} // namespace detail

inline EdgeColoring blowup_coloring(const BlowupSpec& spec, const Budget& budget = Budget{}) {
    if (spec.depth < 1)
        throw Error(ErrorKind::InvalidInput, "blowup depth must be at least 1");
    if (spec.seed.n() < 2)
        throw Error(ErrorKind::InvalidInput, "seed needs at least 2 vertices");
    int m = spec.seed.n();
    BigInt vertices = int_pow(m, spec.depth);
    if (vertices > budget.blowup_vertices)
        throw Error(ErrorKind::CapExceeded, "blowup would have " + vertices.str() +
                                                " vertices, cap " +
                                                std::to_string(budget.blowup_vertices));
    int n = static_cast<int>(vertices);
    std::vector<std::vector<int>> digit(n);
    for (int v = 0; v < n; ++v)
        digit[v] = detail::digits(v, m, spec.depth);
    EdgeColoring out(n, spec.seed.r());
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            for (int i = 0; i < spec.depth; ++i) {
                if (digit[u][i] != digit[v][i]) {
                    out.set_color(u, v, spec.seed.color(digit[u][i], digit[v][i]));
                    break;
                }
            }
        }
    }
    return out;
}

// The rainbow copies the construction guarantees:
// sum_{k=1}^{d} ell * m^(k-1) * (m^(d-k))^vH.
inline BigInt blowup_lower_bound(const BigInt& ell, int m, int vH, int d) {
    if (ell < 0 || m < 2 || vH < 1 || d < 1)
        throw Error(ErrorKind::InvalidInput, "bad blowup bound arguments");
    BigInt total = 0;
    for (int k = 1; k <= d; ++k)
        total += ell * int_pow(m, k - 1) * int_pow(int_pow(m, d - k), vH);
    return total;
}

struct BlowupReport {
    BigInt seed_rainbow;    // ell(m), rainbow copies in the seed
    BigInt actual_rainbow;  // exact rainbow copies in the blowup
    BigInt lower_bound;
    bool dominates = false; // actual >= lower bound
};

inline BlowupReport verify_blowup(const Graph& h, const BlowupSpec& spec,
                                  const Budget& budget = Budget{}, ExecPolicy policy = {}) {
    BlowupReport report;
    report.seed_rainbow = count_rainbow(h, spec.seed, policy).copies;
    EdgeColoring big = blowup_coloring(spec, budget);
    report.actual_rainbow = count_rainbow(h, big, policy).copies;
    report.lower_bound = blowup_lower_bound(report.seed_rainbow, spec.seed.n(), h.n(), spec.depth);
    report.dominates = report.actual_rainbow >= report.lower_bound;
    return report;
}

// The 4-coloring of K5 with 8 rainbow C4 copies.
inline EdgeColoring fixture_k5() {
    EdgeColoring c(5, 4);
    const int entries[][3] = {
        {0, 1, 3}, {0, 2, 0}, {1, 2, 3}, {0, 3, 2}, {1, 3, 1},
        {2, 3, 2}, {0, 4, 3}, {1, 4, 0}, {2, 4, 3}, {3, 4, 1},
    };
    for (auto [u, v, col] : entries)
        c.set_color(u, v, col);
    return c;
}

// The 5-coloring of K8 with 128 rainbow C5 copies.
inline EdgeColoring fixture_k8() {
    EdgeColoring c(8, 5);
    const int entries[][3] = {
        {0, 1, 1}, {0, 2, 4}, {1, 2, 1}, {0, 3, 1}, {1, 3, 0}, {2, 3, 1}, {0, 4, 0},
        {1, 4, 1}, {2, 4, 0}, {3, 4, 1}, {0, 5, 2}, {1, 5, 3}, {2, 5, 2}, {3, 5, 3},
        {4, 5, 2}, {0, 6, 2}, {1, 6, 3}, {2, 6, 2}, {3, 6, 3}, {4, 6, 2}, {5, 6, 4},
        {0, 7, 1}, {1, 7, 4}, {2, 7, 1}, {3, 7, 0}, {4, 7, 1}, {5, 7, 3}, {6, 7, 3},
    };
    for (auto [u, v, col] : entries)
        c.set_color(u, v, col);
    return c;
}

// Coloring source: a file path or one of the reserved names
// "fixture:K5" / "fixture:K8".
inline EdgeColoring load_coloring(const std::string& source) {
    if (source == "fixture:K5")
        return fixture_k5();
    if (source == "fixture:K8")
        return fixture_k8();
    std::ifstream in(source);
    if (!in)
        throw Error(ErrorKind::InvalidInput, "cannot open coloring file: " + source);
    return read_coloring(in);
}

} // namespace rainbow
