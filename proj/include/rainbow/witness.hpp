#pragma once

#include "rainbow/copies.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/graphon.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace rainbow {

// Zero-sum color weighting: +1/k on the first k colors, -1/(r-k) on the rest.
struct Sigma {
    int r;
    int k;

    Sigma(int r_, int k_) : r(r_), k(k_) {
        if (r < 2 || k < 1 || k > r - 1)
            throw Error(ErrorKind::InvalidInput, "sigma split needs 1 <= k <= r-1");
    }

    Rational value(int color) const {
        return color < k ? Rational(1, k) : Rational(-1, r - k);
    }
};

// The two-block +/-1 step function behind the perturbation: +1 on diagonal
// blocks, -1 off them. Its block products over an edge set integrate to the
// all-degrees-even indicator.
inline int f_block(int a, int b) { return a == b ? 1 : -1; }

// Alternating sum controlling the sign of the cycle term:
// F(r, s, k) = sum_{i=0}^{s} (-1)^i C(k,i) C(r-k,s-i) k^(s-i) (r-k)^i.
inline BigInt capital_F(int r, int s, int k) {
    if (!(r >= s && s >= 3 && k >= 1 && k <= r - 1))
        throw Error(ErrorKind::InvalidInput, "capital_F needs r >= s >= 3 and 1 <= k <= r-1");
    BigInt sum = 0;
    for (int i = 0; i <= s; ++i) {
        BigInt term = binomial(k, i) * binomial(r - k, s - i) * int_pow(k, s - i) *
                      int_pow(r - k, i);
        sum += (i % 2 == 0) ? term : -term;
    }
    return sum;
}

namespace detail {

// Sum over injective assignments of `edges` distinct colors in [r] of the
// product of sigma over those edges. Direct summation, (r)_edges terms.
inline Rational sigma_injection_sum(const Sigma& sigma, int edges) {
    Rational total = 0;
    std::vector<bool> used(sigma.r, false);
    std::function<void(int, Rational)> rec = [&](int depth, Rational prod) {
        if (depth == edges) {
            total += prod;
            return;
        }
        for (int c = 0; c < sigma.r; ++c) {
            if (used[c])
                continue;
            used[c] = true;
            rec(depth + 1, prod * sigma.value(c));
            used[c] = false;
        }
    };
    rec(0, Rational(1));
    return total;
}

} // namespace detail

// Q for an s-cycle inside a host with eH edges, by direct summation: the
// sigma products over the cycle's s edges, times the (r-s)_{eH-s} ways to
// spend the remaining colors on the rest of the host.
inline Rational q_of_cycle(int r, int s, int k, int eH) {
    if (!(r >= eH && eH >= s && s >= 3))
        throw Error(ErrorKind::InvalidInput, "q_of_cycle needs r >= eH >= s >= 3");
    Sigma sigma(r, k);
    return detail::sigma_injection_sum(sigma, s) *
           Rational(falling_factorial(r - s, eH - s));
}

// Closed form for the same quantity. Direct summation shows the k^s (r-k)^s
// factor divides and the whole carries a (-1)^s; the direct sum above is
// authoritative, this form exists to cross-check it.
inline Rational q_of_cycle_closed_form(int r, int s, int k, int eH) {
    if (!(r >= eH && eH >= s && s >= 3 && k >= 1 && k <= r - 1))
        throw Error(ErrorKind::InvalidInput, "q_of_cycle needs r >= eH >= s >= 3");
    BigInt num = factorial(s) * falling_factorial(r - s, eH - s) * capital_F(r, s, k);
    if (s % 2 != 0)
        num = -num;
    return Rational(num, int_pow(k, s) * int_pow(r - k, s));
}

// Q for an arbitrary nonempty edge subset of h: sigma products over the
// subset's edges under injective coloring, times the extensions to E(h).
inline Rational q_of_even_subgraph(const Graph& h, const std::vector<int>& edge_subset, int r,
                                   int k, const Budget& budget = Budget{}) {
    if (edge_subset.empty())
        throw Error(ErrorKind::InvalidInput, "edge subset must be nonempty");
    if (r < h.e())
        throw Error(ErrorKind::InvalidInput, "need r >= e(h)");
    std::size_t d = edge_subset.size();
    BigInt work = falling_factorial(r, d);
    if (work > budget.graphon_cells)
        throw Error(ErrorKind::ComplexityGuard, "injection sum needs " + work.str() +
                                                    " terms, budget " +
                                                    std::to_string(budget.graphon_cells));
    Sigma sigma(r, k);
    return detail::sigma_injection_sum(sigma, static_cast<int>(d)) *
           Rational(falling_factorial(r - static_cast<int>(d),
                                      h.e() - static_cast<int>(d)));
}

// Split with the largest directly-summed cycle Q; always positive for some k.
inline int select_k(int r, int s) {
    if (!(r >= s && s >= 3))
        throw Error(ErrorKind::InvalidInput, "select_k needs r >= s >= 3");
    int best_k = 0;
    Rational best_q;
    for (int k = 1; k <= r - 1; ++k) {
        Rational q = detail::sigma_injection_sum(Sigma(r, k), s);
        if (best_k == 0 || q > best_q) {
            best_k = k;
            best_q = q;
        }
    }
    if (best_q <= 0)
        throw Error(ErrorKind::NoPositiveK, "no split with positive cycle Q (unexpected)");
    return best_k;
}

// Perturbed coloring graphon on two equal blocks: color i takes
// 1/r + eps*sigma(i) on diagonal cells and 1/r - eps*sigma(i) off them.
// Validity needs eps * max(1/k, 1/(r-k)) <= 1/r, which keeps every cell in [0, 1].
inline StepColoringGraphon build_witness_graphon(int r, int k, const Rational& epsilon) {
    Sigma sigma(r, k);
    Rational max_sigma(1, std::min(k, r - k));
    if (epsilon < 0 || epsilon * max_sigma > Rational(1, r))
        throw Error(ErrorKind::EpsilonTooLarge,
                    "epsilon " + to_fraction_string(epsilon) + " violates eps*max(1/k,1/(r-k)) <= 1/r");
    StepColoringGraphon w;
    w.r = r;
    w.q = 2;
    w.block_weights = {Rational(1, 2), Rational(1, 2)};
    w.values.assign(r, std::vector<std::vector<Rational>>(2, std::vector<Rational>(2)));
    for (int i = 0; i < r; ++i)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                w.values[i][a][b] = Rational(1, r) + epsilon * sigma.value(i) * f_block(a, b);
    return w;
}

struct ExpansionTerm {
    int degree;          // power of epsilon = edge count of the subgraph class
    Rational coefficient;
};

// One audit line per even edge subset: the subset, and its full contribution
// r^(d - e(h)) * Q to the degree-d coefficient.
struct ExpansionBreakdownEntry {
    std::vector<int> edge_subset;
    int degree;
    Rational contribution;
};

struct ExpansionPolynomial {
    std::vector<ExpansionTerm> terms; // ascending degree, nonzero coefficients only
    std::vector<ExpansionBreakdownEntry> subgraphs;

    Rational evaluate(const Rational& epsilon) const {
        Rational out = 0;
        for (const auto& t : terms) {
            Rational p = 1;
            for (int i = 0; i < t.degree; ++i)
                p *= epsilon;
            out += t.coefficient * p;
        }
        return out;
    }
};

// The exact gap polynomial: t(rb h, W_eps) - t(rb h, 1/r) as a polynomial in
// eps. Only edge subsets with all degrees even contribute; each gives
// r^(d - e(h)) * Q at degree d.
inline ExpansionPolynomial expansion_polynomial(const Graph& h, int r, int k,
                                                const Budget& budget = Budget{}) {
    if (h.e() > 24)
        throw Error(ErrorKind::ComplexityGuard, "too many edge subsets to enumerate");
    if (r < h.e())
        throw Error(ErrorKind::InvalidInput, "need r >= e(h)");
    ExpansionPolynomial out;
    std::vector<Rational> coeff(h.e() + 1, Rational(0));
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << h.e()); ++mask) {
        std::vector<int> subset;
        for (int e = 0; e < h.e(); ++e)
            if (mask & (std::uint32_t{1} << e))
                subset.push_back(e);
        if (!is_even_graph(h, subset))
            continue; // I_f vanishes on anything with an odd-degree vertex
        int d = static_cast<int>(subset.size());
        Rational contribution = Rational(1, int_pow(r, h.e() - d)) *
                                q_of_even_subgraph(h, subset, r, k, budget);
        coeff[d] += contribution;
        out.subgraphs.push_back({std::move(subset), d, std::move(contribution)});
    }
    for (int d = 0; d <= h.e(); ++d)
        if (coeff[d] != 0)
            out.terms.push_back({d, coeff[d]});
    std::sort(out.subgraphs.begin(), out.subgraphs.end(),
              [](const auto& a, const auto& b) {
                  return std::tie(a.degree, a.edge_subset) < std::tie(b.degree, b.edge_subset);
              });
    return out;
}

namespace detail {

struct EpsilonChoice {
    Rational epsilon;
    Rational density;
    Rational gap;
};

// Trial ladder 1/(r*2^j), largest valid epsilon whose exact gap is positive.
inline EpsilonChoice choose_epsilon(const Graph& h, int r, int k, const Budget& budget) {
    if (!girth(h))
        throw Error(ErrorKind::NoCycle, "pattern is a forest");
    if (r < h.e())
        throw Error(ErrorKind::InvalidInput, "need r >= e(h)");
    Rational base = baseline_density(h, r);
    Rational max_sigma(1, std::min(k, r - k));
    for (int j = 0; j <= 64; ++j) {
        Rational eps = Rational(1, r) / int_pow(2, j);
        if (eps * max_sigma > Rational(1, r))
            continue;
        StepColoringGraphon w = build_witness_graphon(r, k, eps);
        Rational density = rainbow_density(h, w, budget).value;
        if (density - base > 0)
            return {eps, density, density - base};
    }
    throw Error(ErrorKind::NotFound, "no epsilon in the trial ladder gives a positive gap");
}

} // namespace detail

inline Rational select_epsilon(const Graph& h, int r, int k, const Budget& budget = Budget{}) {
    return detail::choose_epsilon(h, r, k, budget).epsilon;
}

// Exact record establishing t(rb h, W_eps) > t(rb h, 1/r).
struct WitnessCertificate {
    Graph h;
    int r = 0;
    int s = 0; // girth, the dominant epsilon degree
    int k = 0;
    Rational epsilon;
    Rational baseline;  // t(rb h, 1/r)
    Rational density;   // t(rb h, W_eps)
    Rational gap;       // density - baseline, strictly positive
    ExpansionPolynomial expansion;
};

// Run the whole pipeline and cross-check: the expansion polynomial evaluated
// at epsilon must reproduce the directly computed gap exactly, and the lowest
// nonzero degree must be the girth.
inline WitnessCertificate certify_uncommon(const Graph& h, int r,
                                           const Budget& budget = Budget{},
                                           std::optional<int> k_override = std::nullopt,
                                           std::optional<Rational> epsilon_override = std::nullopt) {
    auto s = girth(h);
    if (!s)
        throw Error(ErrorKind::NoCycle, "pattern is a forest, no witness exists");
    if (r < h.e())
        throw Error(ErrorKind::InvalidInput,
                    "need r >= e(H) = " + std::to_string(h.e()) + ", got " + std::to_string(r));

    WitnessCertificate cert;
    cert.h = h;
    cert.r = r;
    cert.s = *s;
    cert.k = k_override ? *k_override : select_k(r, *s);
    if (cert.k < 1 || cert.k > r - 1)
        throw Error(ErrorKind::InvalidInput, "split k must lie in [1, r-1]");
    cert.baseline = baseline_density(h, r);

    if (epsilon_override) {
        cert.epsilon = *epsilon_override;
        if (cert.epsilon <= 0)
            throw Error(ErrorKind::InvalidInput, "epsilon must be positive");
        StepColoringGraphon w = build_witness_graphon(r, cert.k, cert.epsilon);
        cert.density = rainbow_density(h, w, budget).value;
        cert.gap = cert.density - cert.baseline;
        if (cert.gap <= 0)
            throw Error(ErrorKind::NotFound,
                        "gap is not positive at the requested epsilon/k");
    } else {
        auto choice = detail::choose_epsilon(h, r, cert.k, budget);
        cert.epsilon = choice.epsilon;
        cert.density = choice.density;
        cert.gap = choice.gap;
    }

    cert.expansion = expansion_polynomial(h, r, cert.k, budget);
    if (cert.expansion.evaluate(cert.epsilon) != cert.gap)
        throw std::logic_error("expansion polynomial disagrees with the direct gap");
    if (cert.expansion.terms.empty() || cert.expansion.terms.front().degree != *s)
        throw std::logic_error("lowest expansion degree is not the girth");
    return cert;
}

} // namespace rainbow
