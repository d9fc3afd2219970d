#pragma once

#include "rainbow/coloring.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/graphon.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

namespace rainbow {

// All randomness flows from mt19937_64 (a fully specified, portable
// generator) seeded per stream via splitmix64, with hand-rolled draws so
// trajectories reproduce across standard libraries.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(master ^ splitmix64(stream + 1));
}

// Unbiased integer in [0, n) by rejection.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    if (n == 0)
        throw Error(ErrorKind::InvalidInput, "uniform_below(0)");
    std::uint64_t reject_below = (0 - n) % n; // 2^64 mod n
    for (;;) {
        std::uint64_t x = rng();
        if (x >= reject_below)
            return x % n;
    }
}

inline BigInt uniform_bigint_below(std::mt19937_64& rng, const BigInt& n) {
    if (n <= 0)
        throw Error(ErrorKind::InvalidInput, "uniform_bigint_below needs n > 0");
    if (n <= UINT64_MAX)
        return uniform_below(rng, static_cast<std::uint64_t>(n));
    unsigned bits = static_cast<unsigned>(msb(n)) + 1;
    unsigned words = (bits + 63) / 64;
    for (;;) {
        BigInt x = 0;
        for (unsigned i = 0; i < words; ++i)
            x = (x << 64) | rng();
        x >>= words * 64 - bits;
        if (x < n)
            return x;
    }
}

// Draws index i with probability weights[i], exactly: a uniform integer below
// the common denominator lands in one of the cumulative numerator bins.
class CategoricalSampler {
public:
    explicit CategoricalSampler(const std::vector<Rational>& weights) {
        den_ = 1;
        for (const auto& w : weights) {
            if (w < 0)
                throw Error(ErrorKind::InvalidInput, "negative probability");
            den_ = lcm(den_, denominator(w));
        }
        BigInt acc = 0;
        for (const auto& w : weights) {
            acc += numerator(w) * (den_ / denominator(w));
            cumulative_.push_back(acc);
        }
        if (acc != den_)
            total_ = acc; // degenerate: mass short of 1 (associated diagonals)
        else
            total_ = den_;
    }

    bool degenerate() const { return total_ == 0; }

    int draw(std::mt19937_64& rng) const {
        if (degenerate())
            return 0; // no mass anywhere: fall back to the first index
        BigInt u = uniform_bigint_below(rng, total_);
        for (std::size_t i = 0; i < cumulative_.size(); ++i)
            if (u < cumulative_[i])
                return static_cast<int>(i);
        throw std::logic_error("categorical draw out of range");
    }

private:
    BigInt den_;
    BigInt total_;
    std::vector<BigInt> cumulative_;
};

inline std::vector<int> sample_blocks(const StepColoringGraphon& w, int n, std::mt19937_64& rng) {
    CategoricalSampler blocks(w.block_weights);
    std::vector<int> out(n);
    for (int v = 0; v < n; ++v)
        out[v] = blocks.draw(rng);
    return out;
}

inline EdgeColoring sample_coloring_for_blocks(const StepColoringGraphon& w,
                                               const std::vector<int>& blocks,
                                               std::mt19937_64& rng) {
    int n = static_cast<int>(blocks.size());
    if (w.r > 64)
        throw Error(ErrorKind::InvalidInput, "colorings support at most 64 colors");
    // one sampler per block cell, built on demand
    std::vector<std::vector<std::unique_ptr<CategoricalSampler>>> cell(w.q);
    for (auto& row : cell)
        row.resize(w.q);
    auto sampler_for = [&](int a, int b) -> CategoricalSampler& {
        if (!cell[a][b]) {
            std::vector<Rational> weights;
            for (int i = 0; i < w.r; ++i)
                weights.push_back(w.values[i][a][b]);
            cell[a][b] = std::make_unique<CategoricalSampler>(weights);
        }
        return *cell[a][b];
    };
    EdgeColoring c(n, w.r);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            c.set_color(u, v, sampler_for(blocks[u], blocks[v]).draw(rng));
    return c;
}

// The G(n, W) coloring model: each vertex draws a block by weight, each edge
// draws its color from the cell of its endpoints. Same-block pairs of an
// associated graphon carry no mass at all; they fall back to color 0.
inline EdgeColoring sample_coloring(const StepColoringGraphon& w, int n, std::uint64_t seed) {
    if (n < 2)
        throw Error(ErrorKind::InvalidInput, "need n >= 2");
    std::mt19937_64 rng(seed);
    auto blocks = sample_blocks(w, n, rng);
    return sample_coloring_for_blocks(w, blocks, rng);
}

struct SampleReport {
    int n = 0;
    std::uint64_t trials = 0;
    std::uint64_t rainbow_hits = 0;
    Rational empirical_mean;
    Rational exact_target;         // rainbow_density(h, w)
    Rational standard_error_bound; // upper bound on sqrt(p(1-p)/trials)
};

// Empirical rainbow fraction of uniform random copies of h across colorings
// sampled from w. Trials are split over `batches` fresh colorings; every
// batch derives its own seed, so the report is independent of threading.
inline SampleReport estimate_density(const Graph& h, const StepColoringGraphon& w, int n,
                                     std::uint64_t trials, std::uint64_t seed,
                                     const Budget& budget = Budget{}, int batches = 16) {
    if (h.n() < 1 || h.n() > n)
        throw Error(ErrorKind::InvalidInput, "pattern must fit in the sampled host");
    if (trials < 1)
        throw Error(ErrorKind::InvalidInput, "need at least one trial");
    SampleReport report;
    report.n = n;
    report.trials = trials;
    report.exact_target = rainbow_density(h, w, budget).value;

    int b = static_cast<int>(std::min<std::uint64_t>(batches < 1 ? 1 : batches, trials));
    std::uint64_t hits = 0;
    std::vector<int> image(h.n());
    std::vector<char> taken(n, 0);
    for (int batch = 0; batch < b; ++batch) {
        std::mt19937_64 rng(derive_seed(seed, batch));
        auto blocks = sample_blocks(w, n, rng);
        EdgeColoring c = sample_coloring_for_blocks(w, blocks, rng);
        std::uint64_t batch_trials = trials / b + (batch < static_cast<int>(trials % b) ? 1 : 0);
        for (std::uint64_t t = 0; t < batch_trials; ++t) {
            // uniform injective tuple -> uniform unlabeled copy
            for (int i = 0; i < h.n(); ++i) {
                for (;;) {
                    int x = static_cast<int>(uniform_below(rng, n));
                    if (!taken[x]) {
                        taken[x] = 1;
                        image[i] = x;
                        break;
                    }
                }
            }
            std::uint64_t mask = 0;
            bool rainbow = true;
            for (auto [u, v] : h.edges) {
                std::uint64_t bit = std::uint64_t{1} << c.color(image[u], image[v]);
                if (mask & bit) {
                    rainbow = false;
                    break;
                }
                mask |= bit;
            }
            if (rainbow)
                ++hits;
            for (int i = 0; i < h.n(); ++i)
                taken[image[i]] = 0;
        }
    }
    report.rainbow_hits = hits;
    report.empirical_mean = Rational(hits, trials);
    Rational p = report.empirical_mean;
    report.standard_error_bound = sqrt_upper_bound(p * (1 - p) / Rational(trials));
    return report;
}

struct SearchConfig {
    Graph pattern;
    int m = 5;
    int r = 4;
    int max_steps = 2000;
    int restarts = 20;
    int plateau_cap = 50;
    std::uint64_t seed = 0;
};

struct SearchResult {
    EdgeColoring best;
    RainbowCount verified; // re-verified by a fresh full count
    Rational threshold;    // blowup_threshold(pattern, r, m)
    bool beats_threshold = false;
};

// Hill climbing over single-edge recolor moves, accepting non-decreases with
// a plateau cap, restarted from fresh random colorings. Deterministic for a
// fixed seed: restart b uses derive_seed(seed, b).
inline SearchResult local_search(const SearchConfig& cfg) {
    const Graph& h = cfg.pattern;
    if (cfg.r < 1 || cfg.r > 64)
        throw Error(ErrorKind::InvalidInput, "color count must be in [1, 64]");

    // copy incidence per edge of K_m, for delta recounts
    auto copies = enumerate_copies(h, cfg.m);
    auto pair_index = [&](int u, int v) {
        if (u > v)
            std::swap(u, v);
        return static_cast<std::size_t>(u) * cfg.m - static_cast<std::size_t>(u) * (u + 1) / 2 +
               (v - u - 1);
    };
    std::size_t pairs = static_cast<std::size_t>(cfg.m) * (cfg.m - 1) / 2;
    std::vector<std::vector<int>> copies_on_edge(pairs);
    for (std::size_t ci = 0; ci < copies.size(); ++ci)
        for (auto [u, v] : copies[ci].edges)
            copies_on_edge[pair_index(u, v)].push_back(static_cast<int>(ci));
    std::vector<std::pair<int, int>> pair_of_index(pairs);
    for (int u = 0; u < cfg.m; ++u)
        for (int v = u + 1; v < cfg.m; ++v)
            pair_of_index[pair_index(u, v)] = {u, v};

    auto is_rainbow = [&](const EdgeColoring& c, const Copy& copy) {
        std::uint64_t mask = 0;
        for (auto [u, v] : copy.edges) {
            std::uint64_t bit = std::uint64_t{1} << c.color(u, v);
            if (mask & bit)
                return false;
            mask |= bit;
        }
        return true;
    };
    auto full_count = [&](const EdgeColoring& c) {
        std::uint64_t n = 0;
        for (const auto& copy : copies)
            if (is_rainbow(c, copy))
                ++n;
        return n;
    };

    EdgeColoring best(cfg.m, cfg.r);
    std::uint64_t best_count = 0;
    bool have_best = false;
    for (int restart = 0; restart < cfg.restarts; ++restart) {
        std::mt19937_64 rng(derive_seed(cfg.seed, restart));
        EdgeColoring current(cfg.m, cfg.r);
        for (int u = 0; u < cfg.m; ++u)
            for (int v = u + 1; v < cfg.m; ++v)
                current.set_color(u, v, static_cast<int>(uniform_below(rng, cfg.r)));
        std::uint64_t count = full_count(current);
        int plateau = 0;
        for (int step = 0; cfg.r >= 2 && step < cfg.max_steps; ++step) {
            std::size_t pi = uniform_below(rng, pairs);
            auto [u, v] = pair_of_index[pi];
            int old_color = current.color(u, v);
            int new_color = static_cast<int>(uniform_below(rng, cfg.r - 1));
            if (new_color >= old_color)
                ++new_color;
            std::int64_t delta = 0;
            for (int ci : copies_on_edge[pi])
                delta -= is_rainbow(current, copies[ci]) ? 1 : 0;
            current.set_color(u, v, new_color);
            for (int ci : copies_on_edge[pi])
                delta += is_rainbow(current, copies[ci]) ? 1 : 0;
            bool accept;
            if (delta > 0) {
                accept = true;
                plateau = 0;
            } else if (delta == 0 && plateau < cfg.plateau_cap) {
                accept = true;
                ++plateau;
            } else {
                accept = false;
            }
            if (!accept) {
                current.set_color(u, v, old_color);
            } else {
                count = static_cast<std::uint64_t>(static_cast<std::int64_t>(count) + delta);
            }
        }
        if (!have_best || count > best_count) {
            best = current;
            best_count = count;
            have_best = true;
        }
    }

    SearchResult result;
    result.best = best;
    result.verified = count_rainbow(h, best); // independent of the delta bookkeeping
    result.threshold = blowup_threshold(h, cfg.r, cfg.m);
    result.beats_threshold = Rational(result.verified.copies) > result.threshold;
    return result;
}

} // namespace rainbow
