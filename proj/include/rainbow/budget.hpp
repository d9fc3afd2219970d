#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <thread>

namespace rainbow {

// Desk-scale guard rails. Every enumeration that can blow up checks one of
// these before starting; the CLI exposes overrides.
struct Budget {
    std::uint64_t graphon_cells = 1'000'000'000; // (r)_e * q^v terms in a density sum
    std::uint64_t hom_maps = 100'000'000;        // n^v maps in the homomorphism oracle
    std::uint64_t coloring_space = 10'000'000;   // r^(n(n-1)/2) colorings enumerated exactly
    std::uint64_t blowup_vertices = 10'000;      // m^d vertices of a materialized blowup
    int automorphism_cap = 10;                   // max vertices for the permutation search
};

inline Budget default_budget() { return Budget{}; }

// Worker count for partitioned loops. 0 means "resolve from the environment":
// RAINBOW_LAB_THREADS if set, hardware concurrency otherwise.
struct ExecPolicy {
    int threads = 0;

    int resolve() const {
        if (threads > 0)
            return threads;
        if (const char* env = std::getenv("RAINBOW_LAB_THREADS")) {
            int n = std::atoi(env);
            if (n > 0)
                return n;
        }
        unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : static_cast<int>(hw);
    }
};

} // namespace rainbow
