#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "encap/types.hpp"

namespace encap {

// Small deterministic generator (splitmix64). Used instead of <random> engines
// so that streams derived per task index are cheap and the byte-for-byte
// output contract does not depend on library distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound), bias-free via rejection.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw validation_error("empty range");
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t x = next();
            if (x >= threshold) return x % bound;
        }
    }

    // Uniform integer in [lo, hi] inclusive.
    Count int_in(Count lo, Count hi) {
        if (lo > hi) throw validation_error("empty range");
        return lo + static_cast<Count>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    // Uniform in [0, 1).
    Real real01() { return static_cast<Real>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Independent substream for one task of a seeded run. Tasks indexed by salt
// produce identical results no matter how work is scheduled.
inline Rng derive(std::uint64_t seed, std::uint64_t salt) {
    return Rng(mix64(seed ^ (0x9e3779b97f4a7c15ULL * (salt + 0x2545f4914f6cdd1dULL))));
}

// Uniform composition of n into r positive parts: r-1 distinct cut points in
// [1, n-1], sorted, then differenced.
inline std::vector<Count> random_composition(Rng& rng, Count n, Count r) {
    if (r < 1 || n < r) throw validation_error("composition needs 1 <= r <= n");
    // Floyd's sampling of r-1 distinct values from [1, n-1].
    std::unordered_set<Count> chosen;
    chosen.reserve(static_cast<std::size_t>(r));
    for (Count j = n - r + 1; j <= n - 1; ++j) {
        const Count t = rng.int_in(1, j);
        chosen.insert(chosen.count(t) ? j : t);
    }
    std::vector<Count> cuts(chosen.begin(), chosen.end());
    std::sort(cuts.begin(), cuts.end());
    std::vector<Count> parts;
    parts.reserve(static_cast<std::size_t>(r));
    Count prev = 0;
    for (const Count c : cuts) {
        parts.push_back(c - prev);
        prev = c;
    }
    parts.push_back(n - prev);
    return parts;
}

}  // namespace encap
