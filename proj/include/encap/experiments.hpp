#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "encap/hier.hpp"
#include "encap/metrics.hpp"
#include "encap/psc.hpp"
#include "encap/rng.hpp"
#include "encap/types.hpp"

namespace encap {

// One figure-ready data series. Metadata keys stay in insertion order so
// serialized output is stable.
struct Series {
    std::string name;
    std::vector<std::pair<Real, Real>> points;
    std::vector<std::pair<std::string, std::string>> metadata;

    void meta(const std::string& key, const std::string& value) {
        metadata.emplace_back(key, value);
    }
};

enum class Context { unencapsulated, flat, layered, hier2d };

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Each index writes
// only its own slot, so results never depend on scheduling.
template <typename Fn>
void parallel_for(Count count, int jobs, Fn&& fn) {
    if (count <= 0) return;
    const int threads = static_cast<int>(std::min<Count>(std::max(jobs, 1), count));
    if (threads <= 1) {
        for (Count i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<Count> cursor{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const Count i = cursor.fetch_add(1);
                if (i >= count) break;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

namespace detail {

// Partitions of n into at most r parts, zero-padded and non-increasing,
// emitted in descending lexicographic order.
template <typename Emit>
void walk_partitions(Count n, Count r, Count slot, Count max_part, std::vector<Count>& parts,
                     Emit&& emit) {
    if (slot == r - 1) {
        if (n <= max_part) {
            parts[static_cast<std::size_t>(slot)] = n;
            emit(parts);
        }
        return;
    }
    const Count slots_left = r - slot;
    const Count low = (n + slots_left - 1) / slots_left;
    for (Count a = std::min(max_part, n); a >= low; --a) {
        parts[static_cast<std::size_t>(slot)] = a;
        walk_partitions(n - a, r, slot + 1, a, parts, emit);
    }
}

inline Count partition_count(Count n, Count r) {
    // partitions into at most r parts = partitions with all parts <= r
    std::vector<Count> dp(static_cast<std::size_t>(n) + 1, 0);
    dp[0] = 1;
    const Count limit = 2000000;
    for (Count part = 1; part <= std::min(n, r); ++part) {
        for (Count i = part; i <= n; ++i) {
            dp[static_cast<std::size_t>(i)] += dp[static_cast<std::size_t>(i - part)];
            if (dp[static_cast<std::size_t>(i)] > limit) return limit + 1;
        }
    }
    return dp[static_cast<std::size_t>(n)];
}

inline FlatSystem from_parts(const std::vector<Count>& parts, Count p) {
    FlatSystem sys;
    sys.regions.reserve(parts.size());
    for (const Count size : parts) {
        const Count viol = std::min(p, size);
        sys.regions.push_back({size - viol, viol});
    }
    return sys;
}

}  // namespace detail

// Every distribution of n nodes over r subsystems (order-insensitive), each
// non-empty subsystem carrying p violations clamped to its size.
inline Series fixed_system_sweep(Count n, Count r, Count p) {
    if (r < 2) throw validation_error("fixed-system sweep needs r >= 2");
    if (n < 0 || p < 0) throw validation_error("counts must be non-negative");
    if (detail::partition_count(n, r) > 2000000) {
        throw cap_error("fixed-system sweep refused: too many distributions to enumerate");
    }
    Series series;
    series.name = "fixed_system";
    series.meta("n", std::to_string(n));
    series.meta("r", std::to_string(r));
    series.meta("p", std::to_string(p));
    std::vector<Count> parts(static_cast<std::size_t>(r), 0);
    Count index = 0;
    detail::walk_partitions(n, r, 0, n, parts, [&](const std::vector<Count>& split) {
        const FlatSystem sys = detail::from_parts(split, p);
        ++index;
        series.points.emplace_back(static_cast<Real>(index),
                                   static_cast<Real>(system_psc(sys).total));
    });
    return series;
}

// All ordered placements of `subsystems` uniform regions across `layers`
// layers (every layer non-empty), full downward penetration. x is the 1-based
// placement index in lexicographic order; metadata records the best split.
inline Series layered_split_sweep(Count subsystems, Count layers, Count subsystem_size, Count p) {
    if (subsystems < layers || layers < 1) throw validation_error("need subsystems >= layers >= 1");
    if (subsystem_size < 1 || p < 0 || p > subsystem_size) {
        throw validation_error("need 0 <= p <= subsystem_size");
    }
    Series series;
    series.name = "layered_split";
    series.meta("subsystems", std::to_string(subsystems));
    series.meta("layers", std::to_string(layers));
    series.meta("subsystem_size", std::to_string(subsystem_size));
    Count index = 0;
    Count best = -1;
    std::string best_split;
    std::vector<Count> split(static_cast<std::size_t>(layers), 0);
    const RegionCounts region{subsystem_size - p, p};
    auto walk = [&](auto&& self, Count level, Count remaining) -> void {
        if (level == layers - 1) {
            split[static_cast<std::size_t>(level)] = remaining;
            LayeredSystem sys;
            std::string label;
            for (Count ell = 0; ell < layers; ++ell) {
                const auto width = static_cast<std::size_t>(split[static_cast<std::size_t>(ell)]);
                sys.layers.emplace_back(width, region);
                if (ell > 0) label += '/';
                label += std::to_string(split[static_cast<std::size_t>(ell)]);
            }
            const Count value = layered_psc_enumerated(sys);
            ++index;
            series.points.emplace_back(static_cast<Real>(index), static_cast<Real>(value));
            if (best < 0 || value < best) {
                best = value;
                best_split = label;
            }
            return;
        }
        for (Count take = 1; take <= remaining - (layers - 1 - level); ++take) {
            split[static_cast<std::size_t>(level)] = take;
            self(self, level + 1, remaining - take);
        }
    };
    walk(walk, 0, subsystems);
    series.meta("min_psc", std::to_string(best));
    series.meta("min_split", best_split);
    return series;
}

// Minimum enumerated value of a uniform layered arrangement with L layers,
// searching subsystems-per-layer; -1 when no realizable split exists.
inline Count layered_uniform_minimum(Count n, Count L, Count p) {
    Count best = -1;
    for (Count r_L = 1; L * r_L <= n; ++r_L) {
        const Count r = L * r_L;
        if (n % r != 0 || p > n / r) continue;
        const Count value = layered_psc_enumerated(layered_uniform(n, L, r_L, p, L - 1));
        if (best < 0 || value < best) best = value;
    }
    return best;
}

// Minimum enumerated value over span-b trees with r subsystems, r in [1, n].
inline Count hier_grown_minimum(Count n, Count b, Count p) {
    Count best = -1;
    for (Count r = 1; r <= n; ++r) {
        const Count value = hier_psc_enumerated(hier_grown_tree(n, r, b, p));
        if (best < 0 || value < best) best = value;
    }
    return best;
}

inline Series varied_region_sweep(Count n, Count p, Context context) {
    if (n < 1) throw validation_error("need n >= 1");
    Series series;
    series.meta("n", std::to_string(n));
    series.meta("p", std::to_string(p));
    switch (context) {
        case Context::flat:
            series.name = "varied_region_flat";
            for (Count r = 1; r <= n; ++r) {
                if (n % r != 0 || p > n / r) continue;
                series.points.emplace_back(static_cast<Real>(r),
                                           uniform_psc(n, static_cast<Real>(r),
                                                       static_cast<Real>(p)));
            }
            break;
        case Context::layered:
            series.name = "varied_region_layered";
            for (Count L = 1; L <= n; ++L) {
                const Count best = layered_uniform_minimum(n, L, p);
                if (best >= 0) {
                    series.points.emplace_back(static_cast<Real>(L), static_cast<Real>(best));
                }
            }
            break;
        case Context::hier2d:
            series.name = "varied_region_hier2d";
            for (Count r = 1; r <= n; ++r) {
                const Count value = hier_psc_enumerated(hier_grown_tree(n, r, 2, p));
                series.points.emplace_back(static_cast<Real>(r), static_cast<Real>(value));
            }
            break;
        case Context::unencapsulated:
            throw validation_error("varied-region sweep needs an encapsulated context");
    }
    return series;
}

// Minimum attainable value at each size up to n_max.
inline Series system_growth(Count n_max, Count p, Context context) {
    if (n_max < 1) throw validation_error("need n_max >= 1");
    Series series;
    series.meta("p", std::to_string(p));
    series.meta("max", std::to_string(n_max));
    for (Count n = 1; n <= n_max; ++n) {
        Real y = 0;
        switch (context) {
            case Context::unencapsulated:
                series.name = "growth_unencapsulated";
                y = static_cast<Real>(psc_unencapsulated(n));
                break;
            case Context::flat: {
                series.name = "growth_flat";
                Real best = static_cast<Real>(psc_unencapsulated(n));
                for (Count r = 1; r <= n; ++r) {
                    if (p > 0 && p > n / r) continue;
                    best = std::min(best, uniform_psc(n, static_cast<Real>(r),
                                                      static_cast<Real>(p)));
                }
                y = best;
                break;
            }
            case Context::layered: {
                series.name = "growth_layered";
                Count best = -1;
                for (Count L = 1; L <= n; ++L) {
                    const Count value = layered_uniform_minimum(n, L, p);
                    if (value >= 0 && (best < 0 || value < best)) best = value;
                }
                y = static_cast<Real>(best);
                break;
            }
            case Context::hier2d:
                series.name = "growth_hier2d";
                y = static_cast<Real>(hier_grown_minimum(n, 2, p));
                break;
        }
        series.points.emplace_back(static_cast<Real>(n), y);
    }
    return series;
}

struct RandomSystemParams {
    Count n = 100;
    Count system_count = 1000;
    std::uint64_t seed = 0;
    int jobs = 1;
};

// Random systems: r uniform in [1, n], node split uniform over positive
// compositions, each region's violating count uniform in [1, size].
inline FlatSystem random_system(Rng& rng, Count n) {
    if (n < 1) throw validation_error("need n >= 1");
    const Count r = rng.int_in(1, n);
    const std::vector<Count> sizes = random_composition(rng, n, r);
    FlatSystem sys;
    sys.regions.reserve(sizes.size());
    for (const Count size : sizes) {
        const Count viol = rng.int_in(1, size);
        sys.regions.push_back({size - viol, viol});
    }
    return sys;
}

inline std::vector<std::pair<FlatSystem, MetricsReport>> random_systems(
    const RandomSystemParams& params) {
    std::vector<std::pair<FlatSystem, MetricsReport>> out(
        static_cast<std::size_t>(params.system_count));
    parallel_for(params.system_count, params.jobs, [&](Count i) {
        Rng rng = derive(params.seed, static_cast<std::uint64_t>(i));
        FlatSystem sys = random_system(rng, params.n);
        MetricsReport report = configuration_efficiency(sys);
        out[static_cast<std::size_t>(i)] = {std::move(sys), report};
    });
    return out;
}

enum class CensusMode { exhaustive, sampled };

struct CensusResult {
    Real amc_fraction = 0;     // anomalous share of comparable configurations
    Real min_gap_percent = 0;  // deepest undercut of the uniform minimum
    Count space = 0;           // comparable configurations considered
    Count amc_count = 0;
    Count excluded = 0;  // configurations with no uniform equivalent
    bool exhaustive = false;
};

namespace detail {

struct CensusTally {
    Count comparable = 0;
    Count amc = 0;
    Count excluded = 0;
    Real max_gap = 0;

    void merge(const CensusTally& other) {
        comparable += other.comparable;
        amc += other.amc;
        excluded += other.excluded;
        max_gap = std::max(max_gap, other.max_gap);
    }
};

// One configuration against the minimum-law value of its uniform equivalent.
inline void census_judge(const std::vector<Count>& sizes, const std::vector<Count>& viols,
                         Count n, Count r, CensusTally& tally) {
    Count h = 0;
    for (const Count v : viols) h += v;
    if (h % r != 0) {
        ++tally.excluded;
        return;
    }
    ++tally.comparable;
    const Count size = n / r;
    bool uniform = true;
    for (std::size_t i = 0; i < sizes.size() && uniform; ++i) {
        uniform = sizes[i] == size && viols[i] == h / r;
    }
    if (uniform) return;
    Count s = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        s += sizes[i] * (sizes[i] - 1) + sizes[i] * (h - viols[i]);
    }
    const Real bound = s_min(n, static_cast<Real>(h) / static_cast<Real>(r));
    if (static_cast<Real>(s) < bound) {
        ++tally.amc;
        tally.max_gap = std::max(tally.max_gap, (bound - static_cast<Real>(s)) / bound * 100.0);
    }
}

}  // namespace detail

// Share of configurations that undercut their uniform equivalent's minimum.
// Exhaustive mode walks every (split, violations) cell for r = 2; sampled
// mode draws configurations the way random_systems does.
inline CensusResult amc_census(Count n, Count r, CensusMode mode, std::uint64_t seed = 0,
                               Count samples = 200000, int jobs = 1) {
    if (n < 2 || r < 2) throw validation_error("census needs n >= 2 and r >= 2");
    if (r > n) throw validation_error("census needs r <= n");
    CensusResult result;
    if (mode == CensusMode::exhaustive) {
        if (r != 2) {
            throw cap_error("exhaustive census refused for r > 2: configuration count too large");
        }
        if (n % r != 0) {
            throw validation_error("exhaustive census needs r | n so uniform equivalents exist");
        }
        result.exhaustive = true;
        std::vector<detail::CensusTally> slots(static_cast<std::size_t>(n - 1));
        parallel_for(n - 1, jobs, [&](Count idx) {
            const Count k = idx + 1;
            detail::CensusTally& tally = slots[static_cast<std::size_t>(idx)];
            std::vector<Count> sizes{k, n - k};
            std::vector<Count> viols(2, 0);
            for (Count h1 = 1; h1 <= k; ++h1) {
                for (Count h2 = 1; h2 <= n - k; ++h2) {
                    viols[0] = h1;
                    viols[1] = h2;
                    detail::census_judge(sizes, viols, n, 2, tally);
                }
            }
        });
        detail::CensusTally total;
        for (const auto& tally : slots) total.merge(tally);
        result.space = total.comparable;
        result.amc_count = total.amc;
        result.excluded = total.excluded;
        result.min_gap_percent = total.max_gap;
        result.amc_fraction =
            total.comparable > 0
                ? static_cast<Real>(total.amc) / static_cast<Real>(total.comparable)
                : 0.0;
        return result;
    }
    // sampled
    std::vector<detail::CensusTally> slots(static_cast<std::size_t>(samples));
    parallel_for(samples, jobs, [&](Count i) {
        Rng rng = derive(seed, static_cast<std::uint64_t>(i));
        const std::vector<Count> sizes = random_composition(rng, n, r);
        std::vector<Count> viols(sizes.size());
        for (std::size_t j = 0; j < sizes.size(); ++j) viols[j] = rng.int_in(1, sizes[j]);
        detail::census_judge(sizes, viols, n, r, slots[static_cast<std::size_t>(i)]);
    });
    detail::CensusTally total;
    for (const auto& tally : slots) total.merge(tally);
    result.space = total.comparable;
    result.amc_count = total.amc;
    result.excluded = total.excluded;
    result.min_gap_percent = total.max_gap;
    result.amc_fraction = total.comparable > 0 ? static_cast<Real>(total.amc) /
                                                     static_cast<Real>(total.comparable)
                                               : 0.0;
    return result;
}

// Ad hoc update stream: each step adds a node (public with probability h/n),
// removes a node, or moves one between regions, all chosen uniformly. Nodes
// eligible for removal or moving are those whose loss keeps every region at
// least one node big and leaves it at least one violating node.
inline Series evolve_system(const FlatSystem& initial, Count steps, Rng& rng) {
    Series series;
    series.name = "evolution";
    std::vector<Count> sizes, viols;
    sizes.reserve(initial.regions.size());
    viols.reserve(initial.regions.size());
    for (const auto& reg : initial.regions) {
        sizes.push_back(reg.size());
        viols.push_back(reg.violating);
    }
    const Count r = static_cast<Count>(sizes.size());
    if (r < 1) throw validation_error("evolution needs a non-empty system");

    const auto record = [&](Count step) {
        FlatSystem snapshot;
        snapshot.regions.reserve(sizes.size());
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            snapshot.regions.push_back({sizes[i] - viols[i], viols[i]});
        }
        const MetricsReport rep = configuration_efficiency(snapshot);
        if (rep.defined) {
            series.points.emplace_back(static_cast<Real>(step), rep.c_e);
        }
    };

    // Picks a random eligible node; returns {region, is_violating} or {-1, _}.
    const auto pick_node = [&]() -> std::pair<Count, bool> {
        Count weight = 0;
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            if (sizes[i] < 2) continue;
            weight += sizes[i] - viols[i];          // hidden nodes
            if (viols[i] >= 2) weight += viols[i];  // violating nodes
        }
        if (weight == 0) return {-1, false};
        Count t = static_cast<Count>(rng.below(static_cast<std::uint64_t>(weight)));
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            if (sizes[i] < 2) continue;
            const Count hidden = sizes[i] - viols[i];
            if (t < hidden) return {static_cast<Count>(i), false};
            t -= hidden;
            if (viols[i] >= 2) {
                if (t < viols[i]) return {static_cast<Count>(i), true};
                t -= viols[i];
            }
        }
        return {-1, false};
    };

    record(0);
    for (Count step = 1; step <= steps; ++step) {
        const std::uint64_t op = rng.below(3);
        if (op == 0) {  // add
            const Count i = static_cast<Count>(rng.below(static_cast<std::uint64_t>(r)));
            Count n = 0, h = 0;
            for (std::size_t j = 0; j < sizes.size(); ++j) {
                n += sizes[j];
                h += viols[j];
            }
            ++sizes[static_cast<std::size_t>(i)];
            if (n > 0 && rng.real01() < static_cast<Real>(h) / static_cast<Real>(n)) {
                ++viols[static_cast<std::size_t>(i)];
            }
        } else if (op == 1) {  // remove
            const auto [i, violating] = pick_node();
            if (i >= 0) {
                --sizes[static_cast<std::size_t>(i)];
                if (violating) --viols[static_cast<std::size_t>(i)];
            }
        } else if (r >= 2) {  // move
            const auto [i, violating] = pick_node();
            if (i >= 0) {
                Count j = static_cast<Count>(rng.below(static_cast<std::uint64_t>(r - 1)));
                if (j >= i) ++j;
                --sizes[static_cast<std::size_t>(i)];
                ++sizes[static_cast<std::size_t>(j)];
                if (violating) {
                    --viols[static_cast<std::size_t>(i)];
                    ++viols[static_cast<std::size_t>(j)];
                }
            }
        }
        record(step);
    }
    return series;
}

inline std::vector<Series> adhoc_evolution(const std::vector<FlatSystem>& initial, Count steps,
                                           std::uint64_t seed) {
    std::vector<Series> out;
    out.reserve(initial.size());
    for (std::size_t idx = 0; idx < initial.size(); ++idx) {
        if (initial[idx].n() < 1) throw validation_error("evolution needs non-empty systems");
        Rng rng = derive(seed, static_cast<std::uint64_t>(idx));
        Series series = evolve_system(initial[idx], steps, rng);
        series.name = "evolution_" + std::to_string(idx);
        series.meta("system", std::to_string(idx));
        series.meta("steps", std::to_string(steps));
        out.push_back(std::move(series));
    }
    return out;
}

// Ten mid-band systems used by the evolution demonstration: 1000 nodes spread
// near-uniformly over region counts between the optimum and the break-even
// point, initial violations uniform in [1, size].
inline std::vector<FlatSystem> belt_demo_systems(std::uint64_t seed) {
    const Count n = 1000;
    const std::vector<Count> region_counts{120, 145, 170, 195, 220, 245, 270, 295, 320, 345};
    std::vector<FlatSystem> out;
    out.reserve(region_counts.size());
    for (std::size_t idx = 0; idx < region_counts.size(); ++idx) {
        const Count r = region_counts[idx];
        Rng rng = derive(seed, 0x5eedu + static_cast<std::uint64_t>(idx));
        const Count base = n / r;
        const Count rem = n % r;
        FlatSystem sys;
        sys.regions.reserve(static_cast<std::size_t>(r));
        for (Count i = 0; i < r; ++i) {
            const Count size = base + (i < rem ? 1 : 0);
            const Count viol = rng.int_in(1, size);
            sys.regions.push_back({size - viol, viol});
        }
        out.push_back(std::move(sys));
    }
    return out;
}

// Mean configuration efficiency of random systems at each size.
inline Series average_efficiency_curve(const std::vector<Count>& n_values, Count samples_per_n,
                                       std::uint64_t seed, int jobs = 1) {
    for (const Count n : n_values) {
        if (n < 2) throw validation_error("average efficiency needs n >= 2");
    }
    if (samples_per_n < 1) throw validation_error("need at least one sample per size");
    Series series;
    series.name = "average_efficiency";
    series.meta("samples_per_n", std::to_string(samples_per_n));
    const Count total = static_cast<Count>(n_values.size()) * samples_per_n;
    std::vector<Real> ce(static_cast<std::size_t>(total), 0.0);
    parallel_for(total, jobs, [&](Count i) {
        const Count which = i / samples_per_n;
        Rng rng = derive(seed, static_cast<std::uint64_t>(i));
        const FlatSystem sys = random_system(rng, n_values[static_cast<std::size_t>(which)]);
        ce[static_cast<std::size_t>(i)] = configuration_efficiency(sys).c_e;
    });
    for (std::size_t j = 0; j < n_values.size(); ++j) {
        Real sum = 0;
        for (Count i = 0; i < samples_per_n; ++i) {
            sum += ce[j * static_cast<std::size_t>(samples_per_n) + static_cast<std::size_t>(i)];
        }
        series.points.emplace_back(static_cast<Real>(n_values[j]),
                                   sum / static_cast<Real>(samples_per_n));
    }
    return series;
}

// Regions filled to a size cap as the system grows, the last region partial.
inline FlatSystem capped_system(Count n, Count cap, Count p) {
    if (cap < 1) throw validation_error("need cap >= 1");
    if (n < 0) throw validation_error("need n >= 0");
    FlatSystem sys;
    Count remaining = n;
    while (remaining > 0) {
        const Count size = std::min(cap, remaining);
        const Count viol = std::min(p, size);
        sys.regions.push_back({size - viol, viol});
        remaining -= size;
    }
    return sys;
}

inline Series capped_growth_curve(Count n_max, Count cap, Count p) {
    if (cap < 1) throw validation_error("need cap >= 1");
    Series series;
    series.name = "capped_growth";
    series.meta("cap", std::to_string(cap));
    series.meta("p", std::to_string(p));
    for (Count n = 1; n <= n_max; ++n) {
        const MetricsReport rep = configuration_efficiency(capped_system(n, cap, p));
        if (rep.defined) {
            series.points.emplace_back(static_cast<Real>(n), rep.c_e);
        }
    }
    return series;
}

}  // namespace encap
