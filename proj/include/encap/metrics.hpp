#pragma once

#include <algorithm>
#include <cmath>

#include "encap/psc.hpp"
#include "encap/types.hpp"

namespace encap {

// Derived metrics of one non-hierarchical system. When a denominator
// degenerates (n < 2, or no violations so the minimum law has no value) the
// report keeps the raw counts and clears `defined`.
struct MetricsReport {
    Count n = 0;
    Count r = 0;
    Count h = 0;
    Real p_bar = 0;      // h / r
    Count s = 0;         // actual value
    Count s_max = 0;     // n(n-1)
    Real s_min = 0;      // minimum-law value at p_bar
    Real c_i = 0;        // clamped to [0, 1]
    Real c_e = 0;        // 1 - c_i
    Real raw_c_i = 0;    // before clamping; negative for anomalous systems
    Real ihv_percent = 0;
    Real r_min = 0;
    bool defined = false;
};

inline Real ihv_percent(Count n, Count h) {
    if (n < 1) throw validation_error("need n >= 1");
    if (h < 0 || h > n) throw validation_error("violations must lie in [0, n]");
    return 100.0 * static_cast<Real>(h) / static_cast<Real>(n);
}

// Overload for measured systems where only the aggregates are known.
inline MetricsReport configuration_efficiency(Count n, Count r, Count h, Count s) {
    MetricsReport rep;
    rep.n = n;
    rep.r = r;
    rep.h = h;
    rep.s = s;
    rep.s_max = psc_unencapsulated(rep.n);
    if (rep.n >= 1) rep.ihv_percent = ihv_percent(rep.n, rep.h);
    if (rep.n < 2 || rep.r < 1 || rep.h < 1) {
        return rep;  // defined stays false; degenerate denominators
    }
    rep.p_bar = static_cast<Real>(rep.h) / static_cast<Real>(rep.r);
    rep.s_min = s_min(rep.n, rep.p_bar);
    rep.r_min = r_min(rep.n, rep.p_bar);
    const Real span = static_cast<Real>(rep.s_max) - rep.s_min;
    if (span <= 0) {
        return rep;
    }
    rep.raw_c_i = (static_cast<Real>(rep.s) - rep.s_min) / span;
    rep.c_i = std::clamp(rep.raw_c_i, 0.0, 1.0);
    rep.c_e = 1.0 - rep.c_i;
    rep.defined = true;
    return rep;
}

inline MetricsReport configuration_efficiency(const FlatSystem& sys) {
    return configuration_efficiency(sys.n(), sys.r(), sys.h(), system_psc(sys).total);
}

// Anomaly verdict: a non-uniform system undercutting the uniform system with
// the same region count. Only judged when that uniform system exists.
struct AmcVerdict {
    bool comparable = false;
    bool is_amc = false;
    Count psc = 0;
    Real uniform_psc_same_r = 0;
    Real uniform_minimum = 0;  // minimum-law value at p_bar, for reporting
};

inline AmcVerdict amc_check(const FlatSystem& sys) {
    AmcVerdict verdict;
    verdict.psc = system_psc(sys).total;
    const Count n = sys.n();
    const Count r = sys.r();
    const Count h = sys.h();
    if (n < 1 || r < 1 || h < 1 || n % r != 0 || h % r != 0) {
        return verdict;  // no realizable uniform equivalent
    }
    const Count p = h / r;
    if (p > n / r) return verdict;
    verdict.comparable = true;
    verdict.uniform_psc_same_r = uniform_psc(n, static_cast<Real>(r), static_cast<Real>(p));
    verdict.uniform_minimum = s_min(n, static_cast<Real>(h) / static_cast<Real>(r));
    bool uniform = true;
    const RegionCounts expected{n / r - p, p};
    for (const auto& reg : sys.regions) {
        if (reg.size() == 0) continue;
        if (!(reg == expected)) {
            uniform = false;
            break;
        }
    }
    verdict.is_amc = !uniform && static_cast<Real>(verdict.psc) < verdict.uniform_psc_same_r;
    return verdict;
}

}  // namespace encap
