#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "encap/types.hpp"

namespace encap {

// Largest system the explicit enumeration calculators will accept.
inline constexpr Count enumeration_node_cap = 2000;

struct PscBreakdown {
    Count internal = 0;
    Count external = 0;
    Count total = 0;
};

// Ceiling on potential structural complexity: every ordered pair of distinct
// nodes could form a dependency.
inline Count psc_unencapsulated(Count n) {
    if (n < 0) throw validation_error("node count must be non-negative");
    return n * (n - 1);
}

inline Count region_internal_psc(Count size) {
    if (size < 0) throw validation_error("region size must be non-negative");
    return size * (size - 1);
}

inline Count region_external_psc(Count size, Count h_total, Count h_region) {
    if (size < 0 || h_total < 0 || h_region < 0) {
        throw validation_error("counts must be non-negative");
    }
    if (h_region > h_total) {
        throw validation_error("region violations exceed the system total");
    }
    if (h_region > size) {
        throw validation_error("region violations exceed the region size");
    }
    return size * (h_total - h_region);
}

inline PscBreakdown system_psc(const FlatSystem& sys) {
    const Count h_total = sys.h();
    PscBreakdown out;
    for (const auto& reg : sys.regions) {
        out.internal += region_internal_psc(reg.size());
        out.external += region_external_psc(reg.size(), h_total, reg.violating);
    }
    out.total = out.internal + out.external;
    return out;
}

// Independent oracle: builds the maximally-connected graph node by node and
// counts its edges. Deliberately avoids the closed forms.
inline Count enumerate_psc_oracle(const FlatSystem& sys) {
    const Count n = sys.n();
    if (n > enumeration_node_cap) {
        throw cap_error("enumeration refused: " + std::to_string(n) + " nodes exceeds the cap of " +
                        std::to_string(enumeration_node_cap));
    }
    struct Node {
        int region;
        bool violating;
    };
    std::vector<Node> nodes;
    nodes.reserve(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < sys.regions.size(); ++i) {
        const auto& reg = sys.regions[i];
        for (Count k = 0; k < reg.hidden; ++k) nodes.push_back({static_cast<int>(i), false});
        for (Count k = 0; k < reg.violating; ++k) nodes.push_back({static_cast<int>(i), true});
    }
    Count edges = 0;
    for (std::size_t u = 0; u < nodes.size(); ++u) {
        for (std::size_t v = 0; v < nodes.size(); ++v) {
            if (u == v) continue;
            if (nodes[v].region == nodes[u].region || nodes[v].violating) ++edges;
        }
    }
    return edges;
}

// Uniform-system value, accepting real-valued r and p.
inline Real uniform_psc(const UniformSpec& spec) {
    if (spec.n < 1 || spec.r < 1 || spec.p < 0) {
        throw validation_error("uniform psc needs n >= 1, r >= 1, p >= 0");
    }
    const Real n = static_cast<Real>(spec.n);
    return n * (n / spec.r - 1.0 + (spec.r - 1.0) * spec.p);
}

inline Real uniform_psc(Count n, Real r, Real p) { return uniform_psc(UniformSpec{n, r, p}); }

// Region count minimising the uniform-system value.
inline Real r_min(Count n, Real p) {
    if (n < 1) throw validation_error("need n >= 1");
    if (p <= 0) throw validation_error("the law is undefined at p = 0");
    return std::sqrt(static_cast<Real>(n) / p);
}

// Region count at which encapsulation stops paying: the uniform value climbs
// back to the unencapsulated ceiling.
inline Real r_h(Count n, Real p) {
    if (n < 1) throw validation_error("need n >= 1");
    if (p <= 0) throw validation_error("the law is undefined at p = 0");
    return static_cast<Real>(n) / p;
}

// Minimum possible uniform-system value over unconstrained real r.
inline Real s_min(Count n, Real p) {
    if (n < 1) throw validation_error("need n >= 1");
    if (p <= 0) throw validation_error("the law is undefined at p = 0");
    const Real nn = static_cast<Real>(n);
    return nn * (2.0 * std::sqrt(nn * p) - 1.0 - p);
}

inline Real optimal_region_size(Count n, Real p) {
    if (n < 1) throw validation_error("need n >= 1");
    if (p <= 0) throw validation_error("the law is undefined at p = 0");
    return std::sqrt(static_cast<Real>(n) * p);
}

inline Real required_violation_for_size(Count region_size, Count n) {
    if (region_size < 1) throw validation_error("need region size >= 1");
    if (n < region_size) throw validation_error("region cannot exceed the system");
    const Real size = static_cast<Real>(region_size);
    return size * size / static_cast<Real>(n);
}

// Whole-number region recommendation: evaluate the uniform value at the two
// integers bracketing r_min and keep the better one, preferring fewer regions
// on an exact tie.
inline Count recommended_regions(Count n, Real p) {
    const Real raw = r_min(n, p);
    Count lo = static_cast<Count>(std::floor(raw));
    Count hi = static_cast<Count>(std::ceil(raw));
    if (lo < 1) lo = 1;
    if (hi < 1) hi = 1;
    if (lo == hi) return lo;
    const Real at_lo = uniform_psc(n, static_cast<Real>(lo), p);
    const Real at_hi = uniform_psc(n, static_cast<Real>(hi), p);
    return at_lo <= at_hi ? lo : hi;
}

}  // namespace encap
