#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "encap/psc.hpp"
#include "encap/types.hpp"

namespace encap {

struct LayeredUniformSpec {
    Count n = 0;    // nodes
    Count r = 0;    // subsystems in total
    Count L = 0;    // layers
    Count r_L = 0;  // subsystems per layer
    Count d = 0;    // layer penetration: how many layers below remain visible
    Real p = 0;     // violations per subsystem
};

struct HierUniformSpec {
    Count n = 0;  // nodes
    Count r = 0;  // subsystems in total
    Count k = 0;  // levels above the root
    Count b = 0;  // span of control
    Real p = 0;   // violations per subsystem
};

// Layered visibility: a unit sees its own subsystem fully, and the violating
// nodes of every other subsystem whose layer lies within d layers below its
// own (same layer included).
inline Count layered_psc_enumerated(const LayeredSystem& sys) {
    const Count n = sys.n();
    if (n > enumeration_node_cap) {
        throw cap_error("enumeration refused: " + std::to_string(n) + " nodes exceeds the cap of " +
                        std::to_string(enumeration_node_cap));
    }
    const Count L = sys.layer_count();
    const Count d = sys.effective_penetration();
    std::vector<Count> layer_violating(static_cast<std::size_t>(L), 0);
    for (Count ell = 0; ell < L; ++ell) {
        for (const auto& reg : sys.layers[static_cast<std::size_t>(ell)]) {
            layer_violating[static_cast<std::size_t>(ell)] += reg.violating;
        }
    }
    Count total = 0;
    for (Count ell = 0; ell < L; ++ell) {
        Count visible_violating = 0;
        const Count lowest = std::max<Count>(0, ell - d);
        for (Count m = lowest; m <= ell; ++m) {
            visible_violating += layer_violating[static_cast<std::size_t>(m)];
        }
        for (const auto& reg : sys.layers[static_cast<std::size_t>(ell)]) {
            total += reg.size() * (reg.size() - 1);
            total += reg.size() * (visible_violating - reg.violating);
        }
    }
    return total;
}

// Closed form for the uniform layered system, as given.
inline Real layered_psc_formula(const LayeredUniformSpec& spec) {
    if (spec.n < 1 || spec.r < 1 || spec.L < 1 || spec.r_L < 1) {
        throw validation_error("layered spec needs positive n, r, L, r_L");
    }
    if (spec.r != spec.L * spec.r_L) {
        throw validation_error("layered spec needs r = L * r_L");
    }
    if (spec.d < 0 || spec.d > spec.L - 1) {
        throw validation_error("penetration must lie in [0, L-1]");
    }
    const Real n = static_cast<Real>(spec.n);
    const Real r = static_cast<Real>(spec.r);
    const Real L = static_cast<Real>(spec.L);
    const Real rl = static_cast<Real>(spec.r_L);
    const Real d = static_cast<Real>(spec.d);
    return n * (n / r - 1.0) + (rl * rl * (d + 1.0) * (L - d / 2.0) - r) * spec.p * n / r;
}

// Uniform layered system builder: L layers of r_L subsystems, each subsystem
// n/r nodes with p violating.
inline LayeredSystem layered_uniform(Count n, Count L, Count r_L, Count p, Count d) {
    const Count r = L * r_L;
    if (L < 1 || r_L < 1) throw validation_error("need L >= 1 and r_L >= 1");
    if (n % r != 0) {
        throw validation_error("subsystem count " + std::to_string(r) + " does not divide " +
                               std::to_string(n) + " nodes");
    }
    const Count size = n / r;
    if (p < 0 || p > size) throw validation_error("violations per subsystem must lie in [0, n/r]");
    LayeredSystem sys;
    sys.layers.assign(static_cast<std::size_t>(L),
                      std::vector<RegionCounts>(static_cast<std::size_t>(r_L),
                                                RegionCounts{size - p, p}));
    sys.penetration = d;
    return sys;
}

// Subsystems whose violating nodes a member of `id` may depend on: the
// subsystem's siblings, each ancestor, and each ancestor's siblings. The
// subsystem itself is excluded. Children are never visible.
inline std::vector<int> visible_subsystems(const HierTree& sys, int id) {
    if (id < 0 || id >= static_cast<int>(sys.nodes.size())) {
        throw validation_error("unknown subsystem id " + std::to_string(id));
    }
    const auto kids = sys.children();
    std::vector<int> visible;
    int at = id;
    while (at != -1) {
        const int parent = sys.nodes[static_cast<std::size_t>(at)].parent;
        if (parent != -1) {
            for (const int sibling : kids[static_cast<std::size_t>(parent)]) {
                if (sibling != at) visible.push_back(sibling);
            }
            visible.push_back(parent);
        }
        at = parent;
    }
    std::sort(visible.begin(), visible.end());
    return visible;
}

inline Count hier_psc_enumerated(const HierTree& sys) {
    const Count n = sys.n();
    if (n > enumeration_node_cap) {
        throw cap_error("enumeration refused: " + std::to_string(n) + " nodes exceeds the cap of " +
                        std::to_string(enumeration_node_cap));
    }
    sys.validate();
    const auto kids = sys.children();
    // Violating-node total over all children of each parent, for sibling sums.
    std::vector<Count> child_violating(sys.nodes.size() + 1, 0);
    for (std::size_t i = 0; i < sys.nodes.size(); ++i) {
        const int parent = sys.nodes[i].parent;
        if (parent >= 0) {
            child_violating[static_cast<std::size_t>(parent)] += sys.nodes[i].counts.violating;
        }
    }
    Count total = 0;
    for (std::size_t i = 0; i < sys.nodes.size(); ++i) {
        const auto& counts = sys.nodes[i].counts;
        total += counts.size() * (counts.size() - 1);
        Count visible_violating = 0;
        int at = static_cast<int>(i);
        while (at != -1) {
            const int parent = sys.nodes[static_cast<std::size_t>(at)].parent;
            if (parent != -1) {
                // Siblings of `at`, then the parent itself.
                visible_violating += child_violating[static_cast<std::size_t>(parent)] -
                                     sys.nodes[static_cast<std::size_t>(at)].counts.violating;
                visible_violating += sys.nodes[static_cast<std::size_t>(parent)].counts.violating;
            }
            at = parent;
        }
        total += counts.size() * visible_violating;
    }
    return total;
}

// Closed form for the uniform full b-ary hierarchy, as given. Reported beside
// the enumerated value; the enumerator is authoritative.
inline Real hier_psc_formula(const HierUniformSpec& spec) {
    if (spec.n < 1 || spec.r < 1) throw validation_error("hier spec needs positive n and r");
    if (spec.k < 0) throw validation_error("depth must be non-negative");
    if (spec.k > 0 && spec.b < 1) throw validation_error("need span >= 1 for depth > 0");
    const Real n = static_cast<Real>(spec.n);
    const Real r = static_cast<Real>(spec.r);
    Real cross = 0;
    Real power = static_cast<Real>(spec.b);  // b^1
    for (Count i = 1; i <= spec.k; ++i) {
        power *= static_cast<Real>(spec.b);  // b^(i+1)
        cross += static_cast<Real>(i) * power;
    }
    return n * (n / r - 1.0) + spec.p * cross;
}

// Span-b tree over exactly r subsystems, grown one subsystem at a time in
// breadth-first order (each parent fills its b child slots before the next
// parent starts). Nodes spread evenly, larger remainders first.
inline HierTree hier_grown_tree(Count n, Count r, Count b, Count p) {
    if (r < 1 || b < 1) throw validation_error("need r >= 1 and span >= 1");
    if (n < r) throw validation_error("need at least one node per subsystem");
    HierTree sys;
    sys.nodes.reserve(static_cast<std::size_t>(r));
    const Count base = n / r;
    const Count rem = n % r;
    for (Count i = 0; i < r; ++i) {
        const Count size = base + (i < rem ? 1 : 0);
        const Count viol = std::min(p, size);
        HierTree::Subsystem node;
        node.name = "s" + std::to_string(i);
        node.parent = i == 0 ? -1 : static_cast<int>((i - 1) / b);
        node.counts = {size - viol, viol};
        sys.nodes.push_back(std::move(node));
    }
    return sys;
}

// Full b-ary tree of depth k: every non-leaf has exactly b children.
inline HierTree hier_full_tree(Count n, Count b, Count k, Count p) {
    if (b < 1 || k < 0) throw validation_error("need span >= 1 and depth >= 0");
    Count r = 0;
    Count level = 1;
    for (Count i = 0; i <= k; ++i) {
        r += level;
        level *= b;
    }
    return hier_grown_tree(n, r, b, p);
}

}  // namespace encap
