#include <catch2/catch_amalgamated.hpp>

#include "encap/hier.hpp"

using namespace encap;
using Catch::Approx;

TEST_CASE("layered enumeration with one layer is flat") {
    for (Count n : {12, 24, 48}) {
        for (Count r = 1; r <= n; ++r) {
            if (n % r != 0) continue;
            for (Count p = 0; p <= n / r && p <= 4; ++p) {
                const LayeredSystem sys = layered_uniform(n, 1, r, p, 0);
                CAPTURE(n, r, p);
                CHECK(layered_psc_enumerated(sys) == system_psc(uniform_system(n, r, p)).total);
            }
        }
    }
}

TEST_CASE("layered closed form matches enumeration") {
    for (Count L = 1; L <= 4; ++L) {
        for (Count r_L = 1; r_L <= 4; ++r_L) {
            for (Count size = 1; size <= 4; ++size) {
                const Count r = L * r_L;
                const Count n = r * size;
                for (Count p = 0; p <= size; ++p) {
                    for (Count d = 0; d < L; ++d) {
                        const LayeredUniformSpec spec{n, r, L, r_L, d, static_cast<Real>(p)};
                        const LayeredSystem sys = layered_uniform(n, L, r_L, p, d);
                        CAPTURE(n, L, r_L, p, d);
                        CHECK(layered_psc_formula(spec) ==
                              Approx(static_cast<Real>(layered_psc_enumerated(sys))));
                    }
                }
            }
        }
    }
}

TEST_CASE("penetration widens reach") {
    // three layers of two regions, size 3, one violation each
    Count previous = -1;
    for (Count d = 0; d < 3; ++d) {
        const Count value = layered_psc_enumerated(layered_uniform(18, 3, 2, 1, d));
        if (previous >= 0) CHECK(value > previous);
        previous = value;
    }
}

TEST_CASE("full ternary depth three tree") {
    const HierTree tree = hier_full_tree(40, 3, 3, 1);
    REQUIRE(tree.subsystem_count() == 40);
    CHECK(tree.n() == 40);

    // the last node is a deepest leaf; it sees 9 others (10 counting itself)
    const auto seen = visible_subsystems(tree, 39);
    CHECK(seen.size() == 9);
    // the root sees nothing above it
    CHECK(visible_subsystems(tree, 0).empty());
    // a depth-1 subsystem sees its two siblings and the root
    CHECK(visible_subsystems(tree, 1).size() == 3);
}

TEST_CASE("hier closed form at one node per subsystem") {
    for (Count k = 1; k <= 3; ++k) {
        for (Count b = 2; b <= 4; ++b) {
            Count r = 0, power = 1;
            for (Count i = 0; i <= k; ++i) {
                r += power;
                power *= b;
            }
            const Count n = r;  // one node per subsystem
            const HierTree tree = hier_full_tree(n, b, k, 1);
            const HierUniformSpec spec{n, r, k, b, 1.0};
            CAPTURE(k, b);
            CHECK(hier_psc_formula(spec) == Approx(static_cast<Real>(hier_psc_enumerated(tree))));
        }
    }
}

TEST_CASE("grown tree shape") {
    const HierTree tree = hier_grown_tree(10, 4, 2, 1);
    REQUIRE(tree.subsystem_count() == 4);
    // ceil-first sizes: 10 over 4 subsystems is 3,3,2,2
    CHECK(tree.nodes[0].counts.size() == 3);
    CHECK(tree.nodes[1].counts.size() == 3);
    CHECK(tree.nodes[2].counts.size() == 2);
    CHECK(tree.nodes[3].counts.size() == 2);
    // heap layout: node i hangs off (i-1)/b
    CHECK(tree.nodes[1].parent == 0);
    CHECK(tree.nodes[2].parent == 0);
    CHECK(tree.nodes[3].parent == 1);
    CHECK_NOTHROW(tree.validate());
}

TEST_CASE("relative hiding beats absolute hiding") {
    // at n=100, the best grown binary tree undercuts the best flat split
    Count best_hier = -1;
    for (Count r = 1; r <= 100; ++r) {
        const Count value = hier_psc_enumerated(hier_grown_tree(100, r, 2, 1));
        if (best_hier < 0 || value < best_hier) best_hier = value;
    }
    CHECK(best_hier < 1800);
}
