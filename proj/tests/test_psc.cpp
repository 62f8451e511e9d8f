#include <catch2/catch_amalgamated.hpp>

#include "encap/psc.hpp"
#include "encap/rng.hpp"

using namespace encap;
using Catch::Approx;

TEST_CASE("unencapsulated value") {
    CHECK(psc_unencapsulated(0) == 0);
    CHECK(psc_unencapsulated(1) == 0);
    CHECK(psc_unencapsulated(12) == 132);
    CHECK(psc_unencapsulated(20) == 380);
    CHECK(psc_unencapsulated(100) == 9900);
}

TEST_CASE("four teams of five") {
    const FlatSystem teams = uniform_system(20, 4, 1);
    const PscBreakdown psc = system_psc(teams);
    CHECK(psc.total == 140);
    CHECK(psc.internal == 80);   // 4 * 5*4
    CHECK(psc.external == 60);   // 4 * 5*(4-1)
    CHECK(enumerate_psc_oracle(teams) == 140);
}

TEST_CASE("uniform closed form matches enumeration") {
    for (Count n : {6, 12, 24, 60}) {
        for (Count r = 1; r <= n; ++r) {
            if (n % r != 0) continue;
            for (Count p = 0; p <= n / r; ++p) {
                const FlatSystem sys = uniform_system(n, r, p);
                const Real formula = uniform_psc(n, static_cast<Real>(r), static_cast<Real>(p));
                CAPTURE(n, r, p);
                CHECK(static_cast<Real>(system_psc(sys).total) == Approx(formula));
                CHECK(enumerate_psc_oracle(sys) == system_psc(sys).total);
            }
        }
    }
}

TEST_CASE("oracle agrees on random systems") {
    Rng rng(404);
    for (int trial = 0; trial < 200; ++trial) {
        const Count n = rng.int_in(1, 60);
        const Count r = rng.int_in(1, n);
        const std::vector<Count> sizes = random_composition(rng, n, r);
        FlatSystem sys;
        for (const Count size : sizes) {
            const Count viol = rng.int_in(0, size);
            sys.regions.push_back({size - viol, viol});
        }
        CHECK(enumerate_psc_oracle(sys) == system_psc(sys).total);
    }
}

TEST_CASE("oracle refuses huge systems") {
    const FlatSystem big = uniform_system(2001, 3, 1);
    CHECK_THROWS_AS(enumerate_psc_oracle(big), cap_error);
    const FlatSystem at_cap = uniform_system(2000, 4, 1);
    CHECK_NOTHROW(enumerate_psc_oracle(at_cap));
}

TEST_CASE("laws") {
    CHECK(r_min(12, 1) == Approx(3.4641).margin(0.0001));
    CHECK(r_min(100, 1) == Approx(10.0));
    CHECK(r_min(100, 2) == Approx(7.0711).margin(0.0001));
    CHECK(s_min(100, 1) == Approx(1800.0));
    CHECK(s_min(100, 31) == Approx(7935.5287).margin(0.001));
    CHECK(r_h(12, 1) == Approx(12.0));
    CHECK(r_h(100, 4) == Approx(25.0));
    CHECK(optimal_region_size(100, 1) == Approx(10.0));
    CHECK(required_violation_for_size(10, 100) == Approx(1.0));
    CHECK(required_violation_for_size(20, 100) == Approx(4.0));
    CHECK_THROWS_AS(r_min(100, 0), validation_error);
    CHECK_THROWS_AS(s_min(100, -1), validation_error);
}

TEST_CASE("region count recommendation") {
    // sqrt(20) = 4.47; both 4 and 5 regions give 140, the tie goes low
    CHECK(recommended_regions(20, 1) == 4);
    CHECK(recommended_regions(100, 1) == 10);
    // sqrt(12) = 3.46; r=3 and r=4 both give 60, again the tie goes low
    CHECK(recommended_regions(12, 1) == 3);
}

TEST_CASE("uniform psc across the r range") {
    // full hiding at r_h makes encapsulation worthless: back to n(n-1)
    CHECK(uniform_psc(12, 12.0, 1.0) == Approx(132.0));
    CHECK(uniform_psc(12, 1.0, 1.0) == Approx(132.0));
    CHECK(uniform_psc(12, 3.0, 1.0) == Approx(60.0));
    CHECK(uniform_psc(100, 10.0, 1.0) == Approx(1800.0));
}

TEST_CASE("per region pieces") {
    CHECK(region_internal_psc(5) == 20);
    CHECK(region_external_psc(5, 4, 1) == 15);
    CHECK_THROWS_AS(region_external_psc(5, 3, 6), validation_error);
}
