#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "encap/experiments.hpp"

using namespace encap;
using Catch::Approx;

TEST_CASE("fixed sweep over four nodes in two regions") {
    const Series series = fixed_system_sweep(4, 2, 1);
    REQUIRE(series.points.size() == 3);  // splits (4,0), (3,1), (2,2)
    CHECK(series.points[0].second == Approx(12.0));
    CHECK(series.points[1].second == Approx(10.0));
    CHECK(series.points[2].second == Approx(8.0));
    CHECK(series.points[0].first == Approx(1.0));
    CHECK_THROWS_AS(fixed_system_sweep(4, 1, 1), validation_error);
}

TEST_CASE("varied region sweep flat") {
    const Series series = varied_region_sweep(12, 1, Context::flat);
    std::map<Real, Real> got(series.points.begin(), series.points.end());
    const std::map<Real, Real> want{{1, 132}, {2, 72}, {3, 60}, {4, 60}, {6, 72}, {12, 132}};
    CHECK(got == want);
}

TEST_CASE("layered split sweep finds the even placement") {
    const Series series = layered_split_sweep(12, 3, 4, 1);
    CHECK(series.points.size() == 55);  // ordered positive triples summing to 12
    std::string min_split;
    for (const auto& [key, value] : series.metadata) {
        if (key == "min_split") min_split = value;
    }
    CHECK(min_split == "4/4/4");
}

TEST_CASE("growth curves stay ordered at divisor-rich sizes") {
    const Series un = system_growth(40, 1, Context::unencapsulated);
    const Series flat = system_growth(40, 1, Context::flat);
    const Series layered = system_growth(40, 1, Context::layered);
    const Series hier = system_growth(40, 1, Context::hier2d);
    REQUIRE(un.points.size() == 40);
    REQUIRE(flat.points.size() == 40);
    // the layered minimum needs workable divisors, so awkward sizes
    // (primes especially) sit above the flat curve; compare where a
    // balanced layering exists
    for (std::size_t i : {11, 19, 23, 35, 39}) {
        CAPTURE(i);
        CHECK(hier.points[i].second <= layered.points[i].second);
        CHECK(layered.points[i].second <= flat.points[i].second + 1e-9);
        CHECK(flat.points[i].second <= un.points[i].second);
    }
    // the relative-hiding curve never exceeds the unencapsulated one
    for (std::size_t i = 0; i < 40; ++i) {
        CHECK(hier.points[i].second <= un.points[i].second);
    }
}

TEST_CASE("random systems are reproducible across jobs") {
    RandomSystemParams one;
    one.n = 80;
    one.system_count = 64;
    one.seed = 11;
    one.jobs = 1;
    RandomSystemParams four = one;
    four.jobs = 4;
    const auto a = random_systems(one);
    const auto b = random_systems(four);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].first == b[i].first);
        CHECK(a[i].second.s == b[i].second.s);
    }
}

TEST_CASE("random systems respect their size") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const FlatSystem sys = random_system(rng, 37);
        CHECK(sys.n() == 37);
        for (const auto& reg : sys.regions) {
            CHECK(reg.size() >= 1);
            CHECK(reg.violating >= 1);
        }
    }
}

TEST_CASE("exhaustive census against brute force") {
    // independent walk of the n=10, r=2 space
    Count comparable = 0, amc = 0, excluded = 0;
    for (Count k = 1; k <= 9; ++k) {
        for (Count h1 = 1; h1 <= k; ++h1) {
            for (Count h2 = 1; h2 <= 10 - k; ++h2) {
                const Count h = h1 + h2;
                if (h % 2 != 0) {
                    ++excluded;
                    continue;
                }
                ++comparable;
                if (k == 5 && h1 == h2) continue;
                const FlatSystem sys = flat_from_counts({{k - h1, h1}, {10 - k - h2, h2}});
                const Count s = system_psc(sys).total;
                if (static_cast<Real>(s) < s_min(10, static_cast<Real>(h) / 2.0)) ++amc;
            }
        }
    }
    const CensusResult census = amc_census(10, 2, CensusMode::exhaustive);
    CHECK(census.exhaustive);
    CHECK(census.space == comparable);
    CHECK(census.amc_count == amc);
    CHECK(census.excluded == excluded);
    CHECK(census.amc_fraction ==
          Approx(static_cast<Real>(amc) / static_cast<Real>(comparable)).margin(1e-12));
}

TEST_CASE("census is deterministic across jobs") {
    const CensusResult one = amc_census(60, 5, CensusMode::sampled, 9, 4000, 1);
    const CensusResult four = amc_census(60, 5, CensusMode::sampled, 9, 4000, 4);
    CHECK(one.space == four.space);
    CHECK(one.amc_count == four.amc_count);
    CHECK(one.min_gap_percent == four.min_gap_percent);
}

TEST_CASE("census refuses an exhaustive walk it cannot do") {
    CHECK_THROWS_AS(amc_census(100, 3, CensusMode::exhaustive), cap_error);
    CHECK_THROWS_AS(amc_census(101, 2, CensusMode::exhaustive), validation_error);
}

TEST_CASE("evolution keeps systems well formed") {
    Rng rng(21);
    const FlatSystem start = uniform_system(60, 6, 2);
    const Series series = evolve_system(start, 400, rng);
    CHECK(series.points.size() >= 400);
    for (const auto& [step, ce] : series.points) {
        CHECK(ce >= 0.0);
        CHECK(ce <= 1.0);
    }
}

TEST_CASE("evolution is reproducible") {
    const std::vector<FlatSystem> initial{uniform_system(40, 4, 1), uniform_system(60, 6, 2)};
    const auto a = adhoc_evolution(initial, 300, 77);
    const auto b = adhoc_evolution(initial, 300, 77);
    REQUIRE(a.size() == 2);
    REQUIRE(b.size() == 2);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].points == b[i].points);
    }
}

TEST_CASE("belt demo systems") {
    const auto systems = belt_demo_systems(3);
    REQUIRE(systems.size() == 10);
    std::set<Count> region_counts;
    for (const auto& sys : systems) {
        CHECK(sys.n() == 1000);
        region_counts.insert(sys.r());
        for (const auto& reg : sys.regions) CHECK(reg.violating >= 1);
    }
    CHECK(region_counts == std::set<Count>{120, 145, 170, 195, 220, 245, 270, 295, 320, 345});
}

TEST_CASE("average efficiency curve is deterministic") {
    const std::vector<Count> ns{10, 50};
    const Series one = average_efficiency_curve(ns, 64, 13, 1);
    const Series four = average_efficiency_curve(ns, 64, 13, 4);
    CHECK(one.points == four.points);
    for (const auto& [n, mean] : one.points) {
        CHECK(mean > 0.0);
        CHECK(mean < 1.0);
    }
}

TEST_CASE("capped systems") {
    const FlatSystem sys = capped_system(25, 10, 1);
    REQUIRE(sys.regions.size() == 3);
    CHECK(sys.regions[0].size() == 10);
    CHECK(sys.regions[1].size() == 10);
    CHECK(sys.regions[2].size() == 5);
    CHECK(sys.h() == 3);

    const Series curve = capped_growth_curve(300, 10, 1);
    REQUIRE(!curve.points.empty());
    // past a few caps the curve hugs high efficiency
    for (const auto& [n, ce] : curve.points) {
        if (n >= 100) CHECK(ce > 0.8);
    }
}
