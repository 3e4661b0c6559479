#include <doctest.h>

#include <cmath>
#include <vector>

#include "mas/composite.hpp"
#include "mas/errors.hpp"
#include "mas/rng.hpp"

TEST_CASE("composite value on the worked example") {
    // v = 0.9856, k_eff = 2.04019, sil = 0.5, n = 10000, evaluated by hand:
    // 0.9856 * (1 - ln(2.04019)/ln(10000)) * 0.75.
    CHECK(mas::composite_phi(0.9856, 2.04019, 0.5, 10000) ==
          doctest::Approx(0.6819728704333361).epsilon(1e-12));
}

TEST_CASE("composite endpoints") {
    // k_eff = n wipes the score out regardless of the rest.
    CHECK(mas::composite_phi(1.0, 10000.0, 1.0, 10000) == 0.0);
    // sil = -1 does the same through the last factor.
    CHECK(mas::composite_phi(0.7, 2.0, -1.0, 100) == 0.0);
    // k_eff = 1 leaves the fragmentation factor at 1.
    CHECK(mas::composite_phi(0.5, 1.0, 1.0, 100) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("composite validates structural factors") {
    CHECK_THROWS_AS(mas::composite_phi(0.5, 0.5, 0.0, 100), mas::OutOfRange);
    CHECK_THROWS_AS(mas::composite_phi(0.5, 101.0, 0.0, 100), mas::OutOfRange);
    CHECK_THROWS_AS(mas::composite_phi(0.5, 2.0, 1.5, 100), mas::OutOfRange);
    CHECK_THROWS_AS(mas::composite_phi(0.5, 2.0, -1.5, 100), mas::OutOfRange);
    CHECK_THROWS_AS(mas::composite_phi(0.5, 1.0, 0.0, 1), mas::OutOfRange);
    CHECK_THROWS_AS(mas::composite_phi(0.5, std::nan(""), 0.0, 100), mas::OutOfRange);
}

TEST_CASE("composite_score additionally constrains v") {
    CHECK_THROWS_AS(mas::composite_score(1.2, 2.0, 0.0, 100), mas::OutOfRange);
    CHECK_THROWS_AS(mas::composite_score(-0.1, 2.0, 0.0, 100), mas::OutOfRange);
    // composite_phi itself takes the raw entropy-style factors above 1.
    CHECK(mas::composite_phi(1.4, 2.0, 0.0, 100) > 0.0);
    const mas::CompositeScore s = mas::composite_score(0.8, 3.0, 0.25, 400);
    CHECK(s.uniformity_v == 0.8);
    CHECK(s.k_eff == 3.0);
    CHECK(s.silhouette == 0.25);
    CHECK(s.point_count == 400);
    CHECK(s.phi == mas::composite_phi(0.8, 3.0, 0.25, 400));
}

TEST_CASE("null reference pins v to one") {
    const mas::CompositeScore s = mas::null_reference_score(100.0, 1.0, 10000);
    CHECK(s.uniformity_v == 1.0);
    // sqrt(n) effective clusters with a perfect silhouette: (1 - 1/2) * 1.
    CHECK(s.phi == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(mas::null_reference_score(100.0, 0.0, 10000).phi ==
          doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("stored phi recomputes from stored factors") {
    mas::SplitRng rng(31, 8);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t n = 2 + rng.uniform_index(100000);
        const double k_eff = 1.0 + (static_cast<double>(n) - 1.0) * rng.uniform_real();
        const double sil = rng.uniform_real(-1.0, 1.0);
        const double v = rng.uniform_real();
        const mas::CompositeScore s = mas::composite_score(v, k_eff, sil, n);
        const double recomputed = s.uniformity_v *
                                  (1.0 - std::log(s.k_eff) / std::log(static_cast<double>(s.point_count))) *
                                  (s.silhouette + 1.0) / 2.0;
        CHECK(s.phi == doctest::Approx(recomputed).epsilon(1e-12));
    }
}

TEST_CASE("ranking prefers high phi, then low k_eff, then input order") {
    const std::vector<mas::CompositeScore> scored{
        {0.5, 4.0, 0.0, 100, 0.25},
        {0.5, 2.0, 0.0, 100, 0.50},
        {0.5, 3.0, 0.0, 100, 0.50},
        {0.5, 2.0, 0.0, 100, 0.10},
        {0.5, 2.0, 0.0, 100, 0.50},
    };
    const std::vector<std::size_t> order = mas::rank_candidates(scored);
    // phi 0.50 first; among those, k_eff 2 before 3, and index 1 before 4.
    CHECK(order == std::vector<std::size_t>{1, 4, 2, 0, 3});
    CHECK_THROWS_AS(mas::rank_candidates(std::vector<mas::CompositeScore>{}), mas::EmptyInput);
}
