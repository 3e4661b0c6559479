#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "mas/errors.hpp"
#include "mas/partition.hpp"
#include "mas/rng.hpp"
#include "mas/uniformity.hpp"

using mas::Partition;

namespace {

const Partition& fringe_partition() {
    static const Partition p = Partition::from_sizes({4950, 4950, 100});
    return p;
}

}  // namespace

TEST_CASE("size-biased mean weights big clusters up") {
    // (4950^2 + 4950^2 + 100^2) / 10000; every intermediate is integer-exact.
    CHECK(mas::size_biased_mean(fringe_partition()) == 4901.5);
    // Equal sizes: the size-biased mean is the common size.
    CHECK(mas::size_biased_mean(Partition::from_sizes({7, 7, 7})) == doctest::Approx(7.0));
    // Always between the arithmetic mean and the total.
    const Partition p = Partition::from_sizes({1, 2, 3, 4, 100});
    const double s = mas::size_biased_mean(p);
    CHECK(s >= p.total() / static_cast<double>(p.cluster_count()));
    CHECK(s <= p.total());
}

TEST_CASE("leave-one-out baseline") {
    const double q = 4950.0 * 4950.0 * 2 + 100.0 * 100.0;
    CHECK(mas::leave_one_out_baseline(fringe_partition(), 0) ==
          doctest::Approx((q - 4950.0 * 4950.0) / (10000.0 - 4950.0)).epsilon(1e-15));
    CHECK(mas::leave_one_out_baseline(fringe_partition(), 2) ==
          doctest::Approx((q - 100.0 * 100.0) / (10000.0 - 100.0)).epsilon(1e-15));
    CHECK_THROWS_AS(mas::leave_one_out_baseline(Partition::from_sizes({5}), 0),
                    mas::SingleCluster);
    CHECK_THROWS_AS(mas::leave_one_out_baseline(fringe_partition(), 3), mas::IndexOutOfRange);
}

TEST_CASE("mass agreement score on hand-computed partitions") {
    // [2, 1]: both agreement terms are 2/3, so U = 2/3 (also the 2/N limit).
    CHECK(mas::mass_agreement_score(Partition::from_sizes({2, 1})) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    // [3, 1]: U = 3/8 + 1/8 = 1/2.
    CHECK(mas::mass_agreement_score(Partition::from_sizes({3, 1})) ==
          doctest::Approx(0.5).epsilon(1e-15));
    // [4950, 2475, 2475]: U = 3/8 + 2 * 5/24 = 19/24.
    CHECK(mas::mass_agreement_score(Partition::from_sizes({4950, 2475, 2475})) ==
          doctest::Approx(19.0 / 24.0).epsilon(1e-15));
    CHECK(mas::mass_agreement_score(fringe_partition()) ==
          doctest::Approx(0.9856420792079209).epsilon(1e-14));
    CHECK(mas::mass_agreement_score(Partition::from_sizes({4950, 2475, 2475, 100})) ==
          doctest::Approx(0.792519704121575).epsilon(1e-14));
}

TEST_CASE("mass agreement score endpoints") {
    CHECK(mas::mass_agreement_score(Partition::from_sizes({42})) == 0.0);
    CHECK(mas::mass_agreement_score(Partition::from_sizes({5, 5})) == 1.0);
    CHECK(mas::mass_agreement_score(Partition::from_sizes({1, 1, 1, 1, 1, 1})) == 1.0);
    CHECK(mas::mass_agreement_score(Partition::from_sizes({2475, 2475, 2475, 2475})) == 1.0);
    // Strictly inside (0, 1] for K >= 2.
    mas::SplitRng rng(2024, 1);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> sizes;
        const std::size_t k = 2 + rng.uniform_index(20);
        for (std::size_t i = 0; i < k; ++i)
            sizes.push_back(static_cast<double>(1 + rng.uniform_index(5000)));
        const double u = mas::mass_agreement_score(Partition::from_sizes(sizes));
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
    }
}

TEST_CASE("mass agreement score is permutation invariant to the bit") {
    mas::SplitRng rng(99, 2);
    std::vector<double> sizes;
    for (int i = 0; i < 30; ++i) sizes.push_back(static_cast<double>(1 + rng.uniform_index(9999)));
    // A few fractional masses to exercise non-integer rounding too.
    sizes.push_back(0.125);
    sizes.push_back(3.7);
    const double reference = mas::mass_agreement_score(Partition::from_sizes(sizes));
    for (int t = 0; t < 50; ++t) {
        for (std::size_t i = sizes.size(); i > 1; --i) {
            std::swap(sizes[i - 1], sizes[rng.uniform_index(i)]);
        }
        CHECK(mas::mass_agreement_score(Partition::from_sizes(sizes)) == reference);
    }
}

TEST_CASE("shannon entropy") {
    CHECK(mas::shannon_entropy(Partition::from_sizes({5, 5})).raw ==
          doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(mas::shannon_entropy(Partition::from_sizes({5, 5})).normalized ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(mas::shannon_entropy(Partition::from_sizes({3, 3, 3, 3})).raw ==
          doctest::Approx(std::log(4.0)).epsilon(1e-15));
    const mas::EntropyValue single = mas::shannon_entropy(Partition::from_sizes({9}));
    CHECK(single.raw == 0.0);
    CHECK(single.normalized == 0.0);
    CHECK(!std::signbit(single.raw));
}

TEST_CASE("renyi-2 entropy and concentration agree") {
    const Partition p = fringe_partition();
    const mas::HhiValue hhi = mas::hhi_scores(p);
    CHECK(hhi.hhi == doctest::Approx(0.49015).epsilon(1e-15));
    CHECK(hhi.one_minus_hhi == doctest::Approx(0.50985).epsilon(1e-15));
    CHECK(hhi.one_minus_hhi_star ==
          doctest::Approx(1.0 - (0.49015 - 1.0 / 3.0) / (1.0 - 1.0 / 3.0)).epsilon(1e-12));
    CHECK(mas::renyi2_entropy(p).raw == doctest::Approx(-std::log(0.49015)).epsilon(1e-14));
    // Equal partition: H2 = ln K exactly in value.
    CHECK(mas::renyi2_entropy(Partition::from_sizes({4, 4, 4, 4})).normalized ==
          doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("single-cluster conventions") {
    const Partition solo = Partition::from_sizes({123});
    const mas::UniformityReport r = mas::full_report(solo);
    CHECK(r.k == 1);
    CHECK(r.mas == 0.0);
    CHECK(r.shannon == 0.0);
    CHECK(r.shannon_norm == 0.0);
    CHECK(r.renyi2 == 0.0);
    CHECK(r.renyi2_norm == 0.0);
    CHECK(r.hhi_score == 0.0);
    CHECK(r.hhi_star_score == 0.0);
    // The literal pair-distance formula gives exactly 1 for one cluster.
    CHECK(r.gini_score == 1.0);
}

TEST_CASE("gini matches the naive double loop") {
    mas::SplitRng rng(7, 3);
    for (int t = 0; t < 100; ++t) {
        std::vector<double> sizes;
        const std::size_t k = 1 + rng.uniform_index(12);
        for (std::size_t i = 0; i < k; ++i) sizes.push_back(1.0 + 50.0 * rng.uniform_real());
        const Partition p = Partition::from_sizes(sizes);
        double pair_sum = 0.0;
        for (double a : p.sizes()) {
            for (double b : p.sizes()) pair_sum += std::abs(a - b);
        }
        const double naive = 1.0 - pair_sum / (2.0 * static_cast<double>(p.cluster_count()) *
                                               p.total());
        CHECK(mas::gini_score(p) == doctest::Approx(naive).epsilon(1e-12));
    }
    CHECK(mas::gini_score(fringe_partition()) ==
          doctest::Approx(1.0 - 19400.0 / 60000.0).epsilon(1e-14));
}

TEST_CASE("effective cluster count") {
    CHECK(mas::effective_cluster_count(Partition::from_sizes({3, 3, 3})) ==
          doctest::Approx(3.0).epsilon(1e-14));
    CHECK(mas::effective_cluster_count(fringe_partition()) ==
          doctest::Approx(2.040191778027135).epsilon(1e-14));
    mas::SplitRng rng(5, 4);
    for (int t = 0; t < 50; ++t) {
        std::vector<double> sizes;
        const std::size_t k = 1 + rng.uniform_index(9);
        for (std::size_t i = 0; i < k; ++i)
            sizes.push_back(static_cast<double>(1 + rng.uniform_index(100)));
        const Partition p = Partition::from_sizes(sizes);
        const double k_eff = mas::effective_cluster_count(p);
        CHECK(k_eff >= 1.0 - 1e-12);
        CHECK(k_eff <= static_cast<double>(p.cluster_count()) + 1e-12);
    }
}

TEST_CASE("full report is consistent with the individual metrics") {
    const Partition p = Partition::from_sizes({4950, 2475, 2475, 100});
    const mas::UniformityReport r = mas::full_report(p);
    CHECK(r.k == 4);
    CHECK(r.mas == mas::mass_agreement_score(p));
    CHECK(r.shannon == mas::shannon_entropy(p).raw);
    CHECK(r.shannon_norm == mas::shannon_entropy(p).normalized);
    CHECK(r.renyi2 == mas::renyi2_entropy(p).raw);
    CHECK(r.renyi2_norm == mas::renyi2_entropy(p).normalized);
    CHECK(r.hhi_score == mas::hhi_scores(p).one_minus_hhi);
    CHECK(r.hhi_star_score == mas::hhi_scores(p).one_minus_hhi_star);
    CHECK(r.gini_score == mas::gini_score(p));
    // The report's renyi2 must invert its own concentration score.
    CHECK(r.renyi2 == doctest::Approx(-std::log(1.0 - r.hhi_score)).epsilon(1e-12));
}

TEST_CASE("scale invariance of every report field") {
    const Partition base = Partition::from_sizes({4950, 4950, 100});
    const mas::UniformityReport before = mas::full_report(base);
    for (double factor : {0.001, 0.5, 3.0, 1e5}) {
        const mas::UniformityReport after = mas::full_report(base.scaled(factor));
        CHECK(after.mas == doctest::Approx(before.mas).epsilon(1e-12));
        CHECK(after.shannon == doctest::Approx(before.shannon).epsilon(1e-12));
        CHECK(after.hhi_score == doctest::Approx(before.hhi_score).epsilon(1e-12));
        CHECK(after.gini_score == doctest::Approx(before.gini_score).epsilon(1e-12));
    }
}
