#include <doctest.h>

#include <cmath>
#include <vector>

#include "mas/agreement.hpp"
#include "mas/errors.hpp"
#include "mas/partition.hpp"
#include "mas/rng.hpp"
#include "support/oracles.hpp"

using mas::DatasetMatrix;
using mas::LabelAssignment;

namespace {

LabelAssignment labels_of(std::vector<int> codes) { return LabelAssignment(codes); }

std::vector<int> random_labeling(mas::SplitRng& rng, std::size_t n, std::size_t max_k) {
    std::vector<int> codes;
    const std::size_t k = 1 + rng.uniform_index(max_k);
    for (std::size_t i = 0; i < n; ++i)
        codes.push_back(static_cast<int>(rng.uniform_index(k)));
    return codes;
}

}  // namespace

TEST_CASE("dataset matrix validates its shape") {
    CHECK_THROWS_AS(DatasetMatrix(1, 2, {0.0, 0.0}), mas::OutOfRange);
    CHECK_THROWS_AS(DatasetMatrix(2, 0, {}), mas::OutOfRange);
    CHECK_THROWS_AS(DatasetMatrix(2, 2, {1, 2, 3}), mas::LengthMismatch);
    CHECK_THROWS_AS(DatasetMatrix(2, 1, {1, std::nan("")}), mas::NonFinite);
    const DatasetMatrix m(2, 3, {1, 2, 3, 4, 5, 6});
    CHECK(m.value(1, 2) == 6.0);
    CHECK(m.row(1)[0] == 4.0);
}

TEST_CASE("adjusted Rand index on a worked example") {
    const LabelAssignment a = labels_of({0, 0, 0, 1, 1, 1});
    const LabelAssignment b = labels_of({0, 0, 1, 1, 2, 2});
    // index 2, expected 1.2, max 4.5, so (2 - 1.2) / (4.5 - 1.2) = 8/33.
    CHECK(mas::adjusted_rand_index(a, b) == doctest::Approx(8.0 / 33.0).epsilon(1e-15));
    CHECK(mas::adjusted_rand_index(a, b) == mas::adjusted_rand_index(b, a));
}

TEST_CASE("adjusted Rand index endpoints") {
    const LabelAssignment a = labels_of({0, 0, 1, 1, 2});
    const LabelAssignment relabeled = labels_of({5, 5, 0, 0, 9});
    CHECK(mas::adjusted_rand_index(a, relabeled) == 1.0);
    // Degenerate twins: all singletons, or one big cluster.
    CHECK(mas::adjusted_rand_index(labels_of({0, 1, 2}), labels_of({2, 1, 0})) == 1.0);
    CHECK(mas::adjusted_rand_index(labels_of({0, 0, 0}), labels_of({1, 1, 1})) == 1.0);
}

TEST_CASE("adjusted Rand index rejects bad input") {
    CHECK_THROWS_AS(mas::adjusted_rand_index(labels_of({0, 1}), labels_of({0, 1, 2})),
                    mas::LengthMismatch);
    CHECK_THROWS_AS(mas::adjusted_rand_index(labels_of({0}), labels_of({0})), mas::OutOfRange);
}

TEST_CASE("adjusted Rand index agrees with pair classification") {
    mas::SplitRng rng(11, 5);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 2 + rng.uniform_index(59);
        const std::vector<int> a = random_labeling(rng, n, 6);
        const std::vector<int> b = random_labeling(rng, n, 6);
        const double got = mas::adjusted_rand_index(labels_of(a), labels_of(b));
        const double want = oracle::adjusted_rand_index(a, b);
        CHECK(got == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("silhouette on the worked two-cluster example") {
    const DatasetMatrix data(4, 1, {0, 1, 10, 11});
    const LabelAssignment labels = labels_of({0, 0, 1, 1});
    CHECK(mas::silhouette_score(data, labels) ==
          doctest::Approx(0.899749373433584).epsilon(1e-12));
}

TEST_CASE("silhouette handles singletons and zero spread") {
    // Singleton cluster contributes 0.
    const DatasetMatrix data(3, 1, {0, 1, 10});
    CHECK(mas::silhouette_score(data, labels_of({0, 0, 1})) ==
          doctest::Approx(((10.0 - 1.0) / 10.0 + (9.0 - 1.0) / 9.0) / 3.0).epsilon(1e-12));
    // All points identical: a and b are both 0, every contribution is 0.
    const DatasetMatrix flat(4, 2, {1, 1, 1, 1, 1, 1, 1, 1});
    CHECK(mas::silhouette_score(flat, labels_of({0, 0, 1, 1})) == 0.0);
}

TEST_CASE("silhouette rejects degenerate clusterings") {
    const DatasetMatrix data(3, 1, {0, 1, 2});
    CHECK_THROWS_AS(mas::silhouette_score(data, labels_of({0, 0, 0})),
                    mas::DegenerateClustering);
    CHECK_THROWS_AS(mas::silhouette_score(data, labels_of({0, 1, 2})),
                    mas::DegenerateClustering);
    CHECK_THROWS_AS(mas::silhouette_score(data, labels_of({0, 1})), mas::LengthMismatch);
}

TEST_CASE("silhouette agrees with the distance-matrix oracle") {
    mas::SplitRng rng(17, 6);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 4 + rng.uniform_index(40);
        const std::size_t d = 1 + rng.uniform_index(4);
        std::vector<double> values;
        for (std::size_t i = 0; i < n * d; ++i) values.push_back(rng.uniform_real(-5.0, 5.0));
        const DatasetMatrix data(n, d, std::move(values));
        const std::size_t k = 2 + rng.uniform_index(std::min<std::size_t>(n - 2, 5));
        std::vector<int> codes;
        for (std::size_t i = 0; i < n; ++i) {
            // Seed one point per cluster so K survives compaction.
            codes.push_back(i < k ? static_cast<int>(i)
                                  : static_cast<int>(rng.uniform_index(k)));
        }
        const double got = mas::silhouette_score(data, labels_of(codes));
        const double want = oracle::mean_silhouette(data, codes);
        CHECK(got == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("pairwise ranking similarity") {
    const std::vector<double> reference{0.1, 0.5, 0.9};
    SUBCASE("same order scores") {
        const auto r = mas::pairwise_ranking_similarity(reference, std::vector<double>{1, 2, 3});
        CHECK(r.pwrs == 1.0);
        CHECK(r.counted_pairs == 3);
        CHECK(r.tied_pairs_excluded == 0);
    }
    SUBCASE("reversed scores") {
        const auto r = mas::pairwise_ranking_similarity(reference, std::vector<double>{3, 2, 1});
        CHECK(r.pwrs == 0.0);
        CHECK(r.counted_pairs == 3);
    }
    SUBCASE("ties drop out of the count") {
        const auto r = mas::pairwise_ranking_similarity(std::vector<double>{1, 1, 2},
                                                        std::vector<double>{3, 4, 5});
        CHECK(r.counted_pairs == 2);
        CHECK(r.tied_pairs_excluded == 1);
        CHECK(r.pwrs == 1.0);
    }
    SUBCASE("all pairs tied") {
        CHECK_THROWS_AS(mas::pairwise_ranking_similarity(std::vector<double>{1, 1},
                                                         std::vector<double>{2, 3}),
                        mas::AllPairsTied);
        CHECK_THROWS_AS(mas::pairwise_ranking_similarity(std::vector<double>{1},
                                                         std::vector<double>{2}),
                        mas::AllPairsTied);
    }
    SUBCASE("length mismatch") {
        CHECK_THROWS_AS(mas::pairwise_ranking_similarity(reference, std::vector<double>{1, 2}),
                        mas::LengthMismatch);
    }
}

TEST_CASE("pairwise ranking similarity matches the comparison oracle") {
    mas::SplitRng rng(23, 7);
    for (int t = 0; t < 200; ++t) {
        const std::size_t m = 2 + rng.uniform_index(15);
        std::vector<double> reference;
        std::vector<double> scores;
        for (std::size_t i = 0; i < m; ++i) {
            // Draws from a small grid so ties happen often.
            reference.push_back(static_cast<double>(rng.uniform_index(5)) / 4.0);
            scores.push_back(static_cast<double>(rng.uniform_index(5)) / 4.0);
        }
        const auto want = oracle::pairwise_ranking(reference, scores);
        if (want.counted == 0) {
            CHECK_THROWS_AS(mas::pairwise_ranking_similarity(reference, scores),
                            mas::AllPairsTied);
            continue;
        }
        const auto got = mas::pairwise_ranking_similarity(reference, scores);
        CHECK(static_cast<std::int64_t>(got.concordant_pairs) == want.concordant);
        CHECK(static_cast<std::int64_t>(got.counted_pairs) == want.counted);
        CHECK(static_cast<std::int64_t>(got.tied_pairs_excluded) == want.excluded);
        CHECK(got.pwrs == static_cast<double>(want.concordant) / static_cast<double>(want.counted));
    }
}
