#include "mas/agreement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>

#include "mas/detail/summation.hpp"
#include "mas/errors.hpp"

namespace mas {

DatasetMatrix::DatasetMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (rows_ < 2) throw OutOfRange("dataset needs at least two points");
    if (cols_ < 1) throw OutOfRange("dataset needs at least one feature");
    if (values_.size() != rows_ * cols_)
        throw LengthMismatch("dataset holds " + std::to_string(values_.size()) +
                             " values, expected " + std::to_string(rows_ * cols_));
    for (double v : values_) {
        if (!std::isfinite(v)) throw NonFinite("dataset contains a non-finite value");
    }
}

double adjusted_rand_index(const LabelAssignment& a, const LabelAssignment& b) {
    if (a.point_count() != b.point_count())
        throw LengthMismatch("clusterings label " + std::to_string(a.point_count()) + " and " +
                             std::to_string(b.point_count()) + " points");
    const std::size_t n = a.point_count();
    if (n < 2) throw OutOfRange("adjusted Rand index needs at least two points");

    const std::size_t kb = static_cast<std::size_t>(b.cluster_count());
    std::unordered_map<std::int64_t, std::int64_t> cells;
    cells.reserve(n);
    std::vector<std::int64_t> row_sizes(static_cast<std::size_t>(a.cluster_count()), 0);
    std::vector<std::int64_t> col_sizes(kb, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto ca = static_cast<std::size_t>(a.codes()[i]);
        const auto cb = static_cast<std::size_t>(b.codes()[i]);
        ++cells[static_cast<std::int64_t>(ca * kb + cb)];
        ++row_sizes[ca];
        ++col_sizes[cb];
    }

    const auto pairs = [](std::int64_t m) { return m * (m - 1) / 2; };
    std::int64_t index = 0;
    for (const auto& [key, count] : cells) {
        (void)key;
        index += pairs(count);
    }
    std::int64_t sum_a = 0;
    for (std::int64_t m : row_sizes) sum_a += pairs(m);
    std::int64_t sum_b = 0;
    for (std::int64_t m : col_sizes) sum_b += pairs(m);

    const double total_pairs = static_cast<double>(pairs(static_cast<std::int64_t>(n)));
    const double expected = static_cast<double>(sum_a) * static_cast<double>(sum_b) / total_pairs;
    const double max_index = 0.5 * (static_cast<double>(sum_a) + static_cast<double>(sum_b));
    const double denom = max_index - expected;
    // Zero denominator happens only when both clusterings are all-singletons
    // or both are one big cluster; either way they are identical.
    if (denom == 0.0) return 1.0;
    return (static_cast<double>(index) - expected) / denom;
}

namespace {

double euclidean(std::span<const double> x, std::span<const double> y) {
    double sq = 0.0;
    for (std::size_t d = 0; d < x.size(); ++d) {
        const double diff = x[d] - y[d];
        sq += diff * diff;
    }
    return std::sqrt(sq);
}

}  // namespace

double silhouette_score(const DatasetMatrix& data, const LabelAssignment& labels) {
    if (labels.point_count() != data.rows())
        throw LengthMismatch("dataset has " + std::to_string(data.rows()) + " rows but " +
                             std::to_string(labels.point_count()) + " labels");
    const std::size_t n = data.rows();
    const auto k = static_cast<std::size_t>(labels.cluster_count());
    if (k < 2 || k >= n)
        throw DegenerateClustering("silhouette needs 2 <= K <= N - 1, got K = " +
                                   std::to_string(k) + ", N = " + std::to_string(n));

    const auto& codes = labels.codes();
    std::vector<std::int64_t> cluster_size(k, 0);
    for (int c : codes) ++cluster_size[static_cast<std::size_t>(c)];

    std::vector<double> dist_sum(k);
    detail::CompensatedSum mean_acc;
    for (std::size_t i = 0; i < n; ++i) {
        const auto own = static_cast<std::size_t>(codes[i]);
        double s = 0.0;
        if (cluster_size[own] > 1) {
            std::fill(dist_sum.begin(), dist_sum.end(), 0.0);
            const auto xi = data.row(i);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                dist_sum[static_cast<std::size_t>(codes[j])] += euclidean(xi, data.row(j));
            }
            const double a = dist_sum[own] / static_cast<double>(cluster_size[own] - 1);
            double b = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < k; ++c) {
                if (c == own) continue;
                b = std::min(b, dist_sum[c] / static_cast<double>(cluster_size[c]));
            }
            const double denom = std::max(a, b);
            s = denom > 0.0 ? (b - a) / denom : 0.0;
        }
        mean_acc.add(s);
    }
    return mean_acc.value() / static_cast<double>(n);
}

RankingComparison pairwise_ranking_similarity(std::span<const double> reference,
                                              std::span<const double> scores) {
    if (reference.size() != scores.size())
        throw LengthMismatch("reference and score vectors differ in length");
    RankingComparison out;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        for (std::size_t j = i + 1; j < reference.size(); ++j) {
            if (reference[i] == reference[j] || scores[i] == scores[j]) {
                ++out.tied_pairs_excluded;
                continue;
            }
            ++out.counted_pairs;
            if ((reference[j] - reference[i]) * (scores[j] - scores[i]) > 0.0) ++out.concordant_pairs;
        }
    }
    if (out.counted_pairs == 0)
        throw AllPairsTied("every candidate pair is tied in reference or score");
    out.pwrs = static_cast<double>(out.concordant_pairs) / static_cast<double>(out.counted_pairs);
    return out;
}

}  // namespace mas
