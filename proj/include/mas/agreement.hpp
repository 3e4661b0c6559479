#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mas/partition.hpp"

namespace mas {

/// Dense row-major matrix of point coordinates. Validated once at
/// construction: at least two rows, at least one column, every value finite.
class DatasetMatrix {
public:
    DatasetMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double value(std::size_t row, std::size_t col) const { return values_[row * cols_ + col]; }

    std::span<const double> row(std::size_t index) const {
        return {values_.data() + index * cols_, cols_};
    }

    const std::vector<double>& values() const noexcept { return values_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

/// Hubert-Arabie adjusted Rand index between two clusterings of the same
/// points. Symmetric; 1 exactly when the clusterings agree up to relabeling;
/// near 0 for independent ones. Needs at least two points.
double adjusted_rand_index(const LabelAssignment& a, const LabelAssignment& b);

/// Mean silhouette width over all points, Euclidean distance, exact O(N^2 D)
/// evaluation. Points in singleton clusters contribute 0, as does any point
/// whose within and between dissimilarities are both 0. Requires
/// 2 <= K <= N - 1; anything else is degenerate.
double silhouette_score(const DatasetMatrix& data, const LabelAssignment& labels);

struct RankingComparison {
    double pwrs = 0.0;  // concordant / counted
    std::uint64_t concordant_pairs = 0;
    std::uint64_t counted_pairs = 0;
    std::uint64_t tied_pairs_excluded = 0;
};

/// Fraction of candidate pairs ranked the same way by a reference vector and
/// a score vector. A pair counts only when both vectors order it strictly;
/// pairs tied in either are excluded. Throws AllPairsTied when nothing is
/// left to count (this covers vectors shorter than two).
RankingComparison pairwise_ranking_similarity(std::span<const double> reference,
                                              std::span<const double> scores);

}  // namespace mas
