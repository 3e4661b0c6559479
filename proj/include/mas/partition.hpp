#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace mas {

/// Cluster membership for a set of points, one opaque identifier per point.
/// Identifiers are compacted to dense codes 0..K-1 in order of first
/// appearance; the original spelling carries no meaning beyond identity, so
/// two assignments describe the same clustering exactly when their code
/// vectors are equal.
class LabelAssignment {
public:
    explicit LabelAssignment(std::span<const std::string> labels);
    explicit LabelAssignment(std::span<const int> labels);
    explicit LabelAssignment(const std::vector<std::string>& labels)
        : LabelAssignment(std::span<const std::string>(labels)) {}
    explicit LabelAssignment(const std::vector<int>& labels)
        : LabelAssignment(std::span<const int>(labels)) {}

    std::size_t point_count() const noexcept { return codes_.size(); }
    int cluster_count() const noexcept { return cluster_count_; }

    /// Dense per-point cluster codes in [0, cluster_count()).
    const std::vector<int>& codes() const noexcept { return codes_; }

    bool operator==(const LabelAssignment&) const = default;

private:
    std::vector<int> codes_;
    int cluster_count_ = 0;
};

/// A multiset of positive cluster masses. Zero-size entries are dropped at
/// construction so the stored form is canonical; the order of surviving
/// entries is preserved but carries no meaning. Immutable once built.
class Partition {
public:
    static Partition from_sizes(std::span<const double> raw_sizes);
    static Partition from_sizes(std::initializer_list<double> raw_sizes);
    static Partition from_labels(const LabelAssignment& assignment);

    const std::vector<double>& sizes() const noexcept { return sizes_; }

    /// Total mass N, accumulated with compensated summation.
    double total() const noexcept { return total_; }

    std::size_t cluster_count() const noexcept { return sizes_.size(); }

    /// The same partition with every mass multiplied by factor (> 0, finite).
    Partition scaled(double factor) const;

    bool operator==(const Partition&) const = default;

private:
    Partition(std::vector<double> sizes, double total)
        : sizes_(std::move(sizes)), total_(total) {}

    std::vector<double> sizes_;
    double total_ = 0.0;
};

}  // namespace mas
