#include "mas/partition.hpp"

#include <cmath>
#include <cstdint>
#include <tuple>
#include <unordered_map>
#include <utility>

#include "mas/detail/summation.hpp"
#include "mas/errors.hpp"

namespace mas {

namespace {

template <class T>
std::pair<std::vector<int>, int> compact_codes(std::span<const T> labels) {
    if (labels.empty()) throw EmptyInput("label assignment has no points");
    std::unordered_map<T, int> first_seen;
    first_seen.reserve(labels.size());
    std::vector<int> codes;
    codes.reserve(labels.size());
    int next = 0;
    for (const T& label : labels) {
        auto [it, inserted] = first_seen.try_emplace(label, next);
        if (inserted) ++next;
        codes.push_back(it->second);
    }
    return {std::move(codes), next};
}

}  // namespace

LabelAssignment::LabelAssignment(std::span<const std::string> labels) {
    std::tie(codes_, cluster_count_) = compact_codes(labels);
}

LabelAssignment::LabelAssignment(std::span<const int> labels) {
    std::tie(codes_, cluster_count_) = compact_codes(labels);
}

Partition Partition::from_sizes(std::span<const double> raw_sizes) {
    if (raw_sizes.empty()) throw EmptyInput("size list is empty");
    std::vector<double> kept;
    kept.reserve(raw_sizes.size());
    detail::CompensatedSum total;
    for (double s : raw_sizes) {
        if (!std::isfinite(s)) throw NonFinite("cluster size is not finite");
        if (s < 0.0) throw OutOfRange("cluster size is negative");
        if (s == 0.0) continue;  // empty clusters are inert, drop them
        kept.push_back(s);
        total.add(s);
    }
    if (kept.empty()) throw AllZero("every cluster size is zero");
    return Partition(std::move(kept), total.value());
}

Partition Partition::from_sizes(std::initializer_list<double> raw_sizes) {
    return from_sizes(std::span<const double>(raw_sizes.begin(), raw_sizes.size()));
}

Partition Partition::from_labels(const LabelAssignment& assignment) {
    std::vector<std::int64_t> counts(static_cast<std::size_t>(assignment.cluster_count()), 0);
    for (int code : assignment.codes()) ++counts[static_cast<std::size_t>(code)];
    std::vector<double> sizes(counts.begin(), counts.end());
    return from_sizes(sizes);
}

Partition Partition::scaled(double factor) const {
    if (!std::isfinite(factor) || factor <= 0.0)
        throw OutOfRange("scale factor must be positive and finite");
    std::vector<double> scaled_sizes(sizes_);
    for (double& s : scaled_sizes) s *= factor;
    return from_sizes(scaled_sizes);
}

}  // namespace mas
