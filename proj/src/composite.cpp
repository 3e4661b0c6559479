#include "mas/composite.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mas/errors.hpp"

namespace mas {

double composite_phi(double uniformity_v, double k_eff, double silhouette,
                     std::size_t point_count) {
    if (point_count < 2) throw OutOfRange("composite score needs at least two points");
    if (!(k_eff >= 1.0) || k_eff > static_cast<double>(point_count))
        throw OutOfRange("effective cluster count must lie in [1, N]");
    if (!(silhouette >= -1.0 && silhouette <= 1.0))
        throw OutOfRange("silhouette must lie in [-1, 1]");
    const double fragmentation_penalty =
        1.0 - std::log(k_eff) / std::log(static_cast<double>(point_count));
    return uniformity_v * fragmentation_penalty * (silhouette + 1.0) / 2.0;
}

CompositeScore composite_score(double uniformity_v, double k_eff, double silhouette,
                               std::size_t point_count) {
    if (!(uniformity_v >= 0.0 && uniformity_v <= 1.0))
        throw OutOfRange("uniformity factor must lie in [0, 1]");
    return {uniformity_v, k_eff, silhouette, point_count,
            composite_phi(uniformity_v, k_eff, silhouette, point_count)};
}

CompositeScore null_reference_score(double k_eff, double silhouette, std::size_t point_count) {
    return composite_score(1.0, k_eff, silhouette, point_count);
}

std::vector<std::size_t> rank_candidates(std::span<const CompositeScore> scored) {
    if (scored.empty()) throw EmptyInput("no candidates to rank");
    std::vector<std::size_t> order(scored.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t lhs, std::size_t rhs) {
        if (scored[lhs].phi != scored[rhs].phi) return scored[lhs].phi > scored[rhs].phi;
        return scored[lhs].k_eff < scored[rhs].k_eff;
    });
    return order;
}

}  // namespace mas
