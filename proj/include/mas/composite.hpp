#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mas {

/// One scored candidate: the uniformity factor that went in, the structural
/// factors, and the resulting composite value phi.
struct CompositeScore {
    double uniformity_v = 0.0;
    double k_eff = 0.0;
    double silhouette = 0.0;
    std::size_t point_count = 0;
    double phi = 0.0;
};

/// The composite value
///     phi = v * (1 - ln(k_eff) / ln(n)) * (sil + 1) / 2.
/// Validates k_eff in [1, n], sil in [-1, 1] and n >= 2, but places no range
/// constraint on v: scorers such as raw entropy or the effective cluster
/// count produce factors above 1, and the formula applies to them verbatim.
double composite_phi(double uniformity_v, double k_eff, double silhouette, std::size_t point_count);

/// composite_phi plus the [0, 1] range check on v, packaged with its inputs.
CompositeScore composite_score(double uniformity_v, double k_eff, double silhouette,
                               std::size_t point_count);

/// Baseline with the uniformity factor pinned to 1: what the structural
/// factors alone would say.
CompositeScore null_reference_score(double k_eff, double silhouette, std::size_t point_count);

/// Indices of `scored` from best to worst: phi descending, then k_eff
/// ascending (prefer the coarser clustering), then input order.
std::vector<std::size_t> rank_candidates(std::span<const CompositeScore> scored);

}  // namespace mas
