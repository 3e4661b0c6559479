#pragma once

#include <cstddef>

#include "mas/partition.hpp"

namespace mas {

/// Every uniformity measure evaluated on one partition, one table row.
/// Entropies are in nats. The hhi/gini fields hold the inverted scores
/// (1 - HHI, 1 - HHI*, 1 - Gini) so that larger always means more uniform.
struct UniformityReport {
    std::size_t k = 0;
    double mas = 0.0;
    double shannon = 0.0;
    double shannon_norm = 0.0;
    double renyi2 = 0.0;
    double renyi2_norm = 0.0;
    double hhi_score = 0.0;
    double hhi_star_score = 0.0;
    double gini_score = 0.0;
};

struct EntropyValue {
    double raw = 0.0;
    double normalized = 0.0;  // raw / ln K, or 0 when K = 1
};

struct HhiValue {
    double hhi = 0.0;
    double one_minus_hhi = 0.0;
    double one_minus_hhi_star = 0.0;  // 0 when K = 1 (HHI* has no range to rescale)
};

/// Expected size of the cluster containing a uniformly random point:
/// sum(n_j^2) / N. Lies between the arithmetic mean N/K and N.
double size_biased_mean(const Partition& p);

/// Size-biased mean of the partition with cluster `index` removed:
/// (sum(n_j^2) - n_i^2) / (N - n_i). Requires K >= 2.
double leave_one_out_baseline(const Partition& p, std::size_t index);

/// Mass Agreement Score: the mass-weighted mean of per-cluster agreement
/// 1 - |n_i - S_i| / N, where S_i is the leave-one-out size-biased mean.
/// Equals 1 exactly when all clusters share one size, tends to 0 as one
/// cluster dominates, and is 0 by convention for a single cluster.
/// Three O(K) passes over the sizes.
double mass_agreement_score(const Partition& p);

EntropyValue shannon_entropy(const Partition& p);

/// Renyi entropy of order 2: -ln(sum p_i^2).
EntropyValue renyi2_entropy(const Partition& p);

HhiValue hhi_scores(const Partition& p);

/// 1 - Gini, where Gini = sum_ij |n_i - n_j| / (2 K N) over all ordered
/// cluster pairs. For K = 1 the formula gives exactly 1.
double gini_score(const Partition& p);

/// Inverse concentration 1 / sum(p_i^2), between 1 and K.
double effective_cluster_count(const Partition& p);

UniformityReport full_report(const Partition& p);

}  // namespace mas
