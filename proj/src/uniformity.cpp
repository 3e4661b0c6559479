#include "mas/uniformity.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mas/detail/summation.hpp"
#include "mas/errors.hpp"

namespace mas {

namespace {

double squared_mass_sum(const Partition& p) {
    detail::CompensatedSum q;
    for (double n : p.sizes()) q.add(n * n);
    return q.value();
}

// Sum of squared shares, i.e. the raw Herfindahl-Hirschman index.
double concentration(const Partition& p) {
    const double n_total = p.total();
    detail::CompensatedSum acc;
    for (double n : p.sizes()) {
        const double share = n / n_total;
        acc.add(share * share);
    }
    return acc.value();
}

double normalize_by_log_k(double raw, std::size_t k) {
    return k >= 2 ? raw / std::log(static_cast<double>(k)) : 0.0;
}

}  // namespace

double size_biased_mean(const Partition& p) {
    return squared_mass_sum(p) / p.total();
}

double leave_one_out_baseline(const Partition& p, std::size_t index) {
    if (p.cluster_count() < 2)
        throw SingleCluster("leave-one-out baseline needs at least two clusters");
    if (index >= p.cluster_count())
        throw IndexOutOfRange("cluster index " + std::to_string(index) + " out of range for K = " +
                              std::to_string(p.cluster_count()));
    const double q = squared_mass_sum(p);
    const double n_i = p.sizes()[index];
    return (q - n_i * n_i) / (p.total() - n_i);
}

double mass_agreement_score(const Partition& p) {
    if (p.cluster_count() == 1) return 0.0;  // no second cluster to agree with
    const double n_total = p.total();
    const double q = squared_mass_sum(p);
    detail::CompensatedSum score;
    for (double n : p.sizes()) {
        const double baseline = (q - n * n) / (n_total - n);
        // Agreement is 1 - |n - S_i| / N, written numerator-first: when the
        // gap approaches N the subtraction happens on same-scale quantities
        // and keeps full precision, which the dominated-pair limit relies on.
        const double agreement = (n_total - std::abs(n - baseline)) / n_total;
        score.add((n / n_total) * agreement);
    }
    return score.value();
}

EntropyValue shannon_entropy(const Partition& p) {
    const double n_total = p.total();
    detail::CompensatedSum acc;
    for (double n : p.sizes()) {
        const double share = n / n_total;
        acc.add(share * std::log(share));
    }
    const double raw = 0.0 - acc.value();  // avoids -0.0 for a single cluster
    return {raw, normalize_by_log_k(raw, p.cluster_count())};
}

EntropyValue renyi2_entropy(const Partition& p) {
    const double raw = 0.0 - std::log(concentration(p));
    return {raw, normalize_by_log_k(raw, p.cluster_count())};
}

HhiValue hhi_scores(const Partition& p) {
    const double h = concentration(p);
    const std::size_t k = p.cluster_count();
    HhiValue out;
    out.hhi = h;
    out.one_minus_hhi = 1.0 - h;
    if (k >= 2) {
        const double floor_share = 1.0 / static_cast<double>(k);
        out.one_minus_hhi_star = 1.0 - (h - floor_share) / (1.0 - floor_share);
    } else {
        out.one_minus_hhi_star = 0.0;
    }
    return out;
}

double gini_score(const Partition& p) {
    // Sorting turns the double sum over |n_i - n_j| into a single weighted
    // pass: for ascending x_0..x_{K-1} the pair-distance total is
    // 2 * sum_i (2i - K + 1) x_i. Unit tests cross-check the naive loop.
    std::vector<double> sorted(p.sizes());
    std::sort(sorted.begin(), sorted.end());
    const double k = static_cast<double>(p.cluster_count());
    detail::CompensatedSum weighted;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        weighted.add((2.0 * static_cast<double>(i) - k + 1.0) * sorted[i]);
    }
    const double pair_distance_sum = 2.0 * weighted.value();
    const double gini = pair_distance_sum / (2.0 * k * p.total());
    return 1.0 - gini;
}

double effective_cluster_count(const Partition& p) {
    return 1.0 / concentration(p);
}

UniformityReport full_report(const Partition& p) {
    UniformityReport r;
    r.k = p.cluster_count();
    r.mas = mass_agreement_score(p);
    const EntropyValue h = shannon_entropy(p);
    r.shannon = h.raw;
    r.shannon_norm = h.normalized;
    const HhiValue hhi = hhi_scores(p);
    // Deriving renyi2 from the same concentration value keeps the identity
    // renyi2 == -ln(hhi) exact within a report.
    const double renyi_raw = 0.0 - std::log(hhi.hhi);
    r.renyi2 = renyi_raw;
    r.renyi2_norm = normalize_by_log_k(renyi_raw, r.k);
    r.hhi_score = hhi.one_minus_hhi;
    r.hhi_star_score = hhi.one_minus_hhi_star;
    r.gini_score = gini_score(p);
    return r;
}

}  // namespace mas
