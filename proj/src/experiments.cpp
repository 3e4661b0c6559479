#include "mas/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "mas/detail/summation.hpp"
#include "mas/errors.hpp"

namespace mas {

std::vector<double> split_near_equal(std::int64_t mass, std::size_t parts) {
    if (mass < 1) throw OutOfRange("mass to split must be positive");
    if (parts < 1) throw OutOfRange("piece count must be positive");
    const auto p = static_cast<std::int64_t>(parts);
    const std::int64_t base = mass / p;
    const std::int64_t remainder = mass % p;
    std::vector<double> pieces;
    pieces.reserve(parts);
    for (std::int64_t i = 0; i < p; ++i) {
        pieces.push_back(static_cast<double>(base + (i < remainder ? 1 : 0)));
    }
    return pieces;
}

Partition fragment_small_cluster(std::size_t pieces) {
    if (pieces < 1 || pieces > 100) throw OutOfRange("piece count must lie in [1, 100]");
    std::vector<double> sizes{4950.0, 4950.0};
    const auto shards = split_near_equal(100, pieces);
    sizes.insert(sizes.end(), shards.begin(), shards.end());
    return Partition::from_sizes(sizes);
}

std::vector<ExperimentRow> run_experiment1() {
    constexpr std::array<std::pair<const char*, std::size_t>, 8> steps{{
        {"2^0 = 1 piece", 1},
        {"2^1 = 2 pieces", 2},
        {"2^2 = 4 pieces", 4},
        {"2^3 = 8 pieces", 8},
        {"2^4 = 16 pieces", 16},
        {"2^5 = 32 pieces", 32},
        {"2^6 = 64 pieces", 64},
        {"100 singletons", 100},
    }};
    std::vector<ExperimentRow> rows;
    rows.reserve(steps.size());
    for (const auto& [name, pieces] : steps) {
        Partition p = fragment_small_cluster(pieces);
        UniformityReport report = full_report(p);
        rows.push_back({name, std::move(p), report});
    }
    return rows;
}

std::vector<ExperimentRow> run_experiment2() {
    const std::array<std::pair<const char*, std::vector<double>>, 6> configs{{
        {"[4950, 4950, 100]", {4950, 4950, 100}},
        {"[4950, 2475, 2475, 100]", {4950, 2475, 2475, 100}},
        {"[2475x4, 100]", {2475, 2475, 2475, 2475, 100}},
        {"[4950, 4950]", {4950, 4950}},
        {"[4950, 2475, 2475]", {4950, 2475, 2475}},
        {"[2475x4]", {2475, 2475, 2475, 2475}},
    }};
    std::vector<ExperimentRow> rows;
    rows.reserve(configs.size());
    for (const auto& [name, sizes] : configs) {
        Partition p = Partition::from_sizes(sizes);
        UniformityReport report = full_report(p);
        rows.push_back({name, std::move(p), report});
    }
    return rows;
}

namespace {

constexpr std::array<GoldenRow, 8> kExperiment1Reference{{
    {"2^0 = 1 piece", 3, {0.9856, 0.7422, 0.6756, 0.7130, 0.6490, 0.5099, 0.7648, 0.6767}},
    {"2^1 = 2 pieces", 4, {0.9855, 0.7491, 0.5404, 0.7131, 0.5144, 0.5099, 0.6799, 0.5100}},
    {"2^2 = 4 pieces", 6, {0.9855, 0.7561, 0.4220, 0.7132, 0.3980, 0.5099, 0.6119, 0.3433}},
    {"2^3 = 8 pieces", 10, {0.9854, 0.7630, 0.3314, 0.7132, 0.3097, 0.5099, 0.5666, 0.2098}},
    {"2^4 = 16 pieces", 18, {0.9854, 0.7699, 0.2664, 0.7132, 0.2468, 0.5099, 0.5399, 0.1208}},
    {"2^5 = 32 pieces", 34, {0.9854, 0.7768, 0.2203, 0.7132, 0.2023, 0.5099, 0.5254, 0.0685}},
    {"2^6 = 64 pieces", 66, {0.9854, 0.7833, 0.1870, 0.7132, 0.1702, 0.5099, 0.5178, 0.0388}},
    {"100 singletons", 102, {0.9854, 0.7883, 0.1704, 0.7132, 0.1542, 0.5099, 0.5150, 0.0296}},
}};

constexpr std::array<GoldenRow, 6> kExperiment2Reference{{
    {"[4950, 4950, 100]", 3, {0.9856, 0.7422, 0.6756, 0.7130, 0.6490, 0.5099, 0.7648, 0.6767}},
    {"[4950, 2475, 2475, 100]", 4,
     {0.7925, 1.0853, 0.7829, 1.0007, 0.7218, 0.6324, 0.8431, 0.6362}},
    {"[2475x4, 100]", 5, {0.9945, 1.4284, 0.8875, 1.4060, 0.8736, 0.7549, 0.9436, 0.8100}},
    {"[4950, 4950]", 2, {1.0000, 0.6931, 1.0000, 0.6931, 1.0000, 0.5000, 1.0000, 1.0000}},
    {"[4950, 2475, 2475]", 3, {0.7917, 1.0397, 0.9464, 0.9808, 0.8928, 0.6250, 0.9375, 0.8333}},
    {"[2475x4]", 4, {1.0000, 1.3863, 1.0000, 1.3863, 1.0000, 0.7500, 1.0000, 1.0000}},
}};

constexpr std::array<const char*, 8> kMetricNames{
    "mas", "shannon", "shannon_norm", "renyi2",
    "renyi2_norm", "hhi_score", "hhi_star_score", "gini_score",
};

std::array<double, 8> report_metrics(const UniformityReport& r) {
    return {r.mas,         r.shannon,   r.shannon_norm,   r.renyi2,
            r.renyi2_norm, r.hhi_score, r.hhi_star_score, r.gini_score};
}

}  // namespace

std::span<const GoldenRow> experiment1_reference() { return kExperiment1Reference; }

std::span<const GoldenRow> experiment2_reference() { return kExperiment2Reference; }

std::vector<std::string> golden_mismatches(std::span<const ExperimentRow> rows,
                                           std::span<const GoldenRow> expected) {
    std::vector<std::string> problems;
    if (rows.size() != expected.size()) {
        problems.push_back("row count " + std::to_string(rows.size()) + ", expected " +
                           std::to_string(expected.size()));
        return problems;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const ExperimentRow& row = rows[i];
        const GoldenRow& want = expected[i];
        if (row.config_name != want.config)
            problems.push_back("row " + std::to_string(i) + ": name '" + row.config_name +
                               "', expected '" + want.config + "'");
        if (row.report.k != want.k)
            problems.push_back(row.config_name + ": K = " + std::to_string(row.report.k) +
                               ", expected " + std::to_string(want.k));
        const auto got = report_metrics(row.report);
        for (std::size_t m = 0; m < got.size(); ++m) {
            const double diff = std::abs(got[m] - want.metrics[m]);
            if (diff > golden_tolerance)
                problems.push_back(row.config_name + ": " + kMetricNames[m] + " = " +
                                   std::to_string(got[m]) + ", expected " +
                                   std::to_string(want.metrics[m]) + " (diff " +
                                   std::to_string(diff) + ")");
        }
    }
    return problems;
}

DatasetMatrix standardize(const DatasetMatrix& data) {
    const std::size_t n = data.rows();
    const std::size_t d = data.cols();
    std::vector<double> out(data.values());
    for (std::size_t col = 0; col < d; ++col) {
        detail::CompensatedSum sum;
        for (std::size_t row = 0; row < n; ++row) sum.add(data.value(row, col));
        const double mean = sum.value() / static_cast<double>(n);
        detail::CompensatedSum sq;
        for (std::size_t row = 0; row < n; ++row) {
            const double dev = data.value(row, col) - mean;
            sq.add(dev * dev);
        }
        const double sd = std::sqrt(sq.value() / static_cast<double>(n));
        // A constant column can pick up a spread of a few ulps through the
        // rounded mean; treat anything at that scale as zero variance.
        if (sd <= std::abs(mean) * 1e-14) {
            for (std::size_t row = 0; row < n; ++row) out[row * d + col] = 0.0;
        } else {
            for (std::size_t row = 0; row < n; ++row)
                out[row * d + col] = (data.value(row, col) - mean) / sd;
        }
    }
    return DatasetMatrix(n, d, std::move(out));
}

void validate_candidate_set(const CandidateSet& set) {
    if (set.candidates.empty()) throw EmptyInput("candidate set has no candidates");
    const std::size_t n = set.ground_truth.point_count();
    bool truth_present = false;
    for (const auto& [id, labels] : set.candidates) {
        if (labels.point_count() != n)
            throw LengthMismatch("candidate '" + id + "' labels " +
                                 std::to_string(labels.point_count()) + " points, expected " +
                                 std::to_string(n));
        if (labels.codes() == set.ground_truth.codes()) truth_present = true;
    }
    if (!truth_present) throw Error("ground truth is missing from the candidate list");
}

MeasuredSet measure_candidates(const DatasetMatrix& data, const CandidateSet& set) {
    validate_candidate_set(set);
    if (data.rows() != set.ground_truth.point_count())
        throw LengthMismatch("dataset has " + std::to_string(data.rows()) + " rows but labels cover " +
                             std::to_string(set.ground_truth.point_count()) + " points");

    MeasuredSet out;
    out.point_count = data.rows();
    for (const auto& [id, labels] : set.candidates) {
        const auto k = static_cast<std::size_t>(labels.cluster_count());
        if (k < 2) {
            out.excluded.push_back({id, "K = 1 (silhouette undefined)"});
            continue;
        }
        if (k >= data.rows()) {
            out.excluded.push_back({id, "K = N (silhouette undefined)"});
            continue;
        }
        CandidateMeasurements m;
        m.id = id;
        const Partition p = Partition::from_labels(labels);
        m.report = full_report(p);
        m.k_eff = effective_cluster_count(p);
        m.silhouette = silhouette_score(data, labels);
        m.ari = adjusted_rand_index(labels, set.ground_truth);
        out.measurements.push_back(std::move(m));
    }
    if (out.measurements.empty())
        throw NoValidCandidates("every candidate is degenerate (K = 1 or K = N)");
    return out;
}

namespace {

constexpr std::array<Scorer, 10> kAllScorers{
    Scorer::null_reference, Scorer::mas,          Scorer::gini,   Scorer::hhi,
    Scorer::hhi_star,       Scorer::entropy,      Scorer::entropy_norm,
    Scorer::renyi2,         Scorer::renyi2_norm,  Scorer::k_eff,
};

struct ScorerName {
    Scorer scorer;
    std::string_view cli;
    std::string_view label;
};

constexpr std::array<ScorerName, 10> kScorerNames{{
    {Scorer::null_reference, "null", "Null Reference"},
    {Scorer::mas, "mas", "MAS"},
    {Scorer::gini, "gini", "1-Gini"},
    {Scorer::hhi, "hhi", "1-HHI"},
    {Scorer::hhi_star, "hhi-star", "1-HHI*"},
    {Scorer::entropy, "entropy", "H (Shannon)"},
    {Scorer::entropy_norm, "entropy-norm", "H/ln K"},
    {Scorer::renyi2, "renyi2", "H2 (Renyi-2)"},
    {Scorer::renyi2_norm, "renyi2-norm", "H2/ln K"},
    {Scorer::k_eff, "keff", "K_eff"},
}};

}  // namespace

std::span<const Scorer> all_scorers() { return kAllScorers; }

std::string_view scorer_label(Scorer scorer) {
    for (const auto& entry : kScorerNames) {
        if (entry.scorer == scorer) return entry.label;
    }
    throw OutOfRange("unknown scorer");
}

std::string_view scorer_cli_name(Scorer scorer) {
    for (const auto& entry : kScorerNames) {
        if (entry.scorer == scorer) return entry.cli;
    }
    throw OutOfRange("unknown scorer");
}

std::optional<Scorer> parse_scorer(std::string_view name) {
    for (const auto& entry : kScorerNames) {
        if (entry.cli == name) return entry.scorer;
    }
    return std::nullopt;
}

double scorer_value(Scorer scorer, const UniformityReport& report, double k_eff) {
    switch (scorer) {
        case Scorer::null_reference: return 1.0;
        case Scorer::mas: return report.mas;
        case Scorer::gini: return report.gini_score;
        case Scorer::hhi: return report.hhi_score;
        case Scorer::hhi_star: return report.hhi_star_score;
        case Scorer::entropy: return report.shannon;
        case Scorer::entropy_norm: return report.shannon_norm;
        case Scorer::renyi2: return report.renyi2;
        case Scorer::renyi2_norm: return report.renyi2_norm;
        case Scorer::k_eff: return k_eff;
    }
    throw OutOfRange("unknown scorer");
}

HarnessResult score_with(const MeasuredSet& measured, Scorer scorer) {
    if (measured.measurements.empty()) throw NoValidCandidates("no measured candidates to score");
    HarnessResult result;
    result.scorer = scorer;
    result.excluded = measured.excluded;

    std::vector<CompositeScore> scored;
    scored.reserve(measured.measurements.size());
    std::vector<double> aris;
    std::vector<double> phis;
    for (const CandidateMeasurements& m : measured.measurements) {
        const double v = scorer_value(scorer, m.report, m.k_eff);
        // composite_phi rather than composite_score: raw entropies and K_eff
        // exceed 1, and the formula is still the one to apply.
        const double phi = composite_phi(v, m.k_eff, m.silhouette, measured.point_count);
        scored.push_back({v, m.k_eff, m.silhouette, measured.point_count, phi});
        result.rows.push_back({m.id, m.report.k, v, m.k_eff, m.silhouette, phi, m.ari});
        aris.push_back(m.ari);
        phis.push_back(phi);
    }

    const std::vector<std::size_t> order = rank_candidates(scored);
    result.selected_id = result.rows[order.front()].id;
    result.selected_ari = result.rows[order.front()].ari;

    try {
        result.ranking = pairwise_ranking_similarity(aris, phis);
    } catch (const AllPairsTied& e) {
        result.ranking_note = e.what();
    }
    return result;
}

HarnessResult run_selection_harness(const DatasetMatrix& data, const CandidateSet& set,
                                    Scorer scorer) {
    return score_with(measure_candidates(data, set), scorer);
}

}  // namespace mas
