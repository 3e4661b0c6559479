#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mas/agreement.hpp"
#include "mas/composite.hpp"
#include "mas/partition.hpp"
#include "mas/uniformity.hpp"

namespace mas {

struct ExperimentRow {
    std::string config_name;
    Partition partition;
    UniformityReport report;
};

/// Fragmentation sweep: a 10000-point base of two 4950 clusters plus a 100
/// cluster whose small cluster is split into 1, 2, 4, ... 100 near-equal
/// pieces. Eight rows.
std::vector<ExperimentRow> run_experiment1();

/// Bulk-versus-fringe comparison: splitting one 4950 cluster in half, with
/// and without the 100 cluster present, plus the fully balanced variants.
/// Six rows.
std::vector<ExperimentRow> run_experiment2();

/// Split an integer mass into `parts` near-equal integer pieces, largest
/// first. The pieces differ by at most one and sum to the input exactly.
std::vector<double> split_near_equal(std::int64_t mass, std::size_t parts);

/// The fragmentation-sweep partition for one piece count in [1, 100].
Partition fragment_small_cluster(std::size_t pieces);

/// Reference values the two experiment tables must reproduce, rounded to
/// four decimals. Metric order: mas, shannon, shannon_norm, renyi2,
/// renyi2_norm, hhi_score, hhi_star_score, gini_score.
struct GoldenRow {
    const char* config;
    std::size_t k;
    std::array<double, 8> metrics;
};

std::span<const GoldenRow> experiment1_reference();
std::span<const GoldenRow> experiment2_reference();

/// Reference cells are 4-decimal roundings, so computed values may sit up to
/// half an ulp of the fourth decimal away; the epsilon keeps the comparison
/// inclusive at exactly that distance.
inline constexpr double golden_tolerance = 5e-5 + 1e-12;

/// Human-readable descriptions of every cell that misses its reference
/// value. Empty means the table reproduces.
std::vector<std::string> golden_mismatches(std::span<const ExperimentRow> rows,
                                           std::span<const GoldenRow> expected);

/// Column-wise z-scoring with population variance. A column with zero
/// variance (exact, or indistinguishable from rounding noise in the mean)
/// becomes all zeros.
DatasetMatrix standardize(const DatasetMatrix& data);

/// A dataset's candidate clusterings plus the planted ground truth. The
/// ground truth must itself appear among the candidates; every assignment
/// must label the same number of points.
struct CandidateSet {
    std::string dataset_id;
    std::vector<std::pair<std::string, LabelAssignment>> candidates;
    LabelAssignment ground_truth;
};

void validate_candidate_set(const CandidateSet& set);

/// Scorer-independent measurements for one candidate: the full uniformity
/// report plus the structural factors and the agreement with ground truth.
struct CandidateMeasurements {
    std::string id;
    UniformityReport report;
    double k_eff = 0.0;
    double silhouette = 0.0;
    double ari = 0.0;
};

struct ExcludedCandidate {
    std::string id;
    std::string reason;
};

struct MeasuredSet {
    std::vector<CandidateMeasurements> measurements;  // input order
    std::vector<ExcludedCandidate> excluded;
    std::size_t point_count = 0;
};

/// The expensive half of the harness: silhouette, ARI and the uniformity
/// report for every non-degenerate candidate. Candidates with K = 1 or
/// K = N are excluded and recorded, not treated as errors. Throws
/// NoValidCandidates when nothing survives.
MeasuredSet measure_candidates(const DatasetMatrix& data, const CandidateSet& set);

enum class Scorer {
    null_reference,
    mas,
    gini,
    hhi,
    hhi_star,
    entropy,
    entropy_norm,
    renyi2,
    renyi2_norm,
    k_eff,
};

std::span<const Scorer> all_scorers();
std::string_view scorer_label(Scorer scorer);     // display name
std::string_view scorer_cli_name(Scorer scorer);  // name accepted on the command line
std::optional<Scorer> parse_scorer(std::string_view name);

/// The uniformity factor a scorer extracts from one candidate's report.
double scorer_value(Scorer scorer, const UniformityReport& report, double k_eff);

struct CandidateScoreRow {
    std::string id;
    std::size_t k = 0;
    double uniformity_v = 0.0;
    double k_eff = 0.0;
    double silhouette = 0.0;
    double phi = 0.0;
    double ari = 0.0;
};

struct HarnessResult {
    Scorer scorer = Scorer::null_reference;
    /// Empty when every candidate pair was tied; ranking_note says so.
    std::optional<RankingComparison> ranking;
    std::string ranking_note;
    std::string selected_id;
    double selected_ari = 0.0;
    std::vector<CandidateScoreRow> rows;  // input order
    std::vector<ExcludedCandidate> excluded;
};

/// Composite-score every measured candidate with one scorer, rank, and
/// compare the phi ordering against the ARI ordering.
HarnessResult score_with(const MeasuredSet& measured, Scorer scorer);

/// measure_candidates followed by score_with.
HarnessResult run_selection_harness(const DatasetMatrix& data, const CandidateSet& set,
                                    Scorer scorer);

}  // namespace mas
