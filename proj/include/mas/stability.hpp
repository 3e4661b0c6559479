#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mas/partition.hpp"
#include "mas/rng.hpp"

namespace mas {

struct MoveWitness {
    std::string move;
    double delta = 0.0;
};

/// Outcome of a perturbation check: the score before, the largest score
/// change any probed perturbation produced, the permitted bound, and the
/// perturbation that produced the maximum.
struct PerturbationReport {
    double base_mas = 0.0;
    double max_observed_delta = 0.0;
    double bound = 0.0;
    std::vector<MoveWitness> witnesses;
};

struct EqualSizeCheck {
    double mas_value = 0.0;
    bool sizes_equal = false;
    bool mas_at_maximum = false;  // |mas - 1| <= 1e-12
    bool consistent() const { return sizes_equal == mas_at_maximum; }
};

/// The score reaches 1 exactly on equal sizes and only there.
EqualSizeCheck check_equal_size_maximum(const Partition& p);

/// Score of the dominated pair [N-1, 1]; the exact value is 2/N.
double check_dominance_limit(std::int64_t total_points);

/// Enumerate every way to move one point between clusters of an integer
/// partition (fresh singleton destinations included) and record the largest
/// score change. The change is provably below 3/N.
PerturbationReport single_move_stability(const Partition& p);

/// Random walks of floor(epsilon * N) single-point reassignments, each move
/// picking a uniform point and a uniform destination among the other
/// clusters plus one fresh cluster. The net score change stays below
/// 3 * epsilon.
PerturbationReport epsilon_reassignment_stability(const Partition& p, double epsilon,
                                                  std::size_t trials, std::uint64_t seed);

/// Random reassignment walks confined to the clusters listed in `active`
/// (fresh clusters spawned by the walk join the active set; all other
/// clusters are untouched). With mu the active mass fraction, the score
/// change stays within mu * (2 - mu).
PerturbationReport confined_reassignment_stability(const Partition& p,
                                                   std::span<const std::size_t> active,
                                                   std::size_t trials, std::uint64_t seed);

/// |mas(r * p) - mas(p)|: the score ignores the measurement unit.
double check_scale_invariance(const Partition& p, double factor);

/// Random integer partition with 2..max_clusters clusters, every size at
/// least 1, total at most max_total.
Partition random_integer_partition(SplitRng& rng, std::size_t max_clusters,
                                   std::int64_t max_total);

/// Random partition with 2..max_clusters clusters of one shared size.
Partition random_equal_partition(SplitRng& rng, std::size_t max_clusters,
                                 std::int64_t max_size_each);

/// Like random_integer_partition but guaranteed to have at least two
/// distinct sizes.
Partition random_unequal_partition(SplitRng& rng, std::size_t max_clusters,
                                   std::int64_t max_total);

/// One suite entry for the machine-readable check report.
struct SuiteOutcome {
    std::string check;   // stable identifier, e.g. "dominance-limit"
    std::string detail;  // parameters the run used
    double bound = 0.0;
    double observed = 0.0;
    bool pass = false;
    std::vector<MoveWitness> witnesses;
};

/// JSON document for a list of suite outcomes: per-check bound, observed
/// maximum, witness moves, and an overall pass flag.
std::string suite_report_json(std::span<const SuiteOutcome> outcomes);

}  // namespace mas
