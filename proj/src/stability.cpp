#include "mas/stability.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>

#include <json.hpp>

#include "mas/detail/summation.hpp"
#include "mas/errors.hpp"
#include "mas/uniformity.hpp"

namespace mas {

namespace {

void require_integer_sizes(const Partition& p) {
    for (double s : p.sizes()) {
        if (s != std::floor(s)) throw OutOfRange("perturbation checks need integer cluster sizes");
    }
}

// Point-level reassignment walk over an integer partition. Tracks which
// cluster owns each point so a size-weighted source draw is a single uniform
// pick, and keeps the nonempty clusters in a swap-pop list for O(1) moves.
class ReassignmentWalk {
public:
    explicit ReassignmentWalk(std::span<const double> initial_sizes) {
        for (std::size_t c = 0; c < initial_sizes.size(); ++c) {
            const auto count = static_cast<std::int64_t>(initial_sizes[c]);
            sizes_.push_back(count);
            pos_.push_back(-1);
            for (std::int64_t i = 0; i < count; ++i) owner_.push_back(c);
            add_active(c);
        }
    }

    std::size_t point_count() const { return owner_.size(); }

    // One reassignment: uniform point, uniform destination over the other
    // nonempty clusters plus one fresh cluster. The slot holding the source
    // cluster doubles as the fresh-cluster option, which makes all
    // active_count choices equally likely.
    void random_move(SplitRng& rng) {
        const std::size_t point = rng.uniform_index(owner_.size());
        const std::size_t src = owner_[point];
        const std::size_t slot = rng.uniform_index(active_.size());
        std::size_t dest = active_[slot];
        if (dest == src) {
            dest = sizes_.size();
            sizes_.push_back(0);
            pos_.push_back(-1);
            add_active(dest);
        }
        --sizes_[src];
        if (sizes_[src] == 0) drop_active(src);
        ++sizes_[dest];
        owner_[point] = dest;
    }

    // Current nonempty sizes in ascending cluster id order.
    std::vector<double> nonzero_sizes() const {
        std::vector<double> out;
        out.reserve(active_.size());
        for (std::size_t c = 0; c < sizes_.size(); ++c) {
            if (sizes_[c] > 0) out.push_back(static_cast<double>(sizes_[c]));
        }
        return out;
    }

private:
    void add_active(std::size_t c) {
        pos_[c] = static_cast<std::ptrdiff_t>(active_.size());
        active_.push_back(c);
    }

    void drop_active(std::size_t c) {
        const std::size_t hole = static_cast<std::size_t>(pos_[c]);
        const std::size_t moved = active_.back();
        active_[hole] = moved;
        pos_[moved] = static_cast<std::ptrdiff_t>(hole);
        active_.pop_back();
        pos_[c] = -1;
    }

    std::vector<std::int64_t> sizes_;
    std::vector<std::size_t> active_;
    std::vector<std::ptrdiff_t> pos_;
    std::vector<std::size_t> owner_;
};

}  // namespace

EqualSizeCheck check_equal_size_maximum(const Partition& p) {
    if (p.cluster_count() < 2) throw SingleCluster("equal-size check needs at least two clusters");
    EqualSizeCheck out;
    out.mas_value = mass_agreement_score(p);
    const double first = p.sizes().front();
    out.sizes_equal =
        std::all_of(p.sizes().begin(), p.sizes().end(), [&](double s) { return s == first; });
    out.mas_at_maximum = std::abs(out.mas_value - 1.0) <= 1e-12;
    return out;
}

double check_dominance_limit(std::int64_t total_points) {
    if (total_points < 2) throw OutOfRange("dominance limit needs at least two points");
    const Partition p =
        Partition::from_sizes({static_cast<double>(total_points - 1), 1.0});
    return mass_agreement_score(p);
}

PerturbationReport single_move_stability(const Partition& p) {
    if (p.cluster_count() < 2) throw SingleCluster("single-move check needs at least two clusters");
    require_integer_sizes(p);
    PerturbationReport report;
    report.base_mas = mass_agreement_score(p);
    report.bound = 3.0 / p.total();

    const auto& sizes = p.sizes();
    const std::size_t k = sizes.size();
    std::vector<double> moved;
    for (std::size_t src = 0; src < k; ++src) {
        for (std::size_t dst = 0; dst <= k; ++dst) {  // dst == k: a fresh singleton
            if (dst == src) continue;
            moved.assign(sizes.begin(), sizes.end());
            moved[src] -= 1.0;
            if (dst == k) {
                moved.push_back(1.0);
            } else {
                moved[dst] += 1.0;
            }
            const double u = mass_agreement_score(Partition::from_sizes(moved));
            const double delta = std::abs(u - report.base_mas);
            if (report.witnesses.empty() || delta > report.max_observed_delta) {
                report.max_observed_delta = delta;
                std::string target =
                    dst == k ? std::string("a fresh cluster") : "cluster " + std::to_string(dst);
                report.witnesses = {
                    {"one point: cluster " + std::to_string(src) + " -> " + target, delta}};
            }
        }
    }
    return report;
}

PerturbationReport epsilon_reassignment_stability(const Partition& p, double epsilon,
                                                  std::size_t trials, std::uint64_t seed) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw OutOfRange("epsilon must lie in [0, 1]");
    require_integer_sizes(p);
    PerturbationReport report;
    report.base_mas = mass_agreement_score(p);
    report.bound = 3.0 * epsilon;
    // floor(epsilon * N), nudged so that an exactly-representable product a
    // hair under an integer still counts as that integer.
    const auto moves = static_cast<std::size_t>(std::floor(epsilon * p.total() + 1e-9));

    const SplitRng root(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        SplitRng rng = root.fork(t);
        ReassignmentWalk walk(p.sizes());
        for (std::size_t m = 0; m < moves; ++m) walk.random_move(rng);
        const double u = mass_agreement_score(Partition::from_sizes(walk.nonzero_sizes()));
        const double delta = std::abs(u - report.base_mas);
        if (report.witnesses.empty() || delta > report.max_observed_delta) {
            report.max_observed_delta = delta;
            report.witnesses = {
                {"trial " + std::to_string(t) + ": " + std::to_string(moves) + " reassignments",
                 delta}};
        }
    }
    return report;
}

PerturbationReport confined_reassignment_stability(const Partition& p,
                                                   std::span<const std::size_t> active,
                                                   std::size_t trials, std::uint64_t seed) {
    if (active.empty()) throw EmptyActiveSet("active cluster set is empty");
    require_integer_sizes(p);
    std::vector<std::size_t> act(active.begin(), active.end());
    std::sort(act.begin(), act.end());
    act.erase(std::unique(act.begin(), act.end()), act.end());
    if (act.back() >= p.cluster_count())
        throw IndexOutOfRange("active cluster index " + std::to_string(act.back()) +
                              " out of range for K = " + std::to_string(p.cluster_count()));

    std::vector<double> active_sizes;
    std::vector<double> inactive_sizes;
    {
        std::size_t next = 0;
        for (std::size_t c = 0; c < p.cluster_count(); ++c) {
            if (next < act.size() && act[next] == c) {
                active_sizes.push_back(p.sizes()[c]);
                ++next;
            } else {
                inactive_sizes.push_back(p.sizes()[c]);
            }
        }
    }

    detail::CompensatedSum active_mass_acc;
    for (double s : active_sizes) active_mass_acc.add(s);
    const double active_mass = active_mass_acc.value();
    const double mass_fraction = active_mass / p.total();

    PerturbationReport report;
    report.base_mas = mass_agreement_score(p);
    report.bound = mass_fraction * (2.0 - mass_fraction);

    const auto max_steps =
        static_cast<std::size_t>(std::min<double>(active_mass, 200.0));
    const SplitRng root(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        SplitRng rng = root.fork(t);
        ReassignmentWalk walk(active_sizes);
        const std::size_t steps = 1 + rng.uniform_index(max_steps);
        for (std::size_t m = 0; m < steps; ++m) walk.random_move(rng);
        std::vector<double> final_sizes(inactive_sizes);
        const std::vector<double> walked = walk.nonzero_sizes();
        final_sizes.insert(final_sizes.end(), walked.begin(), walked.end());
        const double u = mass_agreement_score(Partition::from_sizes(final_sizes));
        const double delta = std::abs(u - report.base_mas);
        if (report.witnesses.empty() || delta > report.max_observed_delta) {
            report.max_observed_delta = delta;
            report.witnesses = {{"trial " + std::to_string(t) + ": " + std::to_string(steps) +
                                     " confined reassignments",
                                 delta}};
        }
    }
    return report;
}

double check_scale_invariance(const Partition& p, double factor) {
    return std::abs(mass_agreement_score(p.scaled(factor)) - mass_agreement_score(p));
}

Partition random_integer_partition(SplitRng& rng, std::size_t max_clusters,
                                   std::int64_t max_total) {
    if (max_clusters < 2) throw OutOfRange("need room for at least two clusters");
    const std::size_t k = 2 + rng.uniform_index(max_clusters - 1);
    const std::int64_t cap =
        std::max<std::int64_t>(1, max_total / static_cast<std::int64_t>(k));
    std::vector<double> sizes;
    sizes.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        sizes.push_back(static_cast<double>(1 + rng.uniform_index(static_cast<std::size_t>(cap))));
    }
    return Partition::from_sizes(sizes);
}

Partition random_equal_partition(SplitRng& rng, std::size_t max_clusters,
                                 std::int64_t max_size_each) {
    if (max_clusters < 2) throw OutOfRange("need room for at least two clusters");
    const std::size_t k = 2 + rng.uniform_index(max_clusters - 1);
    const double size =
        static_cast<double>(1 + rng.uniform_index(static_cast<std::size_t>(max_size_each)));
    return Partition::from_sizes(std::vector<double>(k, size));
}

Partition random_unequal_partition(SplitRng& rng, std::size_t max_clusters,
                                   std::int64_t max_total) {
    Partition p = random_integer_partition(rng, max_clusters, max_total);
    const double first = p.sizes().front();
    const bool all_equal =
        std::all_of(p.sizes().begin(), p.sizes().end(), [&](double s) { return s == first; });
    if (!all_equal) return p;
    std::vector<double> sizes = p.sizes();
    sizes.front() += 1.0;
    return Partition::from_sizes(sizes);
}

std::string suite_report_json(std::span<const SuiteOutcome> outcomes) {
    nlohmann::json checks = nlohmann::json::array();
    bool all_pass = true;
    for (const SuiteOutcome& outcome : outcomes) {
        nlohmann::json witnesses = nlohmann::json::array();
        for (const MoveWitness& w : outcome.witnesses) {
            witnesses.push_back({{"move", w.move}, {"delta", w.delta}});
        }
        checks.push_back({
            {"check", outcome.check},
            {"detail", outcome.detail},
            {"bound", outcome.bound},
            {"observed", outcome.observed},
            {"pass", outcome.pass},
            {"witnesses", std::move(witnesses)},
        });
        all_pass = all_pass && outcome.pass;
    }
    const nlohmann::json doc{{"checks", std::move(checks)}, {"pass", all_pass}};
    return doc.dump(2) + "\n";
}

}  // namespace mas
