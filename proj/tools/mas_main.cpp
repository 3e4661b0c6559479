#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mas/errors.hpp"
#include "mas/experiments.hpp"
#include "mas/io.hpp"
#include "mas/partition.hpp"
#include "mas/stability.hpp"
#include "mas/table.hpp"
#include "mas/uniformity.hpp"

namespace {

using mas::Cell;

struct OutputOptions {
    std::string format = "markdown";
    int precision = 4;
    std::string output_path;
};

void attach_output_options(CLI::App* cmd, OutputOptions& opts, const char* default_format) {
    opts.format = default_format;
    cmd->add_option("--format", opts.format, "Output format: csv, markdown, or json")
        ->capture_default_str();
    cmd->add_option("--precision", opts.precision, "Decimal places for table values, 0 to 12")
        ->capture_default_str();
    cmd->add_option("--output", opts.output_path, "Write to this file instead of stdout");
}

mas::OutputSpec make_output_spec(const OutputOptions& opts) {
    const auto format = mas::parse_table_format(opts.format);
    if (!format)
        throw mas::ParseError("unknown format '" + opts.format + "' (use csv, markdown, or json)");
    if (opts.precision < 0 || opts.precision > 12)
        throw mas::OutOfRange("precision must lie in [0, 12]");
    mas::OutputSpec spec;
    spec.format = *format;
    spec.precision = opts.precision;
    if (!opts.output_path.empty()) spec.destination = opts.output_path;
    return spec;
}

mas::TableSpec uniformity_table_spec() {
    return {{"Configuration", "K", "MAS", "H", "H/ln K", "H2", "H2/ln K", "1-HHI", "1-HHI*",
             "1-Gini"},
            {"configuration", "k", "mas", "shannon", "shannon_norm", "renyi2", "renyi2_norm",
             "hhi_score", "hhi_star_score", "gini_score"}};
}

std::vector<Cell> report_row(const std::string& name, const mas::UniformityReport& r) {
    return {name,     static_cast<std::int64_t>(r.k),
            r.mas,    r.shannon,
            r.shannon_norm, r.renyi2,
            r.renyi2_norm,  r.hhi_score,
            r.hhi_star_score, r.gini_score};
}

std::string describe_sizes(const mas::Partition& p) {
    std::string out = "[";
    for (std::size_t i = 0; i < p.sizes().size(); ++i) {
        if (i) out += ", ";
        const double s = p.sizes()[i];
        if (s == std::floor(s) && std::abs(s) < 9.0e15) {
            out += std::to_string(static_cast<std::int64_t>(s));
        } else {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%g", s);
            out += buf;
        }
    }
    return out + "]";
}

std::string scientific(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", value);
    return buf;
}

int run_metrics(const std::string& sizes_arg, const std::string& labels_arg,
                const OutputOptions& opts) {
    const mas::OutputSpec spec = make_output_spec(opts);
    if (sizes_arg.empty() == labels_arg.empty())
        throw mas::ParseError("provide exactly one of --sizes or --labels");
    const auto [name, partition] = [&]() -> std::pair<std::string, mas::Partition> {
        if (!sizes_arg.empty()) {
            mas::Partition p = mas::Partition::from_sizes(mas::parse_number_list(sizes_arg));
            return {describe_sizes(p), std::move(p)};
        }
        const mas::LabelAssignment labels = mas::read_label_file(labels_arg);
        return {std::filesystem::path(labels_arg).filename().string(),
                mas::Partition::from_labels(labels)};
    }();
    const std::vector<std::vector<Cell>> rows{report_row(name, mas::full_report(partition))};
    mas::write_rendered(spec, mas::render_table(uniformity_table_spec(), rows, spec));
    return 0;
}

int run_experiment_table(int which, bool golden_check, const OutputOptions& opts) {
    const mas::OutputSpec spec = make_output_spec(opts);
    if (golden_check && opts.precision != 4)
        throw mas::ParseError("--golden-check works at the default precision of 4");
    const std::vector<mas::ExperimentRow> rows =
        which == 1 ? mas::run_experiment1() : mas::run_experiment2();
    const std::span<const mas::GoldenRow> reference =
        which == 1 ? mas::experiment1_reference() : mas::experiment2_reference();
    std::vector<std::vector<Cell>> cells;
    cells.reserve(rows.size());
    for (const mas::ExperimentRow& row : rows) cells.push_back(report_row(row.config_name, row.report));
    mas::write_rendered(spec, mas::render_table(uniformity_table_spec(), cells, spec));
    if (golden_check) {
        const std::vector<std::string> problems = mas::golden_mismatches(rows, reference);
        if (!problems.empty()) {
            for (const std::string& problem : problems)
                std::cerr << "golden mismatch: " << problem << "\n";
            return 1;
        }
        std::cerr << "golden check: all " << rows.size() * 8 << " cells within "
                  << scientific(mas::golden_tolerance) << "\n";
    }
    return 0;
}

int run_harness_command(const std::string& manifest_path, const std::string& scorer_arg,
                        bool gt_last_column, bool no_standardize, const OutputOptions& opts) {
    const mas::OutputSpec spec = make_output_spec(opts);
    std::vector<mas::Scorer> scorers;
    if (scorer_arg == "all") {
        scorers.assign(mas::all_scorers().begin(), mas::all_scorers().end());
    } else {
        const auto parsed = mas::parse_scorer(scorer_arg);
        if (!parsed)
            throw mas::ParseError("unknown scorer '" + scorer_arg +
                                  "' (use all, null, mas, gini, hhi, hhi-star, entropy, "
                                  "entropy-norm, renyi2, renyi2-norm, or keff)");
        scorers.push_back(*parsed);
    }

    const mas::ManifestBundle bundle = mas::load_manifest(
        manifest_path, gt_last_column ? std::optional<bool>(true) : std::nullopt);
    const mas::DatasetMatrix data =
        no_standardize ? bundle.data : mas::standardize(bundle.data);
    const mas::MeasuredSet measured = mas::measure_candidates(data, bundle.candidate_set);
    for (const mas::ExcludedCandidate& ex : measured.excluded)
        std::cerr << "note: excluded candidate '" << ex.id << "': " << ex.reason << "\n";

    std::vector<mas::HarnessResult> results;
    results.reserve(scorers.size());
    for (mas::Scorer scorer : scorers) {
        results.push_back(mas::score_with(measured, scorer));
        const mas::HarnessResult& hr = results.back();
        if (!hr.ranking_note.empty())
            std::cerr << "note: " << mas::scorer_label(scorer) << ": " << hr.ranking_note << "\n";
    }

    if (spec.format == mas::TableFormat::json) {
        nlohmann::json doc;
        doc["dataset_id"] = bundle.dataset_id;
        doc["points"] = measured.point_count;
        doc["standardized"] = !no_standardize;
        nlohmann::json excluded = nlohmann::json::array();
        for (const mas::ExcludedCandidate& ex : measured.excluded)
            excluded.push_back({{"id", ex.id}, {"reason", ex.reason}});
        doc["excluded"] = std::move(excluded);
        nlohmann::json per_scorer = nlohmann::json::array();
        for (const mas::HarnessResult& hr : results) {
            nlohmann::json entry;
            entry["scorer"] = std::string(mas::scorer_label(hr.scorer));
            if (hr.ranking) {
                entry["pwrs"] = hr.ranking->pwrs;
                entry["concordant_pairs"] = hr.ranking->concordant_pairs;
                entry["counted_pairs"] = hr.ranking->counted_pairs;
                entry["tied_pairs_excluded"] = hr.ranking->tied_pairs_excluded;
            } else {
                entry["pwrs"] = nullptr;
                entry["ranking_note"] = hr.ranking_note;
            }
            entry["selected"] = hr.selected_id;
            entry["selected_ari"] = hr.selected_ari;
            nlohmann::json candidates = nlohmann::json::array();
            for (const mas::CandidateScoreRow& row : hr.rows) {
                candidates.push_back({{"id", row.id},
                                      {"k", row.k},
                                      {"uniformity_v", row.uniformity_v},
                                      {"k_eff", row.k_eff},
                                      {"silhouette", row.silhouette},
                                      {"phi", row.phi},
                                      {"ari", row.ari}});
            }
            entry["candidates"] = std::move(candidates);
            per_scorer.push_back(std::move(entry));
        }
        doc["scorers"] = std::move(per_scorer);
        mas::write_rendered(spec, doc.dump(2) + "\n");
        return 0;
    }

    const mas::TableSpec table{
        {"Scorer", "PWRS", "Concordant", "Counted", "Ties excluded", "Selected", "Selected ARI"},
        {"scorer", "pwrs", "concordant", "counted", "ties_excluded", "selected", "selected_ari"}};
    std::vector<std::vector<Cell>> cells;
    for (const mas::HarnessResult& hr : results) {
        std::vector<Cell> row{std::string(mas::scorer_label(hr.scorer))};
        if (hr.ranking) {
            row.emplace_back(hr.ranking->pwrs);
            row.emplace_back(static_cast<std::int64_t>(hr.ranking->concordant_pairs));
            row.emplace_back(static_cast<std::int64_t>(hr.ranking->counted_pairs));
            row.emplace_back(static_cast<std::int64_t>(hr.ranking->tied_pairs_excluded));
        } else {
            row.emplace_back(std::monostate{});
            row.emplace_back(std::monostate{});
            row.emplace_back(std::monostate{});
            row.emplace_back(std::monostate{});
        }
        row.emplace_back(hr.selected_id);
        row.emplace_back(hr.selected_ari);
        cells.push_back(std::move(row));
    }
    mas::write_rendered(spec, mas::render_table(table, cells, spec));
    return 0;
}

struct CheckOptions {
    std::string suite = "all";
    std::uint64_t seed = 7;
    std::int64_t dominance_n = 10000;
    bool dominance_n_given = false;
    std::size_t trials = 0;  // 0 means each suite's default
};

mas::SuiteOutcome equal_max_outcome(std::uint64_t seed, std::size_t trials) {
    mas::SplitRng rng(seed, 101);
    mas::SuiteOutcome out;
    out.check = "equal-size-maximum";
    out.detail = std::to_string(trials) + " random equal partitions at the maximum, " +
                 std::to_string(trials) + " unequal ones below it";
    out.bound = 1e-12;
    out.pass = true;
    for (std::size_t t = 0; t < trials; ++t) {
        const mas::Partition equal = mas::random_equal_partition(rng, 64, 1000);
        const mas::EqualSizeCheck at_max = mas::check_equal_size_maximum(equal);
        out.observed = std::max(out.observed, std::abs(at_max.mas_value - 1.0));
        if (!at_max.consistent() || !at_max.mas_at_maximum) {
            out.pass = false;
            out.witnesses.push_back({"equal partition K = " +
                                         std::to_string(equal.cluster_count()) + " missed 1",
                                     std::abs(at_max.mas_value - 1.0)});
        }
        const mas::Partition unequal = mas::random_unequal_partition(rng, 64, 100000);
        const mas::EqualSizeCheck below = mas::check_equal_size_maximum(unequal);
        if (!below.consistent() || below.mas_at_maximum) {
            out.pass = false;
            out.witnesses.push_back({"unequal partition K = " +
                                         std::to_string(unequal.cluster_count()) + " reached 1",
                                     std::abs(below.mas_value - 1.0)});
        }
    }
    out.pass = out.pass && out.observed <= out.bound;
    return out;
}

mas::SuiteOutcome dominance_outcome(std::optional<std::int64_t> n_arg) {
    std::vector<std::int64_t> points{2, 3, 10, 100, 10000, 1000000};
    if (n_arg) points = {*n_arg};
    mas::SuiteOutcome out;
    out.check = "dominance-limit";
    out.detail = "mas([n-1, 1]) against the exact value 2/n, relative";
    out.bound = 1e-14;
    for (std::int64_t n : points) {
        const double u = mas::check_dominance_limit(n);
        const double exact = 2.0 / static_cast<double>(n);
        const double rel = std::abs(u - exact) / exact;
        if (out.witnesses.empty() || rel > out.observed) {
            out.observed = rel;
            out.witnesses = {{"n = " + std::to_string(n) + ": mas = " + scientific(u), rel}};
        }
    }
    out.pass = out.observed <= out.bound;
    return out;
}

mas::SuiteOutcome single_move_outcome(std::uint64_t seed, std::size_t trials) {
    mas::SplitRng rng(seed, 103);
    mas::SuiteOutcome out;
    out.check = "single-move-bound";
    out.detail = "largest |dU| as a fraction of 3/N, every one-point move of " +
                 std::to_string(trials) + " random partitions (K <= 50, N <= 500)";
    out.bound = 1.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const mas::Partition p = mas::random_integer_partition(rng, 50, 500);
        const mas::PerturbationReport report = mas::single_move_stability(p);
        const double ratio = report.max_observed_delta / report.bound;
        if (out.witnesses.empty() || ratio > out.observed) {
            out.observed = ratio;
            out.witnesses = report.witnesses;
            if (!out.witnesses.empty())
                out.witnesses.front().move += " (K = " + std::to_string(p.cluster_count()) +
                                              ", N = " + std::to_string(static_cast<long long>(p.total())) + ")";
        }
    }
    out.pass = out.observed < 1.0;
    return out;
}

std::vector<mas::SuiteOutcome> epsilon_outcomes(std::uint64_t seed, std::size_t trials) {
    const mas::Partition base = mas::Partition::from_sizes({4950, 4950, 100});
    std::vector<mas::SuiteOutcome> outcomes;
    for (double eps : {0.01, 0.1, 0.5}) {
        const mas::PerturbationReport report =
            mas::epsilon_reassignment_stability(base, eps, trials, seed);
        mas::SuiteOutcome out;
        out.check = "multi-move-bound";
        out.detail = "eps = " + mas::format_fixed(eps, 2) + ": " + std::to_string(trials) +
                     " random walks on [4950, 4950, 100]";
        out.bound = report.bound;
        out.observed = report.max_observed_delta;
        out.pass = report.max_observed_delta <= report.bound;
        out.witnesses = report.witnesses;
        outcomes.push_back(std::move(out));
    }
    return outcomes;
}

std::vector<mas::SuiteOutcome> confined_outcomes(std::uint64_t seed, std::size_t trials) {
    struct Config {
        std::vector<double> sizes;
        std::vector<std::size_t> active;
        const char* label;
    };
    const std::vector<Config> configs{
        {{4950, 4950, 100}, {2}, "mu = 0.01: [4950, 4950, 100], active {100}"},
        {{2500, 2500, 2500, 2500}, {0}, "mu = 0.25: [2500 x 4], active {first}"},
        {{4950, 4950, 100}, {0}, "mu = 0.495: [4950, 4950, 100], active {4950}"},
        {{4500, 4500, 1000}, {0, 1}, "mu = 0.9: [4500, 4500, 1000], active {4500, 4500}"},
    };
    std::vector<mas::SuiteOutcome> outcomes;
    for (const Config& config : configs) {
        const mas::Partition p = mas::Partition::from_sizes(config.sizes);
        const mas::PerturbationReport report =
            mas::confined_reassignment_stability(p, config.active, trials, seed);
        mas::SuiteOutcome out;
        out.check = "confined-move-bound";
        out.detail = std::string(config.label) + ", " + std::to_string(trials) + " walks";
        out.bound = report.bound;
        out.observed = report.max_observed_delta;
        out.pass = report.max_observed_delta <= report.bound;
        out.witnesses = report.witnesses;
        outcomes.push_back(std::move(out));
    }
    return outcomes;
}

mas::SuiteOutcome scale_outcome(std::uint64_t seed, std::size_t trials) {
    mas::SplitRng rng(seed, 106);
    mas::SuiteOutcome out;
    out.check = "scale-invariance";
    out.detail = std::to_string(trials) +
                 " random partitions scaled by factors between 1e-4 and 1e6";
    out.bound = 1e-10;
    for (std::size_t t = 0; t < trials; ++t) {
        const mas::Partition p = mas::random_integer_partition(rng, 100, 100000);
        const double factor = std::pow(10.0, rng.uniform_real(-4.0, 6.0));
        const double delta = mas::check_scale_invariance(p, factor);
        if (out.witnesses.empty() || delta > out.observed) {
            out.observed = delta;
            out.witnesses = {{"factor " + scientific(factor) + ", K = " +
                                  std::to_string(p.cluster_count()),
                              delta}};
        }
    }
    out.pass = out.observed <= out.bound;
    return out;
}

int run_check(const CheckOptions& options, const OutputOptions& opts) {
    const mas::OutputSpec spec = make_output_spec(opts);
    const std::vector<std::string> known{"all",     "equal-max", "dominance", "single-move",
                                         "epsilon", "confined",  "scale"};
    if (std::find(known.begin(), known.end(), options.suite) == known.end())
        throw mas::ParseError("unknown suite '" + options.suite +
                              "' (use all, equal-max, dominance, single-move, epsilon, "
                              "confined, or scale)");
    const auto wants = [&](const char* name) {
        return options.suite == "all" || options.suite == name;
    };
    const auto trials_or = [&](std::size_t fallback) {
        return options.trials > 0 ? options.trials : fallback;
    };

    std::vector<mas::SuiteOutcome> outcomes;
    if (wants("equal-max")) outcomes.push_back(equal_max_outcome(options.seed, trials_or(200)));
    if (wants("dominance")) {
        std::optional<std::int64_t> n_arg;
        if (options.dominance_n_given) n_arg = options.dominance_n;
        outcomes.push_back(dominance_outcome(n_arg));
    }
    if (wants("single-move")) outcomes.push_back(single_move_outcome(options.seed, trials_or(50)));
    if (wants("epsilon")) {
        auto eps = epsilon_outcomes(options.seed, trials_or(100));
        outcomes.insert(outcomes.end(), std::make_move_iterator(eps.begin()),
                        std::make_move_iterator(eps.end()));
    }
    if (wants("confined")) {
        auto confined = confined_outcomes(options.seed, trials_or(1000));
        outcomes.insert(outcomes.end(), std::make_move_iterator(confined.begin()),
                        std::make_move_iterator(confined.end()));
    }
    if (wants("scale")) outcomes.push_back(scale_outcome(options.seed, trials_or(1000)));

    bool pass = true;
    for (const mas::SuiteOutcome& outcome : outcomes) pass = pass && outcome.pass;

    if (spec.format == mas::TableFormat::json) {
        mas::write_rendered(spec, mas::suite_report_json(outcomes));
    } else {
        const mas::TableSpec table{{"Check", "Detail", "Bound", "Observed", "Pass"},
                                   {"check", "detail", "bound", "observed", "pass"}};
        std::vector<std::vector<Cell>> cells;
        for (const mas::SuiteOutcome& outcome : outcomes) {
            cells.push_back({outcome.check, outcome.detail, scientific(outcome.bound),
                             scientific(outcome.observed),
                             std::string(outcome.pass ? "yes" : "no")});
        }
        mas::write_rendered(spec, mas::render_table(table, cells, spec));
    }
    if (!pass) {
        for (const mas::SuiteOutcome& outcome : outcomes) {
            if (outcome.pass) continue;
            std::cerr << "check failed: " << outcome.check << " (" << outcome.detail
                      << "): observed " << scientific(outcome.observed) << " against bound "
                      << scientific(outcome.bound) << "\n";
            for (const mas::MoveWitness& w : outcome.witnesses)
                std::cerr << "  witness: " << w.move << " (delta " << scientific(w.delta) << ")\n";
        }
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cluster-size uniformity metrics built around the Mass Agreement Score"};
    app.require_subcommand(1);
    int exit_code = 0;

    auto* metrics = app.add_subcommand("metrics", "Score one partition with every metric");
    std::string sizes_arg;
    std::string labels_arg;
    OutputOptions metrics_out;
    metrics->add_option("--sizes", sizes_arg, "Comma-separated cluster sizes, e.g. 4950,4950,100");
    metrics->add_option("--labels", labels_arg, "Label file, one label per line");
    attach_output_options(metrics, metrics_out, "markdown");
    metrics->callback([&] { exit_code = run_metrics(sizes_arg, labels_arg, metrics_out); });

    auto* exp1 = app.add_subcommand("exp1", "Fragmentation sweep of the small cluster");
    bool exp1_golden = false;
    OutputOptions exp1_out;
    exp1->add_flag("--golden-check", exp1_golden,
                   "Verify every cell against the reference table; mismatches exit 1");
    attach_output_options(exp1, exp1_out, "markdown");
    exp1->callback([&] { exit_code = run_experiment_table(1, exp1_golden, exp1_out); });

    auto* exp2 = app.add_subcommand("exp2", "Bulk-split comparison with and without the fringe");
    bool exp2_golden = false;
    OutputOptions exp2_out;
    exp2->add_flag("--golden-check", exp2_golden,
                   "Verify every cell against the reference table; mismatches exit 1");
    attach_output_options(exp2, exp2_out, "markdown");
    exp2->callback([&] { exit_code = run_experiment_table(2, exp2_golden, exp2_out); });

    auto* exp3 = app.add_subcommand(
        "exp3", "Model-selection harness: composite-score candidate clusterings");
    std::string manifest_path;
    std::string scorer_arg = "all";
    bool gt_last_column = false;
    bool no_standardize = false;
    OutputOptions exp3_out;
    exp3->add_option("--manifest", manifest_path, "JSON manifest describing the dataset")
        ->required();
    exp3->add_option("--scorer", scorer_arg, "Uniformity scorer to use, or 'all'")
        ->capture_default_str();
    exp3->add_flag("--gt-last-column", gt_last_column,
                   "Read ground truth from the dataset's last column");
    exp3->add_flag("--no-standardize", no_standardize, "Skip column z-scoring");
    attach_output_options(exp3, exp3_out, "markdown");
    exp3->callback([&] {
        exit_code = run_harness_command(manifest_path, scorer_arg, gt_last_column, no_standardize,
                                        exp3_out);
    });

    auto* check = app.add_subcommand("check", "Run the property suites; violations exit 1");
    CheckOptions check_options;
    OutputOptions check_out;
    check->add_option("--suite", check_options.suite,
                      "all, equal-max, dominance, single-move, epsilon, confined, or scale")
        ->capture_default_str();
    check->add_option("--seed", check_options.seed, "Random seed")->capture_default_str();
    auto* n_option =
        check->add_option("--n", check_options.dominance_n,
                          "Dominance suite: check [n-1, 1] for this n instead of the sweep");
    check->add_option("--trials", check_options.trials,
                      "Override each selected suite's trial count");
    attach_output_options(check, check_out, "json");
    check->callback([&] {
        check_options.dominance_n_given = n_option->count() > 0;
        exit_code = run_check(check_options, check_out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const mas::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
