#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mas/agreement.hpp"
#include "mas/experiments.hpp"
#include "mas/partition.hpp"

namespace mas {

/// Comma-separated list of numbers, e.g. "4950,4950,100". Whitespace around
/// entries is ignored; anything that is not a full number is a ParseError.
std::vector<double> parse_number_list(std::string_view text);

/// Label file: one label token per line, UTF-8, no header. Blank lines are
/// skipped; the tokens are opaque.
LabelAssignment read_label_file(const std::filesystem::path& path);

struct LoadedDataset {
    DatasetMatrix data;
    /// Present when the file's last column was read as labels.
    std::optional<LabelAssignment> labels;
};

/// Numeric CSV, one point per row. A header row is detected when any
/// feature field of the first row fails to parse as a number (the label
/// column, when last_column_labels is set, is text either way and does not
/// participate in the detection).
LoadedDataset read_dataset_csv(const std::filesystem::path& path, bool last_column_labels = false);

struct ManifestBundle {
    std::string dataset_id;
    DatasetMatrix data;
    CandidateSet candidate_set;
};

/// JSON manifest tying a dataset to its candidate clusterings:
///   {
///     "dataset_id": "demo",                 // optional, defaults to the file stem
///     "dataset": "points.csv",              // required
///     "ground_truth": "truth.labels",       // required unless the flag below is set
///     "ground_truth_last_column": false,    // labels live in the dataset's last column
///     "candidates": [{"id": "kmeans-3", "path": "kmeans3.labels"}, ...]
///   }
/// Paths are resolved relative to the manifest's directory. When no listed
/// candidate matches the ground truth it is appended as candidate
/// "ground-truth". `last_column_override`, when set, wins over the manifest
/// field.
ManifestBundle load_manifest(const std::filesystem::path& path,
                             std::optional<bool> last_column_override = std::nullopt);

}  // namespace mas
