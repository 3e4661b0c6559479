#include "mas/io.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <utility>

#include <json.hpp>

#include "mas/errors.hpp"

namespace mas {

namespace {

std::string trim(std::string_view text) {
    std::size_t begin = 0;
    std::size_t end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    return std::string(text.substr(begin, end - begin));
}

std::optional<double> parse_full_double(const std::string& field) {
    if (field.empty()) return std::nullopt;
    char* end = nullptr;
    const double value = std::strtod(field.c_str(), &end);
    if (end != field.c_str() + field.size()) return std::nullopt;
    return value;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(trim(std::string_view(line).substr(start)));
            break;
        }
        fields.push_back(trim(std::string_view(line).substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

std::vector<std::string> read_nonempty_lines(const std::filesystem::path& path) {
    std::ifstream file(path);
    if (!file) throw ParseError("cannot open '" + path.string() + "'");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(file, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        lines.push_back(line);
    }
    return lines;
}

}  // namespace

std::vector<double> parse_number_list(std::string_view text) {
    std::vector<std::string> fields = split_fields(std::string(text));
    if (fields.size() == 1 && fields.front().empty()) throw EmptyInput("number list is empty");
    std::vector<double> values;
    values.reserve(fields.size());
    for (const std::string& field : fields) {
        const auto value = parse_full_double(field);
        if (!value) throw ParseError("'" + field + "' is not a number");
        values.push_back(*value);
    }
    return values;
}

LabelAssignment read_label_file(const std::filesystem::path& path) {
    std::vector<std::string> tokens;
    for (std::string& line : read_nonempty_lines(path)) tokens.push_back(trim(line));
    if (tokens.empty()) throw EmptyInput("label file '" + path.string() + "' has no labels");
    return LabelAssignment(tokens);
}

LoadedDataset read_dataset_csv(const std::filesystem::path& path, bool last_column_labels) {
    const std::vector<std::string> lines = read_nonempty_lines(path);
    if (lines.empty()) throw EmptyInput("dataset '" + path.string() + "' has no rows");

    std::vector<std::vector<std::string>> rows;
    rows.reserve(lines.size());
    for (const std::string& line : lines) rows.push_back(split_fields(line));
    const std::size_t width = rows.front().size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != width)
            throw LengthMismatch("row " + std::to_string(r + 1) + " of '" + path.string() +
                                 "' has " + std::to_string(rows[r].size()) + " fields, expected " +
                                 std::to_string(width));
    }
    if (last_column_labels && width < 2)
        throw OutOfRange("a label column needs at least one feature column beside it");
    const std::size_t feature_count = last_column_labels ? width - 1 : width;

    // Header detection looks at feature fields only: a label token is
    // allowed to be non-numeric in every row.
    std::size_t first_data_row = 0;
    for (std::size_t c = 0; c < feature_count; ++c) {
        if (!parse_full_double(rows.front()[c])) {
            first_data_row = 1;
            break;
        }
    }
    if (rows.size() - first_data_row < 2)
        throw OutOfRange("dataset '" + path.string() + "' needs at least two data rows");

    std::vector<double> values;
    values.reserve((rows.size() - first_data_row) * feature_count);
    std::vector<std::string> labels;
    for (std::size_t r = first_data_row; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < feature_count; ++c) {
            const auto value = parse_full_double(rows[r][c]);
            if (!value)
                throw ParseError("row " + std::to_string(r + 1) + ", column " +
                                 std::to_string(c + 1) + " of '" + path.string() +
                                 "': '" + rows[r][c] + "' is not a number");
            values.push_back(*value);
        }
        if (last_column_labels) labels.push_back(rows[r].back());
    }

    DatasetMatrix data(rows.size() - first_data_row, feature_count, std::move(values));
    std::optional<LabelAssignment> assignment;
    if (last_column_labels) assignment.emplace(labels);
    return {std::move(data), std::move(assignment)};
}

ManifestBundle load_manifest(const std::filesystem::path& path,
                             std::optional<bool> last_column_override) {
    std::ifstream file(path);
    if (!file) throw ParseError("cannot open '" + path.string() + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(file);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("manifest '" + path.string() + "' is not valid JSON: " + e.what());
    }

    try {
        if (!doc.is_object()) throw ParseError("manifest must be a JSON object");
        if (!doc.contains("dataset")) throw ParseError("manifest is missing 'dataset'");
        const std::filesystem::path base = path.parent_path();
        const auto resolve = [&](const std::string& relative) { return base / relative; };

        const std::filesystem::path dataset_path = resolve(doc.at("dataset").get<std::string>());
        const bool last_column = last_column_override.value_or(
            doc.value("ground_truth_last_column", false));
        const std::string dataset_id = doc.value("dataset_id", dataset_path.stem().string());

        LoadedDataset loaded = read_dataset_csv(dataset_path, last_column);
        std::optional<LabelAssignment> truth = std::move(loaded.labels);
        if (!truth) {
            if (!doc.contains("ground_truth"))
                throw ParseError(
                    "manifest needs 'ground_truth' unless ground_truth_last_column is set");
            truth = read_label_file(resolve(doc.at("ground_truth").get<std::string>()));
        }

        CandidateSet set{dataset_id, {}, std::move(*truth)};
        bool truth_listed = false;
        for (const nlohmann::json& entry : doc.value("candidates", nlohmann::json::array())) {
            const std::filesystem::path label_path = resolve(entry.at("path").get<std::string>());
            const std::string id = entry.value("id", label_path.stem().string());
            for (const auto& [existing, unused] : set.candidates) {
                (void)unused;
                if (existing == id)
                    throw ParseError("duplicate candidate id '" + id + "' in manifest");
            }
            LabelAssignment labels = read_label_file(label_path);
            if (labels.codes() == set.ground_truth.codes()) truth_listed = true;
            set.candidates.emplace_back(id, std::move(labels));
        }
        if (!truth_listed) {
            for (const auto& [existing, unused] : set.candidates) {
                (void)unused;
                if (existing == "ground-truth")
                    throw ParseError(
                        "candidate id 'ground-truth' must label the ground-truth clustering");
            }
            set.candidates.emplace_back("ground-truth", set.ground_truth);
        }
        return {dataset_id, std::move(loaded.data), std::move(set)};
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("manifest '" + path.string() + "': " + e.what());
    }
}

}  // namespace mas
