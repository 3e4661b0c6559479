#include "mas/table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "mas/errors.hpp"

namespace mas {

std::optional<TableFormat> parse_table_format(std::string_view name) {
    if (name == "csv") return TableFormat::csv;
    if (name == "markdown") return TableFormat::markdown;
    if (name == "json") return TableFormat::json;
    return std::nullopt;
}

std::string format_fixed(double value, int precision) {
    if (precision < 0 || precision > 12) throw OutOfRange("precision must lie in [0, 12]");
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";

    const bool negative = std::signbit(value);
    // 330 fractional digits cover the exact expansion of every double large
    // enough to produce a nonzero digit in the first 13 places; smaller
    // magnitudes round to zero at any supported precision anyway.
    char buf[512];
    std::snprintf(buf, sizeof buf, "%.330f", std::abs(value));
    const std::string expanded(buf);
    const std::size_t dot = expanded.find('.');
    std::string int_part = expanded.substr(0, dot);
    std::string frac = expanded.substr(dot + 1);

    const auto p = static_cast<std::size_t>(precision);
    const bool round_up = p < frac.size() && frac[p] >= '5';
    frac.resize(p);
    if (round_up) {
        std::string combined = int_part + frac;
        auto i = static_cast<std::ptrdiff_t>(combined.size()) - 1;
        for (; i >= 0; --i) {
            if (combined[static_cast<std::size_t>(i)] == '9') {
                combined[static_cast<std::size_t>(i)] = '0';
            } else {
                ++combined[static_cast<std::size_t>(i)];
                break;
            }
        }
        if (i < 0) combined.insert(combined.begin(), '1');
        int_part = combined.substr(0, combined.size() - p);
        frac = combined.substr(combined.size() - p);
    }

    std::string out = int_part;
    if (precision > 0) out += "." + frac;
    const bool all_zero = out.find_first_of("123456789") == std::string::npos;
    if (negative && !all_zero) out.insert(out.begin(), '-');
    return out;
}

namespace {

std::string cell_text(const Cell& cell, int precision) {
    if (std::holds_alternative<std::monostate>(cell)) return "";
    if (const auto* s = std::get_if<std::string>(&cell)) return *s;
    if (const auto* d = std::get_if<double>(&cell)) return format_fixed(*d, precision);
    return std::to_string(std::get<std::int64_t>(cell));
}

bool numeric_cell(const Cell& cell) {
    return std::holds_alternative<double>(cell) || std::holds_alternative<std::int64_t>(cell);
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string render_csv(const TableSpec& spec, const std::vector<std::vector<Cell>>& rows,
                       int precision) {
    std::string out;
    for (std::size_t i = 0; i < spec.headers.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(spec.headers[i]);
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += csv_escape(cell_text(row[i], precision));
        }
        out += '\n';
    }
    return out;
}

std::string markdown_escape(const std::string& field) {
    if (field.find('|') == std::string::npos) return field;
    std::string out;
    out.reserve(field.size() + 2);
    for (char c : field) {
        if (c == '|') out += '\\';
        out += c;
    }
    return out;
}

std::string render_markdown(const TableSpec& spec, const std::vector<std::vector<Cell>>& rows,
                            int precision) {
    const std::size_t cols = spec.headers.size();
    std::vector<std::string> headers;
    headers.reserve(cols);
    for (const auto& h : spec.headers) headers.push_back(markdown_escape(h));
    std::vector<std::vector<std::string>> text;
    text.reserve(rows.size());
    for (const auto& row : rows) {
        std::vector<std::string> line;
        line.reserve(cols);
        for (const auto& cell : row) line.push_back(markdown_escape(cell_text(cell, precision)));
        text.push_back(std::move(line));
    }
    std::vector<std::size_t> width(cols);
    std::vector<bool> numeric(cols, true);
    for (std::size_t c = 0; c < cols; ++c) {
        width[c] = std::max<std::size_t>(headers[c].size(), 3);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            width[c] = std::max(width[c], text[r][c].size());
            if (!numeric_cell(rows[r][c]) && !std::holds_alternative<std::monostate>(rows[r][c]))
                numeric[c] = false;
        }
    }
    const auto pad = [](const std::string& s, std::size_t w, bool right) {
        std::string padding(w - s.size(), ' ');
        return right ? padding + s : s + padding;
    };
    std::string out = "|";
    for (std::size_t c = 0; c < cols; ++c) out += " " + pad(headers[c], width[c], false) + " |";
    out += "\n|";
    for (std::size_t c = 0; c < cols; ++c) {
        std::string rule(width[c] + 2, '-');
        if (numeric[c]) rule[rule.size() - 1] = ':';
        out += rule + "|";
    }
    out += "\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out += "|";
        for (std::size_t c = 0; c < cols; ++c)
            out += " " + pad(text[r][c], width[c], numeric[c]) + " |";
        out += "\n";
    }
    return out;
}

std::string render_json(const TableSpec& spec, const std::vector<std::vector<Cell>>& rows,
                        int precision) {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
            const std::string& key = spec.keys[c];
            const Cell& cell = row[c];
            if (std::holds_alternative<std::monostate>(cell)) {
                obj[key] = nullptr;
            } else if (const auto* s = std::get_if<std::string>(&cell)) {
                obj[key] = *s;
            } else if (const auto* d = std::get_if<double>(&cell)) {
                obj[key] = std::stod(format_fixed(*d, precision));
            } else {
                obj[key] = std::get<std::int64_t>(cell);
            }
        }
        doc.push_back(std::move(obj));
    }
    return doc.dump(2) + "\n";
}

}  // namespace

std::string render_table(const TableSpec& spec, const std::vector<std::vector<Cell>>& rows,
                         const OutputSpec& output) {
    if (spec.headers.size() != spec.keys.size())
        throw LengthMismatch("table spec has " + std::to_string(spec.headers.size()) +
                             " headers but " + std::to_string(spec.keys.size()) + " keys");
    for (const auto& row : rows) {
        if (row.size() != spec.headers.size())
            throw LengthMismatch("table row width " + std::to_string(row.size()) +
                                 " does not match header count " +
                                 std::to_string(spec.headers.size()));
    }
    if (output.precision < 0 || output.precision > 12)
        throw OutOfRange("precision must lie in [0, 12]");
    switch (output.format) {
        case TableFormat::csv: return render_csv(spec, rows, output.precision);
        case TableFormat::markdown: return render_markdown(spec, rows, output.precision);
        case TableFormat::json: return render_json(spec, rows, output.precision);
    }
    throw OutOfRange("unknown table format");
}

void write_rendered(const OutputSpec& output, const std::string& body) {
    if (!output.destination) {
        std::cout << body;
        std::cout.flush();
        return;
    }
    std::ofstream file(*output.destination);
    if (!file) throw Error("cannot open '" + output.destination->string() + "' for writing");
    file << body;
    if (!file) throw Error("failed writing '" + output.destination->string() + "'");
}

}  // namespace mas
