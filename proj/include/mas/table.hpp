#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mas {

enum class TableFormat { csv, markdown, json };

std::optional<TableFormat> parse_table_format(std::string_view name);

/// Where and how rendered tables go. Precision counts decimal places and
/// must lie in [0, 12]; destination empty means standard output.
struct OutputSpec {
    TableFormat format = TableFormat::markdown;
    int precision = 4;
    std::optional<std::filesystem::path> destination;
};

/// Fixed-point decimal string with ties rounded away from zero, so 0.98555
/// at four decimals is "0.9856" and -0.98555 is "-0.9856". Works from the
/// exact decimal expansion of the double, which makes the rounding direction
/// reproducible everywhere. A result of all zeros never keeps a minus sign.
std::string format_fixed(double value, int precision);

/// One table cell. monostate renders as an empty cell; doubles are rendered
/// with format_fixed at the output precision; strings pass through.
using Cell = std::variant<std::monostate, std::string, double, std::int64_t>;

struct TableSpec {
    std::vector<std::string> headers;  // display names
    std::vector<std::string> keys;     // JSON field names, same order
};

/// Render rows under a spec: comma-separated with quoting, an aligned
/// markdown pipe table, or a JSON array of objects (numbers rounded at the
/// output precision).
std::string render_table(const TableSpec& spec, const std::vector<std::vector<Cell>>& rows,
                         const OutputSpec& output);

/// Send a rendered document to the requested destination (file or stdout).
void write_rendered(const OutputSpec& output, const std::string& body);

}  // namespace mas
