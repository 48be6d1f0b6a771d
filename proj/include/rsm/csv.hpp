#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace rsm::csv {

/// One parsed data row plus its 1-based line number for error messages.
struct Row {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

/// Reads a comma-separated file whose first line must equal `header`
/// exactly (after trimming a trailing '\r'). Blank lines are skipped.
/// Throws ParseError naming the file and line on any mismatch.
std::vector<Row> read(const std::filesystem::path& path, std::string_view header);

double to_double(const Row& row, std::size_t col, const std::filesystem::path& path);
std::int64_t to_int(const Row& row, std::size_t col, const std::filesystem::path& path);

/// Shortest decimal form that round-trips to the same double. Locale-free.
std::string format(double value);
std::string format(std::int64_t value);

/// Writes one CSV record, joining already-formatted fields with ','.
void write_row(std::ostream& os, const std::vector<std::string>& fields);

}  // namespace rsm::csv
