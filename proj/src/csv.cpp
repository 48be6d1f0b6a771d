#include "rsm/csv.hpp"

#include <charconv>
#include <fstream>
#include <ostream>

#include "rsm/error.hpp"

namespace rsm::csv {

namespace {

std::vector<std::string> split(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.emplace_back(line.substr(start));
            break;
        }
        out.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::string where(const std::filesystem::path& path, std::size_t line) {
    return path.string() + ":" + std::to_string(line);
}

}  // namespace

std::vector<Row> read(const std::filesystem::path& path, std::string_view header) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path.string());

    std::vector<Row> rows;
    std::string line;
    std::size_t lineno = 0;
    bool saw_header = false;
    const auto columns = split(header).size();
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != header) {
                throw ParseError(where(path, lineno) + ": expected header '" +
                                 std::string(header) + "', got '" + line + "'");
            }
            saw_header = true;
            continue;
        }
        auto fields = split(line);
        if (fields.size() != columns) {
            throw ParseError(where(path, lineno) + ": expected " + std::to_string(columns) +
                             " fields, got " + std::to_string(fields.size()));
        }
        rows.push_back(Row{lineno, std::move(fields)});
    }
    if (!saw_header) throw ParseError(path.string() + ": empty file (missing header)");
    return rows;
}

double to_double(const Row& row, std::size_t col, const std::filesystem::path& path) {
    const auto& s = row.fields.at(col);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError(where(path, row.line) + ": not a number: '" + s + "'");
    }
    return v;
}

std::int64_t to_int(const Row& row, std::size_t col, const std::filesystem::path& path) {
    const auto& s = row.fields.at(col);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError(where(path, row.line) + ": not an integer: '" + s + "'");
    }
    return v;
}

std::string format(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::string format(std::int64_t value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

void write_row(std::ostream& os, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ',';
        os << fields[i];
    }
    os << '\n';
}

}  // namespace rsm::csv
