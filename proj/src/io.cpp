#include "periodiag/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "periodiag/errors.hpp"

namespace periodiag {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        // trim surrounding whitespace
        std::size_t b = field.find_first_not_of(" \t\r");
        std::size_t e = field.find_last_not_of(" \t\r");
        fields.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

bool try_parse_double(const std::string& text, double& out) {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && !text.empty();
}

bool is_blank(const std::string& line) {
    for (char c : line) {
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

struct RawLine {
    long number;  // 1-based line number in the file
    std::vector<std::string> fields;
};

std::vector<RawLine> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(0, "cannot open file: " + path);
    }
    std::vector<RawLine> lines;
    std::string line;
    long number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (is_blank(line)) continue;
        lines.push_back({number, split_fields(line)});
    }
    return lines;
}

// A header row is a first row whose value fields do not parse as numbers.
bool looks_like_header(const RawLine& line, std::size_t first_value_field) {
    double v;
    for (std::size_t i = first_value_field; i < line.fields.size(); ++i) {
        if (!try_parse_double(line.fields[i], v)) return true;
    }
    return false;
}

}  // namespace

SeasonalSeries read_csv(const std::string& path, CsvLayout layout, int s, std::string label) {
    if (s < 1) {
        throw std::invalid_argument("read_csv: s must be >= 1");
    }
    std::vector<RawLine> lines = read_lines(path);
    if (lines.empty()) {
        throw ParseError(0, "file contains no data: " + path);
    }
    const std::size_t first_value_field = layout == CsvLayout::year_by_period ? 1 : 0;
    std::size_t start = 0;
    if (looks_like_header(lines[0], first_value_field)) {
        start = 1;
    }
    if (start >= lines.size()) {
        throw ParseError(lines[0].number, "file contains a header but no data: " + path);
    }

    std::vector<double> values;
    if (layout == CsvLayout::flat_column) {
        for (std::size_t i = start; i < lines.size(); ++i) {
            const RawLine& ln = lines[i];
            if (ln.fields.size() != 1) {
                throw ParseError(ln.number, "expected a single value per row, got " +
                                                std::to_string(ln.fields.size()) + " fields");
            }
            double v;
            if (!try_parse_double(ln.fields[0], v)) {
                throw ParseError(ln.number, "cannot parse '" + ln.fields[0] + "' as a number");
            }
            values.push_back(v);
        }
    } else {
        for (std::size_t i = start; i < lines.size(); ++i) {
            const RawLine& ln = lines[i];
            if (static_cast<int>(ln.fields.size()) != s + 1) {
                throw IncompleteYearError("line " + std::to_string(ln.number) + ": expected " +
                                          std::to_string(s + 1) + " columns (year label then " +
                                          std::to_string(s) + " values), got " +
                                          std::to_string(ln.fields.size()));
            }
            for (int m = 1; m <= s; ++m) {
                double v;
                if (!try_parse_double(ln.fields[m], v)) {
                    throw ParseError(ln.number,
                                     "cannot parse '" + ln.fields[m] + "' as a number");
                }
                values.push_back(v);
            }
        }
    }
    if (label.empty()) label = path;
    return SeasonalSeries::from_flat(std::move(values), s, std::move(label));
}

std::vector<double> read_value_column(const std::string& path) {
    std::vector<RawLine> lines = read_lines(path);
    if (lines.empty()) {
        throw ParseError(0, "file contains no data: " + path);
    }
    std::size_t start = looks_like_header(lines[0], 0) ? 1 : 0;
    std::vector<double> values;
    for (std::size_t i = start; i < lines.size(); ++i) {
        const RawLine& ln = lines[i];
        double v;
        if (ln.fields.size() != 1 || !try_parse_double(ln.fields[0], v)) {
            throw ParseError(ln.number, "expected a single numeric value per row");
        }
        values.push_back(v);
    }
    return values;
}

std::string format_double(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
    return buf;
}

void write_flat_csv(const SeasonalSeries& series, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError(0, "cannot open file for writing: " + path);
    }
    out << "value\n";
    for (double v : series.values()) {
        out << format_double(v, 17) << "\n";
    }
}

}  // namespace periodiag
