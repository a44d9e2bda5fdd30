#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "periodiag/series.hpp"

namespace periodiag {

/// Supported CSV layouts.
///  - flat_column: one observation per row, in linear-time order.
///  - year_by_period: one row per year, s+1 columns (year label then s values).
enum class CsvLayout { flat_column, year_by_period };

/// Reads a seasonal series from a CSV file. A single leading header row is
/// autodetected and skipped. Throws ParseError with the offending line
/// number on malformed numbers, IncompleteYearError on ragged rows or a
/// flat column whose length is not a multiple of s.
SeasonalSeries read_csv(const std::string& path, CsvLayout layout, int s,
                        std::string label = "");

/// Reads a single numeric column (optional header row), e.g. a residual file.
std::vector<double> read_value_column(const std::string& path);

/// Writes the series as a flat column with 17 significant digits, which
/// round-trips doubles exactly through read_csv(flat_column).
void write_flat_csv(const SeasonalSeries& series, const std::string& path);

/// Formats a double with `digits` significant digits (shortest %g form).
std::string format_double(double x, int digits = 17);

}  // namespace periodiag
