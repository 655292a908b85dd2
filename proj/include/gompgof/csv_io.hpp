#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gompgof::csv {

/// Splits one line into fields; double-quoted fields may contain commas and
/// "" escapes.
std::vector<std::string> split_line(std::string_view line);

/// Quotes a field when it contains a comma, quote or newline.
std::string quote(std::string_view field);

/// Reads rows of exactly `columns` numeric fields. Blank lines and lines
/// starting with '#' are skipped; a non-numeric first row is taken as a header.
/// Throws DomainError on malformed rows.
std::vector<std::vector<double>> read_numeric_rows(std::istream& in, std::size_t columns);

/// Single-column numeric file.
std::vector<double> read_column(std::istream& in);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

void write_column(std::ostream& out, std::string_view header, std::span<const double> values);

}  // namespace gompgof::csv
