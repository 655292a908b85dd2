#include "gompgof/csv_io.hpp"

#include <cctype>
#include <charconv>
#include <istream>
#include <ostream>

#include <fmt/format.h>

#include "gompgof/errors.hpp"

namespace gompgof::csv {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool parse_number(std::string_view text, double& out) {
  text = trim(text);
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

}  // namespace

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::vector<double>> read_numeric_rows(std::istream& in, std::size_t columns) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_number = 0;
  bool seen_first = false;
  while (std::getline(in, line)) {
    ++line_number;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto fields = split_line(body);
    std::vector<double> row(fields.size());
    bool numeric = true;
    for (std::size_t i = 0; numeric && i < fields.size(); ++i) numeric = parse_number(fields[i], row[i]);
    if (numeric && fields.size() != columns) {
      throw DomainError(fmt::format("line {}: expected {} field(s), got {}", line_number, columns, fields.size()));
    }
    if (!numeric) {
      if (!seen_first) {
        seen_first = true;  // header
        continue;
      }
      throw DomainError(fmt::format("line {}: expected {} numeric field(s), got '{}'", line_number, columns, body));
    }
    seen_first = true;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<double> read_column(std::istream& in) {
  std::vector<double> out;
  for (auto& row : read_numeric_rows(in, 1)) out.push_back(row[0]);
  return out;
}

std::string format_double(double v) { return fmt::format("{}", v); }

void write_column(std::ostream& out, std::string_view header, std::span<const double> values) {
  out << header << '\n';
  for (double v : values) out << format_double(v) << '\n';
}

}  // namespace gompgof::csv
