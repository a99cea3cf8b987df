#include "squeezeion/io/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

#include "squeezeion/errors.hpp"
#include "squeezeion/math.hpp"

namespace squeezeion::io {

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string_view strip(std::string_view token) {
  while (!token.empty() && (token.front() == ' ' || token.front() == '\t'))
    token.remove_prefix(1);
  while (!token.empty() && (token.back() == ' ' || token.back() == '\t' ||
                            token.back() == '\r'))
    token.remove_suffix(1);
  return token;
}

double parse_field(std::string_view token, std::size_t line_number) {
  token = strip(token);
  double value{};
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  require(ec == std::errc() && ptr == token.data() + token.size(), errc::io_error,
          "csv line " + std::to_string(line_number) + ": not a number: '" +
              std::string(token) + "'");
  return value;
}

}  // namespace

void Table::validate() const {
  for (const auto& row : rows)
    require(row.size() == columns.size(), errc::io_error,
            "csv table has a ragged row");
}

std::string to_csv(const Table& table) {
  table.validate();
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_double(row[c]);
    }
    out += '\n';
  }
  return out;
}

Table parse_csv(const std::string& text) {
  Table table;
  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + start, end - start);
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_number;
    if (line.empty()) continue;
    if (table.columns.empty()) {
      for (std::string_view name : split(line)) {
        name = strip(name);
        require(!name.empty(), errc::io_error,
                "csv line 1: empty column name in header");
        table.columns.emplace_back(name);
      }
      continue;
    }
    if (line.front() == '#') continue;
    const std::vector<std::string_view> fields = split(line);
    require(fields.size() == table.columns.size(), errc::io_error,
            "csv line " + std::to_string(line_number) + ": expected " +
                std::to_string(table.columns.size()) + " fields, got " +
                std::to_string(fields.size()));
    std::vector<double> row;
    row.reserve(fields.size());
    for (std::string_view field : fields) row.push_back(parse_field(field, line_number));
    table.rows.push_back(std::move(row));
  }
  require(!table.columns.empty(), errc::io_error, "csv input has no header row");
  return table;
}

std::size_t column_index(const Table& table, const std::string& name) {
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    if (table.columns[c] == name) return c;
  fail(errc::io_error, "csv input is missing required column '" + name + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), errc::io_error, "cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  require(!in.bad(), errc::io_error, "read failure on '" + path + "'");
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), errc::io_error, "cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  require(out.good(), errc::io_error, "write failure on '" + path + "'");
}

Table read_csv_file(const std::string& path) { return parse_csv(read_text_file(path)); }

}  // namespace squeezeion::io
