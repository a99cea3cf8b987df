#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace squeezeion::io {

// Minimal numeric table: named columns over double-valued rows. This is the
// interchange format of every CLI emitter and fit-input reader.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  // each row has columns.size() values

  void validate() const;  // throws io-error on ragged shape
};

// Serialize with a header row, '\n' line endings, ',' separators, and
// shortest-round-trip doubles — byte-identical across runs and platforms.
std::string to_csv(const Table& table);

// Strict inverse of to_csv (a trailing '\r' per line is tolerated, '#'-prefixed
// lines after the header are skipped). Throws io-error with the offending line
// number on malformed input.
Table parse_csv(const std::string& text);

// Index of a named column; throws io-error when the column is missing.
std::size_t column_index(const Table& table, const std::string& name);

// Whole-file helpers; both throw io-error on failure.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
Table read_csv_file(const std::string& path);

}  // namespace squeezeion::io
