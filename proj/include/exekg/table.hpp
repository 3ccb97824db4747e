#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "exekg/errors.hpp"

namespace exekg {

// One typed CSV column. Numeric columns hold finite doubles; categorical
// columns hold strings. The kind is uniform per column.
struct Column {
  std::string name;
  std::variant<std::vector<double>, std::vector<std::string>> values;

  bool is_numeric() const { return values.index() == 0; }
  const std::vector<double>& numbers() const;
  const std::vector<std::string>& labels() const;
  std::size_t size() const;
};

// Immutable after load; columns share one row count and names are unique.
class Table {
 public:
  Table(std::vector<std::string> column_names, std::vector<Column> columns);

  const std::vector<std::string>& column_names() const { return column_names_; }
  std::size_t row_count() const { return row_count_; }
  std::size_t column_count() const { return columns_.size(); }
  bool has_column(const std::string& name) const;
  const Column& column(const std::string& name) const;  // unknown-column error

  bool operator==(const Table& other) const;

 private:
  std::vector<std::string> column_names_;
  std::vector<Column> columns_;
  std::size_t row_count_ = 0;
};

// RFC 4180 subset: comma delimiter, '\n' or '\r\n' newlines, optional quoting
// with doubled-quote escapes. First row is the header. A column is Numeric iff
// every body cell parses as a finite decimal number.
Table load_csv(const std::filesystem::path& path);
Table parse_csv(const std::string& text, const std::string& origin = "<csv>");

// The named column, in file row order. Unknown names raise a CsvError that
// lists the available columns.
const Column& extract_column(const Table& table, const std::string& name);

}  // namespace exekg
