#include "exekg/table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace exekg {

const std::vector<double>& Column::numbers() const {
  if (!is_numeric()) throw CsvError("column '" + name + "' is not numeric");
  return std::get<0>(values);
}

const std::vector<std::string>& Column::labels() const {
  if (is_numeric()) throw CsvError("column '" + name + "' is not categorical");
  return std::get<1>(values);
}

std::size_t Column::size() const {
  return is_numeric() ? std::get<0>(values).size() : std::get<1>(values).size();
}

Table::Table(std::vector<std::string> column_names, std::vector<Column> columns)
    : column_names_(std::move(column_names)), columns_(std::move(columns)) {
  if (column_names_.size() != columns_.size())
    throw CsvError("column name/data count mismatch");
  row_count_ = columns_.empty() ? 0 : columns_[0].size();
  for (const auto& c : columns_)
    if (c.size() != row_count_) throw CsvError("columns differ in length");
  std::set<std::string> seen;
  for (const auto& n : column_names_)
    if (!seen.insert(n).second) throw CsvError("duplicate column name '" + n + "'");
}

bool Table::has_column(const std::string& name) const {
  return std::find(column_names_.begin(), column_names_.end(), name) != column_names_.end();
}

const Column& Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < column_names_.size(); i++)
    if (column_names_[i] == name) return columns_[i];
  std::string available;
  for (const auto& n : column_names_) available += (available.empty() ? "" : ", ") + n;
  throw CsvError("unknown column '" + name + "' (available: " + available + ")");
}

bool Table::operator==(const Table& other) const {
  if (column_names_ != other.column_names_ || row_count_ != other.row_count_) return false;
  for (std::size_t i = 0; i < columns_.size(); i++)
    if (columns_[i].values != other.columns_[i].values) return false;
  return true;
}

namespace {

// Splits CSV text into rows of cells. Quoted cells may contain commas,
// newlines and doubled-quote escapes.
std::vector<std::vector<std::string>> split_csv(const std::string& text,
                                                const std::string& origin) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool in_quotes = false;
  bool cell_was_quoted = false;
  std::size_t i = 0;

  auto end_cell = [&] {
    row.push_back(std::move(cell));
    cell.clear();
    cell_was_quoted = false;
  };
  auto end_row = [&] {
    end_cell();
    rows.push_back(std::move(row));
    row.clear();
  };

  while (i < text.size()) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          i += 2;
          continue;
        }
        in_quotes = false;
        i++;
        continue;
      }
      cell += c;
      i++;
      continue;
    }
    switch (c) {
      case '"':
        if (!cell.empty())
          throw CsvError(origin + ": stray quote inside unquoted cell (row " +
                         std::to_string(rows.size() + 1) + ")");
        in_quotes = true;
        cell_was_quoted = true;
        i++;
        break;
      case ',':
        end_cell();
        i++;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') {
          end_row();
          i += 2;
        } else {
          throw CsvError(origin + ": bare carriage return (row " +
                         std::to_string(rows.size() + 1) + ")");
        }
        break;
      case '\n':
        end_row();
        i++;
        break;
      default:
        cell += c;
        i++;
        break;
    }
  }
  if (in_quotes) throw CsvError(origin + ": unterminated quoted cell");
  // A file not ending in a newline still terminates its last row.
  if (!cell.empty() || !row.empty() || cell_was_quoted) end_row();
  return rows;
}

// Decimal or scientific notation only: no hex, no inf/nan, no padding.
bool parse_number(const std::string& s, double* out) {
  if (s.empty()) return false;
  if (s.find_first_not_of("+-0123456789.eE") != std::string::npos) return false;
  const char* first = s.data();
  if (s[0] == '+') first++;  // from_chars rejects a leading '+'
  double v = 0;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return false;
  if (!std::isfinite(v)) return false;
  *out = v;
  return true;
}

}  // namespace

Table parse_csv(const std::string& text, const std::string& origin) {
  auto rows = split_csv(text, origin);
  if (rows.empty()) throw CsvError(origin + ": empty file");
  const auto& header = rows[0];
  std::set<std::string> seen;
  for (const auto& h : header) {
    if (h.empty()) throw CsvError(origin + ": empty header cell");
    if (!seen.insert(h).second) throw CsvError(origin + ": duplicate header '" + h + "'");
  }

  std::size_t width = header.size();
  for (std::size_t r = 1; r < rows.size(); r++) {
    if (rows[r].size() != width)
      throw CsvError(origin + ": ragged row " + std::to_string(r + 1) + " has " +
                     std::to_string(rows[r].size()) + " cells, expected " + std::to_string(width));
    for (std::size_t c = 0; c < width; c++)
      if (rows[r][c].empty())
        throw CsvError(origin + ": missing cell at row " + std::to_string(r + 1) + ", column '" +
                       header[c] + "'");
  }

  std::vector<Column> columns;
  for (std::size_t c = 0; c < width; c++) {
    std::vector<double> numbers;
    bool numeric = true;
    for (std::size_t r = 1; r < rows.size() && numeric; r++) {
      double v = 0;
      if (parse_number(rows[r][c], &v))
        numbers.push_back(v);
      else
        numeric = false;
    }
    Column col;
    col.name = header[c];
    if (numeric) {
      col.values = std::move(numbers);
    } else {
      std::vector<std::string> labels;
      labels.reserve(rows.size() - 1);
      for (std::size_t r = 1; r < rows.size(); r++) labels.push_back(rows[r][c]);
      col.values = std::move(labels);
    }
    columns.push_back(std::move(col));
  }
  return Table(std::vector<std::string>(header), std::move(columns));
}

Table load_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open CSV file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), path.string());
}

const Column& extract_column(const Table& table, const std::string& name) {
  return table.column(name);
}

}  // namespace exekg
