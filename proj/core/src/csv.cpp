#include "stablegap/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "stablegap/errors.hpp"

namespace stablegap {

void Table::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) throw ArgumentError("Table: row width does not match columns");
  rows.push_back(std::move(row));
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const Table& table, const std::string& config_hash) {
  std::ostringstream os;
  os << "config_hash";
  for (const auto& c : table.columns) os << ',' << c;
  os << '\n';
  for (const auto& row : table.rows) {
    os << config_hash;
    for (double v : row) os << ',' << format_real(v);
    os << '\n';
  }
  return os.str();
}

void write_csv(const std::filesystem::path& path, const Table& table,
               const std::string& config_hash) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << to_csv(table, config_hash);
  if (!out) throw IoError("write failed for " + path.string());
}

LoadedTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  LoadedTable loaded;
  std::string line;
  if (!std::getline(in, line)) throw IoError(path.string() + " is empty");
  {
    std::istringstream header(line);
    std::string cell;
    std::getline(header, cell, ',');
    if (cell != "config_hash") throw ArgumentError(path.string() + ": missing config_hash column");
    while (std::getline(header, cell, ',')) loaded.table.columns.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');
    if (loaded.config_hash.empty()) loaded.config_hash = cell;
    else if (cell != loaded.config_hash)
      throw ArgumentError(path.string() + ": rows from different configurations");
    std::vector<double> values;
    while (std::getline(row, cell, ',')) values.push_back(std::stod(cell));
    loaded.table.add_row(std::move(values));
  }
  return loaded;
}

LoadedTable merge_tables(const std::vector<LoadedTable>& parts) {
  if (parts.empty()) throw ArgumentError("merge_tables: nothing to merge");
  LoadedTable merged = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i].config_hash != merged.config_hash)
      throw ArgumentError("merge_tables: refusing to mix results from different configurations");
    if (parts[i].table.columns != merged.table.columns)
      throw ArgumentError("merge_tables: column layouts differ");
    for (const auto& r : parts[i].table.rows) merged.table.rows.push_back(r);
  }
  return merged;
}

}  // namespace stablegap
