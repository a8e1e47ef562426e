#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace stablegap {

/// Column-ordered numeric table; every written row is prefixed by the config hash.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
};

/// Reals are printed with 17 significant digits so reruns are byte-identical.
std::string format_real(double v);

std::string to_csv(const Table& table, const std::string& config_hash);

/// Single-writer file output. Throws IoError.
void write_csv(const std::filesystem::path& path, const Table& table,
               const std::string& config_hash);

struct LoadedTable {
  std::string config_hash;
  Table table;
};

LoadedTable read_csv(const std::filesystem::path& path);

/// Concatenates result tables; throws ArgumentError when hashes or columns differ.
LoadedTable merge_tables(const std::vector<LoadedTable>& parts);

}  // namespace stablegap
