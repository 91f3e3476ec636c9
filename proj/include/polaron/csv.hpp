#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace polaron::csv {

/// 12 significant digits, "nan"/"inf" spelled out, "-0" folded to "0".
std::string number(double value);

/// `#` metadata lines, one header row, then data rows.
class Table {
 public:
  explicit Table(std::vector<std::string> columns);

  void add_metadata(const std::string& key, const std::string& value);
  void add_metadata(const std::string& key, double value);
  void add_row(std::vector<std::string> cells);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  void write(std::ostream& out) const;

 private:
  std::vector<std::string> metadata_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace polaron::csv
