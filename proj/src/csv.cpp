#include "polaron/csv.hpp"

#include <cmath>
#include <cstdio>

#include "polaron/error.hpp"

namespace polaron::csv {

std::string number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw InvalidArgument("table needs at least one column");
}

void Table::add_metadata(const std::string& key, const std::string& value) {
  metadata_.push_back(key + ": " + value);
}

void Table::add_metadata(const std::string& key, double value) { add_metadata(key, number(value)); }

void Table::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) throw InvalidArgument("row width does not match header");
  rows_.push_back(std::move(cells));
}

namespace {
void write_line(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}
}  // namespace

void Table::write(std::ostream& out) const {
  for (const auto& m : metadata_) out << "# " << m << '\n';
  write_line(out, columns_);
  for (const auto& r : rows_) write_line(out, r);
}

}  // namespace polaron::csv
