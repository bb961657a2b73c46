#include "csv.hpp"

#include <cstdio>
#include <fstream>

namespace xychain::cli {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

CsvTable::CsvTable(std::string config_line, std::vector<std::string> columns) : width_(columns.size()) {
  body_ = "# config: " + config_line + "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) body_ += (i ? "," : "") + columns[i];
  body_ += '\n';
}

void CsvTable::add_row(const std::vector<double>& values) {
  if (values.size() != width_) throw std::logic_error("CSV row width mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) body_ += ',';
    body_ += format_value(values[i]);
  }
  body_ += '\n';
  ++rows_;
}

void CsvTable::add_row(const std::string& label, const std::vector<double>& values) {
  if (values.size() + 1 != width_) throw std::logic_error("CSV row width mismatch");
  body_ += label;
  for (double v : values) body_ += ',' + format_value(v);
  body_ += '\n';
  ++rows_;
}

std::string CsvTable::str() const { return body_; }

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write to " + path + " failed");
}

}  // namespace xychain::cli
