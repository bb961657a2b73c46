#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace xychain::cli {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 15 significant digits.
std::string format_value(double v);

/// Comma-separated, LF endings, `# config: ...` first line, column names second.
class CsvTable {
 public:
  CsvTable(std::string config_line, std::vector<std::string> columns);

  void add_row(const std::vector<double>& values);
  /// Row whose first column is text.
  void add_row(const std::string& label, const std::vector<double>& values);
  std::string str() const;
  std::size_t rows() const { return rows_; }

 private:
  std::string body_;
  std::size_t width_;
  std::size_t rows_ = 0;
};

void write_file(const std::string& path, const std::string& content);

}  // namespace xychain::cli
