#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "xychain/echo.hpp"

namespace xychain::cli {

/// Every parameter of a CLI run. Keys accepted by `set` match the long flag
/// names with '-' and '_' interchangeable.
struct RunConfig {
  int n = 100;
  double gamma = 1.0;
  double g = 0.05;
  double lambda_i = 1.0;
  double lambda_e = 1.0;
  std::string init = "ground";
  double temperature = 0.0;
  double t_max = 10.0;
  int t_steps = 101;
  std::string axis2 = "lambda_i";
  double range_start = 0.0;
  double range_stop = 2.0;
  int range_steps = 21;
  std::vector<std::string> approx;  // canonical order, empty means none
  std::string regime = "weak";
  bool force = false;
  std::string out;

  void set(std::string_view key, std::string_view value);
  void validate() const;

  /// `key=value` pairs separated by single spaces; parse_config_line inverts it.
  std::string to_line() const;

  ChainSpec chain() const;
  FieldSet fields() const;
  InitialState initial_state() const;
  std::vector<double> time_grid() const;
  std::vector<double> axis_values() const;
  bool wants(std::string_view approx_name) const;

  bool operator==(const RunConfig&) const = default;
};

/// Applies `key=value` lines; blank lines and `#` comments are skipped.
void apply_config_text(RunConfig& config, std::string_view text);
void apply_config_file(RunConfig& config, const std::string& path);

/// Parses the body of a `# config: ...` header line (the prefix is optional).
RunConfig parse_config_line(std::string_view line);

}  // namespace xychain::cli
