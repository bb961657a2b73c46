#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "csv.hpp"

namespace xychain::cli {

enum ExitCode : int { kExitOk = 0, kExitValidationFailure = 1, kExitBadParameters = 2 };

/// t, F_exact, Re_D, Im_D and one column per requested approximation.
CsvTable timeseries_table(const RunConfig& config);

/// Long format (t, axis2, F), axis2 outer, t inner.
CsvTable sweep_table(const RunConfig& config);

struct WidthReport {
  std::string regime;
  double e_freq = 0.0;  // strong regime only
  std::vector<std::pair<std::string, double>> widths;
  std::vector<std::string> notices;

  std::string text() const;
  CsvTable table(const std::string& config_line) const;
};

WidthReport width_report(const RunConfig& config);

/// Full command line (without the program name). Returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xychain::cli
