#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace xychain::cli {

// Fixed so that `validate` output is reproducible.
inline constexpr std::uint64_t kValidationSeed = 20241019;

enum class Suite { kIdentity, kBlock, kFock, kThermal, kWidths, kAll };

Suite parse_suite(std::string_view name);

struct CheckResult {
  std::string name;
  double tolerance = 0.0;
  double observed = 0.0;
  bool pass = true;
  bool informational = false;  // reported, never fails the suite
  std::string detail;
};

struct SuiteReport {
  std::vector<CheckResult> checks;

  bool passed() const;
  std::string text() const;
  void append(const SuiteReport& other);
};

SuiteReport identity_suite(std::uint64_t seed, int draws = 1000);
SuiteReport block_suite(std::uint64_t seed, int cases = 500);
SuiteReport fock_suite();
SuiteReport thermal_suite(std::uint64_t seed);
SuiteReport widths_suite();

SuiteReport run_suite(Suite suite, std::uint64_t seed = kValidationSeed);

/// Sorted many-body spectrum of the c-cyclic chain assembled from the
/// quasiparticle energies: pairs contribute {-W, 0, 0, +W}, the two unpaired
/// momenta contribute {-|eps|, +|eps|}.
std::vector<double> predicted_fock_spectrum(int n, double gamma, double lambda);

}  // namespace xychain::cli
