#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace xychain {

/// Thrown for any invalid physical or numerical parameter.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Periodic chain of `n` sites with in-plane anisotropy `gamma`.
/// `n` must be even and at least 4; the momentum pairs are k = 1..n/2.
struct ChainSpec {
  int n = 0;
  double gamma = 1.0;

  int modes() const { return n / 2; }
  bool is_ising() const { return gamma == 1.0; }
  void validate() const;
};

/// Field labels of the quench: the state is prepared at `lambda_i`, evolves at
/// `lambda_e`, and the central spin splits the evolution into the branches
/// lambda_e + g and lambda_e - g.
class FieldSet {
 public:
  FieldSet() = default;
  FieldSet(double lambda_i, double lambda_e, double g);

  double lambda_i() const { return lambda_i_; }
  double lambda_e() const { return lambda_e_; }
  double g() const { return g_; }
  double lambda_plus() const { return lambda_plus_; }
  double lambda_minus() const { return lambda_minus_; }

 private:
  double lambda_i_ = 0.0;
  double lambda_e_ = 0.0;
  double g_ = 0.0;
  double lambda_plus_ = 0.0;
  double lambda_minus_ = 0.0;
};

struct Mode {
  int k;
  double x;  // 2*pi*k/n
};

/// Per-mode spectrum for one field value, indexed by k - 1.
struct ModeSpectrum {
  double lambda = 0.0;
  std::vector<double> x;
  std::vector<double> epsilon;
  std::vector<double> omega;
  std::vector<double> theta;
  // Largest amount by which 2*epsilon/omega left [-1, 1] before clamping.
  double max_clamp = 0.0;

  std::size_t size() const { return x.size(); }
};

struct SpectralSums {
  double s0 = 0.0;  // sum sin^2(theta_i)
  double s1 = 0.0;  // sum sin^2(theta_i) sin^2(x)
  double s2 = 0.0;  // sum sin^2(theta_i) sin^4(x)
};

// Below this quasiparticle energy a mode is treated as degenerate and theta = 0.
inline constexpr double kDegenerateOmega = 1e-12;
// Clamping beyond this is reported through ModeSpectrum::max_clamp.
inline constexpr double kClampWarning = 1e-9;

std::vector<Mode> mode_grid(const ChainSpec& chain);

ModeSpectrum dispersion_data(double lambda, const ChainSpec& chain);

/// Quasiparticle energy 2*sqrt(eps^2 + gamma^2 sin^2 x) for a single mode.
double mode_omega(double lambda, double gamma, double x);
/// Bogoliubov angle in [0, pi]; 0 for a degenerate mode.
double mode_theta(double lambda, double gamma, double x);

/// Half difference of two Bogoliubov angles.
inline double alpha_angle(double theta_a, double theta_b) { return 0.5 * (theta_a - theta_b); }

SpectralSums spectral_sums_direct(double lambda_i, const ChainSpec& chain);

/// Continuum limits of the sums for the transverse-field Ising chain.
/// Throws ParameterError unless chain.gamma == 1.
SpectralSums spectral_sums_closed(double lambda_i, const ChainSpec& chain);

}  // namespace xychain
