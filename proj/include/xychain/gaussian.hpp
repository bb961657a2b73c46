#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "xychain/echo.hpp"

namespace xychain {

/// D_k(t) written as sum_l c_l exp(i w_l t). Frequencies are ordered
/// +(W+ + W-), -(W+ + W-), +(W+ - W-), -(W+ - W-); each coefficient is the
/// signed amplitude of the exponential with that frequency, so the
/// coefficients sum to one but may be negative.
struct FourPointDecomposition {
  std::array<double, 4> frequency{};
  std::array<double, 4> coefficient{};

  std::complex<double> evaluate(double t) const;
  double coefficient_sum() const;
  double mean() const;      // sum c_l w_l
  double variance() const;  // sum c_l w_l^2 - mean^2
};

FourPointDecomposition four_point_decomposition(const BranchMode& mode);

/// Ways to obtain the cumulative variance s^2 of the weak-coupling decay.
///   kDirect      per-mode mean and variance of the decomposition
///   kLeading     16 g^2 sum_k sin^2(theta_i), with the exact finite sum
///   kClosedIsing 8 g^2 M / lambda_i^2 (lambda_i^2 > 1) or 8 g^2 M; gamma = 1 only
enum class WidthMethod { kDirect, kLeading, kClosedIsing };

struct WalkStats {
  std::vector<double> mean;      // per mode, kDirect only
  std::vector<double> variance;  // per mode, kDirect only
  double s2 = 0.0;
};

WalkStats walk_stats(const ChainSpec& chain, const FieldSet& fields, WidthMethod method);

/// exp(-s2 t^2 / 2)
double weak_gaussian_f(double t, double s2);

enum class EnvelopeMethod { kDirect, kClosedIsing };

/// Strong-coupling envelope: F oscillates with frequency e_freq under
/// exp(-s2_tilde t^2 / 2). The direct method weights modes by
/// sin^2(theta_plus - theta_i); the closed form is the gamma = 1 continuum
/// limit and carries e_freq = 4g and no per-mode data.
struct EnvelopeModel {
  double e_freq = 0.0;
  double s2_tilde = 0.0;
  std::vector<double> delta;    // W+ + W- - e_freq
  std::vector<double> theta_g;  // bound to theta_plus
  std::vector<double> weight;   // sin^2(theta_g - theta_i)

  double envelope(double t) const { return weak_gaussian_f(t, s2_tilde); }
  double peak_time(long n) const;
};

EnvelopeModel envelope_model(const ChainSpec& chain, const FieldSet& fields, EnvelopeMethod method);

/// Simplification valid when alpha_{+-} is close to pi/2 for every mode.
inline constexpr double kStrongGuard = 0.1;

/// Largest |cos alpha_{+-}| over the modes.
double strong_guard_value(std::span<const BranchMode> modes);

/// Two-term product; throws ParameterError if the guard is violated.
double strong_simplified_f(std::span<const BranchMode> modes, double t);
std::vector<double> strong_simplified_series(const ChainSpec& chain, const FieldSet& fields,
                                             std::span<const double> times);

struct GaussianFit {
  double s2 = 0.0;
  double residual = 0.0;  // max |ln F + s2 t^2/2| over the window
  std::size_t samples = 0;
};

/// Least-squares fit of ln F = -s2 t^2/2 over samples with low < F < high.
/// Needs at least 8 samples in the window.
GaussianFit gaussian_fit(std::span<const double> times, std::span<const double> f, double low = 0.05,
                         double high = 0.95);
GaussianFit gaussian_fit(const EchoSeries& series, double low = 0.05, double high = 0.95);

}  // namespace xychain
