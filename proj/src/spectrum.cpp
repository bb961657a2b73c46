#include "xychain/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace xychain {

void ChainSpec::validate() const {
  if (n < 4 || n % 2 != 0) {
    throw ParameterError("chain size must be even and >= 4, got " + std::to_string(n));
  }
  if (!std::isfinite(gamma)) throw ParameterError("anisotropy gamma must be finite");
}

FieldSet::FieldSet(double lambda_i, double lambda_e, double g)
    : lambda_i_(lambda_i), lambda_e_(lambda_e), g_(g), lambda_plus_(lambda_e + g), lambda_minus_(lambda_e - g) {
  if (!std::isfinite(lambda_i) || !std::isfinite(lambda_e) || !std::isfinite(g)) {
    throw ParameterError("field values must be finite");
  }
  if (g < 0.0) throw ParameterError("coupling g must be non-negative");
}

std::vector<Mode> mode_grid(const ChainSpec& chain) {
  chain.validate();
  const int m = chain.modes();
  std::vector<Mode> grid;
  grid.reserve(static_cast<std::size_t>(m));
  for (int k = 1; k <= m; ++k) {
    grid.push_back({k, 2.0 * std::numbers::pi * k / chain.n});
  }
  return grid;
}

double mode_omega(double lambda, double gamma, double x) {
  const double eps = lambda - std::cos(x);
  const double pair = gamma * std::sin(x);
  return 2.0 * std::hypot(eps, pair);
}

namespace {

struct Angle {
  double theta;
  double clamp;
};

// atan2 gives the same angle as arccos(2 eps / omega) but keeps full
// precision near 0 and pi, where arccos loses half the digits. The cosine is
// still formed so that roundoff outside [-1, 1] is reported.
Angle theta_from(double eps, double pair, double omega) {
  if (omega <= kDegenerateOmega) return {0.0, 0.0};
  const double c = 2.0 * eps / omega;
  return {std::atan2(std::abs(pair), eps), std::abs(c - std::clamp(c, -1.0, 1.0))};
}

}  // namespace

double mode_theta(double lambda, double gamma, double x) {
  return theta_from(lambda - std::cos(x), gamma * std::sin(x), mode_omega(lambda, gamma, x)).theta;
}

ModeSpectrum dispersion_data(double lambda, const ChainSpec& chain) {
  chain.validate();
  if (!std::isfinite(lambda)) throw ParameterError("field must be finite");
  const auto m = static_cast<std::size_t>(chain.modes());
  ModeSpectrum out;
  out.lambda = lambda;
  out.x.resize(m);
  out.epsilon.resize(m);
  out.omega.resize(m);
  out.theta.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double x = 2.0 * std::numbers::pi * static_cast<double>(i + 1) / chain.n;
    const double eps = lambda - std::cos(x);
    const double pair = chain.gamma * std::sin(x);
    const double omega = 2.0 * std::hypot(eps, pair);
    const Angle a = theta_from(eps, pair, omega);
    out.x[i] = x;
    out.epsilon[i] = eps;
    out.omega[i] = omega;
    out.theta[i] = a.theta;
    out.max_clamp = std::max(out.max_clamp, a.clamp);
  }
  return out;
}

SpectralSums spectral_sums_direct(double lambda_i, const ChainSpec& chain) {
  const ModeSpectrum spec = dispersion_data(lambda_i, chain);
  SpectralSums sums;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double w = std::pow(std::sin(spec.theta[i]), 2);
    const double s2x = std::pow(std::sin(spec.x[i]), 2);
    sums.s0 += w;
    sums.s1 += w * s2x;
    sums.s2 += w * s2x * s2x;
  }
  return sums;
}

SpectralSums spectral_sums_closed(double lambda_i, const ChainSpec& chain) {
  chain.validate();
  if (!chain.is_ising()) {
    throw ParameterError("closed-form spectral sums are only valid for gamma = 1");
  }
  const double m = chain.modes();
  const double l2 = lambda_i * lambda_i;
  SpectralSums sums;
  if (l2 > 1.0) {
    sums.s0 = m / (2.0 * l2);
    sums.s1 = m / 8.0 * (3.0 * l2 - 1.0) / (l2 * l2);
    sums.s2 = m / (32.0 * l2 * l2 * l2) * (10.0 * l2 * l2 - 5.0 * l2 + 1.0);
  } else {
    sums.s0 = m / 2.0;
    sums.s1 = m / 8.0 * (3.0 - l2);
    sums.s2 = m / 32.0 * (10.0 - 5.0 * l2 + l2 * l2);
  }
  return sums;
}

}  // namespace xychain
