#include "xychain/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "xychain/kernels.hpp"

namespace xychain {

std::complex<double> FourPointDecomposition::evaluate(double t) const {
  std::complex<double> d = 0.0;
  for (std::size_t l = 0; l < 4; ++l) d += coefficient[l] * std::polar(1.0, frequency[l] * t);
  return d;
}

double FourPointDecomposition::coefficient_sum() const {
  return std::accumulate(coefficient.begin(), coefficient.end(), 0.0);
}

double FourPointDecomposition::mean() const {
  double a = 0.0;
  for (std::size_t l = 0; l < 4; ++l) a += coefficient[l] * frequency[l];
  return a;
}

double FourPointDecomposition::variance() const {
  const double a = mean();
  double second = 0.0;
  for (std::size_t l = 0; l < 4; ++l) second += coefficient[l] * frequency[l] * frequency[l];
  return second - a * a;
}

FourPointDecomposition four_point_decomposition(const BranchMode& m) {
  const double a_pm = alpha_angle(m.theta_plus, m.theta_minus);
  const double a_pi = alpha_angle(m.theta_plus, m.theta_init);
  const double a_mi = alpha_angle(m.theta_minus, m.theta_init);
  const double s = m.omega_plus + m.omega_minus;
  const double w = m.omega_plus - m.omega_minus;
  FourPointDecomposition out;
  out.frequency = {s, -s, w, -w};
  out.coefficient = {
      -std::sin(a_pm) * std::cos(a_pi) * std::sin(a_mi),
      std::sin(a_pm) * std::sin(a_pi) * std::cos(a_mi),
      std::cos(a_pm) * std::cos(a_pi) * std::cos(a_mi),
      std::cos(a_pm) * std::sin(a_pi) * std::sin(a_mi),
  };
  return out;
}

namespace {

void require_ising(const ChainSpec& chain, const char* what) {
  if (!chain.is_ising()) throw ParameterError(std::string(what) + " requires gamma = 1");
}

}  // namespace

WalkStats walk_stats(const ChainSpec& chain, const FieldSet& fields, WidthMethod method) {
  chain.validate();
  WalkStats stats;
  const double g2 = fields.g() * fields.g();
  switch (method) {
    case WidthMethod::kDirect: {
      const auto modes = branch_modes(chain, fields);
      stats.mean.reserve(modes.size());
      stats.variance.reserve(modes.size());
      for (const auto& m : modes) {
        const auto dec = four_point_decomposition(m);
        stats.mean.push_back(dec.mean());
        stats.variance.push_back(dec.variance());
        stats.s2 += stats.variance.back();
      }
      break;
    }
    case WidthMethod::kLeading:
      stats.s2 = 16.0 * g2 * spectral_sums_direct(fields.lambda_i(), chain).s0;
      break;
    case WidthMethod::kClosedIsing: {
      require_ising(chain, "closed-form Gaussian width");
      const double l2 = fields.lambda_i() * fields.lambda_i();
      const double m = chain.modes();
      stats.s2 = l2 > 1.0 ? 8.0 * g2 * m / l2 : 8.0 * g2 * m;
      break;
    }
  }
  return stats;
}

double weak_gaussian_f(double t, double s2) {
  if (s2 < 0.0) throw ParameterError("Gaussian width s2 must be non-negative");
  return std::exp(-0.5 * s2 * t * t);
}

double EnvelopeModel::peak_time(long n) const { return static_cast<double>(n) * std::numbers::pi / e_freq; }

EnvelopeModel envelope_model(const ChainSpec& chain, const FieldSet& fields, EnvelopeMethod method) {
  chain.validate();
  EnvelopeModel model;
  if (method == EnvelopeMethod::kClosedIsing) {
    require_ising(chain, "closed-form envelope width");
    if (fields.g() <= 0.0) throw ParameterError("envelope width needs g > 0");
    const double l2 = fields.lambda_i() * fields.lambda_i();
    const double m = chain.modes();
    const double g2 = fields.g() * fields.g();
    model.e_freq = 4.0 * fields.g();
    model.s2_tilde = l2 > 1.0 ? m / (8.0 * g2 * l2 * l2) * (l2 + 1.0) : m / (8.0 * g2) * (l2 + 1.0);
    return model;
  }

  const auto modes = branch_modes(chain, fields);
  double wsum = 0.0, wfreq = 0.0;
  model.theta_g.reserve(modes.size());
  model.weight.reserve(modes.size());
  for (const auto& m : modes) {
    const double w = std::pow(std::sin(m.theta_plus - m.theta_init), 2);
    model.theta_g.push_back(m.theta_plus);
    model.weight.push_back(w);
    wsum += w;
    wfreq += w * (m.omega_plus + m.omega_minus);
  }
  if (!(wsum > 0.0)) throw ParameterError("envelope frequency undefined: all mode weights vanish");
  model.e_freq = wfreq / wsum;
  model.delta.reserve(modes.size());
  for (std::size_t k = 0; k < modes.size(); ++k) {
    const double d = modes[k].omega_plus + modes[k].omega_minus - model.e_freq;
    model.delta.push_back(d);
    model.s2_tilde += model.weight[k] * d * d;
  }
  return model;
}

double strong_guard_value(std::span<const BranchMode> modes) {
  double worst = 0.0;
  for (const auto& m : modes) {
    worst = std::max(worst, std::abs(std::cos(alpha_angle(m.theta_plus, m.theta_minus))));
  }
  return worst;
}

namespace {

kernels::FactorTable strong_table(std::span<const BranchMode> modes) {
  const double guard = strong_guard_value(modes);
  if (!(guard < kStrongGuard)) {
    throw ParameterError("strong-coupling simplification needs |cos alpha_+-| < 0.1 for all modes, worst is " +
                         std::to_string(guard));
  }
  kernels::FactorTable table;
  table.reserve(modes.size());
  for (const auto& m : modes) {
    // cos^2(a) e^{iSt} + sin^2(a) e^{-iSt}
    const double a = alpha_angle(m.theta_plus, m.theta_init);
    table.push(m.omega_plus + m.omega_minus, 0.0, 0.0, 1.0, std::cos(2.0 * a), 0.0, 0.0);
  }
  return table;
}

}  // namespace

double strong_simplified_f(std::span<const BranchMode> modes, double t) {
  return std::exp(kernels::product_at(strong_table(modes), t).log_f);
}

std::vector<double> strong_simplified_series(const ChainSpec& chain, const FieldSet& fields,
                                             std::span<const double> times) {
  const auto modes = branch_modes(chain, fields);
  const auto samples = kernels::product_series_parallel(strong_table(modes), times);
  std::vector<double> f;
  f.reserve(samples.size());
  for (const auto& s : samples) f.push_back(std::exp(s.log_f));
  return f;
}

GaussianFit gaussian_fit(std::span<const double> times, std::span<const double> f, double low, double high) {
  if (times.size() != f.size()) throw ParameterError("times and F must have the same length");
  double uu = 0.0, ul = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!(f[i] > low && f[i] < high)) continue;
    const double u = 0.5 * times[i] * times[i];
    uu += u * u;
    ul += u * std::log(f[i]);
    ++used;
  }
  if (used < 8 || !(uu > 0.0)) {
    throw ParameterError("Gaussian fit needs at least 8 samples inside the F window, found " + std::to_string(used));
  }
  GaussianFit fit;
  fit.s2 = -ul / uu;
  fit.samples = used;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!(f[i] > low && f[i] < high)) continue;
    const double u = 0.5 * times[i] * times[i];
    fit.residual = std::max(fit.residual, std::abs(std::log(f[i]) + fit.s2 * u));
  }
  return fit;
}

GaussianFit gaussian_fit(const EchoSeries& series, double low, double high) {
  return gaussian_fit(series.times, series.f_values, low, high);
}

}  // namespace xychain
