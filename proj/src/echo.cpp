#include "xychain/echo.hpp"

#include <cmath>
#include <numbers>

#include "xychain/kernels.hpp"

namespace xychain {

using cplx = std::complex<double>;

InitialState InitialState::thermal(double temperature) {
  if (!std::isfinite(temperature) || temperature < 0.0) {
    throw ParameterError("temperature must be finite and non-negative");
  }
  if (temperature == 0.0) return ground();
  return {InitialKind::kThermal, temperature};
}

BranchMode branch_mode(const ChainSpec& chain, const FieldSet& fields, int k) {
  const double x = 2.0 * std::numbers::pi * k / chain.n;
  BranchMode m;
  m.x = x;
  m.omega_plus = mode_omega(fields.lambda_plus(), chain.gamma, x);
  m.omega_minus = mode_omega(fields.lambda_minus(), chain.gamma, x);
  m.omega_init = mode_omega(fields.lambda_i(), chain.gamma, x);
  m.theta_plus = mode_theta(fields.lambda_plus(), chain.gamma, x);
  m.theta_minus = mode_theta(fields.lambda_minus(), chain.gamma, x);
  m.theta_init = mode_theta(fields.lambda_i(), chain.gamma, x);
  return m;
}

std::vector<BranchMode> branch_modes(const ChainSpec& chain, const FieldSet& fields) {
  chain.validate();
  std::vector<BranchMode> modes;
  modes.reserve(static_cast<std::size_t>(chain.modes()));
  for (int k = 1; k <= chain.modes(); ++k) modes.push_back(branch_mode(chain, fields, k));
  return modes;
}

cplx mode_decoherence_ground(const BranchMode& m, double t, GroundFormula formula) {
  const double wp = m.omega_plus;
  const double wm = m.omega_minus;
  if (formula == GroundFormula::kFourTerm) {
    const double a_pm = alpha_angle(m.theta_plus, m.theta_minus);
    const double a_pi = alpha_angle(m.theta_plus, m.theta_init);
    const double a_mi = alpha_angle(m.theta_minus, m.theta_init);
    const double s_pm = std::sin(a_pm), c_pm = std::cos(a_pm);
    const double s_pi = std::sin(a_pi), c_pi = std::cos(a_pi);
    const double s_mi = std::sin(a_mi), c_mi = std::cos(a_mi);
    const cplx i(0.0, 1.0);
    return -std::exp(i * t * (wp + wm)) * (s_pm * c_pi * s_mi) +
           std::exp(i * t * (-wp + wm)) * (c_pm * s_pi * s_mi) +
           std::exp(i * t * (wp - wm)) * (c_pm * c_pi * c_mi) +
           std::exp(-i * t * (wp + wm)) * (s_pm * s_pi * c_mi);
  }
  const double sp = std::sin(wp * t), cp = std::cos(wp * t);
  const double sm = std::sin(wm * t), cm = std::cos(wm * t);
  const double c2_pm = std::cos(m.theta_plus - m.theta_minus);
  const double c2_pi = std::cos(m.theta_plus - m.theta_init);
  const double c2_mi = std::cos(m.theta_minus - m.theta_init);
  const double re = c2_pm * sp * sm + cp * cm;
  const double last = formula == GroundFormula::kTrigonometric ? sm * cp : sp * cm;
  return {re, c2_pi * sp * cm - c2_mi * last};
}

cplx mode_decoherence_thermal(const BranchMode& m, double temperature, double t) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw ParameterError("thermal factor needs a positive finite temperature");
  }
  // omega_init >= 0, so both Boltzmann factors lie in [0, 1].
  const double e1 = std::exp(-m.omega_init / temperature);
  const double e2 = e1 * e1;
  const double z = 1.0 + e2 + 2.0 * e1;
  const double sp = std::sin(m.omega_plus * t), cp = std::cos(m.omega_plus * t);
  const double sm = std::sin(m.omega_minus * t), cm = std::cos(m.omega_minus * t);
  const double re = std::cos(m.theta_plus - m.theta_minus) * sp * sm + cp * cm;
  const double im = std::cos(m.theta_plus - m.theta_init) * sp * cm - std::cos(m.theta_minus - m.theta_init) * sm * cp;
  return cplx(re * (e2 + 1.0) + 2.0 * e1, -im * (e2 - 1.0)) / z;
}

namespace {

// Occupation probability of a single mode with energy eps (2q - 1).
double occupied_probability(double eps_init, const InitialState& init) {
  if (!init.is_thermal()) return eps_init < 0.0 ? 1.0 : 0.0;
  const double b = 2.0 * eps_init * init.beta();
  if (b > 0.0) {
    const double e = std::exp(-b);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(b));
}

}  // namespace

cplx unpaired_mode_decoherence(double eps_init, double g, const InitialState& init, double t) {
  const double p1 = occupied_probability(eps_init, init);
  const double p0 = 1.0 - p1;
  return p0 * std::polar(1.0, 2.0 * g * t) + p1 * std::polar(1.0, -2.0 * g * t);
}

namespace kernels {

void FactorTable::reserve(std::size_t n) {
  for (auto* v : {&sum_freq, &diff_freq, &offset, &cos_sum, &sin_sum, &cos_diff, &sin_diff}) v->reserve(n);
}

void FactorTable::push(double s, double w, double a0, double as, double bs, double aw, double bw) {
  sum_freq.push_back(s);
  diff_freq.push_back(w);
  offset.push_back(a0);
  cos_sum.push_back(as);
  sin_sum.push_back(bs);
  cos_diff.push_back(aw);
  sin_diff.push_back(bw);
}

cplx FactorTable::factor(std::size_t k, double t) const {
  const double st = sum_freq[k] * t;
  const double wt = diff_freq[k] * t;
  return {offset[k] + cos_sum[k] * std::cos(st) + cos_diff[k] * std::cos(wt),
          sin_sum[k] * std::sin(st) + sin_diff[k] * std::sin(wt)};
}

FactorTable echo_table(const ChainSpec& chain, const FieldSet& fields, const InitialState& init,
                       UnpairedModes unpaired) {
  chain.validate();
  const int m = chain.modes();
  const int last_pair = unpaired == UnpairedModes::kExact ? m - 1 : m;
  FactorTable table;
  table.reserve(static_cast<std::size_t>(m + 1));
  for (int k = 1; k <= last_pair; ++k) {
    const BranchMode b = branch_mode(chain, fields, k);
    const double s = b.omega_plus + b.omega_minus;
    const double w = b.omega_plus - b.omega_minus;
    if (!init.is_thermal()) {
      // Four exponentials: c1 e^{iSt} + c4 e^{-iSt} + c3 e^{iWt} + c2 e^{-iWt}.
      const double a_pm = alpha_angle(b.theta_plus, b.theta_minus);
      const double a_pi = alpha_angle(b.theta_plus, b.theta_init);
      const double a_mi = alpha_angle(b.theta_minus, b.theta_init);
      const double c1 = -std::sin(a_pm) * std::cos(a_pi) * std::sin(a_mi);
      const double c2 = std::cos(a_pm) * std::sin(a_pi) * std::sin(a_mi);
      const double c3 = std::cos(a_pm) * std::cos(a_pi) * std::cos(a_mi);
      const double c4 = std::sin(a_pm) * std::sin(a_pi) * std::cos(a_mi);
      table.push(s, w, 0.0, c1 + c4, c1 - c4, c3 + c2, c3 - c2);
    } else {
      const double e1 = std::exp(-b.omega_init * init.beta());
      const double e2 = e1 * e1;
      const double z = 1.0 + e2 + 2.0 * e1;
      const double u = (1.0 + e2) / z;
      const double v = (1.0 - e2) / z;
      const double c = std::cos(b.theta_plus - b.theta_minus);
      const double p = std::cos(b.theta_plus - b.theta_init);
      const double q = std::cos(b.theta_minus - b.theta_init);
      table.push(s, w, 2.0 * e1 / z, 0.5 * u * (1.0 - c), 0.5 * v * (p - q), 0.5 * u * (1.0 + c),
                 0.5 * v * (p + q));
    }
  }
  if (unpaired == UnpairedModes::kExact) {
    for (double cos_x : {1.0, -1.0}) {
      const double p1 = occupied_probability(fields.lambda_i() - cos_x, init);
      const double p0 = 1.0 - p1;
      table.push(0.0, 2.0 * fields.g(), 0.0, 0.0, 0.0, p0 + p1, p0 - p1);
    }
  }
  return table;
}

}  // namespace kernels

EchoSeries coherence_series(const ChainSpec& chain, const FieldSet& fields, const InitialState& init,
                            std::span<const double> times, EchoOptions options) {
  for (double t : times) {
    if (!std::isfinite(t) || t < 0.0) throw ParameterError("times must be finite and non-negative");
  }
  const kernels::FactorTable table = kernels::echo_table(chain, fields, init, options.unpaired);
  const auto samples = options.execution == Execution::kParallel ? kernels::product_series_parallel(table, times)
                                                                  : kernels::product_series_serial(table, times);
  EchoSeries series;
  series.params = {chain, fields, init};
  series.times.assign(times.begin(), times.end());
  series.d_values.reserve(samples.size());
  series.f_values.reserve(samples.size());
  series.log_f.reserve(samples.size());
  for (const auto& s : samples) {
    series.d_values.push_back(s.d);
    series.log_f.push_back(s.log_f);
    series.f_values.push_back(std::exp(s.log_f));
  }
  return series;
}

void QubitDensity::validate() const {
  constexpr double tol = 1e-12;
  if (rho11 < -tol || rho22 < -tol) throw ParameterError("populations must be non-negative");
  if (std::abs(rho11 + rho22 - 1.0) > tol) throw ParameterError("populations must sum to 1");
  if (std::norm(rho12) > rho11 * rho22 + tol) throw ParameterError("coherence exceeds positivity bound");
}

QubitDensity reduced_density(const QubitDensity& rho0, cplx d) {
  rho0.validate();
  return {rho0.rho11, rho0.rho22, rho0.rho12 * d};
}

}  // namespace xychain
