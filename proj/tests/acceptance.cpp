// One PASS/FAIL line per acceptance criterion. Exit status is non-zero if any
// criterion fails.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "validate.hpp"
#include "xychain/gaussian.hpp"
#include "xychain/oracle.hpp"

using namespace xychain;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel(double a, double b) { return std::abs(a / b - 1.0); }

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  return out;
}

// Golden fixtures, pinned on the first validated run.
constexpr double kRevivalMaxN100 = 0.862418;   // max F on [10, 100], N = 100
constexpr double kRevivalTimeN100 = 58.52;     // where it occurs (grid step 0.01)
constexpr double kRevivalMaxN10000 = 1.4e-41;  // same window, N = 10^4
constexpr double kThermalTStar = 1.55;         // first grid t with ground F <= 0.5, N = 200
constexpr double kThermalPeakT = 0.56;         // T* maximising F(t*, T) on the 0.01 grid
constexpr double kThermalPeakF = 0.618;

Outcome c1_identity() {
  const auto r = cli::identity_suite(cli::kValidationSeed, 1000);
  const bool pass = r.checks[0].pass && r.checks[1].pass;
  return {pass, fmt("max |F(0)-1| = %.2e, max |F-1| at g=0 = %.2e over 1000 draws", r.checks[0].observed,
                    r.checks[1].observed)};
}

Outcome c2_block() {
  const auto r = cli::block_suite(cli::kValidationSeed, 500);
  const auto& four = r.checks[0];
  const auto& printed = r.checks.back();
  return {four.pass, fmt("max |D_k - oracle| = %.2e; as-printed trigonometric variant: max |F_k| error %.3f, %s",
                         four.observed, printed.observed, printed.detail.c_str())};
}

Outcome c3_fock() {
  const ChainSpec chain{8, 1.0};
  const std::vector<double> times = {0.0, 0.5, 1.0, 2.0, 5.0};
  double ground = 0.0, thermal = 0.0;
  for (const auto& [li, le, g] : {std::tuple{0.5, 1.0, 0.05}, std::tuple{1.0, 1.0, 0.25}}) {
    const FieldSet f(li, le, g);
    for (const auto& init : {InitialState::ground(), InitialState::thermal(1.0)}) {
      const auto ed = oracle::fock_coherence_ed(chain, f, init, times);
      const auto pr = coherence_series(chain, f, init, times);
      double& worst = init.is_thermal() ? thermal : ground;
      for (std::size_t i = 0; i < times.size(); ++i) {
        worst = std::max(worst, std::abs(ed.series.f_values[i] - pr.f_values[i]));
        if (ed.degenerate) worst = std::max(worst, std::abs(ed.other_sector_f[i] - pr.f_values[i]));
      }
    }
  }
  return {ground <= 1e-8 && thermal <= 1e-8, fmt("ground max diff %.2e, thermal (T=1) max diff %.2e", ground, thermal)};
}

Outcome c4_sums() {
  const ChainSpec chain{10000, 1.0};
  double worst = 0.0;
  for (double li : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    const auto d = spectral_sums_direct(li, chain);
    const auto c = spectral_sums_closed(li, chain);
    worst = std::max({worst, rel(d.s0, c.s0), rel(d.s1, c.s1), rel(d.s2, c.s2)});
  }
  return {worst <= 0.01, fmt("max relative error %.2e at M = 5000", worst)};
}

Outcome c5_weak() {
  const ChainSpec chain{100000, 1.0};
  bool pass = true;
  std::string detail;
  for (double li : {0.5, 1.5}) {
    const FieldSet f(li, 1.0, 0.05);
    const double s2_lead = walk_stats(chain, f, WidthMethod::kLeading).s2;
    const double s2_closed = walk_stats(chain, f, WidthMethod::kClosedIsing).s2;
    const auto times = linspace(0.0, 1.2 * std::sqrt(2 * std::log(100.0) / s2_closed), 500);
    const auto exact = coherence_series(chain, f, InitialState::ground(), times);
    double d_lead = 0.0, d_closed = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (exact.f_values[i] < 0.01) continue;
      d_lead = std::max(d_lead, std::abs(exact.f_values[i] - weak_gaussian_f(times[i], s2_lead)));
      d_closed = std::max(d_closed, std::abs(exact.f_values[i] - weak_gaussian_f(times[i], s2_closed)));
    }
    const double fit = gaussian_fit(exact).s2;
    pass = pass && d_lead <= 0.05 && d_closed <= 0.05 && rel(fit, s2_closed) <= 0.05;
    detail += fmt("lambda_i=%.1f: |dF| sum-form %.4f, closed %.4f, fit s2 %.1f vs %.1f; ", li, d_lead, d_closed, fit,
                  s2_closed);
  }
  return {pass, detail};
}

Outcome c6_laws() {
  std::mt19937_64 rng(cli::kValidationSeed);
  std::uniform_real_distribution<double> lam(0.0, 2.0);
  const ChainSpec chain{2000, 1.0};
  const double g = 0.01;
  double var_err = 0.0, mean_err = 0.0;
  for (int i = 0; i < 10; ++i) {
    const FieldSet f(lam(rng), lam(rng), g);
    const auto direct = walk_stats(chain, f, WidthMethod::kDirect);
    var_err = std::max(var_err, rel(direct.s2, walk_stats(chain, f, WidthMethod::kLeading).s2));
    const auto modes = branch_modes(chain, f);
    for (std::size_t k = 0; k < modes.size(); ++k)
      mean_err = std::max(mean_err, std::abs(direct.mean[k] - 4 * g * std::cos(modes[k].theta_init)));
  }
  return {var_err <= 0.05 && mean_err <= 0.05 * g,
          fmt("s2 relative error %.2e, max |a_k - 4g cos theta_i| = %.2e g", var_err, mean_err / g)};
}

Outcome c7_strong() {
  const ChainSpec chain{800, 1.0};
  bool pass = true;
  std::string detail;
  for (double li : {0.5, 1.5}) {
    const FieldSet f(li, 1.0, 500.0);
    const auto direct = envelope_model(chain, f, EnvelopeMethod::kDirect);
    const auto closed = envelope_model(chain, f, EnvelopeMethod::kClosedIsing);
    const double e_err = rel(direct.e_freq, 4 * f.g());
    const double s_err = rel(direct.s2_tilde, closed.s2_tilde);
    const double n_end = 1.5 * std::sqrt(2 * std::log(20.0) / direct.s2_tilde) * direct.e_freq / std::numbers::pi;
    std::vector<double> peaks;
    for (int i = 0; i < 400; ++i) peaks.push_back(direct.peak_time(std::lround(n_end * i / 399.0)));
    const auto series = coherence_series(chain, f, InitialState::ground(), peaks);
    const auto fit = gaussian_fit(series, 0.1, 0.9);
    const double fit_err = rel(fit.s2, closed.s2_tilde);
    pass = pass && e_err <= 0.005 && s_err <= 0.02 && fit_err <= 0.10;
    detail += fmt("lambda_i=%.1f: E err %.1e, direct/closed %.1e, fit err %.1e (%zu peaks); ", li, e_err, s_err, fit_err,
                  fit.samples);
  }
  return {pass, detail};
}

Outcome c8_scaling() {
  const ChainSpec chain{800, 1.0};
  double worst_ratio = 0.0;
  for (double li : {0.0, 0.5, 1.5, 3.0}) {
    const double a = envelope_model(chain, {li, 1.0, 250.0}, EnvelopeMethod::kClosedIsing).s2_tilde;
    const double b = envelope_model(chain, {li, 1.0, 500.0}, EnvelopeMethod::kClosedIsing).s2_tilde;
    worst_ratio = std::max(worst_ratio, std::abs(b / a - 0.25));
  }
  // One-sided slopes of s^2 against lambda_i^2 at lambda_i^2 = 1.
  const ChainSpec weak{10000, 1.0};
  const auto s2_at = [&](double l2) {
    return walk_stats(weak, {std::sqrt(l2), 1.0, 0.05}, WidthMethod::kClosedIsing).s2;
  };
  const double h = 1e-4;
  const double left = (s2_at(1.0) - s2_at(1.0 - h)) / h;
  const double right = (s2_at(1.0 + h) - s2_at(1.0)) / h;
  const double scale = s2_at(1.0);
  const bool kink = std::abs(right - left) > 10 * std::abs(left) && std::abs(right - left) > 0.5 * scale;
  return {worst_ratio == 0.0 && kink, fmt("ratio deviation from 1/4: %.1e; slopes left %.3g, right %.3g (s2 = %.3g)",
                                          worst_ratio, left, right, scale)};
}

Outcome c9_revival() {
  const auto times = linspace(0.0, 100.0, 10001);
  const FieldSet f(1.0, 1.0, 0.05);
  const auto small = coherence_series({100, 1.0}, f, InitialState::ground(), times);
  const auto large = coherence_series({10000, 1.0}, f, InitialState::ground(), times);
  double max_small = 0.0, t_small = 0.0, max_large = 0.0, min_small = 1.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    min_small = std::min(min_small, small.f_values[i]);
    if (times[i] < 10.0) continue;
    if (small.f_values[i] > max_small) {
      max_small = small.f_values[i];
      t_small = times[i];
    }
    max_large = std::max(max_large, large.f_values[i]);
  }
  const bool pass = max_small > 5 * max_large && std::abs(max_small - kRevivalMaxN100) < 1e-5 &&
                    std::abs(t_small - kRevivalTimeN100) < 1e-9 && max_large < 10 * kRevivalMaxN10000;
  return {pass, fmt("N=100 max %.6f at t=%.2f, N=10^4 max %.2e; N=100 min over [0,100] is %.4f", max_small, t_small,
                    max_large, min_small)};
}

Outcome c10_thermal() {
  const ChainSpec chain{200, 1.0};
  const FieldSet f(1.0, 1.0, 0.05);
  const auto grid = linspace(0.0, 5.0, 501);
  const auto ground = coherence_series(chain, f, InitialState::ground(), grid);
  double t_star = 0.0, f_star = 1.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (ground.f_values[i] <= 0.5) {
      t_star = grid[i];
      f_star = ground.f_values[i];
      break;
    }
  const std::vector<double> at = {t_star};
  const double cold = coherence_series(chain, f, InitialState::thermal(0.01), at).f_values[0];
  double best_f = 0.0, best_t = 0.0;
  for (int i = 1; i <= 2000; ++i) {
    const double temp = 0.01 * i;
    const double v = coherence_series(chain, f, InitialState::thermal(temp), at).f_values[0];
    if (v > best_f) {
      best_f = v;
      best_t = temp;
    }
  }
  const bool pass = best_f > cold && std::abs(t_star - kThermalTStar) < 1e-9 && std::abs(best_t - kThermalPeakT) < 1e-9 &&
                    std::abs(best_f - kThermalPeakF) < 5e-4;
  return {pass, fmt("t*=%.2f (ground F=%.4f): F(T=0.01)=%.4f, max F=%.4f at T*=%.2f", t_star, f_star, cold, best_f,
                    best_t)};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome c11_performance() {
  const int threads = omp_get_max_threads();
  omp_set_num_threads(1);
  const std::string path = "acceptance_timeseries.csv";
  const std::vector<std::string> args = {"timeseries", "--n", "100000", "--g", "0.05", "--lambda-i", "0.5",
                                         "--t-max", "1", "--t-steps", "500", "--approx", "weak+closed", "--out", path};
  std::ostringstream out, err;
  const auto t0 = std::chrono::steady_clock::now();
  const int status = cli::run(args, out, err);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string first = slurp(path);
  const int status2 = cli::run(args, out, err);
  const std::string second = slurp(path);
  std::remove(path.c_str());
  omp_set_num_threads(threads);
  const bool same = !first.empty() && first == second;
  return {status == 0 && status2 == 0 && secs < 5.0 && same,
          fmt("%.2f s single-threaded, %zu bytes, identical across runs: %s", secs, first.size(), same ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"C1 identity fuzz", c1_identity},          {"C2 block oracle", c2_block},
      {"C3 Fock ED", c3_fock},                    {"C4 spectral closed forms", c4_sums},
      {"C5 weak-coupling Gaussian", c5_weak},     {"C6 weak-coupling laws", c6_laws},
      {"C7 strong-coupling envelope", c7_strong}, {"C8 width scaling", c8_scaling},
      {"C9 revivals", c9_revival},                {"C10 thermal non-monotonicity", c10_thermal},
      {"C11 performance", c11_performance}};
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("%s  %-30s %6.2fs  %s\n", o.pass ? "PASS" : "FAIL", name, secs, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
