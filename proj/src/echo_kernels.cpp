#include <cmath>
#include <limits>

#include "xychain/kernels.hpp"

namespace xychain::kernels {

namespace {

constexpr double kRescaleBelow = 1e-150;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

ProductSample finish(double re, double im, double scale) {
  const double mag = std::hypot(re, im);
  const double log_f = scale + std::log(mag);
  const double f = std::exp(log_f);
  return {{f * re / mag, f * im / mag}, log_f};
}

}  // namespace

ProductSample product_at(const FactorTable& table, double t) {
  const std::size_t n = table.size();
  const double* s = table.sum_freq.data();
  const double* w = table.diff_freq.data();
  const double* a0 = table.offset.data();
  const double* as = table.cos_sum.data();
  const double* bs = table.sin_sum.data();
  const double* aw = table.cos_diff.data();
  const double* bw = table.sin_diff.data();

  double re = 1.0, im = 0.0, scale = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double st = s[k] * t;
    const double wt = w[k] * t;
    const double fr = a0[k] + as[k] * std::cos(st) + aw[k] * std::cos(wt);
    const double fi = bs[k] * std::sin(st) + bw[k] * std::sin(wt);
    const double nr = re * fr - im * fi;
    const double ni = re * fi + im * fr;
    re = nr;
    im = ni;
    const double mag = std::abs(re) + std::abs(im);
    if (mag < kRescaleBelow) {
      if (mag == 0.0) return {{0.0, 0.0}, kNegInf};
      const double h = std::hypot(re, im);
      scale += std::log(h);
      re /= h;
      im /= h;
    }
  }
  return finish(re, im, scale);
}

std::vector<ProductSample> product_series_serial(const FactorTable& table, std::span<const double> times) {
  std::vector<ProductSample> out;
  out.reserve(times.size());
  for (double t : times) {
    double log_f = 0.0;
    double phase = 0.0;
    bool vanished = false;
    for (std::size_t k = 0; k < table.size(); ++k) {
      const auto f = table.factor(k, t);
      const double mag = std::abs(f);
      if (mag == 0.0) {
        vanished = true;
        break;
      }
      log_f += std::log(mag);
      phase += std::arg(f);
    }
    if (vanished) {
      out.push_back({{0.0, 0.0}, kNegInf});
    } else {
      out.push_back({std::polar(std::exp(log_f), phase), log_f});
    }
  }
  return out;
}

std::vector<ProductSample> product_series_parallel(const FactorTable& table, std::span<const double> times) {
  std::vector<ProductSample> out(times.size());
  const auto count = static_cast<std::ptrdiff_t>(times.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = product_at(table, times[static_cast<std::size_t>(i)]);
  }
  return out;
}

}  // namespace xychain::kernels
