#pragma once

// Time-series kernels for products of per-mode factors of the form
//
//   D_k(t) = offset_k + cos_sum_k cos(S_k t) + i sin_sum_k sin(S_k t)
//                     + cos_diff_k cos(W_k t) + i sin_diff_k sin(W_k t)
//
// with real coefficients. Ground, thermal, unpaired and strong-coupling
// factors all reduce to this shape. The serial kernel is the reference; the
// OpenMP kernel splits the time grid across threads and each time point keeps
// the fixed mode order, so its output does not depend on the thread count.

#include <complex>
#include <span>
#include <vector>

#include "xychain/echo.hpp"

namespace xychain::kernels {

struct FactorTable {
  std::vector<double> sum_freq;
  std::vector<double> diff_freq;
  std::vector<double> offset;
  std::vector<double> cos_sum;
  std::vector<double> sin_sum;
  std::vector<double> cos_diff;
  std::vector<double> sin_diff;

  std::size_t size() const { return sum_freq.size(); }
  void reserve(std::size_t n);
  void push(double s, double w, double a0, double as, double bs, double aw, double bw);
  std::complex<double> factor(std::size_t k, double t) const;
};

struct ProductSample {
  std::complex<double> d;
  double log_f;
};

/// Factor table of the exact echo for the given state.
FactorTable echo_table(const ChainSpec& chain, const FieldSet& fields, const InitialState& init,
                       UnpairedModes unpaired);

/// Reference: per-mode logs summed in mode order, phase tracked separately.
std::vector<ProductSample> product_series_serial(const FactorTable& table, std::span<const double> times);

/// OpenMP over time points; running complex product with exponent rescaling.
std::vector<ProductSample> product_series_parallel(const FactorTable& table, std::span<const double> times);

/// Single time point with the rescaled running product.
ProductSample product_at(const FactorTable& table, double t);

}  // namespace xychain::kernels
