#pragma once

// Brute-force references for the echo formulas.
//
// Block oracle: the (k, -k) pair Hamiltonian as a 4x4 matrix in the basis
// |00>, |11>, |10>, |01>, exponentiated through its eigendecomposition.
//
// Fock oracle: the quadratic fermion Hamiltonian
//   H = -sum_l [ a+_{l+1} a_l + a+_l a_{l+1} + gamma (a_{l+1} a_l + a+_l a+_{l+1})
//                - lambda (1 - 2 a+_l a_l) ],   a_{N+1} = a_1,
// built in the 2^N occupation basis and diagonalized per fermion parity.

#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "xychain/echo.hpp"

namespace xychain::oracle {

using Matrix4c = Eigen::Matrix<std::complex<double>, 4, 4>;

Matrix4c block_hamiltonian(int k, double lambda, const ChainSpec& chain);

/// e^{-iHt} of block_hamiltonian with the same constant shift added to the
/// whole block. The shift only changes a global phase.
Matrix4c block_propagator_shifted(int k, double lambda, const ChainSpec& chain, double t, double shift);

enum class PropagatorMethod { kAnalytic, kNumeric };

Matrix4c block_propagator(int k, double lambda, const ChainSpec& chain, double t, PropagatorMethod method);

/// Ground state (pair vacuum) or normalised Gibbs state of block_hamiltonian(k, lambda_i).
Matrix4c block_initial_density(int k, const ChainSpec& chain, double lambda_i, const InitialState& init);

/// Tr[U+ rho U-^dagger] from numerically exponentiated blocks.
std::complex<double> mode_factor_oracle(int k, const ChainSpec& chain, const FieldSet& fields,
                                        const InitialState& init, double t);

inline constexpr int kMaxFockSites = 12;
inline constexpr double kDegenerateGap = 1e-10;

/// Dense Fock-space Hamiltonian (real symmetric), 2^N x 2^N.
Eigen::MatrixXd fock_hamiltonian(const ChainSpec& chain, double lambda);

struct FockResult {
  EchoSeries series;
  // Ground state only: set when both parity sectors have the same lowest
  // energy within kDegenerateGap. `other_sector_f` then holds F computed from
  // the other sector's ground state.
  bool degenerate = false;
  double gap = 0.0;
  std::vector<double> other_sector_f;
  std::vector<std::string> warnings;
};

FockResult fock_coherence_ed(const ChainSpec& chain, const FieldSet& fields, const InitialState& init,
                             std::span<const double> times);

/// Sorted eigenvalues of fock_hamiltonian.
std::vector<double> fock_spectrum(const ChainSpec& chain, double lambda);

}  // namespace xychain::oracle
