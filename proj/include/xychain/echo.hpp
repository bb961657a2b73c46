#pragma once

#include <complex>
#include <span>
#include <vector>

#include "xychain/spectrum.hpp"

namespace xychain {

enum class InitialKind { kGround, kThermal };

/// Initial environment state: ground state of H(lambda_i) or its Gibbs state
/// at `temperature` (k_B = 1). A zero temperature is the ground state.
struct InitialState {
  InitialKind kind = InitialKind::kGround;
  double temperature = 0.0;

  static InitialState ground() { return {}; }
  static InitialState thermal(double temperature);

  bool is_thermal() const { return kind == InitialKind::kThermal; }
  double beta() const { return 1.0 / temperature; }
};

/// Spectral data of one momentum pair for the three fields that enter the
/// echo: the two branches lambda_e +/- g and the preparation field lambda_i.
struct BranchMode {
  double x = 0.0;
  double theta_plus = 0.0;
  double theta_minus = 0.0;
  double theta_init = 0.0;
  double omega_plus = 0.0;
  double omega_minus = 0.0;
  double omega_init = 0.0;
};

std::vector<BranchMode> branch_modes(const ChainSpec& chain, const FieldSet& fields);
BranchMode branch_mode(const ChainSpec& chain, const FieldSet& fields, int k);

/// Closed forms for the ground-state pair factor.
///   kFourTerm               four exponentials (canonical)
///   kTrigonometric          cos/sin form with the second imaginary term
///                           carrying sin(W- t) cos(W+ t)
///   kTrigonometricAsPrinted cos/sin form with both imaginary terms carrying
///                           sin(W+ t) cos(W- t); kept for comparison only,
///                           it disagrees with the block oracle whenever
///                           W+ != W- and cos(theta_- - theta_i) != 0
enum class GroundFormula { kFourTerm, kTrigonometric, kTrigonometricAsPrinted };

/// D_k(t) = Tr[U+ rho_k U-^dagger] for the pair vacuum of H(lambda_i).
std::complex<double> mode_decoherence_ground(const BranchMode& mode, double t,
                                             GroundFormula formula = GroundFormula::kFourTerm);

/// Same trace for the pair's Gibbs state at `temperature`, normalised by the
/// per-pair partition function 1 + 2 e^{-beta W_i} + e^{-2 beta W_i}.
std::complex<double> mode_decoherence_thermal(const BranchMode& mode, double temperature, double t);

/// Factor of a single unpaired momentum (k = 0 or k = n/2, where sin x = 0)
/// whose occupation is conserved by both branches. `eps_init` is
/// lambda_i - cos x. The energy of occupation q is eps (2q - 1).
std::complex<double> unpaired_mode_decoherence(double eps_init, double g, const InitialState& init, double t);

/// How the two self-paired momenta k = 0 and k = n/2 enter the product.
///   kExact        as single fermion modes (matches exact diagonalization
///                 for thermal states too)
///   kPairFormula  product over k = 1..n/2 of the pair formula, k = 0 omitted
/// Both give the same F for the ground state.
enum class UnpairedModes { kExact, kPairFormula };

enum class Execution { kSerial, kParallel };

struct EchoOptions {
  UnpairedModes unpaired = UnpairedModes::kExact;
  Execution execution = Execution::kParallel;
};

struct EchoParams {
  ChainSpec chain;
  FieldSet fields;
  InitialState init;
};

struct EchoSeries {
  EchoParams params;
  std::vector<double> times;
  std::vector<std::complex<double>> d_values;
  std::vector<double> f_values;
  std::vector<double> log_f;  // sum of ln|D_k|; -inf when a factor vanishes

  std::size_t size() const { return times.size(); }
};

/// F(t) = prod_k |D_k(t)| and D(t) = prod_k D_k(t) on the given time grid.
EchoSeries coherence_series(const ChainSpec& chain, const FieldSet& fields, const InitialState& init,
                            std::span<const double> times, EchoOptions options = {});

struct QubitDensity {
  double rho11 = 1.0;
  double rho22 = 0.0;
  std::complex<double> rho12 = 0.0;

  void validate() const;
};

/// Central-spin density matrix after the environment multiplied the
/// coherence by `d`. Populations are untouched.
QubitDensity reduced_density(const QubitDensity& rho0, std::complex<double> d);

}  // namespace xychain
