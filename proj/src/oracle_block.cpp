#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "xychain/oracle.hpp"

namespace xychain::oracle {

using cplx = std::complex<double>;

namespace {

double momentum(int k, const ChainSpec& chain) {
  chain.validate();
  if (k < 1 || k > chain.modes()) throw ParameterError("mode index out of range: " + std::to_string(k));
  return 2.0 * std::numbers::pi * k / chain.n;
}

Matrix4c exp_hermitian(const Matrix4c& h, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(h);
  const auto& v = es.eigenvectors();
  Eigen::Vector4cd phases;
  for (int i = 0; i < 4; ++i) phases[i] = std::polar(1.0, -es.eigenvalues()[i] * t);
  return v * phases.asDiagonal() * v.adjoint();
}

}  // namespace

Matrix4c block_hamiltonian(int k, double lambda, const ChainSpec& chain) {
  const double x = momentum(k, chain);
  // Omega cos(theta) = 2 eps and Omega sin(theta) = 2 |gamma| sin x.
  const double two_eps = 2.0 * (lambda - std::cos(x));
  const double two_pair = 2.0 * std::abs(chain.gamma) * std::sin(x);
  const double c = -2.0 * std::cos(x);
  Matrix4c h = Matrix4c::Zero();
  h(0, 0) = -two_eps + c;
  h(0, 1) = cplx(0.0, two_pair);
  h(1, 0) = cplx(0.0, -two_pair);
  h(1, 1) = two_eps + c;
  h(2, 2) = c;
  h(3, 3) = c;
  return h;
}

Matrix4c block_propagator_shifted(int k, double lambda, const ChainSpec& chain, double t, double shift) {
  Matrix4c h = block_hamiltonian(k, lambda, chain);
  h += shift * Matrix4c::Identity();
  return exp_hermitian(h, t);
}

Matrix4c block_propagator(int k, double lambda, const ChainSpec& chain, double t, PropagatorMethod method) {
  if (method == PropagatorMethod::kNumeric) return exp_hermitian(block_hamiltonian(k, lambda, chain), t);

  const double x = momentum(k, chain);
  const double omega = mode_omega(lambda, chain.gamma, x);
  const double theta = mode_theta(lambda, chain.gamma, x);
  // Lambda_k = Omega/2 and phi_k = x.
  const double s = std::sin(omega * t);
  const double c = std::cos(omega * t);
  Matrix4c u = Matrix4c::Zero();
  u(0, 0) = cplx(c, std::cos(theta) * s);
  u(0, 1) = std::sin(theta) * s;
  u(1, 0) = -std::sin(theta) * s;
  u(1, 1) = cplx(c, -std::cos(theta) * s);
  u(2, 2) = 1.0;
  u(3, 3) = 1.0;
  return std::polar(1.0, 2.0 * t * std::cos(x)) * u;
}

Matrix4c block_initial_density(int k, const ChainSpec& chain, double lambda_i, const InitialState& init) {
  const Matrix4c h = block_hamiltonian(k, lambda_i, chain);
  Matrix4c rho = Matrix4c::Zero();
  if (init.is_thermal()) {
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(h);
    const double e0 = es.eigenvalues().minCoeff();
    Eigen::Vector4cd w;
    for (int i = 0; i < 4; ++i) w[i] = std::exp(-(es.eigenvalues()[i] - e0) * init.beta());
    rho = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
    return rho / rho.trace();
  }
  // Lowest state of the paired 2x2 block; a degenerate block keeps |00>.
  const Eigen::Matrix2cd pair = h.topLeftCorner<2, 2>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(pair);
  Eigen::Vector2cd v(1.0, 0.0);
  if (es.eigenvalues()[1] - es.eigenvalues()[0] > kDegenerateOmega) v = es.eigenvectors().col(0);
  rho.topLeftCorner<2, 2>() = v * v.adjoint();
  return rho;
}

cplx mode_factor_oracle(int k, const ChainSpec& chain, const FieldSet& fields, const InitialState& init, double t) {
  const Matrix4c up = block_propagator(k, fields.lambda_plus(), chain, t, PropagatorMethod::kNumeric);
  const Matrix4c um = block_propagator(k, fields.lambda_minus(), chain, t, PropagatorMethod::kNumeric);
  const Matrix4c rho = block_initial_density(k, chain, fields.lambda_i(), init);
  return (up * rho * um.adjoint()).trace();
}

}  // namespace xychain::oracle
