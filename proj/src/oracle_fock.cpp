#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>

#include <Eigen/Eigenvalues>

#include "xychain/oracle.hpp"

namespace xychain::oracle {

using cplx = std::complex<double>;

namespace {

using State = std::uint32_t;

// One fermionic ladder operator acting on an occupation bitmask, with the
// Jordan-Wigner string counted over lower sites.
struct Ladder {
  int site;
  bool create;
};

std::optional<std::pair<State, int>> apply(std::initializer_list<Ladder> ops_right_to_left, State s) {
  int sign = 1;
  for (const Ladder& op : ops_right_to_left) {
    const State bit = State{1} << op.site;
    const bool occupied = (s & bit) != 0;
    if (occupied == op.create) return std::nullopt;
    if (std::popcount(s & (bit - 1)) % 2 != 0) sign = -sign;
    s ^= bit;
  }
  return std::make_pair(s, sign);
}

void check_size(const ChainSpec& chain) {
  chain.validate();
  if (chain.n > kMaxFockSites) {
    throw ParameterError("Fock-space diagonalization supports at most " + std::to_string(kMaxFockSites) +
                         " sites, got " + std::to_string(chain.n));
  }
}

struct SectorSolve {
  Eigen::VectorXd e_init, e_plus, e_minus;
  Eigen::MatrixXd v_init, v_plus, v_minus;
};

Eigen::MatrixXd restrict(const Eigen::MatrixXd& h, const std::vector<State>& states) {
  const auto d = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXd out(d, d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) out(a, b) = h(states[a], states[b]);
  return out;
}

void solve(const Eigen::MatrixXd& h, Eigen::VectorXd& e, Eigen::MatrixXd& v) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  e = es.eigenvalues();
  v = es.eigenvectors();
}

// <psi|U-^dagger U+|psi> for a real sector vector psi.
cplx pure_overlap(const SectorSolve& s, const Eigen::VectorXd& psi, double t) {
  const Eigen::VectorXd cp = s.v_plus.transpose() * psi;
  const Eigen::VectorXd cm = s.v_minus.transpose() * psi;
  const Eigen::Index d = psi.size();
  Eigen::VectorXcd phi_p(d), phi_m(d);
  for (Eigen::Index a = 0; a < d; ++a) {
    phi_p[a] = std::polar(1.0, -s.e_plus[a] * t) * cp[a];
    phi_m[a] = std::polar(1.0, -s.e_minus[a] * t) * cm[a];
  }
  const Eigen::VectorXcd up = s.v_plus.cast<cplx>() * phi_p;
  const Eigen::VectorXcd um = s.v_minus.cast<cplx>() * phi_m;
  return um.dot(up);
}

}  // namespace

Eigen::MatrixXd fock_hamiltonian(const ChainSpec& chain, double lambda) {
  check_size(chain);
  const int n = chain.n;
  const State dim = State{1} << n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (State s = 0; s < dim; ++s) {
    for (int l = 0; l < n; ++l) {
      const int r = (l + 1) % n;
      h(s, s) += lambda * (((s >> l) & 1U) ? -1.0 : 1.0);
      const auto add = [&](std::optional<std::pair<State, int>> hit, double coeff) {
        if (hit) h(hit->first, s) += coeff * hit->second;
      };
      add(apply({{l, false}, {r, true}}, s), -1.0);           // a+_r a_l
      add(apply({{r, false}, {l, true}}, s), -1.0);           // a+_l a_r
      add(apply({{l, false}, {r, false}}, s), -chain.gamma);  // a_r a_l
      add(apply({{r, true}, {l, true}}, s), -chain.gamma);    // a+_l a+_r
    }
  }
  return h;
}

std::vector<double> fock_spectrum(const ChainSpec& chain, double lambda) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(fock_hamiltonian(chain, lambda), Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().begin(), es.eigenvalues().end());
  std::sort(out.begin(), out.end());
  return out;
}

FockResult fock_coherence_ed(const ChainSpec& chain, const FieldSet& fields, const InitialState& init,
                             std::span<const double> times) {
  check_size(chain);
  const Eigen::MatrixXd h_init = fock_hamiltonian(chain, fields.lambda_i());
  const Eigen::MatrixXd h_plus = fock_hamiltonian(chain, fields.lambda_plus());
  const Eigen::MatrixXd h_minus = fock_hamiltonian(chain, fields.lambda_minus());

  std::array<std::vector<State>, 2> parity_states;
  for (State s = 0; s < (State{1} << chain.n); ++s) parity_states[std::popcount(s) % 2].push_back(s);

  std::array<SectorSolve, 2> sectors;
  for (int p = 0; p < 2; ++p) {
    solve(restrict(h_init, parity_states[p]), sectors[p].e_init, sectors[p].v_init);
    solve(restrict(h_plus, parity_states[p]), sectors[p].e_plus, sectors[p].v_plus);
    solve(restrict(h_minus, parity_states[p]), sectors[p].e_minus, sectors[p].v_minus);
  }

  FockResult result;
  result.series.params = {chain, fields, init};
  result.series.times.assign(times.begin(), times.end());

  const auto push = [&](cplx d) {
    result.series.d_values.push_back(d);
    result.series.f_values.push_back(std::abs(d));
    result.series.log_f.push_back(std::log(std::abs(d)));
  };

  if (!init.is_thermal()) {
    const int best = sectors[0].e_init[0] <= sectors[1].e_init[0] ? 0 : 1;
    const int other = 1 - best;
    const SectorSolve& s = sectors[best];
    if (s.e_init.size() > 1 && s.e_init[1] - s.e_init[0] < kDegenerateGap) {
      result.warnings.push_back("ground state is degenerate inside its parity sector");
    }
    result.gap = sectors[other].e_init[0] - s.e_init[0];
    result.degenerate = result.gap < kDegenerateGap;
    if (result.degenerate) {
      result.warnings.push_back("ground state is degenerate across parity sectors (gap " +
                                std::to_string(result.gap) + "); both sectors reported");
    }
    const Eigen::VectorXd psi = s.v_init.col(0);
    for (double t : times) push(pure_overlap(s, psi, t));
    if (result.degenerate) {
      const Eigen::VectorXd psi_other = sectors[other].v_init.col(0);
      for (double t : times) result.other_sector_f.push_back(std::abs(pure_overlap(sectors[other], psi_other, t)));
    }
    return result;
  }

  const double e_min = std::min(sectors[0].e_init[0], sectors[1].e_init[0]);
  std::array<Eigen::VectorXd, 2> weights;
  double z = 0.0;
  for (int p = 0; p < 2; ++p) {
    weights[p] = (-(sectors[p].e_init.array() - e_min) * init.beta()).exp();
    z += weights[p].sum();
  }

  // Overlaps of the initial eigenbasis with each branch eigenbasis.
  std::array<Eigen::MatrixXd, 2> a_plus, a_minus, w;
  for (int p = 0; p < 2; ++p) {
    a_plus[p] = sectors[p].v_plus.transpose() * sectors[p].v_init;
    a_minus[p] = sectors[p].v_minus.transpose() * sectors[p].v_init;
    w[p] = sectors[p].v_minus.transpose() * sectors[p].v_plus;
  }

  for (double t : times) {
    cplx d = 0.0;
    for (int p = 0; p < 2; ++p) {
      const SectorSolve& s = sectors[p];
      const Eigen::Index dim = s.e_init.size();
      Eigen::VectorXcd ph_p(dim), ph_m(dim);
      for (Eigen::Index a = 0; a < dim; ++a) {
        ph_p[a] = std::polar(1.0, -s.e_plus[a] * t);
        ph_m[a] = std::polar(1.0, s.e_minus[a] * t);
      }
      const Eigen::MatrixXcd x = w[p].cast<cplx>() * (ph_p.asDiagonal() * a_plus[p].cast<cplx>());
      for (Eigen::Index col = 0; col < dim; ++col) {
        const double pn = weights[p][col] / z;
        if (pn == 0.0) continue;
        cplx acc = 0.0;
        for (Eigen::Index a = 0; a < dim; ++a) acc += ph_m[a] * a_minus[p](a, col) * x(a, col);
        d += pn * acc;
      }
    }
    push(d);
  }
  return result;
}

}  // namespace xychain::oracle
