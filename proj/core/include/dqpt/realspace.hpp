#pragma once

#include <Eigen/Dense>
#include <span>

#include "dqpt/model.hpp"

namespace dqpt {

// Single-particle (BdG) matrix of the Jordan-Wigner fermion chain in the
// doubled basis Psi = (c_0..c_{N-1}, c+_0..c+_{N-1}):
//
//   H = 1/2 Psi+ [ A  B; -B* -A^T ] Psi,   A Hermitian, B antisymmetric,
//
// with hopping (J + iD)/2, pairing J*gamma/2, staggered chemical potential
// from the transverse fields, and the antiperiodic boundary sign of the
// even-parity sector. The total scalar offset vanishes (sum of the field
// constants cancels tr A / 2), so many-body energies are read off the
// spectrum alone.
struct BdGRealSpace {
  int size = 0;               // N, multiple of 4
  Eigen::MatrixXcd h_bdg;     // 2N x 2N
};

BdGRealSpace build_bdg_realspace(const CouplingSet& g, int sites);

// Single-particle levels, ascending (come in +/- pairs).
Eigen::VectorXd bdg_single_particle_levels(const BdGRealSpace& h);

// Many-body ground energy: -1/2 sum of positive levels.
double bdg_ground_energy(const BdGRealSpace& h);

// Real antisymmetric Majorana covariance Gamma_ij = (i/2) <[gamma_i, gamma_j]>
// in the interleaved ordering gamma_{2j} = c_j + c+_j,
// gamma_{2j+1} = i(c+_j - c_j). Pure Gaussian states have Gamma Gamma^T = 1.
struct CovarianceState {
  int size = 0;                 // N sites, 2N Majoranas
  Eigen::MatrixXd majorana_cov; // 2N x 2N
  double time = 0.0;            // Jt/hbar since the quench
};

// Covariance of the Bogoliubov vacuum (all negative levels filled).
// Throws GaplessGroundStateError if a level is within 1e-10 of zero.
CovarianceState ground_covariance(const BdGRealSpace& h);

// <H> evaluated on a Gaussian state.
double energy_expectation(const BdGRealSpace& h, const CovarianceState& state);

// Exact one-particle evolution Gamma(t) = O(t) Gamma O(t)^T with O(t) the
// real orthogonal propagator of h1; spectral, no time-stepping error.
class CovarianceEvolver {
 public:
  explicit CovarianceEvolver(const BdGRealSpace& h1);

  CovarianceState at(const CovarianceState& initial, double t) const;

  // Rows of Gamma(t) restricted to a set of Majorana indices; cheap path for
  // local observables along long trajectories. Returns the |rows| x |rows|
  // block of Gamma(t).
  Eigen::MatrixXd window(const CovarianceState& initial, std::span<const int> rows,
                         double t) const;

  const Eigen::VectorXd& levels() const { return evals_; }

 private:
  Eigen::MatrixXd propagator(double t) const;
  Eigen::MatrixXd propagator_rows(std::span<const int> rows, double t) const;

  int size_ = 0;
  Eigen::VectorXd evals_;
  Eigen::MatrixXcd omw_;  // Omega * W, maps eigenmodes to Majorana components
};

CovarianceState evolve_covariance(const CovarianceState& state, const BdGRealSpace& h1, double t);

// rho = (1 + <sigma^z_j> sigma^z) / 2; transverse components vanish by
// fermion parity.
Eigen::Matrix2cd single_site_rdm(const CovarianceState& state, int j);

struct PairRDM {
  Eigen::Matrix4cd rho;
  int first_site = 0;        // pair (j, j+1)
  bool even_odd = false;     // true when the first site is lattice-even
};

// Nearest-neighbour two-site density matrix from Wick contractions of the
// covariance. Parity-allowed coefficients: 1, z0, 0z, zz, xx, yy, xy, yx.
PairRDM pair_rdm(const CovarianceState& state, int j);

// Same contractions straight from a covariance window (rows must be the four
// Majorana indices 2j..2j+3).
Eigen::Matrix4cd pair_rdm_from_window(const Eigen::MatrixXd& gamma4);
Eigen::Matrix2cd single_site_rdm_from_window(const Eigen::MatrixXd& gamma4, int which);

}  // namespace dqpt
