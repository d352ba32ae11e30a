#include "dqpt/realspace.hpp"

#include <cmath>
#include <complex>

#include "dqpt/dense_eig.hpp"
#include "dqpt/errors.hpp"

namespace dqpt {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using std::complex;
using namespace std::complex_literals;

namespace {

// gamma = Omega Psi, Omega Omega+ = 2.
MatrixXcd majorana_transform(int n) {
  MatrixXcd om = MatrixXcd::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    om(2 * j, j) = 1.0;
    om(2 * j, n + j) = 1.0;
    om(2 * j + 1, j) = -1i;
    om(2 * j + 1, n + j) = 1i;
  }
  return om;
}

MatrixXcd complex_correlations(const CovarianceState& state) {
  const int n = state.size;
  const MatrixXcd om = majorana_transform(n);
  // <gamma gamma> = 1 - i Gamma = Omega <Psi Psi+> Omega+
  const MatrixXcd gg =
      MatrixXd::Identity(2 * n, 2 * n) - 1i * state.majorana_cov;
  return om.adjoint() * gg * om / 4.0;
}

}  // namespace

BdGRealSpace build_bdg_realspace(const CouplingSet& g, int sites) {
  validate(g);
  if (sites < 4 || sites % 4 != 0) {
    throw ValidationError("build_bdg_realspace: N must be a positive multiple of 4");
  }
  const int n = sites;
  MatrixXcd a = MatrixXcd::Zero(n, n);
  MatrixXd b = MatrixXd::Zero(n, n);

  const complex<double> hop = 0.5 + 0.5i * g.dm;  // (J + iD)/2
  const double pair = 0.5 * g.gamma;
  for (int j = 0; j < n; ++j) {
    a(j, j) = g.lambda1 + ((j % 2 == 0) ? -g.lambda2 : g.lambda2);
    const int k = (j + 1) % n;
    const double sign = (k == 0) ? -1.0 : 1.0;  // antiperiodic bond
    a(j, k) += sign * hop;
    a(k, j) += sign * std::conj(hop);
    b(j, k) += sign * pair;
    b(k, j) -= sign * pair;
  }

  BdGRealSpace h;
  h.size = n;
  h.h_bdg = MatrixXcd::Zero(2 * n, 2 * n);
  h.h_bdg.topLeftCorner(n, n) = a;
  h.h_bdg.topRightCorner(n, n) = b;
  h.h_bdg.bottomLeftCorner(n, n) = -b.conjugate();
  h.h_bdg.bottomRightCorner(n, n) = -a.transpose();
  return h;
}

VectorXd bdg_single_particle_levels(const BdGRealSpace& h) {
  return hermitian_eigenvalues(h.h_bdg);
}

double bdg_ground_energy(const BdGRealSpace& h) {
  const VectorXd ev = bdg_single_particle_levels(h);
  double e = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > 0) e -= 0.5 * ev(i);
  }
  return e;
}

CovarianceState ground_covariance(const BdGRealSpace& h) {
  const int n = h.size;
  VectorXd evals;
  MatrixXcd evecs;
  hermitian_eig(h.h_bdg, evals, evecs);
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    if (std::abs(evals(i)) < 1e-10) {
      throw GaplessGroundStateError("ground_covariance: single-particle level at zero");
    }
  }
  // <Psi Psi+> of the vacuum = projector onto the positive-level eigenspace.
  const MatrixXcd wpos = evecs.rightCols(n);
  const MatrixXcd gc = wpos * wpos.adjoint();

  const MatrixXcd om = majorana_transform(n);
  const MatrixXcd gg = om * gc * om.adjoint();
  const MatrixXcd gamma_c = 1i * (gg - MatrixXd::Identity(2 * n, 2 * n));

  CovarianceState state;
  state.size = n;
  state.time = 0.0;
  state.majorana_cov = gamma_c.real();
  if (gamma_c.imag().cwiseAbs().maxCoeff() > 1e-10) {
    throw Error("ground_covariance: covariance has spurious imaginary part");
  }
  return state;
}

double energy_expectation(const BdGRealSpace& h, const CovarianceState& state) {
  return -0.5 * (h.h_bdg * complex_correlations(state)).trace().real();
}

CovarianceEvolver::CovarianceEvolver(const BdGRealSpace& h1) : size_(h1.size) {
  MatrixXcd evecs;
  hermitian_eig(h1.h_bdg, evals_, evecs);
  omw_ = majorana_transform(size_) * evecs;
}

MatrixXd CovarianceEvolver::propagator(double t) const {
  const auto m = omw_.rows();
  MatrixXcd phased(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    phased.col(k) = omw_.col(k) * std::exp(-1i * evals_(k) * t);
  }
  const MatrixXcd o = phased * omw_.adjoint() / 2.0;
  return o.real();
}

MatrixXd CovarianceEvolver::propagator_rows(std::span<const int> rows, double t) const {
  const auto m = omw_.rows();
  MatrixXcd phased(static_cast<Eigen::Index>(rows.size()), m);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (Eigen::Index k = 0; k < m; ++k) {
      phased(static_cast<Eigen::Index>(r), k) = omw_(rows[r], k) * std::exp(-1i * evals_(k) * t);
    }
  }
  const MatrixXcd o = phased * omw_.adjoint() / 2.0;
  return o.real();
}

CovarianceState CovarianceEvolver::at(const CovarianceState& initial, double t) const {
  if (initial.size != size_) throw ValidationError("CovarianceEvolver: size mismatch");
  const MatrixXd o = propagator(t);
  CovarianceState out;
  out.size = size_;
  out.time = initial.time + t;
  out.majorana_cov = o * initial.majorana_cov * o.transpose();
  return out;
}

MatrixXd CovarianceEvolver::window(const CovarianceState& initial, std::span<const int> rows,
                                   double t) const {
  if (initial.size != size_) throw ValidationError("CovarianceEvolver: size mismatch");
  const MatrixXd o = propagator_rows(rows, t);
  return o * initial.majorana_cov * o.transpose();
}

CovarianceState evolve_covariance(const CovarianceState& state, const BdGRealSpace& h1,
                                  double t) {
  return CovarianceEvolver(h1).at(state, t);
}

Eigen::Matrix2cd single_site_rdm(const CovarianceState& state, int j) {
  if (j < 0 || j >= state.size) throw ValidationError("single_site_rdm: site out of range");
  const double mz = state.majorana_cov(2 * j, 2 * j + 1);
  Eigen::Matrix2cd rho;
  rho << (1.0 + mz) / 2.0, 0.0, 0.0, (1.0 - mz) / 2.0;
  return rho;
}

Eigen::Matrix2cd single_site_rdm_from_window(const Eigen::MatrixXd& gamma4, int which) {
  const int o = 2 * which;
  const double mz = gamma4(o, o + 1);
  Eigen::Matrix2cd rho;
  rho << (1.0 + mz) / 2.0, 0.0, 0.0, (1.0 - mz) / 2.0;
  return rho;
}

Eigen::Matrix4cd pair_rdm_from_window(const Eigen::MatrixXd& g) {
  // Majorana rows 0..3 = (x_j, p_j, x_{j+1}, p_{j+1}).
  const double mz0 = g(0, 1);
  const double mz1 = g(2, 3);
  const double cxx = -g(1, 2);
  const double cyy = g(0, 3);
  const double cxy = g(1, 3);
  const double cyx = -g(0, 2);
  // <z z> = Pf of the 4x4 covariance block.
  const double czz = g(0, 1) * g(2, 3) - g(0, 2) * g(1, 3) + g(0, 3) * g(1, 2);

  Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  Eigen::Matrix2cd sx, sy, sz;
  sx << 0, 1, 1, 0;
  sy << 0, -1i, 1i, 0;
  sz << 1, 0, 0, -1;

  auto kron = [](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
  };

  Eigen::Matrix4cd rho = kron(id, id);
  rho += mz0 * kron(sz, id);
  rho += mz1 * kron(id, sz);
  rho += czz * kron(sz, sz);
  rho += cxx * kron(sx, sx);
  rho += cyy * kron(sy, sy);
  rho += cxy * kron(sx, sy);
  rho += cyx * kron(sy, sx);
  return rho / 4.0;
}

PairRDM pair_rdm(const CovarianceState& state, int j) {
  if (j < 0 || j + 1 >= state.size) throw ValidationError("pair_rdm: pair out of range");
  Eigen::MatrixXd g(4, 4);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) g(r, c) = state.majorana_cov(2 * j + r, 2 * j + c);
  }
  PairRDM out;
  out.first_site = j;
  out.even_odd = (j % 2 == 1);  // code site j is lattice site j+1
  out.rho = pair_rdm_from_window(g);
  return out;
}

}  // namespace dqpt
