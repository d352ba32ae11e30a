#include "dqpt/ed.hpp"

#include <bit>
#include <cmath>

#include "dqpt/dense_eig.hpp"
#include "dqpt/errors.hpp"

namespace dqpt {

using std::complex;
using namespace std::complex_literals;

SpinHamiltonian build_spin_hamiltonian(const CouplingSet& g, int sites) {
  validate(g);
  if (sites < 4 || sites > 12 || sites % 2 != 0) {
    throw SizeLimitError("build_spin_hamiltonian: N must be even with 4 <= N <= 12");
  }
  const int n = sites;
  const std::size_t dim = 1ull << n;

  SpinHamiltonian h;
  h.size = n;
  h.matrix = Eigen::MatrixXcd::Zero(dim, dim);

  // sigma^z_j = 1 - 2 b_j; code site j is lattice site j+1.
  std::vector<double> field(n);
  for (int j = 0; j < n; ++j) {
    field[j] = g.lambda1 + ((j % 2 == 0) ? -g.lambda2 : g.lambda2);
  }

  const double cxx = (1.0 + g.gamma) / 2.0;  // sigma^x sigma^x weight
  const double cyy = (1.0 - g.gamma) / 2.0;  // sigma^y sigma^y weight

  for (std::size_t s = 0; s < dim; ++s) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) {
      const int b = (s >> j) & 1u;
      diag += field[j] * (1.0 - 2.0 * b);
    }
    h.matrix(s, s) += 0.5 * diag;

    for (int j = 0; j < n; ++j) {
      const int k = (j + 1) % n;
      const int bj = (s >> j) & 1u;
      const int bk = (s >> k) & 1u;
      const std::size_t t = s ^ (1ull << j) ^ (1ull << k);

      // sigma^x|b> = |1-b>, sigma^y|b> = i(-1)^b |1-b>
      const double sxx = 1.0;
      const double syy = -((bj ^ bk) ? -1.0 : 1.0);
      const complex<double> sxy = 1i * ((bk & 1) ? -1.0 : 1.0);
      const complex<double> syx = 1i * ((bj & 1) ? -1.0 : 1.0);

      complex<double> amp = cxx * sxx + cyy * syy + 0.5 * g.dm * (sxy - syx);
      h.matrix(t, s) += 0.5 * amp;
    }
  }
  return h;
}

int basis_parity(unsigned long long basis_index) {
  return (std::popcount(basis_index) % 2 == 0) ? +1 : -1;
}

EdSpectrum::EdSpectrum(const SpinHamiltonian& h) : size_(h.size) {
  const std::size_t dim = 1ull << size_;
  for (std::size_t s = 0; s < dim; ++s) {
    (basis_parity(s) > 0 ? even_ : odd_).indices.push_back(static_cast<int>(s));
  }
  for (Sector* sec : {&even_, &odd_}) {
    const auto m = static_cast<Eigen::Index>(sec->indices.size());
    Eigen::MatrixXcd block(m, m);
    for (Eigen::Index a = 0; a < m; ++a) {
      for (Eigen::Index b = 0; b < m; ++b) {
        block(a, b) = h.matrix(sec->indices[a], sec->indices[b]);
      }
    }
    hermitian_eig(block, sec->evals, sec->evecs);
  }
}

DenseState EdSpectrum::evolve(const DenseState& psi, double t) const {
  if (psi.size != size_) throw ValidationError("EdSpectrum::evolve: size mismatch");
  DenseState out;
  out.size = size_;
  out.amplitudes = Eigen::VectorXcd::Zero(psi.amplitudes.size());
  for (const Sector* sec : {&even_, &odd_}) {
    const auto m = static_cast<Eigen::Index>(sec->indices.size());
    Eigen::VectorXcd comp(m);
    for (Eigen::Index a = 0; a < m; ++a) comp(a) = psi.amplitudes(sec->indices[a]);
    if (comp.squaredNorm() < 1e-28) continue;
    Eigen::VectorXcd coeff = sec->evecs.adjoint() * comp;
    for (Eigen::Index a = 0; a < m; ++a) coeff(a) *= std::exp(-1i * sec->evals(a) * t);
    comp = sec->evecs * coeff;
    for (Eigen::Index a = 0; a < m; ++a) out.amplitudes(sec->indices[a]) = comp(a);
  }
  return out;
}

DenseState EdSpectrum::sector_ground_state(int parity) const {
  const Sector& sec = sector(parity);
  DenseState out;
  out.size = size_;
  out.amplitudes = Eigen::VectorXcd::Zero(1ll << size_);
  for (std::size_t a = 0; a < sec.indices.size(); ++a) {
    out.amplitudes(sec.indices[a]) = sec.evecs(a, 0);
  }
  return out;
}

double EdSpectrum::sector_ground_energy(int parity) const { return sector(parity).evals(0); }

const Eigen::VectorXd& EdSpectrum::sector_eigenvalues(int parity) const {
  return sector(parity).evals;
}

DenseState EdSpectrum::ground_state() const {
  return sector_ground_state(even_.evals(0) <= odd_.evals(0) ? +1 : -1);
}

double EdSpectrum::ground_energy() const { return std::min(even_.evals(0), odd_.evals(0)); }

double EdSpectrum::ground_gap() const {
  // Second level of the merged spectrum; the per-sector lists are sorted.
  const bool even_first = even_.evals(0) <= odd_.evals(0);
  const auto& g = even_first ? even_ : odd_;
  const auto& other = even_first ? odd_ : even_;
  return std::min(g.evals(1), other.evals(0)) - g.evals(0);
}

GroundStateReport ground_state(const SpinHamiltonian& h) {
  EdSpectrum spec(h);
  GroundStateReport rep;
  const double ee = spec.sector_ground_energy(+1);
  const double eo = spec.sector_ground_energy(-1);
  rep.parity = (ee <= eo) ? +1 : -1;
  rep.state = spec.sector_ground_state(rep.parity);
  rep.energy = std::min(ee, eo);
  rep.gap_to_next = spec.ground_gap();
  rep.near_degenerate = rep.gap_to_next < 1e-8;
  return rep;
}

DenseState evolve(const DenseState& psi, const SpinHamiltonian& h1, double t) {
  return EdSpectrum(h1).evolve(psi, t);
}

EdEchoSeries loschmidt_echo_ed(const QuenchSpec& q, int sites, const std::vector<double>& times,
                               double expected_energy, double sector_tol) {
  validate(q);
  SpinHamiltonian h0 = build_spin_hamiltonian(q.initial, sites);
  SpinHamiltonian h1 = build_spin_hamiltonian(q.final, sites);
  EdSpectrum spec0(h0);
  EdSpectrum spec1(h1);

  const DenseState psi0 = spec0.sector_ground_state(+1);
  const double e0 = spec0.sector_ground_energy(+1);
  if (std::isfinite(expected_energy) && std::abs(e0 - expected_energy) > sector_tol) {
    throw SectorMismatchError("loschmidt_echo_ed: even-sector ground energy " +
                              std::to_string(e0) + " does not match momentum vacuum " +
                              std::to_string(expected_energy));
  }

  EdEchoSeries out;
  out.ground_energy = e0;
  out.times = times;
  out.amplitude.reserve(times.size());
  out.echo.reserve(times.size());
  out.rate.reserve(times.size());
  for (double t : times) {
    DenseState psit = spec1.evolve(psi0, t);
    const complex<double> gt = psi0.amplitudes.dot(psit.amplitudes);
    const double l = std::norm(gt);
    out.amplitude.push_back(gt);
    out.echo.push_back(l);
    out.rate.push_back(-std::log(std::max(l, 1e-300)) / sites);
  }
  return out;
}

Eigen::MatrixXcd rdm_partial_trace(const DenseState& psi, const std::vector<int>& sites) {
  const int n = psi.size;
  const int k = static_cast<int>(sites.size());
  for (int s : sites) {
    if (s < 0 || s >= n) throw ValidationError("rdm_partial_trace: site out of range");
  }
  unsigned long long keep_mask = 0;
  for (int s : sites) keep_mask |= 1ull << s;
  if (std::popcount(keep_mask) != k) throw ValidationError("rdm_partial_trace: duplicate sites");

  std::vector<int> env;
  for (int j = 0; j < n; ++j) {
    if (!(keep_mask >> j & 1ull)) env.push_back(j);
  }

  const std::size_t sub_dim = 1ull << k;
  const std::size_t env_dim = 1ull << env.size();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(sub_dim, sub_dim);
  Eigen::VectorXcd col(sub_dim);
  for (std::size_t e = 0; e < env_dim; ++e) {
    unsigned long long base = 0;
    for (std::size_t j = 0; j < env.size(); ++j) {
      if (e >> j & 1ull) base |= 1ull << env[j];
    }
    for (std::size_t a = 0; a < sub_dim; ++a) {
      unsigned long long idx = base;
      for (int j = 0; j < k; ++j) {
        if (a >> (k - 1 - j) & 1ull) idx |= 1ull << sites[j];
      }
      col(a) = psi.amplitudes(idx);
    }
    rho.noalias() += col * col.adjoint();
  }
  return rho;
}

}  // namespace dqpt
