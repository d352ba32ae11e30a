#pragma once

#include <Eigen/Dense>
#include <complex>
#include <limits>
#include <vector>

#include "dqpt/model.hpp"

namespace dqpt {

// Dense spin-1/2 Hamiltonian of the chain, periodic boundary, basis states
// indexed by bit patterns (bit j = 1 means spin down at code site j, i.e.
// sigma^z_j = 1 - 2*bit). Code site j corresponds to lattice site j+1, so
// even code indices carry the (-1)^j = -1 alternating-field sign.
struct SpinHamiltonian {
  int size = 0;
  Eigen::MatrixXcd matrix;
};

// N even, 4 <= N <= 12. Throws SizeLimitError otherwise.
SpinHamiltonian build_spin_hamiltonian(const CouplingSet& g, int sites);

struct DenseState {
  int size = 0;
  Eigen::VectorXcd amplitudes;
};

// +1 / -1 under the global spin-flip parity prod_j sigma^z_j.
int basis_parity(unsigned long long basis_index);

// Parity-resolved spectral decomposition. The Hamiltonian commutes with
// total parity, so each sector is diagonalized as a dense block; sector
// eigenvectors live on the sector's basis indices.
class EdSpectrum {
 public:
  explicit EdSpectrum(const SpinHamiltonian& h);

  int size() const { return size_; }

  // Exact evolution exp(-i H t)|psi>.
  DenseState evolve(const DenseState& psi, double t) const;

  // Global ground state; ties broken toward the even sector.
  DenseState ground_state() const;
  double ground_energy() const;
  // Gap from the global ground state to the next level (any sector).
  double ground_gap() const;

  // Lowest eigenstate of the requested parity sector (+1 or -1).
  DenseState sector_ground_state(int parity) const;
  double sector_ground_energy(int parity) const;

  const Eigen::VectorXd& sector_eigenvalues(int parity) const;

 private:
  struct Sector {
    std::vector<int> indices;  // basis states of this sector
    Eigen::VectorXd evals;
    Eigen::MatrixXcd evecs;
  };
  const Sector& sector(int parity) const { return parity > 0 ? even_ : odd_; }

  int size_ = 0;
  Sector even_;
  Sector odd_;
};

struct GroundStateReport {
  DenseState state;
  double energy = 0.0;
  double gap_to_next = 0.0;
  bool near_degenerate = false;  // gap < 1e-8
  int parity = +1;
};

GroundStateReport ground_state(const SpinHamiltonian& h);

// One-shot exact evolution (decomposes h1 internally; prefer EdSpectrum for
// time series).
DenseState evolve(const DenseState& psi, const SpinHamiltonian& h1, double t);

struct EdEchoSeries {
  std::vector<double> times;
  std::vector<std::complex<double>> amplitude;  // G(t)
  std::vector<double> echo;                     // |G|^2
  std::vector<double> rate;                     // -(1/N) log echo
  double ground_energy = 0.0;
};

// Loschmidt echo after the sudden quench, initial state = lowest even-parity
// eigenstate of H(g0) (the fermionic convention; the AFM quasi-degenerate
// partner lives in the other sector). If expected_energy is finite the
// initial energy must match it to sector_tol, else SectorMismatchError.
EdEchoSeries loschmidt_echo_ed(const QuenchSpec& q, int sites, const std::vector<double>& times,
                               double expected_energy = std::numeric_limits<double>::quiet_NaN(),
                               double sector_tol = 1e-8);

// Exact partial trace onto the given (distinct) code sites. Row/column
// indices follow tensor (kron) order: the first listed site is the most
// significant bit of the reduced index.
Eigen::MatrixXcd rdm_partial_trace(const DenseState& psi, const std::vector<int>& sites);

}  // namespace dqpt
