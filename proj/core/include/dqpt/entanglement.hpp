#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dqpt/ed.hpp"
#include "dqpt/loschmidt.hpp"
#include "dqpt/model.hpp"
#include "dqpt/realspace.hpp"

namespace dqpt {

// N(rho) = (||rho^T_B||_1 - 1) / 2 for a two-qubit state; clipped at zero.
// Throws InvalidStateError when rho fails Hermiticity / PSD / trace checks.
double negativity(const Eigen::Matrix4cd& rho);

// L(rho) = log2(2 N(rho) + 1); zero iff rho is PPT (separable in 2x2).
double log_negativity(const Eigen::Matrix4cd& rho);

// Effective GGM from the maximal eigenvalues of the single-site and
// nearest-neighbour reduced density matrices: 1 - max{mu_e, mu_o, mu_eo}.
double ggm_effective(double mu_e, double mu_o, double mu_eo);

// Full GGM of a pure state: 1 - max over all site subsets of size <= N/2 of
// the largest RDM eigenvalue. SizeLimitError for N > 12.
double ggm_full(const DenseState& psi);

enum class EntEngine { Covariance, ED };

struct EntanglementSeries {
  std::vector<double> times;
  std::vector<double> logneg_eo;  // L of the even-odd pair
  std::vector<double> logneg_oe;  // L of the odd-even pair
  std::vector<double> ggm;        // effective GGM
  EntEngine source = EntEngine::Covariance;
};

// Post-quench dynamics of the effective GGM and nearest-neighbour
// log-negativity, Gaussian engine at arbitrary N (multiple of 4).
EntanglementSeries entanglement_series_covariance(const QuenchSpec& q, int sites,
                                                  const std::vector<double>& times,
                                                  unsigned threads = 0);

// Same series from exact diagonalization, N <= 12.
EntanglementSeries entanglement_series_ed(const QuenchSpec& q, int sites,
                                          const std::vector<double>& times);

struct FluctuationStat {
  double tau = 20.0;
  double value = 0.0;  // sqrt(<G^2>_tau - <G>_tau^2)
  std::size_t n_samples = 0;
};

// Windowed standard deviation of the GGM over [0, tau], trapezoid rule.
// Throws WindowTooShortError when the series ends before tau.
FluctuationStat ggm_fluctuation(const EntanglementSeries& series, double tau);

struct FluctuationRow {
  double x = 0.0, y = 0.0;
  double sigma = 0.0;
  bool failed = false;
};

struct FluctuationScan {
  std::vector<FluctuationRow> rows;  // row-major over (y, x)
  bool ordered_initial_warning = false;  // g0 not in a PM phase
};

// Per-point <sigma_G> over final points of a plane grid; covariance engine
// for large N, ED for N <= 12. Warns (does not fail) when g0 is ordered.
FluctuationScan fluctuation_scan(const CouplingSet& g0, const PlaneSpec& plane,
                                 const Grid2D& grid2d, double tau, EntEngine engine, int sites,
                                 double dt = 0.01, unsigned threads = 0);

struct QuietWindowStats {
  int count = 0;            // quiet stretches (L < threshold) of length >= min_duration
  double longest = 0.0;
  double revival_peak = 0.0;  // max L after the first quiet window
};

// Collapse/revival descriptor for a log-negativity trace.
QuietWindowStats quiet_windows(const std::vector<double>& times, const std::vector<double>& logneg,
                               double threshold = 1e-3, double min_duration = 1.0);

}  // namespace dqpt
