#pragma once

#include <array>
#include <string>
#include <vector>

namespace dqpt {

// Dimensionless couplings of the alternating-field transverse XY chain with
// DM interaction. Energies in units of J, times in units of hbar/J
// (J = hbar = 1 internally).
struct CouplingSet {
  double gamma = 1.0;    // xy anisotropy, != 0
  double lambda1 = 0.0;  // uniform transverse field h1/J
  double lambda2 = 0.0;  // alternating transverse field h2/J
  double dm = 0.0;       // DM strength D/J

  bool operator==(const CouplingSet&) const = default;
};

// Throws ValidationError if gamma == 0 or any field is non-finite.
void validate(const CouplingSet& g);

// Sudden quench g0 -> g1 at t = 0. gamma is never quenched.
struct QuenchSpec {
  CouplingSet initial;
  CouplingSet final;
};

// Throws ValidationError if gamma differs across the quench, or if the
// initial point sits in the CH phase or on a critical surface (degenerate /
// gapless initial states are excluded from the Loschmidt treatment).
void validate(const QuenchSpec& q, double boundary_tol = 1e-9);

enum class PhaseLabel { PM_I, PM_II, AFM, CH, BOUNDARY };

std::string to_string(PhaseLabel p);

// Momentum grid on (0, pi/2): strictly increasing angles, positive weights
// summing to pi/2, no point at 0 or pi/2 exactly.
struct MomentumGrid {
  std::vector<double> phis;
  std::vector<double> weights;

  std::size_t size() const { return phis.size(); }

  // Midpoint rule with n panels: phi_k = (2k-1) * (pi/2) / (2n). With
  // n = N/4 these are exactly the momenta (2k-1)*pi/N of the N-site chain
  // in the antiperiodic (even-parity) fermion sector.
  static MomentumGrid midpoint(std::size_t n);

  // The exact finite-chain grid: N multiple of 4, n = N/4 modes.
  static MomentumGrid finite_chain(int sites);
};

void validate(const MomentumGrid& grid);

// Signed boundary functions; each B_i = 0 reproduces one equilibrium
// critical surface:
//   B1 = l1^2 - 1 - l2^2            (PM-I <-> AFM,  d < gamma)
//   B2 = l2^2 - l1^2 - gamma^2 + d^2 (PM-II <-> AFM, d < gamma)
//   B3 = l1^2 - 1 - l2^2 - d^2 + gamma^2 (PM-I <-> CH, d > gamma)
//   B4 = l1^2 - l2^2                (PM-II <-> CH,  d > gamma)
std::array<double, 4> boundary_values(const CouplingSet& g);

// Region assignment by sign pattern of the active boundary functions.
// |d| is used throughout (boundary formulas depend on d^2); d == gamma is
// reported as BOUNDARY since the regime split there is two-sided.
PhaseLabel classify_phase(const CouplingSet& g, double tol = 1e-9);

// Minimum over the grid of the distance of the mode spectrum from zero,
// i.e. min_phi min_i |eigenvalue_i of H_p(phi)|. Tends to zero on critical
// surfaces and inside the gapless CH phase as the grid is refined.
double min_quasiparticle_gap(const CouplingSet& g, const MomentumGrid& grid);

struct BoundaryCrossing {
  int boundary_index;  // 0..3 for B1..B4
  double s;            // segment parameter in [0, 1]
};

struct SegmentCrossingReport {
  bool crosses = false;
  std::vector<BoundaryCrossing> crossings;
};

// Samples the active boundary functions along the straight segment
// g0 -> g1 in (lambda1, lambda2, d) space and reports sign changes,
// respecting the d < gamma / d > gamma regime at each sample.
SegmentCrossingReport segment_crosses_boundary(const QuenchSpec& q, int samples = 257);

}  // namespace dqpt
