#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "dqpt/bdg.hpp"
#include "dqpt/model.hpp"

namespace dqpt {

// Loschmidt amplitude of one momentum mode at time t (units hbar/J),
// evaluated from the stored minors; finite for singular U and equal to the
// closed-form T-matrix ratio wherever that form exists.
std::complex<double> mode_amplitude(const QuenchOverlap& ov, double t);

// Per-mode overlap data for a quench over a momentum grid. Degenerate modes
// are retried with phi nudged by 1e-10.
class QuenchModeTable {
 public:
  QuenchModeTable(const QuenchSpec& q, const MomentumGrid& grid, unsigned threads = 0);

  const MomentumGrid& grid() const { return grid_; }
  const QuenchSpec& quench() const { return quench_; }
  const std::vector<QuenchOverlap>& overlaps() const { return overlaps_; }

  double mode_modulus(std::size_t k, double t) const;

  // |G_phi(t)| at an arbitrary phi (fresh 4x4 diagonalizations).
  double modulus_at(double phi, double t) const;

  // Ground energy of the prepared state: sum of the initial-frame vacuum
  // energies over the grid modes, units of J. For the finite-chain grid this
  // is the even-sector ground energy of the N-site chain.
  double vacuum_energy() const;

 private:
  QuenchSpec quench_;
  MomentumGrid grid_;
  std::vector<QuenchOverlap> overlaps_;
};

struct RateSeries {
  std::vector<double> times;
  std::vector<double> values;  // F(t) >= 0
  MomentumGrid grid;
  QuenchSpec quench;
};

// F(t) = -(1/pi) Integral_0^{pi/2} dphi log|G_phi(t)| by the grid's
// quadrature, pairwise-summed. |G| is clamped below at 1e-30 (integrable log
// singularities at critical times stay finite).
RateSeries rate_function(const QuenchSpec& q, const MomentumGrid& grid,
                         const std::vector<double>& times, unsigned threads = 0);

// Fallback cusp detector: times where the centered second difference of F
// exceeds `factor` times its median, for cross-checking the |G|-based
// critical-time search. Warn-only signal, never authoritative.
std::vector<double> detect_cusps(const RateSeries& series, double factor = 50.0);

struct ModeMinimum {
  double value = 1.0;
  double phi = 0.0;
};

// min_phi |G_phi(t)|, grid scan refined by golden-section search around the
// grid minimum.
ModeMinimum min_mode_modulus(const QuenchModeTable& table, double t);

struct CriticalTime {
  double t_star = 0.0;
  double phi_star = 0.0;
  double residual = 0.0;  // |G| at the refined minimum
};

struct SpacingStats {
  double min_dt = 0.0;
  double max_dt = 0.0;
  double mean_dt = 0.0;
};

struct CriticalTimes {
  std::vector<CriticalTime> entries;  // sorted by t_star
  SpacingStats spacing;               // of consecutive t_star (>= 2 entries)
};

struct CriticalSearchOptions {
  double raster_dt = 0.01;
  double refine_target = 1e-9;   // stop refining below this |G|
  double candidate_gate = 0.5;   // raster minima above this are ignored
  double dedup_dt = 1e-3;
  int max_rounds = 200;
  unsigned threads = 0;
};

// All t* in (0, t_max] with min_phi |G_phi(t*)| < eps_crit, refined by
// alternating golden-section searches in t and phi. Empty result = no DQPT.
CriticalTimes find_critical_times(const QuenchSpec& q, const MomentumGrid& grid, double t_max,
                                  double eps_crit = 1e-6,
                                  const CriticalSearchOptions& opts = {});

bool detect_dqpt(const QuenchSpec& q, const MomentumGrid& grid, double t_max,
                 double eps_crit = 1e-6, const CriticalSearchOptions& opts = {});

// Scan plane axes: 0 = lambda1, 1 = lambda2, 2 = d.
struct PlaneSpec {
  int axis_x = 0;
  int axis_y = 1;
  double fixed_value = 0.0;
};

struct Grid2D {
  double x0 = -2.0, x1 = 2.0;
  int nx = 21;
  double y0 = -2.0, y1 = 2.0;
  int ny = 21;

  double x(int i) const { return nx > 1 ? x0 + (x1 - x0) * i / (nx - 1) : x0; }
  double y(int j) const { return ny > 1 ? y0 + (y1 - y0) * j / (ny - 1) : y0; }
};

CouplingSet plane_point(const CouplingSet& base, const PlaneSpec& plane, double x, double y);

struct ScanRow {
  double x = 0.0, y = 0.0;
  bool dqpt = false;
  int n_tstar = 0;
  double first_tstar = 0.0;  // 0 when none
  bool failed = false;       // per-point numerical failure, row kept
};

struct ScanTable {
  std::vector<ScanRow> rows;  // row-major over (y, x)
  double t_max = 0.0;
  std::size_t n_modes = 0;
};

// detect_dqpt over final points of a plane grid, quenching from g0.
ScanTable scan_region(const CouplingSet& g0, const PlaneSpec& plane, const Grid2D& grid2d,
                      double t_max, const MomentumGrid& grid, double eps_crit = 1e-6,
                      const CriticalSearchOptions& opts = {});

struct TfiReference {
  double phi_star = 0.0;
  double omega = 0.0;   // quasiparticle energy of the crossing branch at phi*
  int branch = 0;       // 0: omega1/T11, 1: omega2/T22
  std::vector<double> times;  // pi/omega * (n + 1/2), n = 0, 1, ...
};

// Analytic critical times for lambda2 = d = 0 quenches: bisects
// |T_ii(phi)| = 1 on both diagonal branches (in the minor form, which stays
// bounded where U is singular). Throws NoSolutionError when neither branch
// reaches 1.
TfiReference tfi_reference_times(const QuenchSpec& q, int n_max);

}  // namespace dqpt
