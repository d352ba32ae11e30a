#include "dqpt/model.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "dqpt/bdg.hpp"
#include "dqpt/errors.hpp"

namespace dqpt {

namespace {
constexpr double kPi = std::numbers::pi;
}

void validate(const CouplingSet& g) {
  if (!(std::isfinite(g.gamma) && std::isfinite(g.lambda1) && std::isfinite(g.lambda2) &&
        std::isfinite(g.dm))) {
    throw ValidationError("CouplingSet: all parameters must be finite");
  }
  if (g.gamma == 0.0) throw ValidationError("CouplingSet: gamma must be nonzero");
}

void validate(const QuenchSpec& q, double boundary_tol) {
  validate(q.initial);
  validate(q.final);
  if (q.initial.gamma != q.final.gamma) {
    throw ValidationError("QuenchSpec: gamma must not change across the quench");
  }
  PhaseLabel p0 = classify_phase(q.initial, boundary_tol);
  if (p0 == PhaseLabel::CH) {
    throw ValidationError("QuenchSpec: initial point lies in the gapless CH phase");
  }
  if (p0 == PhaseLabel::BOUNDARY) {
    throw ValidationError("QuenchSpec: initial point lies on a critical surface");
  }
}

std::string to_string(PhaseLabel p) {
  switch (p) {
    case PhaseLabel::PM_I: return "PM_I";
    case PhaseLabel::PM_II: return "PM_II";
    case PhaseLabel::AFM: return "AFM";
    case PhaseLabel::CH: return "CH";
    case PhaseLabel::BOUNDARY: return "BOUNDARY";
  }
  return "?";
}

MomentumGrid MomentumGrid::midpoint(std::size_t n) {
  MomentumGrid g;
  g.phis.resize(n);
  g.weights.assign(n, (kPi / 2) / static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    g.phis[k] = (2.0 * static_cast<double>(k) + 1.0) * kPi / (4.0 * static_cast<double>(n));
  }
  return g;
}

MomentumGrid MomentumGrid::finite_chain(int sites) {
  if (sites < 4 || sites % 4 != 0) {
    throw ValidationError("MomentumGrid::finite_chain: N must be a positive multiple of 4");
  }
  return midpoint(static_cast<std::size_t>(sites / 4));
}

void validate(const MomentumGrid& grid) {
  if (grid.phis.empty() || grid.phis.size() != grid.weights.size()) {
    throw ValidationError("MomentumGrid: empty or mismatched phis/weights");
  }
  double prev = 0.0;
  double wsum = 0.0;
  for (std::size_t i = 0; i < grid.phis.size(); ++i) {
    if (!(grid.phis[i] > prev) || !(grid.phis[i] < kPi / 2)) {
      throw ValidationError("MomentumGrid: phis must be strictly increasing inside (0, pi/2)");
    }
    if (!(grid.weights[i] > 0)) throw ValidationError("MomentumGrid: weights must be positive");
    prev = grid.phis[i];
    wsum += grid.weights[i];
  }
  if (std::abs(wsum - kPi / 2) > 1e-9) {
    throw ValidationError("MomentumGrid: weights must sum to pi/2");
  }
}

std::array<double, 4> boundary_values(const CouplingSet& g) {
  const double l1s = g.lambda1 * g.lambda1;
  const double l2s = g.lambda2 * g.lambda2;
  const double gs = g.gamma * g.gamma;
  const double ds = g.dm * g.dm;
  return {
      l1s - 1.0 - l2s,        // B1: PM-I <-> AFM
      l2s - l1s - gs + ds,    // B2: PM-II <-> AFM
      l1s - 1.0 - l2s - ds + gs,  // B3: PM-I <-> CH
      l1s - l2s,              // B4: PM-II <-> CH
  };
}

PhaseLabel classify_phase(const CouplingSet& g, double tol) {
  validate(g);
  const auto b = boundary_values(g);
  const double d = std::abs(g.dm);
  const double gamma = std::abs(g.gamma);

  if (std::abs(d - gamma) <= tol) return PhaseLabel::BOUNDARY;

  if (d < gamma) {
    if (std::abs(b[0]) <= tol || std::abs(b[1]) <= tol) return PhaseLabel::BOUNDARY;
    if (b[0] > 0 && b[1] < 0) return PhaseLabel::PM_I;
    if (b[1] > 0 && b[0] < 0) return PhaseLabel::PM_II;
    if (b[0] < 0 && b[1] < 0) return PhaseLabel::AFM;
    // b[0] > 0 and b[1] > 0 is algebraically impossible for d < gamma.
    throw AmbiguousRegionError("classify_phase: sign pattern matches no region (d < gamma)");
  }

  if (std::abs(b[2]) <= tol || std::abs(b[3]) <= tol) return PhaseLabel::BOUNDARY;
  if (b[2] > 0 && b[3] > 0) return PhaseLabel::PM_I;
  if (b[3] < 0 && b[2] < 0) return PhaseLabel::PM_II;
  if (b[2] < 0 && b[3] > 0) return PhaseLabel::CH;
  // b[2] > 0 and b[3] < 0 is algebraically impossible for d > gamma.
  throw AmbiguousRegionError("classify_phase: sign pattern matches no region (d > gamma)");
}

double min_quasiparticle_gap(const CouplingSet& g, const MomentumGrid& grid) {
  validate(g);
  validate(grid);
  double best = std::numeric_limits<double>::infinity();
  for (double phi : grid.phis) {
    const auto evals = mode_spectrum(build_mode_matrix(g, phi));
    for (double e : evals) best = std::min(best, std::abs(e));
  }
  return best;
}

SegmentCrossingReport segment_crosses_boundary(const QuenchSpec& q, int samples) {
  if (samples < 2) throw ValidationError("segment_crosses_boundary: samples must be >= 2");
  validate(q.initial);
  validate(q.final);

  SegmentCrossingReport report;
  if (q.initial.lambda1 == q.final.lambda1 && q.initial.lambda2 == q.final.lambda2 &&
      q.initial.dm == q.final.dm) {
    return report;
  }

  const double gamma = std::abs(q.initial.gamma);
  auto at = [&](double s) {
    CouplingSet g = q.initial;
    g.lambda1 += s * (q.final.lambda1 - q.initial.lambda1);
    g.lambda2 += s * (q.final.lambda2 - q.initial.lambda2);
    g.dm += s * (q.final.dm - q.initial.dm);
    return g;
  };
  auto active = [&](const CouplingSet& g, int i) {
    const bool low = std::abs(g.dm) < gamma;
    return low ? (i == 0 || i == 1) : (i == 2 || i == 3);
  };

  auto prev = at(0.0);
  auto prev_b = boundary_values(prev);
  for (int k = 1; k < samples; ++k) {
    const double s1 = static_cast<double>(k) / (samples - 1);
    const double s0 = static_cast<double>(k - 1) / (samples - 1);
    const auto cur = at(s1);
    const auto cur_b = boundary_values(cur);
    for (int i = 0; i < 4; ++i) {
      if (!active(prev, i) || !active(cur, i)) continue;
      if (prev_b[i] == 0.0 || prev_b[i] * cur_b[i] < 0.0) {
        const double f0 = prev_b[i];
        const double f1 = cur_b[i];
        const double root = (f0 == f1) ? s0 : s0 + (s1 - s0) * (-f0) / (f1 - f0);
        report.crossings.push_back({i, root});
      }
    }
    // d = gamma regime edge: counts as a crossing when the phase label
    // actually changes across it (AFM <-> CH wall).
    const bool low0 = std::abs(prev.dm) < gamma;
    const bool low1 = std::abs(cur.dm) < gamma;
    if (low0 != low1) {
      PhaseLabel pa = classify_phase(prev, 0.0);
      PhaseLabel pb = classify_phase(cur, 0.0);
      if (pa != pb) {
        const double f0 = std::abs(prev.dm) - gamma;
        const double f1 = std::abs(cur.dm) - gamma;
        const double root = (f0 == f1) ? s0 : s0 + (s1 - s0) * (-f0) / (f1 - f0);
        report.crossings.push_back({4, root});
      }
    }
    prev = cur;
    prev_b = cur_b;
  }
  report.crosses = !report.crossings.empty();
  return report;
}

}  // namespace dqpt
