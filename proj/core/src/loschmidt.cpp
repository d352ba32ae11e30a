#include "dqpt/loschmidt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dqpt/errors.hpp"
#include "dqpt/parallel.hpp"

namespace dqpt {

using std::complex;
using namespace std::complex_literals;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGolden = 0.6180339887498949;

QuenchOverlap overlap_at(const QuenchSpec& q, double phi) {
  for (int attempt = 0;; ++attempt) {
    try {
      const auto d0 = diagonalize_mode(q.initial, phi);
      const auto d1 = diagonalize_mode(q.final, phi);
      return quench_overlap(d0, d1);
    } catch (const DegenerateModeError&) {
      if (attempt >= 3) throw;
      phi += 1e-10;
    }
  }
}

// Golden-section minimization of f on [a, b].
template <typename F>
std::pair<double, double> golden_min(F&& f, double a, double b, int iters) {
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

}  // namespace

complex<double> mode_amplitude(const QuenchOverlap& ov, double t) {
  complex<double> num = 0.0;
  double den = 0.0;
  for (int s = 0; s < 6; ++s) {
    num += ov.minor_sq[s] * std::exp(-1i * ov.rel_freq[s] * t);
    den += ov.minor_sq[s];
  }
  const complex<double> phase = std::exp(1i * ov.vacuum_energy_final * t);
  return phase * num / den;
}

QuenchModeTable::QuenchModeTable(const QuenchSpec& q, const MomentumGrid& grid, unsigned threads)
    : quench_(q), grid_(grid) {
  validate(q);
  validate(grid);
  overlaps_.resize(grid.size());
  parallel_for(grid.size(), threads,
               [&](std::size_t k) { overlaps_[k] = overlap_at(quench_, grid_.phis[k]); });
}

double QuenchModeTable::mode_modulus(std::size_t k, double t) const {
  return std::abs(mode_amplitude(overlaps_[k], t));
}

double QuenchModeTable::modulus_at(double phi, double t) const {
  return std::abs(mode_amplitude(overlap_at(quench_, phi), t));
}

double QuenchModeTable::vacuum_energy() const {
  double e = 0.0;
  for (const auto& ov : overlaps_) e += ov.vacuum_energy_initial;
  return e;
}

RateSeries rate_function(const QuenchSpec& q, const MomentumGrid& grid,
                         const std::vector<double>& times, unsigned threads) {
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (times[i] <= times[i - 1]) throw ValidationError("rate_function: times must be sorted");
  }
  QuenchModeTable table(q, grid, threads);

  RateSeries out;
  out.times = times;
  out.values.assign(times.size(), 0.0);
  out.grid = grid;
  out.quench = q;

  parallel_for(times.size(), threads, [&](std::size_t i) {
    const double t = times[i];
    std::vector<double> terms(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
      double m = std::abs(mode_amplitude(table.overlaps()[k], t));
      m = std::clamp(m, 1e-30, 1.0);
      terms[k] = -grid.weights[k] * std::log(m);
    }
    out.values[i] = pairwise_sum(terms) / kPi;
  });
  return out;
}

std::vector<double> detect_cusps(const RateSeries& series, double factor) {
  const std::size_t n = series.times.size();
  std::vector<double> out;
  if (n < 3) return out;
  std::vector<double> curv(n - 2);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    curv[i - 1] = std::abs(series.values[i + 1] - 2.0 * series.values[i] + series.values[i - 1]);
  }
  std::vector<double> sorted = curv;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double median = sorted[sorted.size() / 2];
  const double gate = factor * std::max(median, 1e-300);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (curv[i - 1] <= gate) continue;
    // Keep local curvature maxima only.
    const double left = i >= 2 ? curv[i - 2] : 0.0;
    const double right = i < n - 2 ? curv[i] : 0.0;
    if (curv[i - 1] >= left && curv[i - 1] >= right) out.push_back(series.times[i]);
  }
  return out;
}

ModeMinimum min_mode_modulus(const QuenchModeTable& table, double t) {
  const auto& phis = table.grid().phis;
  std::size_t best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < phis.size(); ++k) {
    const double v = table.mode_modulus(k, t);
    if (v < best_val) {
      best_val = v;
      best = k;
    }
  }
  const double lo = best > 0 ? phis[best - 1] : phis[best] / 2;
  const double hi = best + 1 < phis.size() ? phis[best + 1] : (phis[best] + kPi / 2) / 2;
  auto [phi, val] = golden_min([&](double p) { return table.modulus_at(p, t); }, lo, hi, 64);
  if (val < best_val) return {val, phi};
  return {best_val, phis[best]};
}

CriticalTimes find_critical_times(const QuenchSpec& q, const MomentumGrid& grid, double t_max,
                                  double eps_crit, const CriticalSearchOptions& opts) {
  if (!(t_max > 0)) throw ValidationError("find_critical_times: t_max must be positive");
  QuenchModeTable table(q, grid, opts.threads);

  const std::size_t nt = static_cast<std::size_t>(std::floor(t_max / opts.raster_dt));
  const std::size_t nphi = grid.size();

  // Raster of min-over-grid |G| on the time axis.
  std::vector<double> m(nt + 1, 1.0);
  std::vector<std::size_t> argmin(nt + 1, 0);
  parallel_for(nt, opts.threads, [&](std::size_t i) {
    const double t = (i + 1) * opts.raster_dt;
    double best = std::numeric_limits<double>::infinity();
    std::size_t bk = 0;
    for (std::size_t k = 0; k < nphi; ++k) {
      const double v = table.mode_modulus(k, t);
      if (v < best) {
        best = v;
        bk = k;
      }
    }
    m[i + 1] = best;
    argmin[i + 1] = bk;
  });

  // Candidate local minima below the gate.
  std::vector<std::size_t> cands;
  for (std::size_t i = 1; i <= nt; ++i) {
    if (m[i] >= opts.candidate_gate) continue;
    const double left = m[i - 1];
    const double right = i + 1 <= nt ? m[i + 1] : std::numeric_limits<double>::infinity();
    if (m[i] <= left && m[i] <= right) cands.push_back(i);
  }

  const auto& phis = grid.phis;
  std::vector<CriticalTime> found(cands.size());
  std::vector<char> ok(cands.size(), 0);
  parallel_for(cands.size(), opts.threads, [&](std::size_t c) {
    const std::size_t i = cands[c];
    double t = i * opts.raster_dt;
    double phi = phis[argmin[i]];
    double dt = opts.raster_dt;
    double dphi = std::min(2.0 * (phis.size() > 1 ? phis[1] - phis[0] : kPi / 8), 0.2);
    const double phi_lo = 1e-9, phi_hi = kPi / 2 - 1e-9;
    double val = table.modulus_at(phi, t);

    // Alternating 1-D line searches plus a pattern move along the sweep
    // displacement; the zero sits in a valley whose axes rotate with t, so
    // plain coordinate descent zigzags and stalls.
    for (int round = 0; round < opts.max_rounds && val > opts.refine_target; ++round) {
      const double t_before = t, phi_before = phi;

      auto [tt, vt] = golden_min([&](double x) { return table.modulus_at(phi, x); },
                                 std::max(t - dt, 1e-12), t + dt, 32);
      if (vt <= val) { t = tt; val = vt; }

      auto [pp, vp] =
          golden_min([&](double x) { return table.modulus_at(x, t); },
                     std::clamp(phi - dphi, phi_lo, phi_hi),
                     std::clamp(phi + dphi, phi_lo, phi_hi), 32);
      if (vp <= val) { phi = pp; val = vp; }

      const double mt = t - t_before;
      const double mp = phi - phi_before;
      if (mt != 0.0 || mp != 0.0) {
        auto [ss, vs] = golden_min(
            [&](double s) {
              return table.modulus_at(std::clamp(phi + s * mp, phi_lo, phi_hi),
                                      std::max(t + s * mt, 1e-12));
            },
            -1.0, 3.0, 32);
        if (vs < val) {
          t = std::max(t + ss * mt, 1e-12);
          phi = std::clamp(phi + ss * mp, phi_lo, phi_hi);
          val = vs;
        }
      }

      const double moved_t = std::abs(t - t_before);
      const double moved_p = std::abs(phi - phi_before);
      if (moved_t < 1e-15 && moved_p < 1e-15 && round > 2) break;
      dt = std::clamp(4.0 * moved_t, dt * 0.5, opts.raster_dt);
      dphi = std::clamp(4.0 * moved_p, dphi * 0.5, 0.2);
    }
    if (val < eps_crit) {
      found[c] = {t, phi, val};
      ok[c] = 1;
    }
  });

  CriticalTimes out;
  for (std::size_t c = 0; c < cands.size(); ++c) {
    if (ok[c]) out.entries.push_back(found[c]);
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const CriticalTime& a, const CriticalTime& b) { return a.t_star < b.t_star; });

  // Merge minima closer than dedup_dt, keeping the smaller residual.
  std::vector<CriticalTime> merged;
  for (const auto& e : out.entries) {
    if (!merged.empty() && e.t_star - merged.back().t_star < opts.dedup_dt) {
      if (e.residual < merged.back().residual) merged.back() = e;
    } else {
      merged.push_back(e);
    }
  }
  out.entries = std::move(merged);

  if (out.entries.size() >= 2) {
    double mn = std::numeric_limits<double>::infinity(), mx = 0.0, sum = 0.0;
    for (std::size_t i = 1; i < out.entries.size(); ++i) {
      const double d = out.entries[i].t_star - out.entries[i - 1].t_star;
      mn = std::min(mn, d);
      mx = std::max(mx, d);
      sum += d;
    }
    out.spacing = {mn, mx, sum / (out.entries.size() - 1)};
  }
  return out;
}

bool detect_dqpt(const QuenchSpec& q, const MomentumGrid& grid, double t_max, double eps_crit,
                 const CriticalSearchOptions& opts) {
  return !find_critical_times(q, grid, t_max, eps_crit, opts).entries.empty();
}

CouplingSet plane_point(const CouplingSet& base, const PlaneSpec& plane, double x, double y) {
  CouplingSet g = base;
  auto set_axis = [&](int axis, double v) {
    switch (axis) {
      case 0: g.lambda1 = v; break;
      case 1: g.lambda2 = v; break;
      case 2: g.dm = v; break;
      default: throw ValidationError("plane_point: axis must be 0, 1 or 2");
    }
  };
  // Fix the non-plane coordinate first, then the plane coordinates.
  for (int axis = 0; axis < 3; ++axis) {
    if (axis != plane.axis_x && axis != plane.axis_y) set_axis(axis, plane.fixed_value);
  }
  set_axis(plane.axis_x, x);
  set_axis(plane.axis_y, y);
  return g;
}

ScanTable scan_region(const CouplingSet& g0, const PlaneSpec& plane, const Grid2D& grid2d,
                      double t_max, const MomentumGrid& grid, double eps_crit,
                      const CriticalSearchOptions& opts) {
  validate(g0);
  if (classify_phase(g0) == PhaseLabel::CH) {
    throw ValidationError("scan_region: initial point lies in the CH phase");
  }
  if (plane.axis_x == plane.axis_y) throw ValidationError("scan_region: axes must differ");

  ScanTable table;
  table.t_max = t_max;
  table.n_modes = grid.size();
  table.rows.resize(static_cast<std::size_t>(grid2d.nx) * grid2d.ny);

  CriticalSearchOptions point_opts = opts;
  point_opts.threads = 1;  // parallelism lives at the grid level

  parallel_for(table.rows.size(), opts.threads, [&](std::size_t idx) {
    const int j = static_cast<int>(idx) / grid2d.nx;
    const int i = static_cast<int>(idx) % grid2d.nx;
    ScanRow row;
    row.x = grid2d.x(i);
    row.y = grid2d.y(j);
    try {
      const CouplingSet g1 = plane_point(g0, plane, row.x, row.y);
      if (g1 == g0) {
        row.dqpt = false;
      } else {
        const auto crit = find_critical_times({g0, g1}, grid, t_max, eps_crit, point_opts);
        row.dqpt = !crit.entries.empty();
        row.n_tstar = static_cast<int>(crit.entries.size());
        row.first_tstar = crit.entries.empty() ? 0.0 : crit.entries.front().t_star;
      }
    } catch (const Error&) {
      row.failed = true;
    }
    table.rows[idx] = row;
  });
  return table;
}

TfiReference tfi_reference_times(const QuenchSpec& q, int n_max) {
  validate(q);
  if (q.initial.lambda2 != 0.0 || q.initial.dm != 0.0 || q.final.lambda2 != 0.0 ||
      q.final.dm != 0.0) {
    throw ValidationError("tfi_reference_times: requires lambda2 = d = 0 on both sides");
  }
  if (n_max < 1) throw ValidationError("tfi_reference_times: n_max must be >= 1");

  // |T_11| = |m14| / |m34|, |T_22| = |m23| / |m34| in the minor order
  // {34, 14, 23, 13, 24, 12}; the crossing condition |T_ii| = 1 becomes the
  // bounded root problem |m_pair| - |m34| = 0.
  auto branch_fn = [&](int branch) {
    return [&, branch](double phi) {
      const auto ov = overlap_at(q, phi);
      const int idx = branch == 0 ? 1 : 2;
      return std::sqrt(ov.minor_sq[idx]) - std::sqrt(ov.minor_sq[0]);
    };
  };

  struct Root {
    double phi;
    double omega;
    int branch;
  };
  std::vector<Root> roots;
  const int n_scan = 2048;
  for (int branch = 0; branch < 2; ++branch) {
    auto f = branch_fn(branch);
    double prev_phi = kPi / 2 * 1e-4;
    double prev_f = f(prev_phi);
    for (int i = 1; i <= n_scan; ++i) {
      const double phi = kPi / 2 * (static_cast<double>(i) / (n_scan + 1));
      const double fi = f(phi);
      if (prev_f == 0.0 || prev_f * fi < 0.0) {
        double a = prev_phi, b = phi, fa = prev_f;
        for (int it = 0; it < 100; ++it) {
          const double mid = 0.5 * (a + b);
          const double fm = f(mid);
          if (fa * fm <= 0.0) {
            b = mid;
          } else {
            a = mid;
            fa = fm;
          }
        }
        const double phi_star = 0.5 * (a + b);
        const auto ov = overlap_at(q, phi_star);
        const double omega = branch == 0 ? ov.omegas_final(0) : ov.omegas_final(1);
        if (omega > 1e-12) roots.push_back({phi_star, omega, branch});
      }
      prev_phi = phi;
      prev_f = fi;
    }
  }
  if (roots.empty()) {
    throw NoSolutionError("tfi_reference_times: |T_ii| never reaches 1 (no boundary crossed)");
  }

  // Merge the time families of every crossing; the reported (phi*, omega)
  // belong to the family with the earliest critical time.
  TfiReference best;
  best.omega = 0.0;
  for (const Root& r : roots) {
    if (r.omega > best.omega) {
      best.phi_star = r.phi;
      best.omega = r.omega;
      best.branch = r.branch;
    }
    for (int n = 0; n < n_max; ++n) {
      best.times.push_back(kPi / r.omega * (n + 0.5));
    }
  }
  std::sort(best.times.begin(), best.times.end());
  // Collapse duplicate roots of the same family located twice by the scan.
  best.times.erase(std::unique(best.times.begin(), best.times.end(),
                               [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                   best.times.end());
  best.times.resize(std::min<std::size_t>(best.times.size(), n_max));
  return best;
}

}  // namespace dqpt
