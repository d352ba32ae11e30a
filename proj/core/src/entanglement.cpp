#include "dqpt/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "dqpt/errors.hpp"
#include "dqpt/parallel.hpp"

namespace dqpt {

using Eigen::Matrix4cd;
using Eigen::MatrixXcd;

namespace {

void check_density_matrix(const Eigen::Matrix4cd& rho, double tol) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw InvalidStateError("negativity: density matrix not Hermitian");
  }
  if (std::abs(rho.trace().real() - 1.0) > tol || std::abs(rho.trace().imag()) > tol) {
    throw InvalidStateError("negativity: trace != 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix4cd> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues()(0) < -tol) {
    throw InvalidStateError("negativity: density matrix not PSD");
  }
}

// Partial transpose on the second qubit: (ia),(jb) -> (ib),(ja).
Matrix4cd partial_transpose_b(const Matrix4cd& rho) {
  Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) out(2 * i + b, 2 * j + a) = rho(2 * i + a, 2 * j + b);
  return out;
}

// Subset enumeration in lexicographic order (k out of n).
bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

double max_rdm_eigenvalue(const DenseState& psi, const std::vector<int>& sites) {
  const MatrixXcd rho = rdm_partial_trace(psi, sites);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(rho.rows() - 1);
}

struct SeriesPoint {
  double mu_e, mu_o, mu_eo;
  double logneg_eo, logneg_oe;
};

// Representative sites: code site 0 is lattice-odd, 1 lattice-even;
// (0,1) = odd-even pair, (1,2) = even-odd pair.
SeriesPoint series_point_from_rdms(const Eigen::Matrix2cd& rho_o, const Eigen::Matrix2cd& rho_e,
                                   const Matrix4cd& rho_oe, const Matrix4cd& rho_eo) {
  SeriesPoint p{};
  p.mu_o = std::max(std::abs(rho_o(0, 0).real()), std::abs(rho_o(1, 1).real()));
  p.mu_e = std::max(std::abs(rho_e(0, 0).real()), std::abs(rho_e(1, 1).real()));
  Eigen::SelfAdjointEigenSolver<Matrix4cd> es(rho_eo, Eigen::EigenvaluesOnly);
  p.mu_eo = es.eigenvalues()(3);
  p.logneg_eo = log_negativity(rho_eo);
  p.logneg_oe = log_negativity(rho_oe);
  return p;
}

}  // namespace

double negativity(const Eigen::Matrix4cd& rho) {
  check_density_matrix(rho, 1e-8);
  Eigen::SelfAdjointEigenSolver<Matrix4cd> es(partial_transpose_b(rho), Eigen::EigenvaluesOnly);
  const double trace_norm = es.eigenvalues().cwiseAbs().sum();
  double n = 0.5 * (trace_norm - 1.0);
  if (n < 0.0) {
    if (n < -1e-12) throw InvalidStateError("negativity: trace norm below 1 beyond tolerance");
    n = 0.0;
  }
  return n;
}

double log_negativity(const Eigen::Matrix4cd& rho) {
  return std::log2(2.0 * negativity(rho) + 1.0);
}

double ggm_effective(double mu_e, double mu_o, double mu_eo) {
  return 1.0 - std::max({mu_e, mu_o, mu_eo});
}

double ggm_full(const DenseState& psi) {
  const int n = psi.size;
  if (n > 12) throw SizeLimitError("ggm_full: N must be <= 12");
  if (std::abs(psi.amplitudes.norm() - 1.0) > 1e-8) {
    throw InvalidStateError("ggm_full: state not normalized");
  }
  double mu_max = 0.0;
  for (int k = 1; k <= n / 2; ++k) {
    std::vector<int> subset(k);
    for (int i = 0; i < k; ++i) subset[i] = i;
    do {
      mu_max = std::max(mu_max, max_rdm_eigenvalue(psi, subset));
    } while (next_combination(subset, n));
  }
  return 1.0 - mu_max;
}

EntanglementSeries entanglement_series_covariance(const QuenchSpec& q, int sites,
                                                  const std::vector<double>& times,
                                                  unsigned threads) {
  validate(q);
  const auto h0 = build_bdg_realspace(q.initial, sites);
  const auto h1 = build_bdg_realspace(q.final, sites);
  const CovarianceState init = ground_covariance(h0);
  const CovarianceEvolver evolver(h1);

  // Majorana indices of code sites 0, 1, 2.
  const std::array<int, 6> rows = {0, 1, 2, 3, 4, 5};

  EntanglementSeries out;
  out.source = EntEngine::Covariance;
  out.times = times;
  out.logneg_eo.assign(times.size(), 0.0);
  out.logneg_oe.assign(times.size(), 0.0);
  out.ggm.assign(times.size(), 0.0);

  parallel_for(times.size(), threads, [&](std::size_t i) {
    const Eigen::MatrixXd g6 = evolver.window(init, rows, times[i]);
    const Eigen::Matrix2cd rho_o = single_site_rdm_from_window(g6, 0);
    const Eigen::Matrix2cd rho_e = single_site_rdm_from_window(g6, 1);
    const Matrix4cd rho_oe = pair_rdm_from_window(g6.block<4, 4>(0, 0));
    const Matrix4cd rho_eo = pair_rdm_from_window(g6.block<4, 4>(2, 2));
    const auto p = series_point_from_rdms(rho_o, rho_e, rho_oe, rho_eo);
    out.logneg_eo[i] = p.logneg_eo;
    out.logneg_oe[i] = p.logneg_oe;
    out.ggm[i] = ggm_effective(p.mu_e, p.mu_o, p.mu_eo);
  });
  return out;
}

EntanglementSeries entanglement_series_ed(const QuenchSpec& q, int sites,
                                          const std::vector<double>& times) {
  validate(q);
  const auto spec0 = [&] {
    const auto h0 = build_spin_hamiltonian(q.initial, sites);
    return EdSpectrum(h0);
  }();
  const auto spec1 = [&] {
    const auto h1 = build_spin_hamiltonian(q.final, sites);
    return EdSpectrum(h1);
  }();
  const DenseState psi0 = spec0.sector_ground_state(+1);

  EntanglementSeries out;
  out.source = EntEngine::ED;
  out.times = times;
  out.logneg_eo.reserve(times.size());
  out.logneg_oe.reserve(times.size());
  out.ggm.reserve(times.size());

  for (double t : times) {
    const DenseState psit = spec1.evolve(psi0, t);
    const Eigen::Matrix2cd rho_o = rdm_partial_trace(psit, {0});
    const Eigen::Matrix2cd rho_e = rdm_partial_trace(psit, {1});
    const Matrix4cd rho_oe = rdm_partial_trace(psit, {0, 1});
    const Matrix4cd rho_eo = rdm_partial_trace(psit, {1, 2});
    const auto p = series_point_from_rdms(rho_o, rho_e, rho_oe, rho_eo);
    out.logneg_eo.push_back(p.logneg_eo);
    out.logneg_oe.push_back(p.logneg_oe);
    out.ggm.push_back(ggm_effective(p.mu_e, p.mu_o, p.mu_eo));
  }
  return out;
}

FluctuationStat ggm_fluctuation(const EntanglementSeries& series, double tau) {
  if (series.times.size() < 2) throw WindowTooShortError("ggm_fluctuation: series too short");
  if (series.times.back() < tau - 1e-9) {
    throw WindowTooShortError("ggm_fluctuation: series ends before tau");
  }

  // Two-pass trapezoid windowed standard deviation; the one-pass
  // <G^2> - <G>^2 form loses ~8 digits to cancellation on near-constant
  // series and the stationary-quench invariant needs < 1e-10.
  std::size_t used = 0;
  auto integrate = [&](auto&& f) {
    double acc = 0.0, span = 0.0;
    std::size_t panels = 0;
    for (std::size_t i = 1; i < series.times.size(); ++i) {
      const double t0 = series.times[i - 1];
      if (t0 >= tau) break;
      const double t1 = std::min(series.times[i], tau);
      const double w = t1 - t0;
      if (w <= 0) continue;
      const double g0 = series.ggm[i - 1];
      double g1 = series.ggm[i];
      if (t1 < series.times[i]) {
        g1 = g0 + (t1 - t0) / (series.times[i] - t0) * (g1 - g0);
      }
      acc += 0.5 * w * (f(g0) + f(g1));
      span += w;
      ++panels;
    }
    if (span <= 0) throw WindowTooShortError("ggm_fluctuation: empty window");
    used = panels + 1;
    return acc / span;
  };

  const double mean = integrate([](double g) { return g; });
  const double var = integrate([mean](double g) { return (g - mean) * (g - mean); });

  FluctuationStat out;
  out.tau = tau;
  out.n_samples = used;
  out.value = std::sqrt(std::max(0.0, var));
  return out;
}

FluctuationScan fluctuation_scan(const CouplingSet& g0, const PlaneSpec& plane,
                                 const Grid2D& grid2d, double tau, EntEngine engine, int sites,
                                 double dt, unsigned threads) {
  validate(g0);
  const PhaseLabel p0 = classify_phase(g0);
  FluctuationScan out;
  out.ordered_initial_warning = !(p0 == PhaseLabel::PM_I || p0 == PhaseLabel::PM_II);
  out.rows.resize(static_cast<std::size_t>(grid2d.nx) * grid2d.ny);

  std::vector<double> times;
  const auto n_steps = static_cast<std::size_t>(std::floor(tau / dt + 1e-9));
  for (std::size_t i = 0; i <= n_steps; ++i) times.push_back(i * dt);

  parallel_for(out.rows.size(), threads, [&](std::size_t idx) {
    const int j = static_cast<int>(idx) / grid2d.nx;
    const int i = static_cast<int>(idx) % grid2d.nx;
    FluctuationRow row;
    row.x = grid2d.x(i);
    row.y = grid2d.y(j);
    try {
      const CouplingSet g1 = plane_point(g0, plane, row.x, row.y);
      const QuenchSpec q{g0, g1};
      const EntanglementSeries series = engine == EntEngine::Covariance
                                            ? entanglement_series_covariance(q, sites, times, 1)
                                            : entanglement_series_ed(q, sites, times);
      row.sigma = ggm_fluctuation(series, tau).value;
    } catch (const Error&) {
      row.failed = true;
    }
    out.rows[idx] = row;
  });
  return out;
}

QuietWindowStats quiet_windows(const std::vector<double>& times, const std::vector<double>& logneg,
                               double threshold, double min_duration) {
  QuietWindowStats out;
  double start = 0.0;
  bool in_quiet = false;
  double first_quiet_end = -1.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const bool quiet = logneg[i] < threshold;
    if (quiet && !in_quiet) {
      in_quiet = true;
      start = times[i];
    } else if (!quiet && in_quiet) {
      in_quiet = false;
      const double len = times[i - 1] - start;
      if (len >= min_duration) {
        ++out.count;
        out.longest = std::max(out.longest, len);
        if (first_quiet_end < 0) first_quiet_end = times[i - 1];
      }
    }
    if (first_quiet_end >= 0 && times[i] > first_quiet_end) {
      out.revival_peak = std::max(out.revival_peak, logneg[i]);
    }
  }
  if (in_quiet) {
    const double len = times.back() - start;
    if (len >= min_duration) {
      ++out.count;
      out.longest = std::max(out.longest, len);
    }
  }
  return out;
}

}  // namespace dqpt
