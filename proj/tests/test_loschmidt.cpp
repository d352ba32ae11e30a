#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>

#include "dqpt/ed.hpp"
#include "dqpt/errors.hpp"
#include "dqpt/loschmidt.hpp"
#include "test_helpers.hpp"

using namespace dqpt;

namespace {

const CouplingSet kPm1{0.8, 1.5, 0.0, 0.0};

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

}  // namespace

TEST_CASE("mode amplitude basics") {
  const auto grid = MomentumGrid::midpoint(16);
  const QuenchSpec q{kPm1, {0.8, 0.0, 0.2, 0.0}};
  const QuenchModeTable table(q, grid, 1);

  for (const auto& ov : table.overlaps()) {
    CHECK(std::abs(mode_amplitude(ov, 0.0) - 1.0) < 1e-12);
    for (double t : {0.3, 1.7, 9.2}) {
      CHECK(std::abs(mode_amplitude(ov, t)) <= 1.0 + 1e-9);
    }
  }

  const QuenchModeTable self({kPm1, kPm1}, grid, 1);
  for (const auto& ov : self.overlaps()) {
    for (double t : {0.5, 4.0, 18.0}) {
      CHECK(std::abs(std::abs(mode_amplitude(ov, t)) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("finite-chain product matches the ED overlap modulus") {
  const int n = 8;
  const auto grid = MomentumGrid::finite_chain(n);
  for (const CouplingSet g1 : {CouplingSet{0.8, 0.0, 0.2, 0.0}, CouplingSet{0.8, 0.4, 0.2, 1.0}}) {
    const QuenchSpec q{kPm1, g1};
    const QuenchModeTable table(q, grid, 1);
    const auto ed = loschmidt_echo_ed(q, n, {0.5, 1.0, 2.0}, table.vacuum_energy(), 1e-10);
    for (std::size_t i = 0; i < ed.times.size(); ++i) {
      std::complex<double> prod = 1.0;
      for (const auto& ov : table.overlaps()) prod *= mode_amplitude(ov, ed.times[i]);
      CHECK(std::abs(std::abs(prod) - std::abs(ed.amplitude[i])) < 1e-8);
    }
  }
}

TEST_CASE("rate function basics") {
  const auto grid = MomentumGrid::midpoint(256);
  const auto times = linspace(0.0, 20.0, 41);

  const auto self = rate_function({kPm1, kPm1}, grid, times, 1);
  for (double f : self.values) {
    CHECK(f >= 0.0);
    CHECK(f < 1e-10);
  }

  // Commuting quench: lambda2 = 0, DM-only.
  const QuenchSpec commuting{{0.8, 0.5, 0.0, 0.2}, {0.8, 0.5, 0.0, 1.5}};
  const auto flat = rate_function(commuting, grid, times, 1);
  for (double f : flat.values) CHECK(f < 1e-8);

  // A genuine quench starts at F(0) = 0 and goes positive.
  const QuenchSpec q{kPm1, {0.8, 0.0, 0.2, 0.0}};
  const auto series = rate_function(q, grid, times, 1);
  CHECK(series.values.front() < 1e-8);
  CHECK(*std::max_element(series.values.begin(), series.values.end()) > 0.05);
}

TEST_CASE("rate function is stable under grid doubling away from cusps") {
  const QuenchSpec q{kPm1, {0.8, 0.0, 0.2, 0.0}};
  const std::vector<double> times = {0.31, 0.9, 1.54, 3.1, 6.7};
  const auto f1 = rate_function(q, MomentumGrid::midpoint(1024), times, 1);
  const auto f2 = rate_function(q, MomentumGrid::midpoint(2048), times, 1);
  for (std::size_t i = 0; i < times.size(); ++i) {
    CHECK(std::abs(f1.values[i] - f2.values[i]) < 1e-5);
  }
}

TEST_CASE("min mode modulus") {
  const auto grid = MomentumGrid::midpoint(256);
  const QuenchSpec q{kPm1, {0.8, 0.0, 0.2, 0.0}};
  const QuenchModeTable table(q, grid, 1);
  CHECK(min_mode_modulus(table, 0.0).value == doctest::Approx(1.0).epsilon(1e-10));

  // Non-DQPT target: modulus stays away from zero on the whole window.
  const QuenchModeTable far({kPm1, {0.8, 1.8, 0.1, 0.0}}, grid, 1);
  double lowest = 1.0;
  for (double t = 0.1; t <= 20.0; t += 0.1) {
    lowest = std::min(lowest, min_mode_modulus(far, t).value);
  }
  CHECK(lowest > 0.05);
}

TEST_CASE("TFI critical times match the analytic reference") {
  const QuenchSpec q{{1.0, 0.5, 0.0, 0.0}, {1.0, 1.5, 0.0, 0.0}};
  const auto ref = tfi_reference_times(q, 3);
  REQUIRE(ref.times.size() == 3);

  const auto grid = MomentumGrid::midpoint(512);
  const auto crit = find_critical_times(q, grid, 8.0, 1e-6);
  REQUIRE(crit.entries.size() >= 2);
  for (std::size_t i = 0; i < std::min<std::size_t>(2, crit.entries.size()); ++i) {
    CHECK(std::abs(crit.entries[i].t_star - ref.times[i]) / ref.times[i] < 1e-4);
    CHECK(crit.entries[i].residual < 1e-6);
  }

  // The reference times are uniformly spaced by construction; the located
  // ones must be too.
  if (crit.entries.size() >= 3) {
    CHECK(crit.spacing.max_dt / crit.spacing.min_dt < 1.0 + 1e-3);
  }

  // At the first analytic critical time some mode modulus vanishes.
  const QuenchModeTable table(q, grid, 1);
  CHECK(min_mode_modulus(table, ref.times[0]).value < 1e-6);
}

TEST_CASE("no reference solution without a boundary crossing") {
  const QuenchSpec q{{1.0, 0.5, 0.0, 0.0}, {1.0, 0.8, 0.0, 0.0}};
  CHECK_THROWS_AS(tfi_reference_times(q, 3), NoSolutionError);
  CHECK_THROWS_AS(tfi_reference_times({kPm1, {0.8, 0.0, 0.2, 0.0}}, 3), ValidationError);
}

TEST_CASE("general quenches have non-uniform critical-time spacing") {
  const QuenchSpec q{kPm1, {0.8, 0.4, 0.2, 1.0}};
  const auto crit = find_critical_times(q, MomentumGrid::midpoint(512), 20.0, 1e-6);
  REQUIRE(crit.entries.size() >= 4);
  CHECK(crit.spacing.max_dt / crit.spacing.min_dt > 1.01);
  for (const auto& e : crit.entries) CHECK(e.residual < 1e-6);
}

TEST_CASE("detect_dqpt anchors") {
  const auto grid = MomentumGrid::midpoint(512);
  CHECK(detect_dqpt({kPm1, {0.8, 0.0, 0.2, 0.0}}, grid, 20.0));
  CHECK(detect_dqpt({kPm1, {0.8, -0.5, 1.5, 0.0}}, grid, 20.0));
  CHECK(!detect_dqpt({kPm1, {0.8, 1.8, 0.1, 0.0}}, grid, 20.0));
  CHECK(!detect_dqpt({kPm1, kPm1}, grid, 20.0));
  CHECK(!detect_dqpt({{0.8, 0.5, 0.0, 0.2}, {0.8, 0.5, 0.0, 1.5}}, grid, 20.0));
}

TEST_CASE("scan respects the DQPT => crossing implication") {
  const Grid2D grid2d{-2.0, 2.0, 5, -2.0, 2.0, 5};
  const auto table = scan_region(kPm1, PlaneSpec{0, 1, 0.0}, grid2d, 12.0,
                                 MomentumGrid::midpoint(256));
  REQUIRE(table.rows.size() == 25);
  int n_dqpt = 0;
  for (const auto& row : table.rows) {
    CHECK(!row.failed);
    if (!row.dqpt) continue;
    ++n_dqpt;
    CHECK(row.n_tstar >= 1);
    CHECK(row.first_tstar > 0);
    const CouplingSet g1 = plane_point(kPm1, PlaneSpec{0, 1, 0.0}, row.x, row.y);
    CHECK(segment_crosses_boundary({kPm1, g1}).crosses);
  }
  CHECK(n_dqpt >= 4);  // the AFM strip is inside the window
}

TEST_CASE("PM-II sign-flip quench shows a DQPT despite the same final phase") {
  // lambda2 changes sign inside PM-II at d > gamma: the straight segment
  // passes through the CH wedge even though the endpoints share a phase.
  const CouplingSet g0{0.8, -0.5, 1.5, 1.2};
  const CouplingSet g1{0.8, -0.5, -1.2, 1.2};
  REQUIRE(classify_phase(g0) == PhaseLabel::PM_II);
  REQUIRE(classify_phase(g1) == PhaseLabel::PM_II);
  CHECK(detect_dqpt({g0, g1}, MomentumGrid::midpoint(512), 20.0));
  CHECK(segment_crosses_boundary({g0, g1}).crosses);
}

TEST_CASE("cusp detector corroborates the |G|-zero search") {
  const QuenchSpec q{kPm1, {0.8, 0.0, 0.2, 0.0}};
  const auto grid = MomentumGrid::midpoint(1024);
  std::vector<double> times;
  for (int i = 0; i <= 1200; ++i) times.push_back(i * 0.01);
  const auto series = rate_function(q, grid, times, 1);
  const auto cusps = detect_cusps(series);
  const auto crit = find_critical_times(q, grid, 12.0, 1e-6);
  REQUIRE(!crit.entries.empty());
  REQUIRE(!cusps.empty());
  // Every flagged cusp sits on a located critical time.
  for (double tc : cusps) {
    double dist = 1e300;
    for (const auto& e : crit.entries) dist = std::min(dist, std::abs(tc - e.t_star));
    CHECK(dist < 0.05);
  }

  // A smooth non-DQPT series produces no flags.
  const auto flat = rate_function({kPm1, {0.8, 1.8, 0.1, 0.0}}, grid, times, 1);
  CHECK(detect_cusps(flat).empty());
}

TEST_CASE("finite-N rate converges toward the thermodynamic limit") {
  // Reported trend, not asserted: F_N at a non-critical time vs the
  // quadrature value, N = 8 from the ED echo, larger N from the mode
  // product on the exact finite-chain grid.
  const QuenchSpec q{kPm1, {0.8, 0.0, 0.2, 0.0}};
  const double t = 0.9;
  const double f_inf =
      rate_function(q, MomentumGrid::midpoint(4096), {t}, 1).values.front();

  const auto ed = loschmidt_echo_ed(q, 8, {t});
  std::vector<std::pair<int, double>> fn = {{8, ed.rate.front()}};
  for (int n : {12, 16, 24, 48, 96}) {
    const QuenchModeTable table(q, MomentumGrid::finite_chain(n), 1);
    std::complex<double> prod = 1.0;
    for (const auto& ov : table.overlaps()) prod *= mode_amplitude(ov, t);
    fn.emplace_back(n, -2.0 * std::log(std::abs(prod)) / n);
  }
  for (auto& [n, f] : fn) {
    MESSAGE("N = ", n, ": F_N(t=0.9) = ", f, "  (thermodynamic ", f_inf, ")");
    CHECK(std::isfinite(f));
  }
  CHECK(std::abs(fn.back().second - f_inf) < std::abs(fn.front().second - f_inf) + 1e-12);
}

TEST_CASE("scan rejects CH initial points") {
  CHECK_THROWS_AS(scan_region({0.8, 0.4, 0.2, 1.0}, PlaneSpec{0, 1, 0.0}, Grid2D{}, 5.0,
                              MomentumGrid::midpoint(64)),
                  ValidationError);
}
