#include "dqpt/bdg.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "dqpt/errors.hpp"

namespace dqpt {

using Eigen::Matrix2cd;
using Eigen::Matrix4cd;
using Eigen::Vector2cd;
using Eigen::Vector4cd;
using Eigen::Vector4d;
using namespace std::complex_literals;

ModeMatrix build_mode_matrix(const CouplingSet& g, double phi) {
  validate(g);
  if (!(phi > 0.0 && phi < std::numbers::pi / 2)) {
    throw ValidationError("build_mode_matrix: phi must lie in (0, pi/2)");
  }
  const double c = std::cos(phi);
  const double s = std::sin(phi);

  Matrix2cd sx;
  sx << 0, 1, 1, 0;
  Matrix2cd lam;
  lam << g.lambda1 - g.lambda2, 0, 0, g.lambda1 + g.lambda2;

  ModeMatrix m;
  m.phi = phi;
  m.h_tilde.setZero();
  m.h_tilde.block<2, 2>(0, 0) = (c + g.dm * s) * sx + lam;
  m.h_tilde.block<2, 2>(2, 2) = -((c - g.dm * s) * sx + lam);
  m.h_tilde.block<2, 2>(0, 2) = -1i * g.gamma * s * sx;
  m.h_tilde.block<2, 2>(2, 0) = 1i * g.gamma * s * sx;
  return m;
}

Eigen::Vector4d mode_spectrum(const ModeMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix4cd> es(m.h_tilde, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

namespace detail {

namespace {

// Particle-hole conjugation: [x; y] -> [-y*; x*]. For any eigenvector w of
// h_tilde(d -> -d) with eigenvalue nu, ph_conj(w) is an eigenvector of
// h_tilde with eigenvalue -nu; at lambda2 * d == 0 the two matrices share
// eigenvectors and the map pairs the particle and hole branches exactly.
Vector4cd ph_conj(const Vector4cd& w) {
  Vector4cd out;
  out(0) = -std::conj(w(2));
  out(1) = -std::conj(w(3));
  out(2) = std::conj(w(0));
  out(3) = std::conj(w(1));
  return out;
}

void gauge_fix_column(Vector4cd& col, int block_row) {
  int best = -1;
  double best_mag = 0.0;
  for (int r = block_row; r < block_row + 2; ++r) {
    if (std::abs(col(r)) > best_mag) {
      best_mag = std::abs(col(r));
      best = r;
    }
  }
  if (best < 0 || best_mag < 1e-12) {
    for (int r = 0; r < 4; ++r) {
      if (std::abs(col(r)) > best_mag) {
        best_mag = std::abs(col(r));
        best = r;
      }
    }
  }
  const std::complex<double> z = col(best);
  col *= std::conj(z) / std::abs(z);
}

}  // namespace

void gauge_fix_frame(Matrix4cd& frame) {
  for (int c = 0; c < 4; ++c) {
    Vector4cd col = frame.col(c);
    gauge_fix_column(col, c < 2 ? 0 : 2);
    frame.col(c) = col;
  }
}

Matrix4cd assemble_constrained(const Matrix2cd& u, const Matrix2cd& v) {
  Matrix4cd m;
  m.block<2, 2>(0, 0) = u;
  m.block<2, 2>(0, 2) = -1i * v;
  m.block<2, 2>(2, 0) = -1i * v.conjugate();
  m.block<2, 2>(2, 2) = u.conjugate();
  return m;
}

}  // namespace detail

BogoliubovDecomp diagonalize_mode(const ModeMatrix& m) {
  const double herm = (m.h_tilde - m.h_tilde.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-12) throw ValidationError("diagonalize_mode: mode matrix is not Hermitian");

  Eigen::SelfAdjointEigenSolver<Matrix4cd> es(m.h_tilde);
  const Vector4d v = es.eigenvalues();  // ascending
  const Matrix4cd vecs = es.eigenvectors();

  const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
  if (v(2) - v(1) < 1e-11 * scale) {
    throw DegenerateModeError("diagonalize_mode: particle/hole split degenerate at phi=" +
                              std::to_string(m.phi));
  }

  BogoliubovDecomp out;
  out.phi = m.phi;
  out.omegas(0) = v(3);
  out.omegas(1) = v(2);

  Matrix4cd frame;
  frame.col(0) = vecs.col(3);
  frame.col(1) = vecs.col(2);
  detail::gauge_fix_frame(frame);  // fixes particle columns; holes set below

  // Try the structured hole columns first: ph_conj of the gauge-fixed
  // particle columns. They are eigenvectors exactly when lambda2 * d == 0,
  // and they complete a unitary frame only while the particle/hole branches
  // have not crossed (inside the CH regime the ph partner of a particle
  // column is the other particle column and the structured form is lost).
  Vector4cd c3 = detail::ph_conj(frame.col(0));
  Vector4cd c4 = detail::ph_conj(frame.col(1));
  const double w3 = std::real(c3.dot(m.h_tilde * c3));
  const double w4 = std::real(c4.dot(m.h_tilde * c4));
  const double r3 = (m.h_tilde * c3 - w3 * c3).cwiseAbs().maxCoeff();
  const double r4 = (m.h_tilde * c4 - w4 * c4).cwiseAbs().maxCoeff();
  const double vacuum_match =
      std::abs(std::min(w3, w4) - v(0)) + std::abs(std::max(w3, w4) - v(1));
  const double overlap_cross =
      std::max(std::abs(c3.dot(frame.col(0))), std::abs(c4.dot(frame.col(1))));

  if (r3 < 1e-10 * scale && r4 < 1e-10 * scale && vacuum_match < 1e-9 * scale &&
      overlap_cross < 1e-10) {
    frame.col(2) = c3;
    frame.col(3) = c4;
    out.omegas(2) = w3;
    out.omegas(3) = w4;
    out.constrained_form = true;
  } else {
    // Generic frame: the two remaining eigenvectors, labelled by their
    // overlap with the ph images so the (mode, partner) pairing survives.
    Vector4cd e0 = vecs.col(0);
    Vector4cd e1 = vecs.col(1);
    const double o00 = std::abs(c3.dot(e0));
    const double o01 = std::abs(c3.dot(e1));
    if (o00 >= o01) {
      frame.col(2) = e0;
      frame.col(3) = e1;
      out.omegas(2) = v(0);
      out.omegas(3) = v(1);
    } else {
      frame.col(2) = e1;
      frame.col(3) = e0;
      out.omegas(2) = v(1);
      out.omegas(3) = v(0);
    }
    detail::gauge_fix_frame(frame);
    out.constrained_form = false;
  }

  out.frame = frame;
  out.u_block = frame.block<2, 2>(0, 0);
  out.v_block = 1i * frame.block<2, 2>(0, 2);
  out.ground_energy = out.omegas(2) + out.omegas(3);
  return out;
}

BogoliubovDecomp diagonalize_mode(const CouplingSet& g, double phi) {
  return diagonalize_mode(build_mode_matrix(g, phi));
}

const Matrix2cd& QuenchOverlap::t_matrix() const {
  if (u_singular) {
    throw SingularOverlapError("QuenchOverlap: |det U| < 1e-12, T-matrix unavailable");
  }
  return t_matrix_raw;
}

QuenchOverlap quench_overlap(const BogoliubovDecomp& d0, const BogoliubovDecomp& d1) {
  if (std::abs(d0.phi - d1.phi) > 1e-12) {
    throw ValidationError("quench_overlap: decompositions must share phi");
  }

  QuenchOverlap ov;
  ov.phi = d0.phi;
  ov.full_overlap = d0.frame.adjoint() * d1.frame;
  ov.u_overlap = ov.full_overlap.block<2, 2>(0, 0);
  ov.v_overlap = 1i * ov.full_overlap.block<2, 2>(0, 2);
  ov.omegas_final = d1.omegas;
  ov.vacuum_energy_final = d1.omegas(2) + d1.omegas(3);
  ov.vacuum_energy_initial = d0.omegas(2) + d0.omegas(3);

  const std::complex<double> det_u = ov.u_overlap.determinant();
  ov.u_singular = std::abs(det_u) < 1e-12;
  if (!ov.u_singular) {
    ov.t_matrix_raw = ov.u_overlap.inverse() * ov.v_overlap;
  } else {
    ov.t_matrix_raw.setZero();
  }

  // Occupied-orbital overlap: initial hole columns in the final frame.
  Eigen::Matrix<std::complex<double>, 4, 2> k =
      d1.frame.adjoint() * d0.frame.block<4, 2>(0, 2);

  constexpr int rows[6][2] = {{2, 3}, {0, 3}, {1, 2}, {0, 2}, {1, 3}, {0, 1}};
  const Vector4d& w = d1.omegas;
  const double e0 = ov.vacuum_energy_final;
  for (int s = 0; s < 6; ++s) {
    const int r0 = rows[s][0];
    const int r1 = rows[s][1];
    const std::complex<double> minor = k(r0, 0) * k(r1, 1) - k(r0, 1) * k(r1, 0);
    ov.minor_sq[s] = std::norm(minor);
    ov.rel_freq[s] = w(r0) + w(r1) - e0;
  }
  return ov;
}

}  // namespace dqpt
