#pragma once

#include <Eigen/Dense>
#include <array>

#include "dqpt/model.hpp"

namespace dqpt {

// 4x4 momentum-mode matrix in the ordered basis (a_p, b_p, a+_{-p}, b+_{-p}):
//
//   H_p = [ (cos phi + d sin phi) sx + L      -i gamma sin phi sx ]
//         [  i gamma sin phi sx             -(cos phi - d sin phi) sx - L ]
//
// with L = diag(lambda1 - lambda2, lambda1 + lambda2) and sx the Pauli-x
// block acting on the (a, b) sublattice index.
struct ModeMatrix {
  double phi = 0.0;
  Eigen::Matrix4cd h_tilde;
};

ModeMatrix build_mode_matrix(const CouplingSet& g, double phi);

// Eigenvalues of the mode matrix, ascending.
Eigen::Vector4d mode_spectrum(const ModeMatrix& m);

// Bogoliubov frame of one momentum block. The frame columns are orthonormal
// eigenvectors of h_tilde ordered (omega1, omega2, omega3, omega4):
// the first two are the particle modes (omega1 >= omega2), the last two the
// hole modes whose vacuum is the lowest-eigenvalue state of the block.
//
// Whenever lambda2 * d == 0 the frame has the exact structured form
//   M = [ U   -iV ]
//       [ -iV*  U* ]
// and `constrained_form` is true. With both lambda2 and d nonzero no frame
// of that shape diagonalizes h_tilde (the DM block no longer commutes with
// the rest); the frame is then a plain unitary eigenbasis and u_block /
// v_block are its extracted corners.
struct BogoliubovDecomp {
  double phi = 0.0;
  Eigen::Matrix4cd frame;           // columns: (omega1, omega2, omega3, omega4)
  Eigen::Vector4d omegas;           // [omega1, omega2, omega3, omega4]
  Eigen::Matrix2cd u_block;         // frame(0:1, 0:1)
  Eigen::Matrix2cd v_block;         // i * frame(0:1, 2:3)
  double ground_energy = 0.0;       // omega3 + omega4, units of J
  bool constrained_form = false;
};

// Throws DegenerateModeError when the particle/hole split (omega2 vs omega3)
// cannot be resolved; the caller may perturb phi by ~1e-10 and retry.
BogoliubovDecomp diagonalize_mode(const ModeMatrix& m);

BogoliubovDecomp diagonalize_mode(const CouplingSet& g, double phi);

// Connection between the pre- and post-quench Bogoliubov frames at one phi.
// full_overlap = M(g0)^dag M(g1); u_overlap / v_overlap are its corners in
// the structured convention, and t_matrix = U^-1 V when U is invertible.
//
// The six stored minors are the 2x2 determinants of the occupied-orbital
// overlap K = M(g1)^dag M(g0)(:, 3:4) taken on row pairs
// {34, 14, 23, 13, 24, 12}; they drive the closed-form mode amplitude in a
// way that stays finite when U is singular (|T_11|^2 = |m14|^2 / |m34|^2
// etc. after multiplying the amplitude through by |det U|^2).
struct QuenchOverlap {
  double phi = 0.0;
  Eigen::Matrix4cd full_overlap;
  Eigen::Matrix2cd u_overlap;
  Eigen::Matrix2cd v_overlap;
  Eigen::Vector4d omegas_final;
  double vacuum_energy_final = 0.0;    // omega3 + omega4 of the final frame
  double vacuum_energy_initial = 0.0;  // omega3 + omega4 of the initial frame

  std::array<double, 6> minor_sq{};   // |m_S|^2, S in {34,14,23,13,24,12}
  std::array<double, 6> rel_freq{};   // omega_S - (omega3 + omega4)
  bool u_singular = false;
  Eigen::Matrix2cd t_matrix_raw;

  // U^-1 V; throws SingularOverlapError when |det U| < 1e-12.
  const Eigen::Matrix2cd& t_matrix() const;
};

QuenchOverlap quench_overlap(const BogoliubovDecomp& d0, const BogoliubovDecomp& d1);

namespace detail {

// Phase convention: the largest-magnitude entry of each column's U-block
// rows (rows 0-1 for particle columns, rows 2-3 for hole columns) is made
// real and positive.
void gauge_fix_frame(Eigen::Matrix4cd& frame);

// [ [U, -iV], [-iV*, U*] ]
Eigen::Matrix4cd assemble_constrained(const Eigen::Matrix2cd& u, const Eigen::Matrix2cd& v);

}  // namespace detail

}  // namespace dqpt
