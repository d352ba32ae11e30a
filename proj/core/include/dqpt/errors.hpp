#pragma once

#include <stdexcept>
#include <string>

namespace dqpt {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Phase classification hit a sign pattern outside the anchored regions.
struct AmbiguousRegionError : Error {
  using Error::Error;
};

// Particle/hole split of a mode spectrum could not be resolved; the caller
// may retry with phi perturbed by ~1e-10.
struct DegenerateModeError : Error {
  using Error::Error;
};

// |det U| of a quench overlap fell below threshold; the T-matrix is not
// available, use the minor form of the mode amplitude instead.
struct SingularOverlapError : Error {
  using Error::Error;
};

// Requested a ground state of a BdG problem with a single-particle level at
// zero (critical point); refuse instead of breaking the tie arbitrarily.
struct GaplessGroundStateError : Error {
  using Error::Error;
};

// Exact-diagonalization size limit (N <= 12) exceeded.
struct SizeLimitError : Error {
  using Error::Error;
};

// Time series does not cover the requested averaging window.
struct WindowTooShortError : Error {
  using Error::Error;
};

// Density matrix failed Hermiticity / PSD / trace checks.
struct InvalidStateError : Error {
  using Error::Error;
};

// No solution of the TFI critical-mode equation |T_ii| = 1.
struct NoSolutionError : Error {
  using Error::Error;
};

// ED eigenstate energy does not match the momentum-engine vacuum; refuse to
// compare across Jordan-Wigner sectors.
struct SectorMismatchError : Error {
  using Error::Error;
};

struct ValidationError : Error {
  using Error::Error;
};

}  // namespace dqpt
