#pragma once

// Wootters concurrence of a two-qubit state, and the sandwich
//   E <= C <= (E + 1) / 2
// between the renormalized fully entangled fraction E and C.

#include <array>

#include "fefkit/states.hpp"

namespace fefkit {

/// (Y (x) Y) rho* (Y (x) Y), conjugation in the computational basis.
ComplexMatrix spin_flip(const DensityMatrix& rho);

struct ConcurrenceResult {
  double value = 0.0;             ///< max(0, l1 - l2 - l3 - l4)
  std::array<double, 4> lambdas{};  ///< descending, nonnegative
};

/// The lambdas are square roots of the eigenvalues of the Hermitian
/// sqrt(rho) rho~ sqrt(rho) (same spectrum as rho rho~), obtained as singular
/// values of a factor so that rank-deficient states stay exact.
ConcurrenceResult concurrence(const DensityMatrix& rho);

inline constexpr double kBoundTolerance = 1e-9;

struct BoundsCheck {
  double renormalized = 0.0;  ///< E
  double concurrence = 0.0;   ///< C
  bool lower_ok = false;      ///< E <= C + 1e-9
  bool upper_ok = false;      ///< C <= (E + 1)/2 + 1e-9
};

BoundsCheck bounds_check(const DensityMatrix& rho);
BoundsCheck bounds_check(double renormalized, double concurrence);

}  // namespace fefkit
