#pragma once

// Fully entangled fraction of a two-qubit state.
//
// Writing a maximally entangled state as |Phi> = sum_n x_n |Phi^n> with real
// unit x, the overlap <Phi|rho|Phi> is the quadratic form x^T M x with
// M_nm = Re <Phi^n|rho|Phi^m>. The maximum over the unit 3-sphere is the
// largest eigenvalue of M. The oracles below reach the same number by routes
// that never diagonalize M.

#include <array>

#include "fefkit/optimize.hpp"
#include "fefkit/states.hpp"

namespace fefkit {

using Vec4 = std::array<double, 4>;

struct MagicOverlapMatrix {
  std::array<Vec4, 4> m{};

  double operator()(std::size_t r, std::size_t c) const { return m[r][c]; }
  double quadratic_form(const Vec4& x) const;
  double trace() const { return m[0][0] + m[1][1] + m[2][2] + m[3][3]; }
};

MagicOverlapMatrix magic_overlap_matrix(const DensityMatrix& rho);

struct FefResult {
  double fef = 0.0;           ///< F in [1/4, 1]
  double renormalized = 0.0;  ///< E = max(0, 2F - 1)
  Vec4 coordinates{};         ///< unit maximizer x; any maximizer when degenerate
};

FefResult fully_entangled_fraction(const DensityMatrix& rho);

inline double renormalized_fef(double fef) { return fef > 0.5 ? 2.0 * fef - 1.0 : 0.0; }

/// sum_n x_n |Phi^n>
ComplexVector maximally_entangled_state(const Vec4& x);

// ------------------------------------------------------------------ oracles

struct SphereSearch {
  int grid = 12;              ///< points per hyperspherical angle in the coarse pass
  int keep = 4;               ///< best coarse points carried into refinement
  double min_step = 1e-11;    ///< refinement stops below this step
};

/// Coarse hyperspherical grid over S^3 followed by compass-search refinement
/// in a tangent chart re-centred at each improvement.
double fef_oracle_sphere(const DensityMatrix& rho, const SphereSearch& search = {});

/// Power iteration on M. Independent of both the Jacobi solver and the
/// sphere search.
double fef_oracle_power(const DensityMatrix& rho, int iterations = 5000);

/// Maximum of <Phi1|(1 (x) U)^dagger rho (1 (x) U)|Phi1> over single-qubit
/// U(theta, phi, lambda), multi-start Nelder-Mead.
double fef_oracle_unitary(const DensityMatrix& rho, const SearchBudget& budget = {});

}  // namespace fefkit
