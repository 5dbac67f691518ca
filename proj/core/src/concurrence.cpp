#include "fefkit/concurrence.hpp"

#include <algorithm>
#include <cmath>

#include "fefkit/fef.hpp"

namespace fefkit {

namespace {
// Eigenvalues of a unit-trace state at or below this are rounding noise.
constexpr double kNullEigenvalue = 1e-14;
}  // namespace

ComplexMatrix spin_flip(const DensityMatrix& rho) {
  require_two_qubit(rho);
  static const ComplexMatrix yy = kron(pauli_y(), pauli_y());
  return yy * rho.matrix().conjugate() * yy;
}

ConcurrenceResult concurrence(const DensityMatrix& rho) {
  require_two_qubit(rho);
  static const ComplexMatrix yy = kron(pauli_y(), pauli_y());

  // rho = V L V^dagger. With S = V sqrt(L) V^dagger,
  //   sqrt(rho) rho~ sqrt(rho) = A A^dagger,  A = S (Y(x)Y) S*,
  // and A is unitarily equivalent to tau = sqrt(L) V^dagger (Y(x)Y) V* sqrt(L).
  // The lambdas are the singular values of tau, which avoids taking square
  // roots of eigenvalues that are zero up to rounding.
  const EigenSystem eig = hermitian_eig(rho.matrix());
  ComplexMatrix v(4, 4);
  std::array<double, 4> root{};
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t r = 0; r < 4; ++r) v(r, k) = eig.vectors[k][r];
    root[k] = eig.values[k] > kNullEigenvalue ? std::sqrt(eig.values[k]) : 0.0;
  }
  ComplexMatrix tau = v.adjoint() * yy * v.conjugate();
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) tau(r, c) *= root[r] * root[c];

  const std::vector<double> sv = singular_values(tau);
  ConcurrenceResult out;
  std::copy(sv.begin(), sv.end(), out.lambdas.begin());
  out.value = std::max(0.0, out.lambdas[0] - out.lambdas[1] - out.lambdas[2] - out.lambdas[3]);
  return out;
}

BoundsCheck bounds_check(double renormalized, double concurrence) {
  BoundsCheck out;
  out.renormalized = renormalized;
  out.concurrence = concurrence;
  out.lower_ok = renormalized <= concurrence + kBoundTolerance;
  out.upper_ok = concurrence <= (renormalized + 1.0) / 2.0 + kBoundTolerance;
  return out;
}

BoundsCheck bounds_check(const DensityMatrix& rho) {
  return bounds_check(fully_entangled_fraction(rho).renormalized, concurrence(rho).value);
}

}  // namespace fefkit
