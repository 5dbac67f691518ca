#pragma once

// Two-qubit (and d x d) density matrices, the magic basis, named state
// families and the seeded random samplers.
//
// Ordering convention: every two-qubit operator is written Bob (x) Alice, so
// the computational index is 2 * bob_bit + alice_bit. Single-qubit actions on
// Alice's side are therefore `kron(I, U)`.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fefkit/linalg.hpp"

namespace fefkit {

inline constexpr double kStateTolerance = 1e-10;

/// Result of checking the density-matrix invariants on a raw matrix.
struct InvariantReport {
  bool square_dimension = true;  ///< square, side d^2 with d in {2, 3, 4}
  bool hermitian = true;
  bool unit_trace = true;
  bool positive = true;
  double hermiticity_defect = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;

  bool ok() const { return square_dimension && hermitian && unit_trace && positive; }
  /// Name of the first failed invariant, empty if none failed.
  std::string first_failure() const;
};

InvariantReport check_density_invariants(const ComplexMatrix& m);

/// Hermitian, unit-trace, positive semidefinite matrix of side d^2.
class DensityMatrix {
 public:
  /// Throws InvariantViolation naming the failed invariant.
  static DensityMatrix from_matrix(ComplexMatrix m);
  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix maximally_mixed(std::size_t dim);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.rows(); }
  /// d, the dimension of each subsystem.
  std::size_t local_dim() const noexcept;

  cplx operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  /// Convex combination (1 - w) * a + w * b.
  static DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double w);

  friend bool operator==(const DensityMatrix&, const DensityMatrix&) = default;

 private:
  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

/// Throws DimensionMismatch unless rho is a two-qubit state.
void require_two_qubit(const DensityMatrix& rho);

// ---------------------------------------------------------- single qubits

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

/// U(theta, phi, lambda) =
///   [[cos(t/2), -e^{i lambda} sin(t/2)], [e^{i phi} sin(t/2), e^{i(phi+lambda)} cos(t/2)]]
ComplexMatrix su2(double theta, double phi, double lambda);

/// Haar-random unitary of dimension d (QR of a complex Ginibre matrix).
ComplexMatrix random_unitary(std::size_t d, std::uint64_t seed, std::uint64_t index);

/// (U_bob (x) U_alice) rho (U_bob (x) U_alice)^dagger
DensityMatrix conjugate_local(const DensityMatrix& rho, const ComplexMatrix& u_bob,
                              const ComplexMatrix& u_alice);

/// Computational basis ket |index> in dimension dim.
ComplexVector basis_ket(std::size_t index, std::size_t dim);

// ------------------------------------------------------------ magic basis

/// |Phi1> = (|00>+|11>)/sqrt2,  |Phi2> = i(|01>+|10>)/sqrt2,
/// |Phi3> = (|10>-|01>)/sqrt2,  |Phi4> = i(|00>-|11>)/sqrt2.
const std::array<ComplexVector, 4>& magic_basis();

/// Columns are the magic basis states.
const ComplexMatrix& magic_basis_matrix();

/// <Phi1|rho|Phi1>
double phi1_overlap(const DensityMatrix& rho);

/// Partial trace over Alice (trace_alice = true) or Bob of a two-party matrix
/// of side d^2.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t d, bool trace_alice);

// --------------------------------------------------------------- families

/// p |Phi1><Phi1| + (1 - p) I/4
DensityMatrix werner(double p);

/// eps I/4 + (1 - eps) |psi><psi| with |psi> = cos(theta/2)|00> + sin(theta/2)|11>.
/// With `dressing_seed`, |psi> is additionally dressed by seeded Haar local unitaries.
DensityMatrix lower_family(double epsilon, double theta,
                           std::optional<std::uint64_t> dressing_seed = std::nullopt);

/// zeta |01><01| + (1 - zeta) |Phi1><Phi1|
DensityMatrix upper_family(double zeta);

/// R = T T^dagger / Tr(T T^dagger), T_nm = t_r + i t_i with t ~ U[0,1).
DensityMatrix random_density(std::uint64_t seed, std::uint64_t index);

/// Same construction with a (d^2 x d^2) T, d in {2, 3, 4}. d = 2 reproduces
/// random_density exactly.
DensityMatrix random_density_d(std::size_t d, std::uint64_t seed, std::uint64_t index);

struct MixtureDraw {
  DensityMatrix state;
  double weight;  ///< w ~ U[0, 0.5]
  double zeta;    ///< zeta ~ U[0, 1]
};

/// (1 - w) R + w upper_family(zeta), R = random_density(seed, index).
MixtureDraw fig2_mixture(std::uint64_t seed, std::uint64_t index);

enum class Family { raw, fig2, werner, lower, upper };

std::string_view to_string(Family f) noexcept;
std::optional<Family> parse_family(std::string_view name) noexcept;

struct FamilyDraw {
  DensityMatrix state;
  std::array<double, 2> params{};  ///< family parameters, unused slots are 0
};

/// Deterministic draw from any family keyed by (seed, index).
///   raw:    params unused
///   fig2:   (w, zeta)
///   werner: (p ~ U[0,1], 0)
///   lower:  (eps ~ U[0,1], theta ~ U[0,pi])
///   upper:  (zeta ~ U[0,1], 0)
FamilyDraw draw_family(Family family, std::uint64_t seed, std::uint64_t index);

// --------------------------------------------------------------- file I/O

/// Parses {"dim": n, "re": [[...]], "im": [[...]]}. Throws Parse on malformed
/// JSON or shape, InvariantViolation naming the failed invariant otherwise.
DensityMatrix parse_density_json(std::string_view text);
/// Shape-checked raw matrix, no invariant checks.
ComplexMatrix parse_matrix_json(std::string_view text);
DensityMatrix read_density_file(const std::string& path);
std::string to_density_json(const ComplexMatrix& m);

}  // namespace fefkit
