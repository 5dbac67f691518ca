#include "fefkit/applications.hpp"

#include <gsl/gsl_integration.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "fefkit/concurrence.hpp"
#include "fefkit/fef.hpp"

namespace fefkit {

namespace {

constexpr double kTwoSqrt2 = 2.0 * std::numbers::sqrt2;
const cplx kI{0.0, 1.0};

// Exchanges the two qubits of a 4x4 operator.
ComplexMatrix swap_qubits(const ComplexMatrix& m) {
  auto flip = [](std::size_t i) { return ((i & 1u) << 1) | (i >> 1); };
  ComplexMatrix out(4, 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) out(flip(r), flip(c)) = m(r, c);
  return out;
}

ComplexMatrix power(const ComplexMatrix& m, int k) { return k ? m : ComplexMatrix::identity(m.rows()); }

double canonical_from_matrix(const ComplexMatrix& r) {
  const auto& basis = magic_basis();
  const double p1 = expectation(basis[0], r, basis[0]).real();
  const double p3 = expectation(basis[2], r, basis[2]).real();
  return kTwoSqrt2 * std::abs(p1 - p3);
}

// T_ij = Tr{(s_i (x) s_j) rho} with s_0 = Z, s_1 = X.
std::array<std::array<double, 2>, 2> xz_correlations(const DensityMatrix& rho) {
  const std::array<ComplexMatrix, 2> ops{pauli_z(), pauli_x()};
  std::array<std::array<double, 2>, 2> t{};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) t[i][j] = (kron(ops[i], ops[j]) * rho.matrix()).trace().real();
  return t;
}

ComplexMatrix detector(double phi) {
  return cplx{std::cos(phi)} * pauli_z() + cplx{std::sin(phi)} * pauli_x();
}

}  // namespace

// -------------------------------------------------------------- dense coding

double dense_coding_fidelity(const DensityMatrix& rho) {
  require_two_qubit(rho);
  const ComplexMatrix id = ComplexMatrix::identity(2);
  const std::array<ComplexMatrix, 4> encodings{id, kI * pauli_x(), kI * pauli_y(), kI * pauli_z()};
  double sum = 0.0;
  for (std::size_t j = 0; j < 4; ++j) {
    const ComplexMatrix encoded = conjugate_by(kron(id, encodings[j]), rho.matrix());
    sum += expectation(magic_basis()[j], encoded, magic_basis()[j]).real();
  }
  return sum / 4.0;
}

double dense_coding_fidelity_max(const DensityMatrix& rho, const SearchBudget& budget) {
  require_two_qubit(rho);
  return max_local_overlap(magic_basis()[0], rho, budget);
}

// ------------------------------------------------------------- teleportation

double teleport_output_fidelity(const DensityMatrix& rho, double theta, double phi) {
  require_two_qubit(rho);
  const ComplexVector psi{std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi)};
  // Particles (input, Alice, Bob); index = 4 b_in + 2 b_alice + b_bob. The
  // resource is stored Bob (x) Alice, so swap it into (Alice, Bob).
  const ComplexMatrix sigma = kron(outer(psi, psi), swap_qubits(rho.matrix()));
  const ComplexVector& phi_plus = magic_basis()[0];
  const ComplexMatrix id = ComplexMatrix::identity(2);

  double f = 0.0;
  for (int m1 = 0; m1 < 2; ++m1) {
    for (int m2 = 0; m2 < 2; ++m2) {
      const ComplexMatrix pauli = power(pauli_z(), m2) * power(pauli_x(), m1);
      const ComplexVector bell = kron(pauli, id) * phi_plus;
      ComplexMatrix bob(2, 2);
      for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t k = 0; k < 4; ++k) {
          const cplx amp = std::conj(bell[j]) * bell[k];
          if (amp == cplx{}) continue;
          for (std::size_t b = 0; b < 2; ++b)
            for (std::size_t bp = 0; bp < 2; ++bp) bob(b, bp) += amp * sigma(2 * j + b, 2 * k + bp);
        }
      const ComplexMatrix corrected = conjugate_by(pauli, bob);
      f += expectation(psi, corrected, psi).real();
    }
  }
  return f;
}

double teleportation_fidelity(const DensityMatrix& rho, const TeleportQuadrature& quadrature) {
  require_two_qubit(rho);
  if (quadrature.cos_nodes < 1 || quadrature.phi_nodes < 1) {
    throw Error(ErrorKind::OutOfRange, "quadrature needs at least one node per axis");
  }
  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
      gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(quadrature.cos_nodes)),
      &gsl_integration_glfixed_table_free);

  double total = 0.0;
  for (int i = 0; i < quadrature.cos_nodes; ++i) {
    double u = 0.0;
    double w = 0.0;
    gsl_integration_glfixed_point(-1.0, 1.0, static_cast<std::size_t>(i), &u, &w, table.get());
    const double theta = std::acos(u);
    double ring = 0.0;
    for (int k = 0; k < quadrature.phi_nodes; ++k) {
      const double phi = 2.0 * std::numbers::pi * k / quadrature.phi_nodes;
      ring += teleport_output_fidelity(rho, theta, phi);
    }
    // d(Omega) = d(cos theta) d(phi); the phi mean carries 2 pi / 4 pi = 1/2.
    total += w * ring / quadrature.phi_nodes;
  }
  return total / 2.0;
}

// ------------------------------------------------------------------ swapping

std::array<SwapOutcome, 4> swapping_outcomes(const DensityMatrix& rho) {
  require_two_qubit(rho);
  // Particles (1,2,3,4); index = 8 b1 + 4 b2 + 2 b3 + b4. Particle 1 is
  // Alice's and 2 is Bob's, so the Bob (x) Alice resource is swapped.
  const ComplexMatrix pair = swap_qubits(rho.matrix());
  const ComplexMatrix& phi1 = magic_basis_matrix();
  ComplexMatrix reference(4, 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) reference(r, c) = phi1(r, 0) * std::conj(phi1(c, 0));
  const ComplexMatrix sigma = kron(pair, reference);

  auto index = [](std::size_t b1, std::size_t b2, std::size_t b3, std::size_t b4) {
    return 8 * b1 + 4 * b2 + 2 * b3 + b4;
  };

  std::array<SwapOutcome, 4> out{};
  for (std::size_t j = 0; j < 4; ++j) {
    const ComplexVector& target = magic_basis()[j];
    ComplexMatrix bob(4, 4);  // (b2, b4)
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t ap = 0; ap < 4; ++ap) {
        const cplx amp = std::conj(target[a]) * target[ap];
        if (amp == cplx{}) continue;
        const std::size_t b1 = a >> 1, b3 = a & 1u;
        const std::size_t b1p = ap >> 1, b3p = ap & 1u;
        for (std::size_t r = 0; r < 4; ++r)
          for (std::size_t c = 0; c < 4; ++c)
            bob(r, c) += amp * sigma(index(b1, r >> 1, b3, r & 1u), index(b1p, c >> 1, b3p, c & 1u));
      }
    out[j].probability = bob.trace().real();
    out[j].overlap = expectation(target, bob, target).real();
  }
  return out;
}

double swapping_fidelity(const DensityMatrix& rho) {
  double sum = 0.0;
  for (const auto& o : swapping_outcomes(rho)) sum += o.overlap;
  return sum;
}

double swapping_fidelity_unweighted(const DensityMatrix& rho) {
  double sum = 0.0;
  for (const auto& o : swapping_outcomes(rho))
    if (o.probability > 1e-15) sum += o.overlap / o.probability;
  return sum / 4.0;
}

// ---------------------------------------------------------------------- CHSH

ChshAngles canonical_angles() {
  const double pi = std::numbers::pi;
  return {0.0, pi / 2.0, pi / 4.0, 3.0 * pi / 4.0};
}

double bell_chsh(const DensityMatrix& rho, const ChshAngles& angles) {
  require_two_qubit(rho);
  const ComplexMatrix& r = rho.matrix();
  auto term = [&](double a, double b) { return (kron(detector(a), detector(b)) * r).trace(); };
  const cplx total = term(angles.a, angles.b) - term(angles.a, angles.b_prime) +
                     term(angles.a_prime, angles.b) + term(angles.a_prime, angles.b_prime);
  return std::abs(total);
}

double bell_canonical(const DensityMatrix& rho) {
  require_two_qubit(rho);
  return canonical_from_matrix(rho.matrix());
}

double bell_max(const DensityMatrix& rho, BellMode mode, const SearchBudget& budget) {
  require_two_qubit(rho);
  if (mode == BellMode::angles) {
    // Same expansion as bell_chsh: Tr{S(a)(x)S(b) rho} = u(a)^T T u(b),
    // u(phi) = (cos phi, sin phi), with T the z/x correlation block.
    const auto t = xz_correlations(rho);
    auto corr = [&](double a, double b) {
      const double ca = std::cos(a), sa = std::sin(a), cb = std::cos(b), sb = std::sin(b);
      return ca * (t[0][0] * cb + t[0][1] * sb) + sa * (t[1][0] * cb + t[1][1] * sb);
    };
    auto objective = [&](std::span<const double> p) {
      return std::abs(corr(p[0], p[2]) - corr(p[0], p[3]) + corr(p[1], p[2]) + corr(p[1], p[3]));
    };
    return maximize(objective, 4, 2.0 * std::numbers::pi, budget).value;
  }
  const ComplexMatrix& r = rho.matrix();
  auto objective = [&](std::span<const double> p) {
    const ComplexMatrix u = kron(su2(p[0], p[1], p[2]), su2(p[3], p[4], p[5]));
    return canonical_from_matrix(conjugate_by(u, r));
  };
  return maximize(objective, 6, 2.0 * std::numbers::pi, budget).value;
}

double bell_max_angles_analytic(const DensityMatrix& rho) {
  require_two_qubit(rho);
  const auto t = xz_correlations(rho);
  double frob = 0.0;
  for (const auto& row : t)
    for (double v : row) frob += v * v;
  return 2.0 * std::sqrt(frob);
}

// -------------------------------------------------------------- fiducial gap

double max_local_overlap(const ComplexVector& fiducial, const DensityMatrix& rho, const SearchBudget& budget) {
  if (fiducial.dim() != 4) throw Error(ErrorKind::DimensionMismatch, "fiducial must be a two-qubit vector");
  require_two_qubit(rho);
  const ComplexMatrix& r = rho.matrix();
  auto objective = [&](std::span<const double> p) {
    const ComplexVector chi = kron(su2(p[0], p[1], p[2]), su2(p[3], p[4], p[5])) * fiducial;
    return expectation(chi, r, chi).real();
  };
  return maximize(objective, 6, 2.0 * std::numbers::pi, budget).value;
}

double fiducial_gap(double theta, const SearchBudget& budget) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw Error(ErrorKind::OutOfRange, "theta must lie in [0, pi]");
  }
  const ComplexVector fiducial{std::cos(theta / 2.0), 0.0, 0.0, std::sin(theta / 2.0)};
  const double entangled = max_local_overlap(fiducial, DensityMatrix::pure(magic_basis()[0]), budget);
  const double product = max_local_overlap(fiducial, DensityMatrix::pure(basis_ket(1, 4)), budget);
  return entangled - product;
}

// -------------------------------------------------------------------- report

AnalysisReport analyze_state(const DensityMatrix& rho, const AnalysisOptions& options) {
  require_two_qubit(rho);
  AnalysisReport r;
  const FefResult fef = fully_entangled_fraction(rho);
  r.fef = fef.fef;
  r.renormalized = fef.renormalized;
  r.concurrence = concurrence(rho).value;
  r.dense_coding = dense_coding_fidelity(rho);
  r.dense_coding_max = fef.fef;
  r.teleportation = teleportation_fidelity(rho, options.quadrature);
  r.teleportation_max = (1.0 + 2.0 * fef.fef) / 3.0;
  r.swapping = swapping_fidelity(rho);
  r.swapping_max = fef.fef;
  r.bell_canonical = bell_canonical(rho);
  r.bell_max_angles = bell_max(rho, BellMode::angles, options.budget);
  if (options.bell_unitaries) r.bell_max_unitaries = bell_max(rho, BellMode::local_unitaries, options.budget);
  return r;
}

std::vector<IdentityDeviation> report_identities(const DensityMatrix& rho, const AnalysisReport& report) {
  const double overlap = phi1_overlap(rho);
  std::vector<IdentityDeviation> out;
  out.push_back({"dense_coding_reduction", std::abs(report.dense_coding - overlap), 1e-12});
  out.push_back({"teleportation_reduction", std::abs(report.teleportation - (1.0 + 2.0 * overlap) / 3.0), 1e-10});
  out.push_back({"swapping_reduction", std::abs(report.swapping - overlap), 1e-12});
  out.push_back({"bell_canonical_reduction",
                 std::abs(report.bell_canonical - bell_chsh(rho, canonical_angles())), 1e-12});
  out.push_back({"teleportation_max_relation",
                 std::abs(report.teleportation_max - (1.0 + 2.0 * report.fef) / 3.0), 1e-12});
  out.push_back({"bell_unitaries_below_fef",
                 std::max(0.0, report.bell_max_unitaries / kTwoSqrt2 - report.fef), 1e-9});
  return out;
}

}  // namespace fefkit
