#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "fefkit/concurrence.hpp"
#include "fefkit/fef.hpp"
#include "fefkit/states.hpp"
#include "test_support.hpp"

using namespace fefkit;
using std::numbers::pi;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no fefkit::Error thrown");
  return ErrorKind::Parse;
}

std::string failure_message(const std::string& json) {
  try {
    (void)parse_density_json(json);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

constexpr double kPinnedMeanPurity = 0.7524756596231974;

double purity(const DensityMatrix& rho) { return (rho.matrix() * rho.matrix()).trace().real(); }

}  // namespace

TEST_CASE("magic basis is orthonormal") {
  const auto& basis = magic_basis();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(std::abs(inner(basis[i], basis[j]) - cplx{i == j ? 1.0 : 0.0}) <= 1e-12);
}

TEST_CASE("every magic state has maximally mixed marginals") {
  const ComplexMatrix half = cplx{0.5} * ComplexMatrix::identity(2);
  for (const auto& phi : magic_basis()) {
    const ComplexMatrix p = outer(phi, phi);
    CHECK(max_abs_diff(partial_trace(p, 2, true), half) <= 1e-12);
    CHECK(max_abs_diff(partial_trace(p, 2, false), half) <= 1e-12);
  }
}

TEST_CASE("Pauli encodings on Alice map Phi1 onto the other magic states with phases") {
  const auto& b = magic_basis();
  const cplx i{0.0, 1.0};
  const ComplexMatrix one = ComplexMatrix::identity(2);
  CHECK(max_abs_diff(kron(one, i * pauli_x()) * b[0], b[1]) <= 1e-12);
  CHECK(max_abs_diff(kron(one, i * pauli_y()) * b[0], b[2]) <= 1e-12);
  CHECK(max_abs_diff(kron(one, i * pauli_z()) * b[0], b[3]) <= 1e-12);
}

TEST_CASE("magic basis entries carry the expected phases") {
  const double r = 1.0 / std::sqrt(2.0);
  const auto& b = magic_basis();
  CHECK(max_abs_diff(b[0], ComplexVector{r, 0.0, 0.0, r}) <= 1e-15);
  CHECK(max_abs_diff(b[1], ComplexVector{0.0, cplx{0, r}, cplx{0, r}, 0.0}) <= 1e-15);
  CHECK(max_abs_diff(b[2], ComplexVector{0.0, -r, r, 0.0}) <= 1e-15);
  CHECK(max_abs_diff(b[3], ComplexVector{cplx{0, r}, 0.0, 0.0, cplx{0, -r}}) <= 1e-15);
}

TEST_CASE("partial trace keeps the right subsystem") {
  // |0>_Bob |1>_Alice: tracing Alice leaves |0><0|, tracing Bob leaves |1><1|.
  const ComplexMatrix p = outer(basis_ket(1, 4), basis_ket(1, 4));
  CHECK(partial_trace(p, 2, true)(0, 0) == cplx{1.0});
  CHECK(partial_trace(p, 2, false)(1, 1) == cplx{1.0});
}

TEST_CASE("invariant checks name the failed invariant") {
  ComplexMatrix m = ComplexMatrix::identity(4);
  CHECK(check_density_invariants(m).first_failure() == "unit_trace");
  m = cplx{0.25} * m;
  CHECK(check_density_invariants(m).ok());
  ComplexMatrix skew = m;
  skew(0, 1) = 0.1;
  CHECK(check_density_invariants(skew).first_failure() == "hermitian");
  ComplexMatrix negative = ComplexMatrix::diagonal(std::vector<double>{0.75, 0.5, 0.25, -0.5});
  CHECK(check_density_invariants(negative).first_failure() == "positive_semidefinite");
  CHECK(check_density_invariants(ComplexMatrix::identity(3)).first_failure() == "dimension");
  CHECK(kind_of([&] { (void)DensityMatrix::from_matrix(negative); }) == ErrorKind::InvariantViolation);
}

TEST_CASE("werner examples") {
  CHECK(max_abs_diff(werner(1.0).matrix(), outer(magic_basis()[0], magic_basis()[0])) <= 1e-15);
  CHECK(max_abs_diff(werner(0.0).matrix(), cplx{0.25} * ComplexMatrix::identity(4)) <= 1e-15);
  CHECK(phi1_overlap(werner(0.5)) == doctest::Approx(0.625).epsilon(1e-14));
  CHECK(kind_of([] { (void)werner(1.5); }) == ErrorKind::OutOfRange);
  CHECK(kind_of([] { (void)werner(-0.1); }) == ErrorKind::OutOfRange);
}

TEST_CASE("lower family examples") {
  CHECK(max_abs_diff(lower_family(0.0, pi / 2).matrix(), werner(1.0).matrix()) <= 1e-15);
  CHECK(max_abs_diff(lower_family(1.0, 0.3).matrix(), werner(0.0).matrix()) <= 1e-15);

  const DensityMatrix rho = lower_family(0.2, pi / 2);
  CHECK(fully_entangled_fraction(rho).renormalized == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(concurrence(rho).value == doctest::Approx(0.7).epsilon(1e-12));

  CHECK(kind_of([] { (void)lower_family(0.5, 4.0); }) == ErrorKind::OutOfRange);
  CHECK(kind_of([] { (void)lower_family(1.2, 1.0); }) == ErrorKind::OutOfRange);
}

TEST_CASE("dressed lower family differs in matrix but not in invariants") {
  const DensityMatrix plain = lower_family(0.3, 1.1);
  const DensityMatrix dressed = lower_family(0.3, 1.1, 99);
  CHECK(max_abs_diff(plain.matrix(), dressed.matrix()) > 1e-3);
  CHECK(fully_entangled_fraction(dressed).fef == doctest::Approx(fully_entangled_fraction(plain).fef).epsilon(1e-10));
  CHECK(dressed == lower_family(0.3, 1.1, 99));
}

TEST_CASE("upper family examples") {
  const auto zero = upper_family(0.0);
  CHECK(fully_entangled_fraction(zero).renormalized == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(concurrence(zero).value == doctest::Approx(1.0).epsilon(1e-12));

  const auto half = upper_family(0.5);
  CHECK(std::abs(fully_entangled_fraction(half).renormalized) <= 1e-12);
  CHECK(concurrence(half).value == doctest::Approx(0.5).epsilon(1e-12));

  const auto quarter = upper_family(0.25);
  CHECK(fully_entangled_fraction(quarter).renormalized == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(concurrence(quarter).value == doctest::Approx(0.75).epsilon(1e-12));

  CHECK(kind_of([] { (void)upper_family(2.0); }) == ErrorKind::OutOfRange);
}

TEST_CASE("random_density is a valid state and deterministic") {
  for (std::uint64_t k = 0; k < 200; ++k) {
    const DensityMatrix rho = random_density(testing::kSeed, k);
    const InvariantReport report = check_density_invariants(rho.matrix());
    CHECK(report.ok());
    CHECK(report.min_eigenvalue >= -1e-12);
    CHECK(rho == random_density(testing::kSeed, k));
  }
  CHECK(random_density(1, 0) != random_density(1, 1));
  CHECK(random_density(1, 0) != random_density(2, 0));
}

TEST_CASE("random_density mean purity over 10000 draws is pinned") {
  double total = 0.0;
  for (std::uint64_t k = 0; k < 10000; ++k) total += purity(random_density(7, k));
  const double mean = total / 10000.0;
  // Pinned at first run; a different generator or draw order moves this.
  CHECK(mean == doctest::Approx(kPinnedMeanPurity).epsilon(1e-12));
  // Independent numpy estimate of the same construction (200k draws): 0.7526.
  CHECK(std::abs(mean - 0.7526) <= 0.005);
}

TEST_CASE("fig2 mixtures are valid, reproducible, and record their parameters") {
  for (std::uint64_t k = 0; k < 200; ++k) {
    const MixtureDraw draw = fig2_mixture(testing::kSeed, k);
    CHECK(check_density_invariants(draw.state.matrix()).ok());
    CHECK(draw.weight >= 0.0);
    CHECK(draw.weight <= 0.5);
    CHECK(draw.zeta >= 0.0);
    CHECK(draw.zeta <= 1.0);
    const DensityMatrix rebuilt =
        DensityMatrix::mix(random_density(testing::kSeed, k), upper_family(draw.zeta), draw.weight);
    CHECK(max_abs_diff(rebuilt.matrix(), draw.state.matrix()) == 0.0);
    CHECK(draw.state == fig2_mixture(testing::kSeed, k).state);
  }
  // Zero weight reproduces the raw draw.
  const DensityMatrix raw = random_density(3, 4);
  CHECK(DensityMatrix::mix(raw, upper_family(0.3), 0.0) == raw);
}

TEST_CASE("fig2 mixtures lower mean concurrence but extend the upper tail") {
  // Independent numpy estimate over 20k draws of each recipe: mean C 0.145
  // (raw) vs 0.111 (mixture); fraction with C > 0.5 rises from 0.18% to 0.30%.
  double raw = 0.0;
  double mixed = 0.0;
  int raw_tail = 0;
  int mixed_tail = 0;
  for (std::uint64_t k = 0; k < 10000; ++k) {
    const double c_raw = concurrence(random_density(11, k)).value;
    const double c_mixed = concurrence(fig2_mixture(11, k).state).value;
    raw += c_raw;
    mixed += c_mixed;
    raw_tail += c_raw > 0.5;
    mixed_tail += c_mixed > 0.5;
  }
  CHECK(std::abs(raw / 10000.0 - 0.145) <= 0.01);
  CHECK(std::abs(mixed / 10000.0 - 0.111) <= 0.01);
  CHECK(mixed_tail > raw_tail);
}

TEST_CASE("draw_family dispatches and is deterministic") {
  for (Family f : {Family::raw, Family::fig2, Family::werner, Family::lower, Family::upper}) {
    const FamilyDraw a = draw_family(f, 5, 17);
    const FamilyDraw b = draw_family(f, 5, 17);
    CHECK(a.state == b.state);
    CHECK(a.params == b.params);
    CHECK(parse_family(to_string(f)) == f);
  }
  CHECK_FALSE(parse_family("bogus").has_value());
  const FamilyDraw w = draw_family(Family::werner, 5, 17);
  CHECK(w.state == werner(w.params[0]));
  const FamilyDraw l = draw_family(Family::lower, 5, 17);
  CHECK(l.state == lower_family(l.params[0], l.params[1]));
  CHECK(draw_family(Family::raw, 5, 17).state == random_density(5, 17));
}

TEST_CASE("local conjugation and random unitaries") {
  const ComplexMatrix u = random_unitary(2, testing::kSeed, 1);
  CHECK(max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(2)) <= 1e-12);
  const ComplexMatrix u3 = random_unitary(3, testing::kSeed, 2);
  CHECK(max_abs_diff(u3.adjoint() * u3, ComplexMatrix::identity(3)) <= 1e-12);

  const DensityMatrix rho = random_density(testing::kSeed, 9);
  const DensityMatrix moved = conjugate_local(rho, u, random_unitary(2, testing::kSeed, 3));
  CHECK(check_density_invariants(moved.matrix()).ok());
  CHECK(std::abs(purity(moved) - purity(rho)) <= 1e-12);

  CHECK(max_abs_diff(su2(0.0, 0.0, 0.0), ComplexMatrix::identity(2)) <= 1e-15);
  const ComplexMatrix s = su2(0.7, 1.3, -0.4);
  CHECK(max_abs_diff(s * s.adjoint(), ComplexMatrix::identity(2)) <= 1e-14);
}

TEST_CASE("two-qubit operations reject other dimensions") {
  const DensityMatrix qutrits = DensityMatrix::maximally_mixed(9);
  CHECK(qutrits.local_dim() == 3);
  CHECK(kind_of([&] { require_two_qubit(qutrits); }) == ErrorKind::DimensionMismatch);
  CHECK(kind_of([&] { (void)phi1_overlap(qutrits); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("density JSON round trip") {
  const DensityMatrix rho = random_density(testing::kSeed, 21);
  const DensityMatrix back = parse_density_json(to_density_json(rho.matrix()));
  CHECK(max_abs_diff(back.matrix(), rho.matrix()) <= 1e-15);
}

TEST_CASE("density JSON errors") {
  CHECK(kind_of([] { (void)parse_density_json("{not json"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { (void)parse_density_json(R"({"dim": 4, "re": [[1]], "im": [[0]]})"); }) ==
        ErrorKind::Parse);
  CHECK(kind_of([] { (void)parse_density_json(R"({"re": [], "im": []})"); }) == ErrorKind::Parse);

  const std::string bad_trace =
      R"({"dim": 2, "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]})";
  CHECK(kind_of([&] { (void)parse_density_json(bad_trace); }) == ErrorKind::InvariantViolation);

  const std::string bad_trace4 =
      R"({"dim": 4, "re": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]], "im": [[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]})";
  CHECK(kind_of([&] { (void)parse_density_json(bad_trace4); }) == ErrorKind::InvariantViolation);
  CHECK(failure_message(bad_trace4).find("unit_trace") != std::string::npos);

  const std::string not_hermitian =
      R"({"dim": 4, "re": [[0.25,0.1,0,0],[0,0.25,0,0],[0,0,0.25,0],[0,0,0,0.25]], "im": [[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]})";
  CHECK(failure_message(not_hermitian).find("hermitian") != std::string::npos);

  CHECK(kind_of([] { (void)read_density_file("/nonexistent/state.json"); }) == ErrorKind::Parse);
}
