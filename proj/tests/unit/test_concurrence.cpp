#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "fefkit/concurrence.hpp"
#include "fefkit/fef.hpp"
#include "fefkit/states.hpp"
#include "test_support.hpp"

using namespace fefkit;

namespace {

// Textbook route: eigenvalues of the non-Hermitian rho * rho~ from a general
// complex eigensolver, square-rooted.
double eigen_concurrence(const DensityMatrix& rho) {
  Eigen::Matrix4cd r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = rho(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(3, 0) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  const Eigen::Matrix4cd flipped = yy * r.conjugate() * yy;
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(r * flipped);
  std::array<double, 4> l{};
  for (int i = 0; i < 4; ++i) l[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, solver.eigenvalues()(i).real()));
  std::sort(l.rbegin(), l.rend());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

}  // namespace

TEST_CASE("spin flip examples") {
  const DensityMatrix phi1 = DensityMatrix::pure(magic_basis()[0]);
  CHECK(max_abs_diff(spin_flip(phi1), phi1.matrix()) <= 1e-15);
  const ComplexMatrix flipped = spin_flip(DensityMatrix::pure(basis_ket(0, 4)));
  CHECK(max_abs_diff(flipped, outer(basis_ket(3, 4), basis_ket(3, 4))) <= 1e-15);
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(4);
  CHECK(max_abs_diff(spin_flip(mixed), mixed.matrix()) <= 1e-15);
  for (const auto& phi : magic_basis()) {
    const DensityMatrix p = DensityMatrix::pure(phi);
    CHECK(max_abs_diff(spin_flip(p), p.matrix()) <= 1e-15);
  }
}

TEST_CASE("concurrence examples") {
  CHECK(concurrence(DensityMatrix::pure(magic_basis()[0])).value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(concurrence(DensityMatrix::pure(basis_ket(0, 4))).value == 0.0);
  CHECK(concurrence(DensityMatrix::maximally_mixed(4)).value == 0.0);
}

TEST_CASE("werner concurrence follows the closed form") {
  for (int i = 0; i <= 20; ++i) {
    const double p = i / 20.0;
    CHECK(std::abs(concurrence(werner(p)).value - std::max(0.0, (3 * p - 1) / 2)) <= 1e-10);
  }
}

TEST_CASE("pure Schmidt states have concurrence 2ab") {
  for (int i = 0; i <= 50; ++i) {
    const double t = std::numbers::pi * i / 100.0;
    const double a = std::cos(t);
    const double b = std::sin(t);
    CHECK(std::abs(concurrence(testing::schmidt_state(a, b)).value - 2 * a * b) <= 1e-10);
  }
}

TEST_CASE("lambdas are sorted, nonnegative and consistent with the value") {
  for (std::uint64_t k = 0; k < 300; ++k) {
    const ConcurrenceResult r = concurrence(fig2_mixture(testing::kSeed, k).state);
    for (std::size_t i = 0; i < 4; ++i) CHECK(r.lambdas[i] >= 0.0);
    for (std::size_t i = 1; i < 4; ++i) CHECK(r.lambdas[i - 1] >= r.lambdas[i]);
    const auto& l = r.lambdas;
    CHECK(r.value == std::max(0.0, l[0] - l[1] - l[2] - l[3]));
  }
}

TEST_CASE("concurrence agrees with a general eigensolver on rho rho~") {
  double worst = 0.0;
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const DensityMatrix rho = k % 2 ? random_density(testing::kSeed, k) : fig2_mixture(testing::kSeed, k).state;
    worst = std::max(worst, std::abs(concurrence(rho).value - eigen_concurrence(rho)));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("concurrence is invariant under local unitaries") {
  for (std::uint64_t k = 0; k < 200; ++k) {
    const DensityMatrix rho = fig2_mixture(testing::kSeed, 700 + k).state;
    const DensityMatrix moved = conjugate_local(rho, random_unitary(2, testing::kSeed, 5 * k),
                                                random_unitary(2, testing::kSeed, 5 * k + 1));
    CHECK(std::abs(concurrence(moved).value - concurrence(rho).value) <= 1e-9);
  }
}

TEST_CASE("rank-deficient states stay exact") {
  // Rank one and rank two states where a naive square root of rounding noise
  // would leak into C at the 1e-8 level.
  for (std::uint64_t k = 0; k < 100; ++k) {
    const ComplexMatrix u = random_unitary(2, testing::kSeed, 900 + k);
    const DensityMatrix product = DensityMatrix::pure(kron(u, u) * basis_ket(1, 4));
    CHECK(concurrence(product).value <= 1e-12);
    const DensityMatrix bell = conjugate_local(DensityMatrix::pure(magic_basis()[k % 4]), u, u.adjoint());
    CHECK(std::abs(concurrence(bell).value - 1.0) <= 1e-12);
  }
  CHECK(std::abs(concurrence(upper_family(0.3)).value - 0.7) <= 1e-12);
}

TEST_CASE("bounds check on the saturating families") {
  for (int i = 0; i < 100; ++i) {
    const double eps = i / 99.0;
    for (double theta : {0.3, 1.0, std::numbers::pi / 2, 2.5}) {
      const DensityMatrix rho = lower_family(eps, theta);
      const double expected = std::max(0.0, (1 - eps) * std::sin(theta) - eps / 2);
      const BoundsCheck b = bounds_check(rho);
      CHECK(std::abs(b.renormalized - expected) <= 1e-10);
      CHECK(std::abs(b.concurrence - expected) <= 1e-10);
      CHECK(b.lower_ok);
      CHECK(b.upper_ok);
    }
    const double zeta = i / 99.0;
    const BoundsCheck up = bounds_check(upper_family(zeta));
    CHECK(std::abs(up.concurrence - (1 - zeta)) <= 1e-10);
    CHECK(std::abs(up.renormalized - std::max(0.0, 1 - 2 * zeta)) <= 1e-10);
    if (zeta <= 0.5) CHECK(std::abs(up.renormalized - (2 * up.concurrence - 1)) <= 1e-10);
  }
}

TEST_CASE("bounds check flags violations by value") {
  CHECK_FALSE(bounds_check(0.5, 0.4).lower_ok);
  CHECK(bounds_check(0.5, 0.4).upper_ok);
  CHECK_FALSE(bounds_check(0.0, 0.6).upper_ok);
  CHECK(bounds_check(0.4, 0.4 - 5e-10).lower_ok);
}

TEST_CASE("bound chain holds on random mixtures") {
  for (std::uint64_t k = 0; k < 5000; ++k) {
    const DensityMatrix rho = fig2_mixture(testing::kSeed, k).state;
    const BoundsCheck b = bounds_check(rho);
    CHECK(b.lower_ok);
    CHECK(b.upper_ok);
    CHECK(b.renormalized >= 0.0);
    CHECK(b.concurrence <= 1.0 + 1e-9);
  }
}
