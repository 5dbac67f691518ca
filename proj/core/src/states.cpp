#include "fefkit/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fefkit/rng.hpp"

namespace fefkit {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
const cplx kI{0.0, 1.0};

void require_range(double value, double lo, double hi, const char* name) {
  if (!(value >= lo && value <= hi)) {
    throw Error(ErrorKind::OutOfRange, std::string(name) + " = " + std::to_string(value) +
                                           " outside [" + std::to_string(lo) + ", " +
                                           std::to_string(hi) + "]");
  }
}

std::optional<std::size_t> local_dim_of(std::size_t dim) {
  for (std::size_t d : {2u, 3u, 4u})
    if (d * d == dim) return d;
  return std::nullopt;
}

}  // namespace

// ------------------------------------------------------------- invariants

std::string InvariantReport::first_failure() const {
  if (!square_dimension) return "dimension";
  if (!hermitian) return "hermitian";
  if (!unit_trace) return "unit_trace";
  if (!positive) return "positive_semidefinite";
  return {};
}

InvariantReport check_density_invariants(const ComplexMatrix& m) {
  InvariantReport report;
  if (!m.is_square() || !local_dim_of(m.rows())) {
    report.square_dimension = false;
    return report;
  }
  report.hermiticity_defect = hermiticity_defect(m);
  report.hermitian = report.hermiticity_defect <= kStateTolerance;
  const cplx tr = m.trace();
  report.trace_error = std::abs(tr - cplx{1.0});
  report.unit_trace = report.trace_error <= kStateTolerance;
  if (report.hermitian) {
    report.min_eigenvalue = hermitian_eig(m, HermitianInput::symmetrize).values.back();
    report.positive = report.min_eigenvalue >= -kStateTolerance;
  } else {
    report.positive = false;
  }
  return report;
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m) {
  const InvariantReport report = check_density_invariants(m);
  if (!report.ok()) {
    throw Error(ErrorKind::InvariantViolation,
                report.first_failure() + " (hermiticity defect " +
                    std::to_string(report.hermiticity_defect) + ", trace error " +
                    std::to_string(report.trace_error) + ", min eigenvalue " +
                    std::to_string(report.min_eigenvalue) + ")");
  }
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  if (!local_dim_of(psi.dim())) {
    throw Error(ErrorKind::DimensionMismatch, "pure state dim must be 4, 9 or 16");
  }
  if (std::abs(psi.norm() - 1.0) > kStateTolerance) {
    throw Error(ErrorKind::InvariantViolation, "unit_trace (state vector not normalized)");
  }
  return DensityMatrix(outer(psi, psi));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  if (!local_dim_of(dim)) throw Error(ErrorKind::DimensionMismatch, "dim must be 4, 9 or 16");
  return DensityMatrix(cplx{1.0 / static_cast<double>(dim)} * ComplexMatrix::identity(dim));
}

std::size_t DensityMatrix::local_dim() const noexcept { return *local_dim_of(dim()); }

DensityMatrix DensityMatrix::mix(const DensityMatrix& a, const DensityMatrix& b, double w) {
  require_range(w, 0.0, 1.0, "mixing weight");
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "mixing states of different dims");
  return DensityMatrix(cplx{1.0 - w} * a.m_ + cplx{w} * b.m_);
}

void require_two_qubit(const DensityMatrix& rho) {
  if (rho.dim() != 4) {
    throw Error(ErrorKind::DimensionMismatch,
                "expected a two-qubit state, got dim " + std::to_string(rho.dim()));
  }
}

// ------------------------------------------------------------ single qubit

ComplexMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix pauli_y() { return {{0.0, -kI}, {kI, 0.0}}; }
ComplexMatrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

ComplexMatrix su2(double theta, double phi, double lambda) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  return {{c, -std::polar(1.0, lambda) * s},
          {std::polar(1.0, phi) * s, std::polar(1.0, phi + lambda) * c}};
}

ComplexMatrix random_unitary(std::size_t d, std::uint64_t seed, std::uint64_t index) {
  KeyedRng rng(seed, index, Stream::local_unitary);
  std::vector<ComplexVector> cols;
  cols.reserve(d);
  for (std::size_t c = 0; c < d; ++c) {
    ComplexVector v(d);
    for (std::size_t r = 0; r < d; ++r) v[r] = cplx{rng.normal(), rng.normal()};
    // Gram-Schmidt, twice for stability. The positive-diagonal-R convention
    // makes the result Haar distributed.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : cols) v = v - inner(q, v) * q;
    v *= cplx{1.0 / v.norm()};
    cols.push_back(std::move(v));
  }
  ComplexMatrix u(d, d);
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t r = 0; r < d; ++r) u(r, c) = cols[c][r];
  return u;
}

DensityMatrix conjugate_local(const DensityMatrix& rho, const ComplexMatrix& u_bob,
                              const ComplexMatrix& u_alice) {
  const ComplexMatrix u = kron(u_bob, u_alice);
  if (u.rows() != rho.dim()) throw Error(ErrorKind::DimensionMismatch, "local unitary dims");
  ComplexMatrix out = conjugate_by(u, rho.matrix());
  return DensityMatrix::from_matrix(0.5 * (out + out.adjoint()));
}

ComplexVector basis_ket(std::size_t index, std::size_t dim) {
  if (index >= dim) throw Error(ErrorKind::OutOfRange, "basis index out of range");
  ComplexVector v(dim);
  v[index] = 1.0;
  return v;
}

// ------------------------------------------------------------- magic basis

const std::array<ComplexVector, 4>& magic_basis() {
  static const std::array<ComplexVector, 4> basis = [] {
    const cplx h{kInvSqrt2};
    const cplx ih = kI * kInvSqrt2;
    // index = 2 * bob + alice: |00>, |01>, |10>, |11>
    return std::array<ComplexVector, 4>{
        ComplexVector{h, 0.0, 0.0, h},
        ComplexVector{0.0, ih, ih, 0.0},
        ComplexVector{0.0, -h, h, 0.0},
        ComplexVector{ih, 0.0, 0.0, -ih},
    };
  }();
  return basis;
}

const ComplexMatrix& magic_basis_matrix() {
  static const ComplexMatrix m = [] {
    ComplexMatrix out(4, 4);
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t r = 0; r < 4; ++r) out(r, j) = magic_basis()[j][r];
    return out;
  }();
  return m;
}

double phi1_overlap(const DensityMatrix& rho) {
  require_two_qubit(rho);
  const auto& phi1 = magic_basis()[0];
  return expectation(phi1, rho.matrix(), phi1).real();
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t d, bool trace_alice) {
  if (!m.is_square() || m.rows() != d * d) {
    throw Error(ErrorKind::DimensionMismatch, "partial trace dims");
  }
  ComplexMatrix out(d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t k = 0; k < d; ++k) {
        // first factor is Bob, second is Alice
        if (trace_alice) {
          out(a, b) += m(a * d + k, b * d + k);
        } else {
          out(a, b) += m(k * d + a, k * d + b);
        }
      }
  return out;
}

// ---------------------------------------------------------------- families

DensityMatrix werner(double p) {
  require_range(p, 0.0, 1.0, "p");
  return DensityMatrix::mix(DensityMatrix::maximally_mixed(4), DensityMatrix::pure(magic_basis()[0]), p);
}

DensityMatrix lower_family(double epsilon, double theta, std::optional<std::uint64_t> dressing_seed) {
  require_range(epsilon, 0.0, 1.0, "epsilon");
  require_range(theta, 0.0, std::numbers::pi, "theta");
  ComplexVector psi{std::cos(theta / 2.0), 0.0, 0.0, std::sin(theta / 2.0)};
  if (dressing_seed) {
    psi = kron(random_unitary(2, *dressing_seed, 0), random_unitary(2, *dressing_seed, 1)) * psi;
    psi *= cplx{1.0 / psi.norm()};
  }
  return DensityMatrix::mix(DensityMatrix::pure(psi), DensityMatrix::maximally_mixed(4), epsilon);
}

DensityMatrix upper_family(double zeta) {
  require_range(zeta, 0.0, 1.0, "zeta");
  return DensityMatrix::mix(DensityMatrix::pure(magic_basis()[0]), DensityMatrix::pure(basis_ket(1, 4)),
                            zeta);
}

DensityMatrix random_density_d(std::size_t d, std::uint64_t seed, std::uint64_t index) {
  if (d < 2 || d > 4) throw Error(ErrorKind::OutOfRange, "local dimension must be 2, 3 or 4");
  const std::size_t n = d * d;
  KeyedRng rng(seed, index, Stream::raw_density);
  for (;;) {
    ComplexMatrix t(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        const double re = rng.uniform();
        const double im = rng.uniform();
        t(r, c) = cplx{re, im};
      }
    ComplexMatrix tt = t * t.adjoint();
    const double norm = tt.trace().real();
    if (norm < 1e-30) continue;
    tt *= cplx{1.0 / norm};
    return DensityMatrix::from_matrix(0.5 * (tt + tt.adjoint()));
  }
}

DensityMatrix random_density(std::uint64_t seed, std::uint64_t index) { return random_density_d(2, seed, index); }

MixtureDraw fig2_mixture(std::uint64_t seed, std::uint64_t index) {
  KeyedRng rng(seed, index, Stream::fig2_mixture);
  const double w = rng.uniform(0.0, 0.5);
  const double zeta = rng.uniform();
  DensityMatrix state = DensityMatrix::mix(random_density(seed, index), upper_family(zeta), w);
  return {std::move(state), w, zeta};
}

std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::raw: return "raw";
    case Family::fig2: return "fig2";
    case Family::werner: return "werner";
    case Family::lower: return "lower";
    case Family::upper: return "upper";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) noexcept {
  for (Family f : {Family::raw, Family::fig2, Family::werner, Family::lower, Family::upper})
    if (to_string(f) == name) return f;
  return std::nullopt;
}

FamilyDraw draw_family(Family family, std::uint64_t seed, std::uint64_t index) {
  switch (family) {
    case Family::raw:
      return {random_density(seed, index), {0.0, 0.0}};
    case Family::fig2: {
      MixtureDraw draw = fig2_mixture(seed, index);
      return {std::move(draw.state), {draw.weight, draw.zeta}};
    }
    case Family::werner: {
      KeyedRng rng(seed, index, Stream::werner);
      const double p = rng.uniform();
      return {werner(p), {p, 0.0}};
    }
    case Family::lower: {
      KeyedRng rng(seed, index, Stream::lower_family);
      const double eps = rng.uniform();
      const double theta = rng.uniform(0.0, std::numbers::pi);
      return {lower_family(eps, theta), {eps, theta}};
    }
    case Family::upper: {
      KeyedRng rng(seed, index, Stream::upper_family);
      const double zeta = rng.uniform();
      return {upper_family(zeta), {zeta, 0.0}};
    }
  }
  throw Error(ErrorKind::OutOfRange, "unknown family");
}

}  // namespace fefkit
