#include "fefkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>

namespace fefkit {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NotPsd: return "NotPsd";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::NonOrthonormalEncoding: return "NonOrthonormalEncoding";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

namespace {

void check_extent(std::size_t n, const char* what) {
  if (n == 0 || n > kMaxDim) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + " must be in [1, 16], got " + std::to_string(n));
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix shapes differ");
  }
}

}  // namespace

// ---------------------------------------------------------------- vectors

ComplexVector::ComplexVector(std::size_t dim) : entries_(dim) { check_extent(dim, "vector dim"); }

ComplexVector::ComplexVector(std::initializer_list<cplx> entries) : entries_(entries) {
  check_extent(entries_.size(), "vector dim");
}

ComplexVector::ComplexVector(std::vector<cplx> entries) : entries_(std::move(entries)) {
  check_extent(entries_.size(), "vector dim");
}

double ComplexVector::norm() const { return std::sqrt(std::real(inner(*this, *this))); }

ComplexVector& ComplexVector::operator*=(cplx s) {
  for (auto& e : entries_) e *= s;
  return *this;
}

ComplexVector& ComplexVector::operator+=(const ComplexVector& other) {
  if (other.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "vector dims differ");
  for (std::size_t i = 0; i < dim(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ComplexVector operator*(cplx s, ComplexVector v) { return v *= s; }

ComplexVector operator+(ComplexVector a, const ComplexVector& b) { return a += b; }

ComplexVector operator-(ComplexVector a, const ComplexVector& b) { return a += cplx{-1.0} * b; }

cplx inner(const ComplexVector& a, const ComplexVector& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "vector dims differ");
  cplx acc{};
  for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

// --------------------------------------------------------------- matrices

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  check_extent(rows, "rows");
  check_extent(cols, "cols");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  check_extent(rows_, "rows");
  check_extent(cols_, "cols");
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out = *this;
  for (auto& e : out.data_) e = std::conj(e);
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

cplx ComplexMatrix::trace() const {
  if (!is_square()) throw Error(ErrorKind::DimensionMismatch, "trace of non-square matrix");
  cplx acc{};
  for (std::size_t i = 0; i < rows_; ++i) acc += (*this)(i, i);
  return acc;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& e : data_) e *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "product shapes");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx ark = a(r, k);
      if (ark == cplx{}) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += ark * b(k, c);
    }
  }
  return out;
}

ComplexVector operator*(const ComplexMatrix& m, const ComplexVector& v) {
  if (m.cols() != v.dim()) throw Error(ErrorKind::DimensionMismatch, "matrix-vector shapes");
  ComplexVector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    cplx acc{};
    for (std::size_t c = 0; c < m.cols(); ++c) acc += m(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

ComplexMatrix operator*(cplx s, ComplexMatrix m) { return m *= s; }
ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac)
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = a(ar, ac) * b(br, bc);
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
  return out;
}

ComplexMatrix outer(const ComplexVector& a, const ComplexVector& b) {
  ComplexMatrix out(a.dim(), b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) out(i, j) = a[i] * std::conj(b[j]);
  return out;
}

cplx expectation(const ComplexVector& a, const ComplexMatrix& m, const ComplexVector& b) {
  return inner(a, m * b);
}

ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& m) {
  return u * m * u.adjoint();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  return worst;
}

double max_abs_diff(const ComplexVector& a, const ComplexVector& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "vector dims differ");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double frobenius_norm(const ComplexMatrix& m) {
  double acc = 0.0;
  for (const auto& e : m.data()) acc += std::norm(e);
  return std::sqrt(acc);
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "non-square matrix");
  double worst = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r; c < m.cols(); ++c)
      worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
  return worst;
}

// ------------------------------------------------------------ eigensolver

namespace {

constexpr double kOffDiagonalThreshold = 1e-14;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const ComplexMatrix& a) {
  double acc = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (r != c) acc += std::norm(a(r, c));
  return std::sqrt(acc);
}

struct PlaneRotation {
  cplx pp, pq, qp, qq;
};

// Unitary G = diag(1, conj(e)) * [[c, s], [-s, c]] with G^dagger H G diagonal
// for the 2x2 Hermitian H = [[hpp, hpq], [conj(hpq), hqq]], e = hpq / |hpq|.
std::optional<PlaneRotation> plane_rotation(double hpp, double hqq, cplx hpq) {
  const double g = std::abs(hpq);
  if (g < 1e-300) return std::nullopt;
  const cplx phase = hpq / g;
  const double theta = (hqq - hpp) / (2.0 * g);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  return PlaneRotation{c, s, -s * std::conj(phase), c * std::conj(phase)};
}

// m <- m G on columns p, q.
void rotate_columns(ComplexMatrix& m, std::size_t p, std::size_t q, const PlaneRotation& g) {
  for (std::size_t k = 0; k < m.rows(); ++k) {
    const cplx mkp = m(k, p);
    const cplx mkq = m(k, q);
    m(k, p) = mkp * g.pp + mkq * g.qp;
    m(k, q) = mkp * g.pq + mkq * g.qq;
  }
}

// a <- G^dagger a G, v <- v G; zeroes a(p,q).
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const auto g = plane_rotation(a(p, p).real(), a(q, q).real(), a(p, q));
  if (!g) return;
  rotate_columns(a, p, q, *g);
  for (std::size_t k = 0; k < a.cols(); ++k) {
    const cplx apk = a(p, k);
    const cplx aqk = a(q, k);
    a(p, k) = std::conj(g->pp) * apk + std::conj(g->qp) * aqk;
    a(q, k) = std::conj(g->pq) * apk + std::conj(g->qq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
  rotate_columns(v, p, q, *g);
}

}  // namespace

EigenSystem hermitian_eig(const ComplexMatrix& m, HermitianInput mode) {
  if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "eigendecomposition of non-square matrix");
  const double defect = hermiticity_defect(m);
  if (mode == HermitianInput::strict && defect > kHermitianTolerance) {
    throw Error(ErrorKind::NotHermitian, "max |m - m^dagger| = " + std::to_string(defect));
  }

  const std::size_t n = m.rows();
  ComplexMatrix a = 0.5 * (m + m.adjoint());
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double threshold = kOffDiagonalThreshold * std::max(1.0, frobenius_norm(a));

  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
  }
  if (!converged && off_diagonal_norm(a) > threshold) {
    throw Error(ErrorKind::NoConvergence, "Jacobi sweep cap reached");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

  EigenSystem out;
  out.values.reserve(n);
  out.vectors.reserve(n);
  for (std::size_t idx : order) {
    out.values.push_back(a(idx, idx).real());
    ComplexVector col(n);
    for (std::size_t r = 0; r < n; ++r) col[r] = v(r, idx);
    out.vectors.push_back(std::move(col));
  }
  return out;
}

ComplexMatrix reconstruct(const EigenSystem& eig) {
  const std::size_t n = eig.vectors.front().dim();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    out += cplx{eig.values[k]} * outer(eig.vectors[k], eig.vectors[k]);
  }
  return out;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  ComplexMatrix u = m;
  const std::size_t n = u.cols();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0;
        double beta = 0.0;
        cplx gamma{};
        for (std::size_t k = 0; k < u.rows(); ++k) {
          alpha += std::norm(u(k, p));
          beta += std::norm(u(k, q));
          gamma += std::conj(u(k, p)) * u(k, q);
        }
        if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        const auto g = plane_rotation(alpha, beta, gamma);
        if (!g) continue;
        rotate_columns(u, p, q, *g);
        rotated = true;
      }
    }
    if (!rotated) break;
    if (sweep + 1 == kMaxSweeps) throw Error(ErrorKind::NoConvergence, "one-sided Jacobi sweep cap reached");
  }
  std::vector<double> out(n);
  for (std::size_t c = 0; c < n; ++c) {
    double acc = 0.0;
    for (std::size_t r = 0; r < u.rows(); ++r) acc += std::norm(u(r, c));
    out[c] = std::sqrt(acc);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  EigenSystem eig = hermitian_eig(m);
  if (!eig.values.empty() && eig.values.back() < -1e-8) {
    throw Error(ErrorKind::NotPsd, "eigenvalue " + std::to_string(eig.values.back()));
  }
  for (auto& lambda : eig.values) lambda = std::sqrt(std::max(lambda, 0.0));
  return reconstruct(eig);
}

}  // namespace fefkit
