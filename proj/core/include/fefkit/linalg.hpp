#pragma once

// Dense complex linear algebra for the small dimensions used here (at most
// 16x16). Row-major storage, value semantics.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "fefkit/error.hpp"

namespace fefkit {

using cplx = std::complex<double>;

inline constexpr std::size_t kMaxDim = 16;

class ComplexVector {
 public:
  explicit ComplexVector(std::size_t dim);
  ComplexVector(std::initializer_list<cplx> entries);
  explicit ComplexVector(std::vector<cplx> entries);

  std::size_t dim() const noexcept { return entries_.size(); }
  cplx& operator[](std::size_t i) { return entries_[i]; }
  const cplx& operator[](std::size_t i) const { return entries_[i]; }
  std::span<const cplx> entries() const noexcept { return entries_; }

  double norm() const;
  ComplexVector& operator*=(cplx s);
  ComplexVector& operator+=(const ComplexVector& other);

  friend bool operator==(const ComplexVector&, const ComplexVector&) = default;

 private:
  std::vector<cplx> entries_;
};

ComplexVector operator*(cplx s, ComplexVector v);
ComplexVector operator+(ComplexVector a, const ComplexVector& b);
ComplexVector operator-(ComplexVector a, const ComplexVector& b);

/// <a|b>, antilinear in the first argument.
cplx inner(const ComplexVector& a, const ComplexVector& b);

class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const cplx> data() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix conjugate() const;
  ComplexMatrix transpose() const;
  cplx trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<cplx> data_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector operator*(const ComplexMatrix& m, const ComplexVector& v);
ComplexMatrix operator*(cplx s, ComplexMatrix m);
ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/// |a><b|
ComplexMatrix outer(const ComplexVector& a, const ComplexVector& b);

/// <a|m|b>
cplx expectation(const ComplexVector& a, const ComplexMatrix& m, const ComplexVector& b);

/// u m u^dagger
ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& m);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_diff(const ComplexVector& a, const ComplexVector& b);
double frobenius_norm(const ComplexMatrix& m);

/// max |m - m^dagger| entrywise.
double hermiticity_defect(const ComplexMatrix& m);

inline constexpr double kHermitianTolerance = 1e-10;

enum class HermitianInput {
  strict,      ///< reject inputs with hermiticity_defect above tolerance
  symmetrize,  ///< decompose (m + m^dagger)/2 instead
};

struct EigenSystem {
  std::vector<double> values;          ///< descending
  std::vector<ComplexVector> vectors;  ///< orthonormal, vectors[i] pairs with values[i]
};

/// Cyclic complex Jacobi. Throws NotHermitian, NoConvergence, DimensionMismatch.
EigenSystem hermitian_eig(const ComplexMatrix& m, HermitianInput mode = HermitianInput::strict);

/// V diag(values) V^dagger
ComplexMatrix reconstruct(const EigenSystem& eig);

/// Singular values, descending, by one-sided (Hestenes) Jacobi. Small
/// singular values keep absolute accuracy ~ eps * ||m||.
std::vector<double> singular_values(const ComplexMatrix& m);

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in
/// [-1e-8, 0) are clamped; anything more negative throws NotPsd.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

}  // namespace fefkit
