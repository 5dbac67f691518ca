#include "fefkit/ddim.hpp"

#include <cmath>
#include <numbers>

namespace fefkit {

namespace {

void require_local_dim(std::size_t d) {
  if (d < 2 || d > kMaxLocalDim) {
    throw Error(ErrorKind::DimensionMismatch, "local dimension must be in [2, 4], got " + std::to_string(d));
  }
}

}  // namespace

ComplexVector max_entangled_d(std::size_t d) {
  require_local_dim(d);
  ComplexVector out(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t i = 0; i < d; ++i) out[i * d + i] = amp;
  return out;
}

GeneralMaxEntangled general_max_entangled(const ComplexMatrix& u) {
  const std::size_t d = u.rows();
  require_local_dim(d);
  return {d, kron(ComplexMatrix::identity(d), u) * max_entangled_d(d)};
}

std::vector<ComplexMatrix> clock_shift_unitaries(std::size_t d) {
  require_local_dim(d);
  ComplexMatrix clock(d, d);
  ComplexMatrix shift(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    clock(k, k) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d));
    shift((k + 1) % d, k) = 1.0;
  }
  std::vector<ComplexMatrix> out;
  ComplexMatrix zj = ComplexMatrix::identity(d);
  for (std::size_t j = 0; j < d; ++j) {
    ComplexMatrix xk = ComplexMatrix::identity(d);
    for (std::size_t k = 0; k < d; ++k) {
      out.push_back(zj * xk);
      xk = shift * xk;
    }
    zj = clock * zj;
  }
  return out;
}

double dense_coding_fidelity_d(const DensityMatrix& rho, std::span<const ComplexMatrix> unitaries) {
  const std::size_t d = rho.local_dim();
  require_local_dim(d);
  if (unitaries.size() != d * d) {
    throw Error(ErrorKind::DimensionMismatch, "need d^2 encoding unitaries");
  }
  const ComplexMatrix id = ComplexMatrix::identity(d);
  std::vector<ComplexMatrix> lifted;
  std::vector<ComplexVector> encoded;
  for (const auto& u : unitaries) {
    if (u.rows() != d || u.cols() != d) throw Error(ErrorKind::DimensionMismatch, "encoding unitary dims");
    lifted.push_back(kron(id, u));
    encoded.push_back(lifted.back() * max_entangled_d(d));
  }
  for (std::size_t i = 0; i < encoded.size(); ++i)
    for (std::size_t j = 0; j < encoded.size(); ++j) {
      const cplx expected = i == j ? 1.0 : 0.0;
      if (std::abs(inner(encoded[i], encoded[j]) - expected) > 1e-10) {
        throw Error(ErrorKind::NonOrthonormalEncoding,
                    "encoded states " + std::to_string(i) + " and " + std::to_string(j));
      }
    }

  double sum = 0.0;
  for (std::size_t i = 0; i < encoded.size(); ++i) {
    const ComplexMatrix moved = conjugate_by(lifted[i], rho.matrix());
    sum += expectation(encoded[i], moved, encoded[i]).real();
  }
  return sum / static_cast<double>(d * d);
}

double dense_coding_fidelity_d(const DensityMatrix& rho) {
  const auto unitaries = clock_shift_unitaries(rho.local_dim());
  return dense_coding_fidelity_d(rho, unitaries);
}

ComplexMatrix unitary_from_generator(std::size_t d, std::span<const double> params) {
  require_local_dim(d);
  if (params.size() != d * d) throw Error(ErrorKind::DimensionMismatch, "generator needs d^2 parameters");
  // Diagonal from the first d parameters, then (re, im) pairs above it.
  ComplexMatrix h(d, d);
  std::size_t next = 0;
  for (std::size_t i = 0; i < d; ++i) h(i, i) = params[next++];
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const cplx v{params[next], params[next + 1]};
      next += 2;
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  const EigenSystem eig = hermitian_eig(h);
  ComplexMatrix u(d, d);
  for (std::size_t k = 0; k < d; ++k) u += std::polar(1.0, eig.values[k]) * outer(eig.vectors[k], eig.vectors[k]);
  return u;
}

SearchBudget default_ddim_budget(std::size_t d) {
  SearchBudget budget;
  budget.starts = static_cast<int>(4 * d * d);
  return budget;
}

double fef_numeric_d(const DensityMatrix& rho, const SearchBudget& budget) {
  const std::size_t d = rho.local_dim();
  require_local_dim(d);
  const ComplexVector phi = max_entangled_d(d);
  const ComplexMatrix id = ComplexMatrix::identity(d);
  const ComplexMatrix& r = rho.matrix();
  auto objective = [&](std::span<const double> p) {
    const ComplexVector psi = kron(id, unitary_from_generator(d, p)) * phi;
    return expectation(psi, r, psi).real();
  };
  return maximize(objective, d * d, 2.0 * std::numbers::pi, budget).value;
}

double fef_numeric_d(const DensityMatrix& rho) { return fef_numeric_d(rho, default_ddim_budget(rho.local_dim())); }

double teleport_max_d(double fef, std::size_t d) {
  if (d < 2) throw Error(ErrorKind::OutOfRange, "d must be at least 2");
  const double dd = static_cast<double>(d);
  if (!(fef >= 1.0 / (dd * dd) - 1e-12 && fef <= 1.0 + 1e-12)) {
    throw Error(ErrorKind::OutOfRange, "F must lie in [1/d^2, 1]");
  }
  return (fef * dd + 1.0) / (dd + 1.0);
}

double dense_coding_capacity_bits(std::size_t d) {
  if (d < 2) throw Error(ErrorKind::OutOfRange, "d must be at least 2");
  return std::log2(static_cast<double>(d * d));
}

}  // namespace fefkit
