#include "fefkit/fef.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace fefkit {

double MagicOverlapMatrix::quadratic_form(const Vec4& x) const {
  double acc = 0.0;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) acc += m[r][c] * x[r] * x[c];
  return acc;
}

MagicOverlapMatrix magic_overlap_matrix(const DensityMatrix& rho) {
  require_two_qubit(rho);
  const auto& basis = magic_basis();
  MagicOverlapMatrix out;
  for (std::size_t n = 0; n < 4; ++n) {
    const ComplexVector rho_phi = rho.matrix() * basis[n];
    for (std::size_t k = 0; k < 4; ++k) out.m[k][n] = inner(basis[k], rho_phi).real();
  }
  // Re<k|rho|n> = Re<n|rho|k> exactly only up to rounding; make it exact.
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = r + 1; c < 4; ++c) out.m[r][c] = out.m[c][r] = 0.5 * (out.m[r][c] + out.m[c][r]);
  return out;
}

FefResult fully_entangled_fraction(const DensityMatrix& rho) {
  const MagicOverlapMatrix overlap = magic_overlap_matrix(rho);
  ComplexMatrix m(4, 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) m(r, c) = overlap.m[r][c];
  const EigenSystem eig = hermitian_eig(m);

  // A real symmetric matrix has real eigenvectors; the Jacobi vector can carry
  // a global phase, which is removed by aligning with its largest entry.
  const ComplexVector& v = eig.vectors.front();
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < 4; ++i)
    if (std::abs(v[i]) > std::abs(v[pivot])) pivot = i;
  const cplx phase = std::conj(v[pivot]) / std::abs(v[pivot]);
  Vec4 x{};
  double norm = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    x[i] = (phase * v[i]).real();
    norm += x[i] * x[i];
  }
  norm = std::sqrt(norm);
  for (auto& xi : x) xi /= norm;

  FefResult out;
  out.fef = eig.values.front();
  out.renormalized = renormalized_fef(out.fef);
  out.coordinates = x;
  return out;
}

ComplexVector maximally_entangled_state(const Vec4& x) {
  ComplexVector out(4);
  for (std::size_t n = 0; n < 4; ++n) out += cplx{x[n]} * magic_basis()[n];
  return out;
}

// ------------------------------------------------------------ sphere oracle

namespace {

Vec4 hyperspherical(double a1, double a2, double a3) {
  const double s1 = std::sin(a1);
  const double s2 = std::sin(a2);
  return {std::cos(a1), s1 * std::cos(a2), s1 * s2 * std::cos(a3), s1 * s2 * std::sin(a3)};
}

Vec4 normalized(Vec4 x) {
  double n = 0.0;
  for (double v : x) n += v * v;
  n = std::sqrt(n);
  for (auto& v : x) v /= n;
  return x;
}

// Orthonormal basis of the tangent space at unit x.
std::array<Vec4, 3> tangent_basis(const Vec4& x) {
  std::array<Vec4, 3> out{};
  std::size_t filled = 0;
  for (std::size_t e = 0; e < 4 && filled < 3; ++e) {
    Vec4 v{};
    v[e] = 1.0;
    auto project = [&](const Vec4& u) {
      double d = 0.0;
      for (std::size_t i = 0; i < 4; ++i) d += u[i] * v[i];
      for (std::size_t i = 0; i < 4; ++i) v[i] -= d * u[i];
    };
    for (int pass = 0; pass < 2; ++pass) {
      project(x);
      for (std::size_t k = 0; k < filled; ++k) project(out[k]);
    }
    double n = 0.0;
    for (double c : v) n += c * c;
    if (n < 1e-6) continue;
    out[filled++] = normalized(v);
  }
  return out;
}

double refine(const MagicOverlapMatrix& m, Vec4 x, const SphereSearch& search) {
  double best = m.quadratic_form(x);
  double step = 0.25;
  auto basis = tangent_basis(x);
  while (step > search.min_step) {
    bool improved = false;
    for (const auto& t : basis) {
      for (double sign : {1.0, -1.0}) {
        Vec4 trial{};
        for (std::size_t i = 0; i < 4; ++i) trial[i] = x[i] + sign * step * t[i];
        trial = normalized(trial);
        const double value = m.quadratic_form(trial);
        if (value > best) {
          best = value;
          x = trial;
          improved = true;
        }
      }
    }
    if (improved) {
      basis = tangent_basis(x);
    } else {
      step *= 0.5;
    }
  }
  return best;
}

}  // namespace

double fef_oracle_sphere(const DensityMatrix& rho, const SphereSearch& search) {
  const MagicOverlapMatrix m = magic_overlap_matrix(rho);
  const int n = std::max(search.grid, 2);
  const double pi = std::numbers::pi;

  struct Candidate {
    double value;
    Vec4 x;
  };
  std::vector<Candidate> coarse;
  coarse.reserve(static_cast<std::size_t>(n) * n * n);
  // x and -x give the same overlap, so a1 in [0, pi], a2 in [0, pi], a3 in [0, 2pi).
  for (int i = 0; i < n; ++i) {
    const double a1 = pi * (i + 0.5) / n;
    for (int j = 0; j < n; ++j) {
      const double a2 = pi * (j + 0.5) / n;
      for (int k = 0; k < n; ++k) {
        const double a3 = 2.0 * pi * k / n;
        const Vec4 x = hyperspherical(a1, a2, a3);
        coarse.push_back({m.quadratic_form(x), x});
      }
    }
  }
  const std::size_t keep = std::min<std::size_t>(std::max(search.keep, 1), coarse.size());
  std::partial_sort(coarse.begin(), coarse.begin() + static_cast<std::ptrdiff_t>(keep), coarse.end(),
                    [](const Candidate& a, const Candidate& b) { return a.value > b.value; });

  double best = coarse.front().value;
  for (std::size_t c = 0; c < keep; ++c) best = std::max(best, refine(m, coarse[c].x, search));
  return best;
}

double fef_oracle_power(const DensityMatrix& rho, int iterations) {
  const MagicOverlapMatrix m = magic_overlap_matrix(rho);
  // M is positive semidefinite, so its dominant eigenvalue is the largest.
  Vec4 x = normalized(Vec4{0.5, 0.4, 0.3, 0.2});
  double best = m.quadratic_form(x);
  for (int it = 0; it < iterations; ++it) {
    Vec4 y{};
    for (std::size_t r = 0; r < 4; ++r) {
      for (std::size_t c = 0; c < 4; ++c) y[r] += m.m[r][c] * x[c];
    }
    x = normalized(y);
    best = std::max(best, m.quadratic_form(x));
  }
  return best;
}

// ----------------------------------------------------------- unitary oracle

double fef_oracle_unitary(const DensityMatrix& rho, const SearchBudget& budget) {
  require_two_qubit(rho);
  const ComplexVector& phi1 = magic_basis()[0];
  const ComplexMatrix& r = rho.matrix();
  const ComplexMatrix id = ComplexMatrix::identity(2);
  auto objective = [&](std::span<const double> p) {
    const ComplexVector psi = kron(id, su2(p[0], p[1], p[2])) * phi1;
    return expectation(psi, r, psi).real();
  };
  return maximize(objective, 3, 2.0 * std::numbers::pi, budget).value;
}

}  // namespace fefkit
