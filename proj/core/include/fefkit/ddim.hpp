#pragma once

// d x d generalization: dense coding with d^2 local encodings, a numeric
// fully entangled fraction via one local unitary, and the teleportation
// relation (F d + 1)/(d + 1).

#include <span>
#include <vector>

#include "fefkit/optimize.hpp"
#include "fefkit/states.hpp"

namespace fefkit {

inline constexpr std::size_t kMaxLocalDim = 4;

/// (1/sqrt d) sum_i |ii>
ComplexVector max_entangled_d(std::size_t d);

struct GeneralMaxEntangled {
  std::size_t d;
  ComplexVector amplitudes;  ///< (1 (x) U)|Phi1_d>
};

GeneralMaxEntangled general_max_entangled(const ComplexMatrix& u);

/// Clock-and-shift family Z^j X^k, j, k in [0, d).
std::vector<ComplexMatrix> clock_shift_unitaries(std::size_t d);

/// (1/d^2) sum_i <Phi^i| (1 (x) U_i) rho (1 (x) U_i)^dagger |Phi^i> with
/// |Phi^i> = (1 (x) U_i)|Phi1_d>. Throws NonOrthonormalEncoding unless the
/// encoded states are orthonormal to 1e-10.
double dense_coding_fidelity_d(const DensityMatrix& rho, std::span<const ComplexMatrix> unitaries);
double dense_coding_fidelity_d(const DensityMatrix& rho);

/// exp(i H) with H Hermitian built from d^2 real parameters.
ComplexMatrix unitary_from_generator(std::size_t d, std::span<const double> params);

/// Default search: 4 d^2 starts.
SearchBudget default_ddim_budget(std::size_t d);

/// max over U of <Phi1_d|(1 (x) U)^dagger rho (1 (x) U)|Phi1_d>, d in {2,3,4}.
double fef_numeric_d(const DensityMatrix& rho, const SearchBudget& budget);
double fef_numeric_d(const DensityMatrix& rho);

/// (F d + 1)/(d + 1); requires 1/d^2 <= F <= 1 and d >= 2.
double teleport_max_d(double fef, std::size_t d);

/// log2(d^2) classical bits per dense-coding use.
double dense_coding_capacity_bits(std::size_t d);

}  // namespace fefkit
