#pragma once

// Protocol fidelities of a two-qubit resource state, each computed by
// simulating the protocol literally. The reductions to <Phi1|rho|Phi1> are
// checked against these simulations in the tests, never used in their place.

#include <array>
#include <string>
#include <vector>

#include "fefkit/optimize.hpp"
#include "fefkit/states.hpp"

namespace fefkit {

// ------------------------------------------------------------- dense coding

/// (1/4) sum_j <Phi^j| (1 (x) U_j) rho (1 (x) U_j)^dagger |Phi^j>,
/// U_j in {1, iX, iY, iZ} on Alice's qubit.
double dense_coding_fidelity(const DensityMatrix& rho);

/// Dense-coding fidelity maximized over local unitaries U_B (x) U_A
/// (numeric search). Equals the fully entangled fraction.
double dense_coding_fidelity_max(const DensityMatrix& rho, const SearchBudget& budget = {});

// ------------------------------------------------------------ teleportation

/// Product rule: Gauss-Legendre in cos(theta) times equally spaced phi. The
/// default is exact for the degree-2 output fidelity.
struct TeleportQuadrature {
  int cos_nodes = 4;
  int phi_nodes = 8;
};

/// f(theta, phi): input |psi> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>,
/// standard Bell measurement on (input, Alice), correction Z^{m2} X^{m1} on
/// Bob, probability-weighted fidelity of Bob's output with |psi>.
double teleport_output_fidelity(const DensityMatrix& rho, double theta, double phi);

/// (1/4pi) integral of f over the Bloch sphere.
double teleportation_fidelity(const DensityMatrix& rho, const TeleportQuadrature& quadrature = {});

// --------------------------------------------------------------- swapping

struct SwapOutcome {
  double probability = 0.0;  ///< Tr of Bob's unnormalized conditional state
  double overlap = 0.0;      ///< <Phi^j| unnormalized conditional |Phi^j>
};

/// rho_12 (x) |Phi1><Phi1|_34, Alice projects (1,3) onto Phi^j, Bob's (2,4)
/// conditional state is compared with Phi^j.
std::array<SwapOutcome, 4> swapping_outcomes(const DensityMatrix& rho);

/// Probability-weighted: sum_j overlap_j.
double swapping_fidelity(const DensityMatrix& rho);

/// (1/4) sum_j overlap_j / probability_j. Comparison only; zero-probability
/// outcomes contribute 0.
double swapping_fidelity_unweighted(const DensityMatrix& rho);

// ------------------------------------------------------------------- CHSH

struct ChshAngles {
  double a = 0.0;        ///< phi_1
  double a_prime = 0.0;  ///< phi_1'
  double b = 0.0;        ///< phi_2
  double b_prime = 0.0;  ///< phi_2'
};

/// (0, pi/2, pi/4, 3pi/4)
ChshAngles canonical_angles();

/// |Tr{S1(a)S2(b) rho - S1(a)S2(b') rho + S1(a')S2(b) rho + S1(a')S2(b') rho}|
/// with S(phi) = cos(phi) Z + sin(phi) X.
double bell_chsh(const DensityMatrix& rho, const ChshAngles& angles);

/// 2 sqrt2 |<Phi1|rho|Phi1> - <Phi3|rho|Phi3>|
double bell_canonical(const DensityMatrix& rho);

enum class BellMode { angles, local_unitaries };

/// Numeric maximum of the CHSH value over the four detector angles, or of
/// bell_canonical over local-unitary conjugations of rho.
double bell_max(const DensityMatrix& rho, BellMode mode, const SearchBudget& budget = {});

/// Closed-form maximum over detector angles in the x-z plane: 2 ||T||_F
/// where T_ij = Tr{(s_i (x) s_j) rho}, i, j in {z, x}. Cross-check only.
double bell_max_angles_analytic(const DensityMatrix& rho);

// ----------------------------------------------------------- fiducial gap

/// max over U_B (x) U_A of <psi_f| U^dagger rho U |psi_f>.
double max_local_overlap(const ComplexVector& fiducial, const DensityMatrix& rho,
                         const SearchBudget& budget = {});

/// Delta(theta) = F(psi_f, |Phi1><Phi1|) - F(psi_f, |01><01|) for
/// psi_f = cos(theta/2)|00> + sin(theta/2)|11>, theta in [0, pi].
double fiducial_gap(double theta, const SearchBudget& budget = {});

// ------------------------------------------------------------------ report

struct AnalysisReport {
  double fef = 0.0;           ///< F
  double renormalized = 0.0;  ///< E
  double concurrence = 0.0;   ///< C
  double dense_coding = 0.0;
  double dense_coding_max = 0.0;
  double teleportation = 0.0;
  double teleportation_max = 0.0;
  double swapping = 0.0;
  double swapping_max = 0.0;
  double bell_canonical = 0.0;
  double bell_max_angles = 0.0;
  double bell_max_unitaries = 0.0;
};

struct AnalysisOptions {
  SearchBudget budget{};
  TeleportQuadrature quadrature{};
  bool bell_unitaries = true;  ///< skip the 6-parameter search when false
};

AnalysisReport analyze_state(const DensityMatrix& rho, const AnalysisOptions& options = {});

struct IdentityDeviation {
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool ok() const { return deviation <= tolerance; }
};

/// Re-derives the dense-coding, teleportation, swapping and canonical-CHSH
/// reductions and the maximized-fidelity relations for a computed report.
std::vector<IdentityDeviation> report_identities(const DensityMatrix& rho, const AnalysisReport& report);

}  // namespace fefkit
