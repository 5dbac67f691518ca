#include <nlohmann/json.hpp>

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "cli.hpp"
#include "fefkit/applications.hpp"
#include "fefkit/concurrence.hpp"
#include "fefkit/ddim.hpp"
#include "fefkit/error.hpp"
#include "fefkit/fef.hpp"

namespace fefkit::cli {

namespace {

struct Check {
  std::string name;
  double tolerance = 0.0;
  double max_deviation = 0.0;

  void observe(double deviation) {
    // NaN must fail the check rather than vanish in std::max.
    if (std::isnan(deviation) || deviation > max_deviation) max_deviation = deviation;
  }
  bool ok() const { return max_deviation <= tolerance; }
};

void state_checks(const DensityMatrix& rho, const SearchBudget& budget, std::vector<Check>& checks) {
  const double overlap = phi1_overlap(rho);
  const FefResult fef = fully_entangled_fraction(rho);
  const BoundsCheck bounds = bounds_check(rho);
  std::size_t i = 0;
  checks[i++].observe(std::abs(dense_coding_fidelity(rho) - overlap));
  checks[i++].observe(std::abs(teleportation_fidelity(rho) - (1.0 + 2.0 * overlap) / 3.0));
  checks[i++].observe(std::abs(swapping_fidelity(rho) - overlap));
  checks[i++].observe(std::abs(bell_canonical(rho) - bell_chsh(rho, canonical_angles())));
  checks[i++].observe(std::abs(fef_oracle_sphere(rho) - fef.fef));
  checks[i++].observe(std::abs(fef_oracle_power(rho) - fef.fef));
  checks[i++].observe(std::abs(fef_oracle_unitary(rho, budget) - fef.fef));
  checks[i++].observe(std::max({0.0, bounds.renormalized - bounds.concurrence,
                                bounds.concurrence - (bounds.renormalized + 1.0) / 2.0}));
  checks[i++].observe(std::max(0.0, bell_max(rho, BellMode::local_unitaries, budget) /
                                        (2.0 * std::numbers::sqrt2) - fef.fef));
  checks[i++].observe(std::abs(teleport_max_d(fef.fef, 2) - (1.0 + 2.0 * fef.fef) / 3.0));
}

void family_checks(Check& lower, Check& upper) {
  for (int i = 0; i < 100; ++i) {
    const double eps = i / 99.0;
    for (int t = 0; t < 100; t += 9) {
      const double theta = std::numbers::pi * (t / 99.0);
      const double expected = std::max(0.0, (1.0 - eps) * std::sin(theta) - eps / 2.0);
      const BoundsCheck b = bounds_check(lower_family(eps, theta));
      lower.observe(std::max(std::abs(b.renormalized - expected), std::abs(b.concurrence - expected)));
    }
    const double zeta = 0.5 * i / 99.0;
    const BoundsCheck b = bounds_check(upper_family(zeta));
    upper.observe(std::max(std::abs(b.renormalized - (2.0 * b.concurrence - 1.0)),
                           std::abs(b.concurrence - (1.0 - zeta))));
  }
}

}  // namespace

int run_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const std::size_t count = config.count.value_or(100);
  const double oracle_tol = config.tolerance.value_or(config.quick ? 1e-5 : 1e-9);
  const double unitary_tol = config.tolerance.value_or(config.quick ? 1e-5 : 1e-6);
  const SearchBudget budget = config.search_budget();

  std::vector<Check> checks{
      {"dense_coding_reduction", 1e-12},
      {"teleportation_reduction", 1e-10},
      {"swapping_reduction", 1e-12},
      {"bell_canonical_reduction", 1e-12},
      {"fef_sphere_oracle", oracle_tol},
      {"fef_power_oracle", oracle_tol},
      {"fef_unitary_oracle", unitary_tol},
      {"concurrence_bound_chain", kBoundTolerance},
      {"bell_unitaries_below_fef", 1e-9},
      {"teleport_max_d_matches_two_qubit", 1e-12},
  };

  std::vector<DensityMatrix> states;
  if (config.input) {
    try {
      DensityMatrix rho = read_density_file(*config.input);
      require_two_qubit(rho);
      states.push_back(std::move(rho));
    } catch (const Error& e) {
      err << "FAIL input_state: " << e.what() << "\n";
      return exit_code::verify_failed;
    }
  }
  for (std::size_t k = 0; k < count; ++k) {
    states.push_back(random_density(config.seed, k));
    states.push_back(fig2_mixture(config.seed, k).state);
  }
  for (const auto& rho : states) state_checks(rho, budget, checks);

  Check lower{"lower_family_closed_form", 1e-10};
  Check upper{"upper_family_closed_form", 1e-10};
  family_checks(lower, upper);
  checks.push_back(lower);
  checks.push_back(upper);

  Check dense_d{"dense_coding_d_reduction", 1e-12};
  for (std::size_t d : {2u, 3u}) {
    const ComplexVector phi = max_entangled_d(d);
    for (std::size_t k = 0; k < count; ++k) {
      const DensityMatrix rho = random_density_d(d, config.seed, k);
      dense_d.observe(std::abs(dense_coding_fidelity_d(rho) - expectation(phi, rho.matrix(), phi).real()));
    }
  }
  checks.push_back(dense_d);

  Check numeric_d{"fef_numeric_d_two_qubit", unitary_tol};
  SearchBudget d_budget = default_ddim_budget(2);
  if (config.quick) d_budget.starts = 4;
  d_budget = d_budget.scaled(config.budget);
  for (std::size_t k = 0; k < std::min<std::size_t>(count, 20); ++k) {
    const DensityMatrix rho = random_density(config.seed, k);
    numeric_d.observe(std::abs(fef_numeric_d(rho, d_budget) - fully_entangled_fraction(rho).fef));
  }
  checks.push_back(numeric_d);

  Check endpoints{"teleport_max_d_endpoints", 1e-12};
  endpoints.observe(std::abs(teleport_max_d(1.0, 2) - 1.0));
  endpoints.observe(std::abs(teleport_max_d(0.5, 2) - 2.0 / 3.0));
  for (std::size_t d = 3; d <= 6; ++d) endpoints.observe(std::abs(teleport_max_d(1.0, d) - 1.0));
  checks.push_back(endpoints);

  bool all_ok = true;
  std::ostringstream text;
  if (config.format.value_or(Format::csv) == Format::json) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
      all_ok = all_ok && c.ok();
      j.push_back({{"identity", c.name}, {"max_deviation", c.max_deviation}, {"tolerance", c.tolerance},
                   {"pass", c.ok()}});
    }
    text << j.dump(2) << "\n";
  } else {
    text << "identity,max_deviation,tolerance,status\n";
    for (const auto& c : checks) {
      all_ok = all_ok && c.ok();
      text << c.name << ',' << format_number(c.max_deviation) << ',' << format_number(c.tolerance) << ','
           << (c.ok() ? "PASS" : "FAIL") << "\n";
    }
  }
  if (!write_output(config.output, text.str(), out, err)) return exit_code::io_failure;
  for (const auto& c : checks)
    if (!c.ok()) err << "FAIL " << c.name << " max deviation " << format_number(c.max_deviation) << "\n";
  return all_ok ? exit_code::ok : exit_code::verify_failed;
}

}  // namespace fefkit::cli
