#include <nlohmann/json.hpp>

#include <ostream>
#include <sstream>

#include "cli.hpp"
#include "fefkit/applications.hpp"
#include "fefkit/error.hpp"

namespace fefkit::cli {

namespace {

std::vector<std::pair<std::string, double>> report_fields(const AnalysisReport& r) {
  return {{"F", r.fef},
          {"E", r.renormalized},
          {"C", r.concurrence},
          {"F_DC", r.dense_coding},
          {"F_DC_max", r.dense_coding_max},
          {"F_T", r.teleportation},
          {"F_T_max", r.teleportation_max},
          {"F_ES", r.swapping},
          {"F_ES_max", r.swapping_max},
          {"B_canonical", r.bell_canonical},
          {"B_max_angles", r.bell_max_angles},
          {"B_max_unitaries", r.bell_max_unitaries}};
}

}  // namespace

int run_analyze(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (!config.input) {
    err << "analyze requires --in\n";
    return exit_code::usage;
  }

  std::optional<DensityMatrix> rho;
  try {
    rho = read_density_file(*config.input);
    require_two_qubit(*rho);
  } catch (const Error& e) {
    err << "analyze: " << e.what() << "\n";
    if (e.kind() == ErrorKind::Parse) return exit_code::parse_failure;
    return exit_code::invariant_failure;
  }

  AnalysisOptions options;
  options.budget = config.search_budget();
  const AnalysisReport report = analyze_state(*rho, options);
  const auto identities = report_identities(*rho, report);

  bool all_ok = true;
  for (const auto& id : identities) {
    if (!id.ok()) {
      all_ok = false;
      err << "identity mismatch: " << id.name << " deviation " << format_number(id.deviation)
          << " > " << format_number(id.tolerance) << "\n";
    }
  }
  if (!all_ok) return exit_code::identity_mismatch;

  const auto fields = report_fields(report);
  std::ostringstream text;
  if (config.format.value_or(Format::json) == Format::json) {
    nlohmann::ordered_json j;
    for (const auto& [name, value] : fields) j[name] = value;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& id : identities)
      checks.push_back({{"name", id.name}, {"deviation", id.deviation}, {"tolerance", id.tolerance}});
    j["identities"] = checks;
    text << j.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < fields.size(); ++i) text << (i ? "," : "") << fields[i].first;
    text << "\n";
    for (std::size_t i = 0; i < fields.size(); ++i) text << (i ? "," : "") << format_number(fields[i].second);
    text << "\n";
  }
  return write_output(config.output, text.str(), out, err) ? exit_code::ok : exit_code::io_failure;
}

}  // namespace fefkit::cli
