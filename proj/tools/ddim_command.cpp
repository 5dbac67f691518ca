#include <nlohmann/json.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>

#include "cli.hpp"
#include "fefkit/ddim.hpp"
#include "fefkit/error.hpp"

namespace fefkit::cli {

namespace {

struct DdimRow {
  std::size_t index = 0;
  std::size_t d = 0;
  double dense_coding = 0.0;
  double fef = 0.0;
  double teleportation_max = 0.0;
};

DdimRow ddim_row(const DensityMatrix& rho, std::size_t index, const SearchBudget& budget) {
  DdimRow row;
  row.index = index;
  row.d = rho.local_dim();
  row.dense_coding = dense_coding_fidelity_d(rho);
  row.fef = fef_numeric_d(rho, budget);
  row.teleportation_max = teleport_max_d(std::clamp(row.fef, 1.0 / static_cast<double>(row.d * row.d), 1.0), row.d);
  return row;
}

}  // namespace

int run_ddim(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<DensityMatrix> states;
  if (config.input) {
    try {
      states.push_back(read_density_file(*config.input));
    } catch (const Error& e) {
      err << "ddim: " << e.what() << "\n";
      return e.kind() == ErrorKind::Parse ? exit_code::parse_failure : exit_code::invariant_failure;
    }
  } else {
    const std::size_t count = config.count.value_or(10);
    for (std::size_t k = 0; k < count; ++k) states.push_back(random_density_d(config.dim, config.seed, k));
  }

  std::vector<DdimRow> rows;
  for (std::size_t i = 0; i < states.size(); ++i) {
    SearchBudget budget = default_ddim_budget(states[i].local_dim());
    if (config.quick) budget.starts = std::max(2, budget.starts / 4);
    rows.push_back(ddim_row(states[i], i, budget.scaled(config.budget)));
  }

  std::ostringstream text;
  if (config.format.value_or(Format::csv) == Format::json) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& r : rows)
      j.push_back({{"index", r.index},
                   {"d", r.d},
                   {"F_DC", r.dense_coding},
                   {"F", r.fef},
                   {"F_T_max", r.teleportation_max},
                   {"capacity_bits", dense_coding_capacity_bits(r.d)}});
    text << j.dump(2) << "\n";
  } else {
    text << "index,d,F_DC,F,F_T_max,capacity_bits\n";
    for (const auto& r : rows)
      text << r.index << ',' << r.d << ',' << format_number(r.dense_coding) << ',' << format_number(r.fef) << ','
           << format_number(r.teleportation_max) << ',' << format_number(dense_coding_capacity_bits(r.d)) << "\n";
  }
  return write_output(config.output, text.str(), out, err) ? exit_code::ok : exit_code::io_failure;
}

}  // namespace fefkit::cli
