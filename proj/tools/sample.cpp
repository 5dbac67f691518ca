#include <nlohmann/json.hpp>

#include <algorithm>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <thread>

#include "cli.hpp"
#include "fefkit/applications.hpp"
#include "fefkit/concurrence.hpp"
#include "fefkit/fef.hpp"

namespace fefkit::cli {

SampleRow sample_row(Family family, std::uint64_t seed, std::size_t index, const SearchBudget& budget) {
  const FamilyDraw draw = draw_family(family, seed, index);
  const FefResult fef = fully_entangled_fraction(draw.state);
  const double c = concurrence(draw.state).value;
  const BoundsCheck bounds = bounds_check(fef.renormalized, c);

  SampleRow row;
  row.index = index;
  row.family = family;
  row.params = draw.params;
  row.fef = fef.fef;
  row.renormalized = fef.renormalized;
  row.concurrence = c;
  row.teleportation_max = (1.0 + 2.0 * fef.fef) / 3.0;
  row.bell_canonical = bell_canonical(draw.state);
  row.bell_max_angles = bell_max(draw.state, BellMode::angles, budget);
  row.lower_ok = bounds.lower_ok;
  row.upper_ok = bounds.upper_ok;
  return row;
}

std::vector<SampleRow> sample_rows(Family family, std::uint64_t seed, std::size_t count, unsigned workers,
                                   const SearchBudget& budget) {
  std::vector<SampleRow> rows(count);
  const std::size_t n_workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  const std::size_t block = (count + n_workers - 1) / n_workers;
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) rows[i] = sample_row(family, seed, i, budget);
  };
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < n_workers; ++w) {
    const std::size_t begin = w * block;
    if (begin >= count) break;
    pool.emplace_back(work, begin, std::min(count, begin + block));
  }
  work(0, std::min(count, block));
  return rows;
}

std::string format_csv_row(const SampleRow& r) {
  std::string s = std::to_string(r.index);
  s += ',';
  s += to_string(r.family);
  for (double v : {r.params[0], r.params[1], r.fef, r.renormalized, r.concurrence, r.teleportation_max,
                   r.bell_canonical, r.bell_max_angles}) {
    s += ',';
    s += format_number(v);
  }
  s += r.lower_ok ? ",1" : ",0";
  s += r.upper_ok ? ",1" : ",0";
  return s;
}

namespace {

std::string render(const std::vector<SampleRow>& rows, Format format) {
  std::ostringstream text;
  if (format == Format::csv) {
    text << kSampleHeader << "\n";
    for (const auto& row : rows) text << format_csv_row(row) << "\n";
    return text.str();
  }
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    j.push_back({{"index", r.index},
                 {"family", std::string(to_string(r.family))},
                 {"param1", r.params[0]},
                 {"param2", r.params[1]},
                 {"F", r.fef},
                 {"E", r.renormalized},
                 {"C", r.concurrence},
                 {"F_T_max", r.teleportation_max},
                 {"B_canonical", r.bell_canonical},
                 {"B_max_angles", r.bell_max_angles},
                 {"lower_ok", r.lower_ok},
                 {"upper_ok", r.upper_ok}});
  }
  text << j.dump(2) << "\n";
  return text.str();
}

// Reports every bound failure with what is needed to regenerate the state.
bool report_bound_failures(const std::vector<SampleRow>& rows, std::uint64_t seed, std::ostream& err) {
  bool failed = false;
  for (const auto& r : rows) {
    if (r.lower_ok && r.upper_ok) continue;
    failed = true;
    const DensityMatrix state = draw_family(r.family, seed, r.index).state;
    err << "bound failure at index " << r.index << " (family " << to_string(r.family) << ", seed " << seed
        << "): E=" << format_number(r.renormalized) << " C=" << format_number(r.concurrence)
        << (r.lower_ok ? "" : " [E <= C violated]") << (r.upper_ok ? "" : " [C <= (E+1)/2 violated]")
        << "\nstate: " << to_density_json(state.matrix()) << "\n";
  }
  return failed;
}

int sample_command(const RunConfig& config, Family family, std::size_t default_count, std::ostream& out,
                   std::ostream& err) {
  const std::size_t count = config.count.value_or(default_count);
  const auto rows = sample_rows(family, config.seed, count, config.workers, config.search_budget());
  if (!write_output(config.output, render(rows, config.format.value_or(Format::csv)), out, err))
    return exit_code::io_failure;
  return report_bound_failures(rows, config.seed, err) ? exit_code::bound_failure : exit_code::ok;
}

std::string bounds_path(const std::string& output) {
  std::filesystem::path p(output);
  const std::string stem = p.stem().string();
  return (p.parent_path() / (stem + "_bounds.csv")).string();
}

}  // namespace

int run_sample(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return sample_command(config, config.family, 1000, out, err);
}

int run_fig2(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (!config.output) {
    err << "fig2 requires --out (the bound lines go to <out-stem>_bounds.csv)\n";
    return exit_code::usage;
  }
  std::ostringstream bounds;
  bounds << "C,E_lower,E_upper\n";
  for (int i = 0; i <= 100; ++i) {
    const double c = i / 100.0;
    bounds << format_number(c) << ',' << format_number(c) << ',' << format_number(2.0 * c - 1.0) << "\n";
  }
  const std::optional<std::string> companion = bounds_path(*config.output);
  if (!write_output(companion, bounds.str(), out, err)) return exit_code::io_failure;
  return sample_command(config, Family::fig2, 100000, out, err);
}

}  // namespace fefkit::cli
