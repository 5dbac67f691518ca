#pragma once

// fefkit-cli: analyze single states, run seeded sampling campaigns, verify the
// protocol identities, and emit Fig.-2-style scatter data.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fefkit/optimize.hpp"
#include "fefkit/states.hpp"

namespace fefkit::cli {

enum class Command { analyze, sample, verify, fig2, ddim };
enum class Format { csv, json };

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int verify_failed = 1;
inline constexpr int parse_failure = 2;
inline constexpr int invariant_failure = 3;
inline constexpr int identity_mismatch = 4;
inline constexpr int bound_failure = 5;
inline constexpr int usage = 64;
inline constexpr int io_failure = 74;
}  // namespace exit_code

struct RunConfig {
  Command command = Command::analyze;
  std::uint64_t seed = 1;
  std::optional<std::size_t> count;  ///< per-command default when unset
  std::optional<std::string> input;
  std::optional<std::string> output;
  std::optional<Format> format;      ///< per-command default when unset
  Family family = Family::raw;
  unsigned workers = 1;
  int budget = 1;                    ///< multiplier on optimizer starts
  bool quick = false;
  std::optional<double> tolerance;   ///< overrides oracle tolerances in verify
  std::size_t dim = 3;               ///< local dimension for ddim

  SearchBudget search_budget() const;
};

/// Parses argv-style arguments (without the program name) and runs the
/// command. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_analyze(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_sample(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_fig2(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_ddim(const RunConfig& config, std::ostream& out, std::ostream& err);

// ------------------------------------------------------------------ sampling

inline constexpr const char* kSampleHeader =
    "index,family,param1,param2,F,E,C,F_T_max,B_canonical,B_max_angles,lower_ok,upper_ok";

struct SampleRow {
  std::size_t index = 0;
  Family family = Family::raw;
  std::array<double, 2> params{};
  double fef = 0.0;
  double renormalized = 0.0;
  double concurrence = 0.0;
  double teleportation_max = 0.0;
  double bell_canonical = 0.0;
  double bell_max_angles = 0.0;
  bool lower_ok = true;
  bool upper_ok = true;
};

SampleRow sample_row(Family family, std::uint64_t seed, std::size_t index, const SearchBudget& budget);

/// Rows 0..count-1 in index order, computed by `workers` threads over
/// contiguous index blocks.
std::vector<SampleRow> sample_rows(Family family, std::uint64_t seed, std::size_t count, unsigned workers,
                                   const SearchBudget& budget);

std::string format_csv_row(const SampleRow& row);

/// %.12g
std::string format_number(double value);

/// Writes `text` to the path, or to `out` when no path is given.
bool write_output(const std::optional<std::string>& path, const std::string& text, std::ostream& out,
                  std::ostream& err);

}  // namespace fefkit::cli
