#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "cli.hpp"

using namespace fefkit;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(FEFKIT_TEST_DATA_DIR) + "/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Exit status of the real binary, for the process-level contract.
int exit_status(const std::string& args) {
  const std::string cmd = std::string(FEFKIT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "fefkit_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("analyze: Bell state") {
  const Run r = run({"--command", "analyze", "--in", data("bell.json")});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["F"].get<double>() - 1.0) <= 1e-12);
  CHECK(std::abs(j["E"].get<double>() - 1.0) <= 1e-12);
  CHECK(std::abs(j["C"].get<double>() - 1.0) <= 1e-12);
  CHECK(std::abs(j["F_T_max"].get<double>() - 1.0) <= 1e-12);
  CHECK(std::abs(j["B_canonical"].get<double>() - 2.0 * std::numbers::sqrt2) <= 1e-12);
}

TEST_CASE("analyze: maximally mixed state") {
  const Run r = run({"--command", "analyze", "--in", data("maximally_mixed.json")});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["F"].get<double>() - 0.25) <= 1e-12);
  CHECK(j["E"].get<double>() == 0.0);
  CHECK(std::abs(j["C"].get<double>()) <= 1e-12);
  CHECK(std::abs(j["F_T_max"].get<double>() - 0.5) <= 1e-12);
}

TEST_CASE("analyze: Werner 0.8") {
  const Run r = run({"--command", "analyze", "--in", data("werner_0.8.json")});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["E"].get<double>() - 0.7) <= 1e-10);
  CHECK(std::abs(j["C"].get<double>() - 0.7) <= 1e-10);
  CHECK(std::abs(j["B_canonical"].get<double>() - 2.0 * std::numbers::sqrt2 * 0.8) <= 1e-10);
}

TEST_CASE("analyze: CSV format has one header and one row") {
  const Run r = run({"--command", "analyze", "--in", data("bell.json"), "--format", "csv"});
  REQUIRE(r.code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].rfind("F,E,C,", 0) == 0);
}

TEST_CASE("analyze: exit codes for bad input") {
  const Run malformed = run({"--command", "analyze", "--in", data("malformed.json")});
  CHECK(malformed.code == cli::exit_code::parse_failure);

  const Run missing = run({"--command", "analyze", "--in", data("does_not_exist.json")});
  CHECK(missing.code == cli::exit_code::parse_failure);

  const Run trace = run({"--command", "analyze", "--in", data("corrupted_trace.json")});
  CHECK(trace.code == cli::exit_code::invariant_failure);
  CHECK(trace.err.find("unit_trace") != std::string::npos);

  const Run herm = run({"--command", "analyze", "--in", data("corrupted_hermitian.json")});
  CHECK(herm.code == cli::exit_code::invariant_failure);
  CHECK(herm.err.find("hermitian") != std::string::npos);

  CHECK(run({"--command", "analyze"}).code == cli::exit_code::usage);
}

TEST_CASE("process exit codes match the in-process ones") {
  CHECK(exit_status("--command analyze --in " + data("bell.json")) == 0);
  CHECK(exit_status("--command analyze --in " + data("malformed.json")) == 2);
  CHECK(exit_status("--command analyze --in " + data("corrupted_trace.json")) == 3);
  CHECK(exit_status("--command verify --quick --count 2 --in " + data("corrupted_trace.json")) != 0);
  CHECK(exit_status("--command nonsense") != 0);
}

TEST_CASE("sample: header, row count, LF endings, deterministic") {
  const Run a = run({"--command", "sample", "--count", "40", "--seed", "7"});
  const Run b = run({"--command", "sample", "--count", "40", "--seed", "7"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find('\r') == std::string::npos);
  const auto lines = split_lines(a.out);
  REQUIRE(lines.size() == 41);
  CHECK(lines[0] == cli::kSampleHeader);
  for (std::size_t i = 1; i < lines.size(); ++i) CHECK(lines[i].rfind(std::to_string(i - 1) + ",raw,", 0) == 0);
}

TEST_CASE("sample: identical across worker counts") {
  const Run one = run({"--command", "sample", "--count", "37", "--seed", "3", "--family", "fig2"});
  const Run four = run({"--command", "sample", "--count", "37", "--seed", "3", "--family", "fig2", "--workers", "4"});
  const Run many = run({"--command", "sample", "--count", "37", "--seed", "3", "--family", "fig2", "--workers", "64"});
  CHECK(one.out == four.out);
  CHECK(one.out == many.out);
}

TEST_CASE("sample: CSV snapshot is stable") {
  const Run r = run({"--command", "sample", "--count", "5", "--seed", "7", "--family", "fig2"});
  REQUIRE(r.code == 0);
  CHECK(r.out == slurp(data("snapshot_fig2_seed7.csv")));
}

TEST_CASE("sample: every family, JSON format and a file sink") {
  for (const char* family : {"raw", "fig2", "werner", "lower", "upper"}) {
    const Run r = run({"--command", "sample", "--count", "20", "--family", family, "--format", "json"});
    CHECK_MESSAGE(r.code == 0, family);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.size() == 20);
    CHECK(j[0]["family"] == family);
  }
  const fs::path path = scratch("sample.csv");
  const Run r = run({"--command", "sample", "--count", "3", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(split_lines(slurp(path)).size() == 4);
}

TEST_CASE("sample: rows carry the family parameters and consistent measures") {
  const auto rows = cli::sample_rows(Family::werner, 9, 25, 3, {});
  for (const auto& row : rows) {
    const double p = row.params[0];
    CHECK(std::abs(row.fef - (1 + 3 * p) / 4) <= 1e-12);
    CHECK(std::abs(row.concurrence - std::max(0.0, (3 * p - 1) / 2)) <= 1e-10);
    CHECK(std::abs(row.teleportation_max - (1 + 2 * row.fef) / 3) <= 1e-15);
    CHECK(row.lower_ok);
    CHECK(row.upper_ok);
  }
}

TEST_CASE("sample: bound check rows format as 0/1 flags") {
  cli::SampleRow row;
  row.index = 12;
  row.family = Family::upper;
  row.params = {0.25, 0.0};
  row.fef = 0.75;
  row.lower_ok = false;
  CHECK(cli::format_csv_row(row) == "12,upper,0.25,0,0.75,0,0,0,0,0,0,1");
  CHECK(cli::format_number(1.0 / 3.0) == "0.333333333333");
}

TEST_CASE("verify: quick mode passes every identity") {
  const Run r = run({"--command", "verify", "--count", "10", "--quick"});
  CHECK(r.code == 0);
  const auto lines = split_lines(r.out);
  CHECK(lines.size() >= 15);
  for (std::size_t i = 1; i < lines.size(); ++i) CHECK_MESSAGE(lines[i].ends_with(",PASS"), lines[i]);
}

TEST_CASE("verify: corrupted input surfaces the invariant and fails") {
  const Run r = run({"--command", "verify", "--count", "2", "--quick", "--in", data("corrupted_trace.json")});
  CHECK(r.code == cli::exit_code::verify_failed);
  CHECK(r.err.find("unit_trace") != std::string::npos);
}

TEST_CASE("verify: an impossible tolerance fails and lists the identities") {
  const Run r = run({"--command", "verify", "--count", "3", "--quick", "--tolerance", "1e-300", "--format", "json"});
  CHECK(r.code == cli::exit_code::verify_failed);
  CHECK(r.err.find("FAIL fef_unitary_oracle") != std::string::npos);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.size() >= 15);
}

TEST_CASE("fig2: writes the scatter and the 101-point bound lines") {
  const fs::path path = scratch("fig2.csv");
  const Run r = run({"--command", "fig2", "--count", "30", "--out", path.string(), "--workers", "2"});
  REQUIRE(r.code == 0);
  CHECK(split_lines(slurp(path)).size() == 31);
  const auto bounds = split_lines(slurp(path.parent_path() / "fig2_bounds.csv"));
  REQUIRE(bounds.size() == 102);
  CHECK(bounds[0] == "C,E_lower,E_upper");
  CHECK(bounds[1] == "0,0,-1");
  CHECK(bounds[51] == "0.5,0.5,0");
  CHECK(bounds[101] == "1,1,1");
  CHECK(run({"--command", "fig2", "--count", "3"}).code == cli::exit_code::usage);
}

TEST_CASE("ddim: random qutrit states and an input file") {
  const Run r = run({"--command", "ddim", "--dim", "3", "--count", "2", "--quick"});
  REQUIRE(r.code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "index,d,F_DC,F,F_T_max,capacity_bits");

  const Run bell = run({"--command", "ddim", "--in", data("bell.json"), "--format", "json"});
  REQUIRE(bell.code == 0);
  const auto j = nlohmann::json::parse(bell.out);
  CHECK(std::abs(j[0]["F"].get<double>() - 1.0) <= 1e-6);
  CHECK(std::abs(j[0]["F_DC"].get<double>() - 1.0) <= 1e-12);
  CHECK(std::abs(j[0]["capacity_bits"].get<double>() - 2.0) <= 1e-12);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == cli::exit_code::usage);
  CHECK(run({"--command", "sample", "--count", "0"}).code == cli::exit_code::usage);
  CHECK(run({"--command", "sample", "--family", "ghz"}).code == cli::exit_code::usage);
  CHECK(run({"--command", "ddim", "--dim", "7"}).code == cli::exit_code::usage);
  CHECK(run({"--help"}).code == 0);
}
