#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>

namespace fefkit::cli {

SearchBudget RunConfig::search_budget() const {
  SearchBudget b;
  if (quick) {
    b.starts = 2;
    b.max_iterations = 1000;
    b.tolerance = 1e-8;
  }
  return b.scaled(budget);
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

bool write_output(const std::optional<std::string>& path, const std::string& text, std::ostream& out,
                  std::ostream& err) {
  if (!path) {
    out << text;
    return static_cast<bool>(out);
  }
  std::ofstream file(*path, std::ios::binary);
  if (!file) {
    err << "cannot open output file " << *path << "\n";
    return false;
  }
  file << text;
  return static_cast<bool>(file);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fully entangled fraction and protocol fidelities of two-qubit states"};
  app.set_version_flag("--version", "fefkit-cli 0.1.0");

  RunConfig config;
  const std::map<std::string, Command> commands{{"analyze", Command::analyze}, {"sample", Command::sample},
                                                {"verify", Command::verify},   {"fig2", Command::fig2},
                                                {"ddim", Command::ddim}};
  const std::map<std::string, Format> formats{{"csv", Format::csv}, {"json", Format::json}};
  const std::map<std::string, Family> families{{"raw", Family::raw},
                                               {"fig2", Family::fig2},
                                               {"werner", Family::werner},
                                               {"lower", Family::lower},
                                               {"upper", Family::upper}};

  std::string command;
  std::string input;
  std::string output;
  std::string format;
  std::string family = "raw";
  std::size_t count = 0;
  double tolerance = 0.0;

  app.add_option("--command", command, "analyze | sample | verify | fig2 | ddim")
      ->required()
      ->check(CLI::IsMember(commands));
  auto* in_opt = app.add_option("--in", input, "density matrix JSON file");
  auto* out_opt = app.add_option("--out", output, "output file (default: stdout)");
  auto* format_opt = app.add_option("--format", format, "csv | json")->check(CLI::IsMember(formats));
  app.add_option("--seed", config.seed, "generator seed");
  auto* count_opt = app.add_option("--count", count, "number of states")->check(CLI::PositiveNumber);
  app.add_option("--family", family, "raw | fig2 | werner | lower | upper")->check(CLI::IsMember(families));
  app.add_option("--workers", config.workers, "worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--budget", config.budget, "optimizer start multiplier")->check(CLI::Range(1, 1000));
  app.add_flag("--quick", config.quick, "smaller optimizer budget, looser oracle tolerance");
  auto* tol_opt = app.add_option("--tolerance", tolerance, "oracle tolerance override for verify")
                      ->check(CLI::PositiveNumber);
  app.add_option("--dim", config.dim, "local dimension for ddim")->check(CLI::Range(2, 4));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::ok : exit_code::usage;
  }

  config.command = commands.at(command);
  config.family = families.at(family);
  if (*in_opt) config.input = input;
  if (*out_opt) config.output = output;
  if (*format_opt) config.format = formats.at(format);
  if (*count_opt) config.count = count;
  if (*tol_opt) config.tolerance = tolerance;

  switch (config.command) {
    case Command::analyze: return run_analyze(config, out, err);
    case Command::sample: return run_sample(config, out, err);
    case Command::verify: return run_verify(config, out, err);
    case Command::fig2: return run_fig2(config, out, err);
    case Command::ddim: return run_ddim(config, out, err);
  }
  return exit_code::usage;
}

}  // namespace fefkit::cli
