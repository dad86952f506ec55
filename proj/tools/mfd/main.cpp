#include "mfd_cli/batch.hpp"
#include "mfd_cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace {

std::string usage() {
  std::ostringstream out;
  out << "usage: mfd <command> --input PATH [options]\n"
      << "       mfd batch --dir DIR --command <command> [options]\n\ncommands:";
  for (const auto& name : mfd::cli::command_names()) out << " " << name;
  out << "\n";
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace mfd::cli;

  CLI::App app{"Modular distortion calculus for finite-index multifactor inclusions"};
  app.set_help_flag("-h,--help", "Print help and exit");
  app.footer(usage());

  std::string command;
  std::string input;
  std::string dir;
  std::string batch_command;
  std::string mode;
  std::string format = "json";
  double tol = 0.0;
  std::size_t max_iter = 0;
  std::size_t steps = 0;
  std::string rho;
  bool strict = false;
  bool tunnel = false;

  app.add_option("name", command, "Command to run")->required();
  auto* input_opt = app.add_option("--input", input, "Input file (JSON)");
  auto* dir_opt = app.add_option("--dir", dir, "Directory of input files (batch)");
  app.add_option("--command", batch_command, "Command to run on every file (batch)");
  auto* mode_opt = app.add_option("--mode", mode, "Number mode")->check(CLI::IsMember({"rational", "float"}));
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));
  auto* tol_opt = app.add_option("--tol", tol, "Relative tolerance")->check(CLI::PositiveNumber);
  auto* iter_opt = app.add_option("--max-iter", max_iter, "Iteration cap for the fixed-point search");
  auto* steps_opt = app.add_option("--steps", steps, "Tower steps, or density terms for loopbasis-verify");
  auto* rho_opt = app.add_option("--rho", rho, "Comma-separated Morita weights");
  auto* strict_flag = app.add_flag("--strict", strict, "Downward test needs a strictly positive solution");
  app.add_flag("--markov-tunnel", tunnel, "Downward test accepts zero components")->excludes(strict_flag);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << usage();
    return kExitParseError;
  }

  Options options;
  if (*mode_opt) options.mode = mode == "float" ? mfd::NumberMode::kFloat : mfd::NumberMode::kRational;
  if (*tol_opt) options.tol = tol;
  if (*iter_opt) options.max_iter = max_iter;
  if (*steps_opt) options.steps = steps;
  if (*rho_opt) options.rho = rho;
  if (tunnel) options.feasibility = mfd::FeasibilityMode::kMarkovTunnel;
  options.format = format == "table" ? OutputFormat::kTable : OutputFormat::kJson;

  if (command == "batch") {
    if (!*dir_opt || !is_command(batch_command)) {
      std::cerr << "batch needs --dir and a valid --command\n" << usage();
      return kExitParseError;
    }
    try {
      BatchResult result = run_batch(dir, batch_command, options);
      if (options.format == OutputFormat::kTable) {
        std::cout << render_table(result.summary());
      } else {
        std::cout << result.to_json().dump(2) << "\n";
      }
      return kExitOk;
    } catch (const ParseError& e) {
      std::cerr << e.what() << "\n";
      return kExitParseError;
    }
  }

  if (!is_command(command)) {
    std::cerr << "unknown command: " << command << "\n" << usage();
    return kExitParseError;
  }
  if (!*input_opt) {
    std::cerr << command << " needs --input PATH\n" << usage();
    return kExitParseError;
  }

  Report report = run_file(command, input, options);
  std::cout << render(report, options.format);
  if (report.error) std::cerr << (*report.error)["error"].get<std::string>() << ": " << (*report.error)["message"].get<std::string>() << "\n";
  return report.exit_code;
}
