#ifndef MFD_CLI_COMMANDS_HPP
#define MFD_CLI_COMMANDS_HPP

#include "mfd/tower.hpp"
#include "mfd_cli/report.hpp"
#include "mfd_cli/input_file.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mfd::cli {

/// Command-line flags shared by every command. Unset values fall back to
/// the input file, then to the environment, then to library defaults.
struct Options {
  std::optional<NumberMode> mode;
  std::optional<double> tol;
  std::optional<std::size_t> max_iter;
  std::optional<std::size_t> steps;
  std::optional<std::string> rho;
  FeasibilityMode feasibility = FeasibilityMode::kStrict;
  OutputFormat format = OutputFormat::kJson;

  nlohmann::json to_json() const;
};

const std::vector<std::string>& command_names();
bool is_command(const std::string& name);

/// ε from --tol, then the file's "tolerance", then MFD_TOLERANCE, then the
/// library default. Malformed MFD_TOLERANCE raises ParseError.
double resolve_tolerance(const Options& options, const InputFile& input);

/// Runs one command on parsed input. Throws mfd::Error and ParseError.
Report run(const std::string& command, const InputFile& input, const Options& options);

/// Loads the file and runs the command; every failure is folded into the
/// report and its exit code.
Report run_file(const std::string& command, const std::string& path, const Options& options);

}  // namespace mfd::cli

#endif  // MFD_CLI_COMMANDS_HPP
