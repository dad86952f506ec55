#ifndef MFD_CLI_BATCH_HPP
#define MFD_CLI_BATCH_HPP

#include "mfd_cli/commands.hpp"

#include <string>
#include <vector>

namespace mfd::cli {

struct BatchEntry {
  std::string file;     // file name within the directory
  std::string outcome;  // "parse-error", "domain-error" or a command-specific verdict
  Report report;
};

struct BatchResult {
  std::string command;
  std::vector<BatchEntry> entries;  // sorted by file name

  std::size_t passed() const;
  std::size_t failed() const;
  nlohmann::json summary() const;
  nlohmann::json to_json() const;
};

/// Runs `command` on every *.json file of `directory`, files in parallel.
/// Errors: ParseError when the directory cannot be listed.
BatchResult run_batch(const std::string& directory, const std::string& command, const Options& options);

/// One-word verdict for a report, e.g. "all-true" for homogeneity.
std::string outcome_of(const Report& report);

}  // namespace mfd::cli

#endif  // MFD_CLI_BATCH_HPP
