#include "mfd_cli/batch.hpp"

#include <algorithm>
#include <filesystem>
#include <future>

namespace mfd::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string outcome_of(const Report& report) {
  if (report.exit_code == kExitParseError) return "parse-error";
  if (report.exit_code == kExitDomainError) return "domain-error";
  const json& r = report.result;
  if (report.command == "homogeneity") return r["summary"].get<std::string>();
  if (report.command == "downward") return r["status"].get<std::string>();
  if (report.command == "realizable") return r["realizable"].get<bool>() ? "realizable" : "not-realizable";
  if (report.command == "loopbasis-verify") return r["pimsner_popa_holds"].get<bool>() ? "verified" : "failed";
  return "ok";
}

std::size_t BatchResult::passed() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const BatchEntry& e) { return e.report.exit_code == kExitOk; }));
}

std::size_t BatchResult::failed() const { return entries.size() - passed(); }

json BatchResult::summary() const {
  json files = json::object();
  for (const auto& e : entries) files[e.file] = e.outcome;
  return {{"files", files}, {"total", entries.size()}, {"passed", passed()}, {"failed", failed()}};
}

json BatchResult::to_json() const {
  json reports = json::array();
  for (const auto& e : entries) reports.push_back(e.report.to_json());
  return {{"command", "batch"}, {"batch_command", command}, {"summary", summary()}, {"reports", reports}};
}

BatchResult run_batch(const std::string& directory, const std::string& command, const Options& options) {
  std::error_code ec;
  if (!fs::is_directory(directory, ec))
    throw ParseError("not a directory: " + directory, {{"field", "--dir"}, {"path", directory}});
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory, ec))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  if (ec) throw ParseError("cannot list " + directory + ": " + ec.message(), {{"field", "--dir"}, {"path", directory}});
  std::sort(files.begin(), files.end(),
            [](const fs::path& x, const fs::path& y) { return x.filename().string() < y.filename().string(); });

  std::vector<std::future<Report>> pending;
  pending.reserve(files.size());
  for (const auto& path : files)
    pending.push_back(std::async(std::launch::async, [&command, &options, path] {
      return run_file(command, path.string(), options);
    }));

  BatchResult out;
  out.command = command;
  for (std::size_t k = 0; k < files.size(); ++k) {
    Report report = pending[k].get();
    std::string outcome = outcome_of(report);
    out.entries.push_back({files[k].filename().string(), std::move(outcome), std::move(report)});
  }
  return out;
}

}  // namespace mfd::cli
