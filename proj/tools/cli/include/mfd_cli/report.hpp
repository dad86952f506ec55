#ifndef MFD_CLI_REPORT_HPP
#define MFD_CLI_REPORT_HPP

#include "mfd/graph.hpp"
#include "mfd/matrix.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace mfd::cli {

enum class OutputFormat { kJson, kTable };

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitParseError = 2;

// Numbers are written as strings: "p/q" for exact values, 17 significant
// digits for floats. Absent entries of a partial matrix become null.
nlohmann::json to_json(const Scalar& x);
nlohmann::json to_json(const Vector& v);
nlohmann::json to_json(const Matrix& m);
nlohmann::json to_json(const PartialMatrix& m);
nlohmann::json to_json(const std::vector<double>& v);
nlohmann::json to_json(const BipartiteCycle& cycle);

Vector vector_from_json(const nlohmann::json& node, NumberMode mode);
Matrix matrix_from_json(const nlohmann::json& node, NumberMode mode);

struct Report {
  std::string command;
  nlohmann::json input = nlohmann::json::object();  // source path and digest
  nlohmann::json flags = nlohmann::json::object();
  nlohmann::json result = nlohmann::json::object();
  nlohmann::json diagnostics = nlohmann::json::object();
  std::optional<nlohmann::json> error;
  int exit_code = kExitOk;

  nlohmann::json to_json() const;
};

/// JSON with sorted keys and two-space indentation, or the table view.
std::string render(const Report& report, OutputFormat format);
std::string render_table(const nlohmann::json& node);

}  // namespace mfd::cli

#endif  // MFD_CLI_REPORT_HPP
