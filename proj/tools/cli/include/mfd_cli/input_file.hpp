#ifndef MFD_CLI_INPUT_FILE_HPP
#define MFD_CLI_INPUT_FILE_HPP

#include "mfd/inclusion.hpp"
#include "mfd/matrix.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mfd::cli {

/// Malformed input file. The location carries "line"/"column" for JSON
/// syntax errors and "field" (plus the line of its key when found) for
/// schema errors.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, nlohmann::json location)
      : std::runtime_error(message), location_(std::move(location)) {}

  const nlohmann::json& location() const { return location_; }
  nlohmann::json to_json() const;

 private:
  nlohmann::json location_;
};

struct InputFile {
  std::string source;
  std::string digest;
  NumberMode mode = NumberMode::kRational;
  std::optional<double> tolerance;

  Matrix dims;
  std::optional<Matrix> jones;
  std::optional<PartialMatrix> delta;
  std::optional<Vector> trace_a;
  std::optional<Vector> trace_b;
  std::optional<Vector> m0;
  std::optional<Matrix> lambda;

  std::optional<InclusionData> validated;

  const InclusionData& inclusion() const { return *validated; }
};

/// `mode_override` (from the command line) wins over the file's number_mode.
InputFile parse_input(std::string_view text, std::string source = "<memory>",
                    std::optional<NumberMode> mode_override = std::nullopt);

/// Reads and parses a file. Unreadable files raise ParseError.
InputFile load_input(const std::string& path, std::optional<NumberMode> mode_override = std::nullopt);

/// 64-bit FNV-1a of the raw bytes, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace mfd::cli

#endif  // MFD_CLI_INPUT_FILE_HPP
