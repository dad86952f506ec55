#ifndef MFD_ERROR_HPP
#define MFD_ERROR_HPP

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace mfd {

enum class ErrorCode {
  kEmptyMatrix,
  kNotRectangular,
  kNegativeEntry,
  kSupportMismatch,
  kDisconnectedSupport,
  kShapeMismatch,
  kNonConvergence,
  kMissingEntry,
  kCycleViolation,
  kExtensionConditionViolation,
  kNotGroupoidHom,
  kColumnNormalizationViolation,
  kNotRealizable,
  kZeroPi,
  kWrongAlgebraTag,
  kNotCentral,
  kInconsistentDimensions,
  kInconsistentTraces,
  kInvalidArgument,
};

/// Stable identifier used in reports, e.g. "CycleViolation".
const char* to_string(ErrorCode code);

/// Domain error with a structured, JSON-serializable payload.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, nlohmann::json payload = nlohmann::json::object())
      : std::runtime_error(message), code_(code), payload_(std::move(payload)) {}

  ErrorCode code() const { return code_; }
  const nlohmann::json& payload() const { return payload_; }

  /// {"error": name, "message": ..., "payload": ...}
  nlohmann::json to_json() const;

 private:
  ErrorCode code_;
  nlohmann::json payload_;
};

}  // namespace mfd

#endif  // MFD_ERROR_HPP
