#include "mfd/error.hpp"

namespace mfd {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyMatrix: return "EmptyMatrix";
    case ErrorCode::kNotRectangular: return "NotRectangular";
    case ErrorCode::kNegativeEntry: return "NegativeEntry";
    case ErrorCode::kSupportMismatch: return "SupportMismatch";
    case ErrorCode::kDisconnectedSupport: return "DisconnectedSupport";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kMissingEntry: return "MissingEntry";
    case ErrorCode::kCycleViolation: return "CycleViolation";
    case ErrorCode::kExtensionConditionViolation: return "ExtensionConditionViolation";
    case ErrorCode::kNotGroupoidHom: return "NotGroupoidHom";
    case ErrorCode::kColumnNormalizationViolation: return "ColumnNormalizationViolation";
    case ErrorCode::kNotRealizable: return "NotRealizable";
    case ErrorCode::kZeroPi: return "ZeroPi";
    case ErrorCode::kWrongAlgebraTag: return "WrongAlgebraTag";
    case ErrorCode::kNotCentral: return "NotCentral";
    case ErrorCode::kInconsistentDimensions: return "InconsistentDimensions";
    case ErrorCode::kInconsistentTraces: return "InconsistentTraces";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

nlohmann::json Error::to_json() const {
  return {{"error", to_string(code_)}, {"message", what()}, {"payload", payload_}};
}

}  // namespace mfd
