#ifndef MFD_LINALG_HPP
#define MFD_LINALG_HPP

#include "mfd/matrix.hpp"

#include <optional>

namespace mfd {

/// Result of Gaussian elimination on A x = b.
struct LinearSolution {
  enum class Kind { kUnique, kUnderdetermined, kInconsistent };
  Kind kind = Kind::kInconsistent;
  /// A particular solution (free variables set to zero); empty when inconsistent.
  Vector x;
  std::size_t rank = 0;
  /// Row of the reduced system that reads 0 = nonzero.
  std::optional<std::size_t> inconsistent_row;
};

/// Gauss–Jordan elimination. Exact when every entry is rational; otherwise
/// partial pivoting with zero tests against `tol`.
LinearSolution solve_linear(const Matrix& a, const Vector& b, const Tolerance& tol = {});

/// Result of maximize c·x subject to A x = b, x >= 0.
struct LpResult {
  enum class Status { kOptimal, kInfeasible, kUnbounded };
  Status status = Status::kInfeasible;
  Vector x;
  Scalar objective;
  /// Phase-one optimum (sum of artificial variables); positive iff infeasible.
  Scalar infeasibility;
};

/// Dense two-phase simplex with Bland's rule. Intended for tiny problems;
/// exact on rational input.
LpResult simplex_maximize(const Matrix& a, const Vector& b, const Vector& c, const Tolerance& tol = {});

}  // namespace mfd

#endif  // MFD_LINALG_HPP
