#ifndef MFD_TOWER_HPP
#define MFD_TOWER_HPP

#include "mfd/inclusion.hpp"
#include "mfd/markov.hpp"
#include "mfd/matrix.hpp"
#include "mfd/perron.hpp"

#include <json.hpp>

#include <optional>
#include <vector>

namespace mfd {

enum class Parity { kEven, kOdd };

/// Distortion at one step of the Jones tower. Even levels are a×b, odd
/// levels b×a.
struct TowerLevel {
  std::size_t jones_level = 0;
  Matrix distortion;
  Parity parity = Parity::kEven;
};

struct TowerTrace {
  std::vector<TowerLevel> levels;
  std::size_t iterations = 0;  // number of Φ applications
  double residual = 0.0;       // relative sup distance to σ at the last level
  bool converged = false;
};

struct FixedPointOptions {
  double tol = 1e-9;
  std::size_t max_iter = 10000;
  /// Also record the odd levels between consecutive Φ steps.
  bool record_odd_levels = false;
};

struct HomogeneityReport {
  bool h2_row_sums = false;
  bool h3_fixed_point = false;
  bool h4_standard = false;
  bool h5_scalar_jones_trace = false;
  bool h6_trace_preserved = false;
  bool h7_super_extremal = false;
  Vector row_sums;  // Σ_j δ_ij D_ij

  bool all() const;
  bool none() const;
  bool consistent() const { return all() || none(); }
};

enum class FeasibilityStatus { kFeasible, kMarkovTunnelOnly, kInfeasible };
enum class FeasibilityMode { kStrict, kMarkovTunnel };

const char* to_string(FeasibilityStatus status);

/// Outcome of the downward basic-construction test M π = 1 with
/// M_ij = δ_ij Δ_ij.
struct FeasibilityResult {
  FeasibilityStatus status = FeasibilityStatus::kInfeasible;
  /// Solution (feasible / tunnel) or the best candidate found (infeasible).
  std::optional<Vector> pi;
  /// Why the system is infeasible.
  nlohmann::json certificate;
};

/// δ'_ji = δ_ij⁻¹ Σ_k δ_ik Δ_ik wherever Δ_ij ≠ 0. Result is b×a.
PartialMatrix basic_construction_distortion(const PartialMatrix& delta, const Matrix& jones);

/// (Φδ)_ij = (ξDᵀD)_j / (ξDᵀ)_i where δ_ij = ξ_j / η_i.
/// Errors: CycleViolation, ShapeMismatch.
Matrix phi_step(const Matrix& delta, const InclusionData& inclusion, const Tolerance& tol = {});

/// sup_ij |δ_ij − σ_ij| / max(1, |σ_ij|).
double relative_residual(const Matrix& delta, const Matrix& sigma);

/// Iterates Φ until the residual to σ drops below options.tol.
/// Errors: NonConvergence (payload carries the final residual).
TowerTrace iterate_to_fixed_point(const Matrix& delta0, const InclusionData& inclusion,
                                  const FixedPointOptions& options = {}, const Tolerance& tol = {});

/// Exactly `steps` applications of Φ (no convergence test), with odd levels
/// in between.
TowerTrace jones_tower(const Matrix& delta0, const InclusionData& inclusion, std::size_t steps,
                       const Tolerance& tol = {});

/// When `traces` is absent the Markov trace of δ is computed.
HomogeneityReport homogeneity_report(const InclusionData& inclusion, const PartialMatrix& delta,
                                     const std::optional<TracePair>& traces, const PerronData& perron,
                                     const Tolerance& tol = {});

FeasibilityResult downward_feasibility(const InclusionData& inclusion, const PartialMatrix& delta,
                                       FeasibilityMode mode, const Tolerance& tol = {});

/// γ_ji = 1 / (π_j δ_ij) on the support of δ. Errors: ZeroPi.
PartialMatrix downward_distortion(const PartialMatrix& delta, const Vector& pi);

}  // namespace mfd

#endif  // MFD_TOWER_HPP
