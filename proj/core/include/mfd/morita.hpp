#ifndef MFD_MORITA_HPP
#define MFD_MORITA_HPP

#include "mfd/inclusion.hpp"
#include "mfd/matrix.hpp"
#include "mfd/perron.hpp"

#include <optional>

namespace mfd {

struct RealizabilityResult {
  bool realizable = false;
  /// η in the gauge η_0 = 1; present iff realizable.
  std::optional<Vector> eta_witness;
  /// First column j with Σ_h η_h D_hj ≠ ξ_j.
  std::optional<std::size_t> violation;
};

/// δ'_ij = δ_ij ρ_i⁻¹ Σ_h ρ_h Δ_hj / δ_hj. Errors: ShapeMismatch,
/// InvalidArgument (non-positive ρ).
Matrix morita_distortion(const Matrix& delta, const Matrix& jones, const Vector& rho);

/// Tests ξ_j = Σ_h η_h D_hj for the factorization δ_ij = ξ_j / η_i.
/// Errors: CycleViolation.
RealizabilityResult realizability_check(const PartialMatrix& delta, const InclusionData& inclusion,
                                        const Tolerance& tol = {});

/// Weights ρ (with ρ_0 = 1) such that morita_distortion(δ, Δ, ρ) = σ.
/// Errors: NotRealizable, CycleViolation (δ / σ does not factorize).
Vector rescale_to_standard(const Matrix& delta, const InclusionData& inclusion, const PerronData& perron,
                           const Tolerance& tol = {});

}  // namespace mfd

#endif  // MFD_MORITA_HPP
