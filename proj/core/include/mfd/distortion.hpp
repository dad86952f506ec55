#ifndef MFD_DISTORTION_HPP
#define MFD_DISTORTION_HPP

#include "mfd/graph.hpp"
#include "mfd/inclusion.hpp"
#include "mfd/matrix.hpp"

#include <optional>

namespace mfd {

/// Weighting δ_ij = ξ_j / η_i, normalized so that η_0 = 1.
struct Factorization {
  Vector eta;
  Vector xi;
};

/// Measured distortion on a support together with its derived data.
///
/// `entries` holds only measured values; the unique total extension and the
/// factorization are kept separately.
struct DistortionMatrix {
  PartialMatrix entries;
  std::optional<Matrix> extension;
  std::optional<Factorization> factorization;
};

struct CycleCheck {
  bool holds = true;
  std::optional<BipartiteCycle> witness;
};

/// Positive n×n matrix with values(x, y) * values(y, z) == values(x, z).
/// Objects are numbered evens first, then odds, when built from a distortion.
struct GroupoidHom {
  std::size_t n = 0;
  Matrix values;
  /// values(x, y) = potential[y] / potential[x], potential[0] = 1.
  std::optional<Vector> potential;
};

struct ExtremalityReport {
  bool jones_equals_statistical = false;
  bool cycle_condition_holds = false;
  std::optional<BipartiteCycle> witness;
  bool extremal = false;
};

/// Every support entry of `delta` must be present and strictly positive.
/// Errors: ShapeMismatch, MissingEntry, NegativeEntry.
void validate_distortion(const InclusionData& inclusion, const PartialMatrix& delta);

/// Tests ∏ δ(forward edges) = ∏ δ(backward edges) on every fundamental cycle
/// of the graph's spanning tree. Float products are compared with relative
/// tolerance eps times the cycle length.
///
/// Errors: MissingEntry when an edge of `graph` has no value.
CycleCheck check_cycle_condition(const PartialMatrix& delta, const BipartiteGraph& graph,
                                 const Tolerance& tol = {});
CycleCheck check_cycle_condition(const PartialMatrix& delta, const Tolerance& tol = {});

/// Tree-path products from even vertex 0. Errors: CycleViolation, MissingEntry,
/// DisconnectedSupport.
Factorization factorize(const PartialMatrix& delta, const BipartiteGraph& graph, const Tolerance& tol = {});
Factorization factorize(const PartialMatrix& delta, const Tolerance& tol = {});

/// The unique total matrix ξ_j / η_i agreeing with `delta` on its support.
Matrix extend_to_complete(const PartialMatrix& delta, const BipartiteGraph& graph, const Tolerance& tol = {});
Matrix extend_to_complete(const PartialMatrix& delta, const Tolerance& tol = {});

/// Bundles measured entries with extension and factorization.
DistortionMatrix complete_distortion(const PartialMatrix& delta, const Tolerance& tol = {});

/// Builds the groupoid homomorphism on a+b objects from a total distortion.
/// Errors: ExtensionConditionViolation with the offending (i, i', j, j').
GroupoidHom extend_to_groupoid(const Matrix& total, const Tolerance& tol = {});

/// Errors: NotGroupoidHom with the first failing triple (x, y, z) in
/// lexicographic order, or the first non-positive entry.
Vector square_groupoid_potential(const Matrix& values, const Tolerance& tol = {});

ExtremalityReport check_extremality(const InclusionData& inclusion, const PartialMatrix& delta,
                                    const Tolerance& tol = {});

}  // namespace mfd

#endif  // MFD_DISTORTION_HPP
