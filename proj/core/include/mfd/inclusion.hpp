#ifndef MFD_INCLUSION_HPP
#define MFD_INCLUSION_HPP

#include "mfd/graph.hpp"
#include "mfd/matrix.hpp"

#include <optional>

namespace mfd {

/// Validated combinatorial skeleton of a connected inclusion A ⊂ B:
/// statistical dimension matrix D and Jones dimension matrix Δ (a×b) with a
/// shared, connected support graph.
class InclusionData {
 public:
  std::size_t a() const { return dims_.rows(); }
  std::size_t b() const { return dims_.cols(); }
  /// Statistical dimension matrix D.
  const Matrix& dims() const { return dims_; }
  /// Jones dimension matrix Δ (equal to D unless given separately).
  const Matrix& jones() const { return jones_; }
  const BipartiteGraph& support() const { return support_; }
  bool on_support(std::size_t i, std::size_t j) const { return !dims_(i, j).is_zero(); }

  /// Same data with D and Δ transposed (the B ⊂ ⟨B, A⟩ step).
  InclusionData transposed() const;

 private:
  friend InclusionData validate_inclusion(const Matrix&, const std::optional<Matrix>&);
  InclusionData(Matrix dims, Matrix jones, BipartiteGraph support)
      : dims_(std::move(dims)), jones_(std::move(jones)), support_(std::move(support)) {}

  Matrix dims_;
  Matrix jones_;
  BipartiteGraph support_;
};

/// Checks shape, sign, shared zero pattern and connectedness.
///
/// Errors: EmptyMatrix, ShapeMismatch, NegativeEntry, SupportMismatch,
/// DisconnectedSupport (payload lists the components).
InclusionData validate_inclusion(const Matrix& dims, const std::optional<Matrix>& jones = std::nullopt);

}  // namespace mfd

#endif  // MFD_INCLUSION_HPP
