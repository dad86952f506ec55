#ifndef MFD_LOOPBASIS_HPP
#define MFD_LOOPBASIS_HPP

#include "mfd/matrix.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace mfd {

using Complex = std::complex<double>;

enum class AlgebraTag { kN0, kN1 };

/// Loops based at the root vertex, encoded by edge indices:
/// N0 loops are [a b] (two η-edges with a common target),
/// N1 loops are [a j k l] (η_a ε_j ε_k* η_l*).
using LoopKey = std::vector<std::uint32_t>;

/// Sparse linear combination of loops in one algebra.
class LoopElement {
 public:
  explicit LoopElement(AlgebraTag tag) : tag_(tag) {}
  LoopElement(AlgebraTag tag, LoopKey loop, Complex coefficient = 1.0);

  AlgebraTag tag() const { return tag_; }
  const std::map<LoopKey, Complex>& terms() const { return terms_; }
  Complex coefficient(const LoopKey& loop) const;
  void add(const LoopKey& loop, Complex coefficient);

  LoopElement& operator+=(const LoopElement& rhs);
  LoopElement& operator-=(const LoopElement& rhs);
  LoopElement& operator*=(Complex factor);
  friend LoopElement operator+(LoopElement lhs, const LoopElement& rhs) { return lhs += rhs; }
  friend LoopElement operator-(LoopElement lhs, const LoopElement& rhs) { return lhs -= rhs; }
  friend LoopElement operator*(LoopElement lhs, Complex factor) { return lhs *= factor; }
  friend LoopElement operator*(Complex factor, LoopElement rhs) { return rhs *= factor; }

  /// Path concatenation. Errors: WrongAlgebraTag when the tags differ.
  friend LoopElement operator*(const LoopElement& lhs, const LoopElement& rhs);

  /// Reverses every loop and conjugates coefficients.
  LoopElement adjoint() const;

  /// Largest coefficient modulus.
  double max_abs() const;

 private:
  AlgebraTag tag_;
  std::map<LoopKey, Complex> terms_;
};

/// Loop model of a finite-dimensional inclusion N0 ⊂ N1 with dimension
/// vector m0 and multiplicity matrix Λ (k×l).
struct LoopAlgebraPair {
  std::vector<std::size_t> m0;
  std::vector<std::vector<std::size_t>> lambda;
  std::size_t k = 0;
  std::size_t l = 0;

  std::vector<std::size_t> eta_target;                       // η-edge ⋆ → i
  std::vector<std::pair<std::size_t, std::size_t>> eps_edge;  // ε-edge i → j

  std::vector<LoopKey> n0_loops;
  std::vector<LoopKey> n1_loops;

  /// Trace of a minimal projection in each summand.
  std::vector<double> lambda0;
  std::vector<double> lambda1;
  double d = 1.0;

  double d_squared() const { return d * d; }
};

/// Errors: DisconnectedSupport, InvalidArgument (non-integer or non-positive data).
LoopAlgebraPair build_loop_algebra(const Vector& m0, const Matrix& lambda);

LoopElement unit(const LoopAlgebraPair& pair, AlgebraTag tag);
/// p_i = Σ_{t(η)=i} [η η*].
LoopElement central_projection(const LoopAlgebraPair& pair, std::size_t i);
/// Σ_i x_i p_i.
LoopElement central_element(const LoopAlgebraPair& pair, const std::vector<double>& x);

double trace(const LoopAlgebraPair& pair, const LoopElement& x);
/// Unital inclusion N0 → N1. Errors: WrongAlgebraTag.
LoopElement include(const LoopAlgebraPair& pair, const LoopElement& x);
/// Trace-preserving conditional expectation N1 → N0. Errors: WrongAlgebraTag.
LoopElement cond_expectation_N0(const LoopElement& x, const LoopAlgebraPair& pair);

/// Basis elements split by construction type.
struct PimsnerPopaBasis {
  std::vector<LoopElement> parallel;  // one per ordered pair of parallel ε-edges
  std::vector<LoopElement> crossing;  // one per (η, ε, ε', η') with s(ε) ≠ s(ε')

  std::size_t size() const { return parallel.size() + crossing.size(); }
  std::vector<LoopElement> all() const;
};

PimsnerPopaBasis pimsner_popa_basis(const LoopAlgebraPair& pair);

struct PimsnerPopaReport {
  /// max over N1 loops x of max |Σ_b b E(b* x) − x|.
  double reconstruction_error = 0.0;
  /// max |Σ_b b b* − d² 1|.
  double index_error = 0.0;
  std::size_t basis_size = 0;
  std::size_t loops_checked = 0;

  bool holds(double tol) const { return reconstruction_error <= tol && index_error <= tol; }
};

PimsnerPopaReport verify_pp_identity(const LoopAlgebraPair& pair, const std::vector<LoopElement>& basis);

struct CentralTransfer {
  std::vector<double> via_loops;
  std::vector<double> closed_form;  // DimDiag⁻¹ ΛΛᵀ DimDiag x
  double max_deviation = 0.0;
};

/// Reads the coefficient vector of a central element of N0.
/// Errors: NotCentral, WrongAlgebraTag.
std::vector<double> central_coefficients(const LoopAlgebraPair& pair, const LoopElement& x, double tol = 1e-10);

/// Σ_b E(b* x b) for x = Σ_i x_i p_i, by loop arithmetic and by the closed form.
CentralTransfer central_transfer(const LoopAlgebraPair& pair, const std::vector<LoopElement>& basis,
                                 const std::vector<double>& x);
/// Overload for an arbitrary element of N0. Errors: NotCentral.
CentralTransfer central_transfer(const LoopAlgebraPair& pair, const std::vector<LoopElement>& basis,
                                 const LoopElement& x);

/// DimDiag⁻¹ ΛΛᵀ DimDiag.
Eigen::MatrixXd central_transfer_matrix(const LoopAlgebraPair& pair);

struct DensitySequence {
  std::vector<std::vector<double>> closed_form;  // h_0 .. h_n
  std::vector<std::vector<double>> recursion;    // h_m = d⁻² Σ_b E(b* h_{m-1} b)
  std::vector<double> limit;                     // DimDiag⁻¹ λ0 normalized to trace 1
  double max_deviation = 0.0;                    // closed form vs recursion
};

DensitySequence density_sequence(const LoopAlgebraPair& pair, const std::vector<LoopElement>& basis, std::size_t n);

/// tr0(h) = Σ_i m0(i) λ0(i) h_i.
double density_trace(const LoopAlgebraPair& pair, const std::vector<double>& h);

/// Bratteli data of a square
///
///   M0 ⊂ M1      (top)
///   ∪    ∪
///   N0 ⊂ N1      (bottom)
///
/// with left N0 ⊂ M0, right N1 ⊂ M1 and an optional trace vector on M1
/// (trace of a minimal projection per summand).
struct CommutingSquare {
  Matrix bottom;
  Matrix top;
  Matrix left;
  Matrix right;
  std::optional<Vector> trace_m1;
};

struct NondegeneracyReport {
  double bottom_index = 0.0;
  double top_index = 0.0;
  bool nondegenerate = false;
};

/// Errors: ShapeMismatch, InconsistentTraces.
NondegeneracyReport nondegeneracy_check(const CommutingSquare& square, const Tolerance& tol = {});

/// The square one basic-construction step up, with the Markov trace.
CommutingSquare basic_construction_square(const CommutingSquare& square);

}  // namespace mfd

#endif  // MFD_LOOPBASIS_HPP
