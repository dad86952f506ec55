#ifndef MFD_MARKOV_HPP
#define MFD_MARKOV_HPP

#include "mfd/inclusion.hpp"
#include "mfd/matrix.hpp"
#include "mfd/perron.hpp"

#include <optional>

namespace mfd {

/// T (a×b) with T_ij = Δ_ij / δ_ij and T̃ (b×a) with T̃_ji = δ_ij Δ_ij,
/// both zero off the support.
struct TraceMatrices {
  Matrix t;
  Matrix t_tilde;
};

/// States on the two centers and the Markov index.
/// tr_A = T tr_B and d² tr_B = T̃ tr_A.
struct TracePair {
  Vector tr_a;
  Vector tr_b;
  Scalar d_squared;
};

/// Markov data of a finite-dimensional inclusion with multiplicity matrix Λ.
struct FiniteDimMarkov {
  Vector m_a;
  Vector m_b;       // m_A Λ
  Vector lambda_a;  // trace of a minimal projection in summand i, m_A·λ_A = 1
  Vector lambda_b;
  Scalar d_squared;
};

struct ExpectationCoefficients {
  PartialMatrix lambda_markov;
  PartialMatrix lambda_minimal;
};

struct ExtremalInclusionReport {
  bool e1 = false;  // Markov expectation is the minimal one
  bool e2 = false;  // distortion is determined by the Markov trace
  bool e3 = false;  // D = Δ and the cycle condition holds
  bool consistent() const { return e1 == e2 && e2 == e3; }
};

/// The trace on the basic construction ⟨B, A⟩ and the trace matrix (b×a)
/// of B ⊂ ⟨B, A⟩.
struct BasicConstructionTrace {
  Vector trace;
  Matrix matrix;
};

/// Errors: ShapeMismatch, MissingEntry.
TraceMatrices trace_matrices(const InclusionData& inclusion, const PartialMatrix& delta);

/// d² and tr_B from the dominant eigenpair of T̃T, tr_A = T tr_B.
///
/// Errors: ColumnNormalizationViolation when Σ_i T_ij ≠ 1 for some column j.
TracePair markov_trace(const InclusionData& inclusion, const PartialMatrix& delta, const Tolerance& tol = {});

/// Errors: DisconnectedSupport, InvalidArgument (non-integer Λ or bad m_A).
FiniteDimMarkov finite_dim_markov(const Matrix& lambda, const std::optional<Vector>& m_a = std::nullopt);

/// tr_A(i) = m_A(i) λ_A(i), tr_B(j) = m_B(j) λ_B(j).
TracePair finite_dim_trace_pair(const FiniteDimMarkov& markov);

/// Trace matrix of a finite-dimensional inclusion: Λ_ij m_A(i) / m_B(j). Exact.
Matrix finite_dim_trace_matrix(const Matrix& lambda, const std::optional<Vector>& m_a = std::nullopt);

/// δ = Λ / T on the support, extended to all pairs. Exact on rational input.
Matrix finite_dim_distortion(const Matrix& lambda, const std::optional<Vector>& m_a = std::nullopt);

ExpectationCoefficients expectation_coefficients(const InclusionData& inclusion, const PartialMatrix& delta,
                                                 const TracePair& traces, const PerronData& perron);

ExtremalInclusionReport check_extremal_inclusion(const InclusionData& inclusion, const PartialMatrix& delta,
                                                 const TracePair& traces, const PerronData& perron,
                                                 const Tolerance& tol = {});

/// δ_ij = (α_i / tr_A(i)) Σ_h (tr_A(h) / α_h) D_hj for every (i, j).
Matrix distortion_from_trace(const Vector& tr_a, const InclusionData& inclusion, const PerronData& perron);

/// With μ = m0 and ν = μΛ: true iff νΛᵀ = (‖ν‖² / ‖μ‖²) μ.
bool check_super_extremal_findim(const Vector& m0, const Matrix& lambda, const Tolerance& tol = {});

BasicConstructionTrace basic_construction_trace(const TracePair& traces, const InclusionData& inclusion,
                                                const PartialMatrix& delta);

}  // namespace mfd

#endif  // MFD_MARKOV_HPP
