#ifndef MFD_PERRON_HPP
#define MFD_PERRON_HPP

#include "mfd/inclusion.hpp"
#include "mfd/matrix.hpp"

namespace mfd {

/// Frobenius–Perron data of D in the row-vector convention:
/// αD = dβ and βDᵀ = dα with ‖α‖₂ = ‖β‖₂ = 1 and all entries positive.
/// Always float valued.
struct PerronData {
  Scalar d;
  Vector alpha;
  Vector beta;
  std::size_t iterations = 0;
};

struct PerronOptions {
  std::size_t max_iter = 100000;
  double convergence = 1e-14;
};

/// Power iteration on DᵀD from the all-ones vector, refined by a dense
/// symmetric eigensolve. Entries of a strongly localized Perron vector are
/// only accurate to about 1e-16 absolute. Throws Error(NonConvergence).
PerronData perron_data(const Matrix& dims, const PerronOptions& options = {});
PerronData perron_data(const InclusionData& inclusion, const PerronOptions& options = {});

/// σ_ij = d β_j / α_i for every (i, j), including off-support pairs.
Matrix standard_distortion(const PerronData& perron);

/// π_ij = α_i² / β_j².
Matrix dual_functor_hom(const PerronData& perron);

/// max(‖αD − dβ‖∞, ‖βDᵀ − dα‖∞).
double perron_residual(const Matrix& dims, const PerronData& perron);

}  // namespace mfd

#endif  // MFD_PERRON_HPP
