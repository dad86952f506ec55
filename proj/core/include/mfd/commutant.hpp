#ifndef MFD_COMMUTANT_HPP
#define MFD_COMMUTANT_HPP

#include <Eigen/Dense>

#include <vector>

namespace mfd {

/// *-algebra of n×n complex matrices spanned by products of its generators.
struct MatrixAlgebraPresentation {
  std::size_t n = 0;
  std::vector<Eigen::MatrixXcd> generators;

  /// Generators together with their adjoints and the identity.
  static MatrixAlgebraPresentation generated_by(std::vector<Eigen::MatrixXcd> generators);
  /// The full matrix algebra M_n.
  static MatrixAlgebraPresentation full(std::size_t n);
  /// Diagonal matrices of size n.
  static MatrixAlgebraPresentation diagonal(std::size_t n);
};

/// Linear basis of the algebra (closure of the generators under products),
/// orthonormal for ⟨x, y⟩ = tr(y* x) / n.
std::vector<Eigen::MatrixXcd> algebra_basis(const MatrixAlgebraPresentation& algebra, double tol = 1e-10);

/// Basis of {x in ambient : xg = gx for every generator g of sub},
/// orthonormal for ⟨x, y⟩ = tr(y* x) / n.
/// Errors: InconsistentDimensions.
std::vector<Eigen::MatrixXcd> relative_commutant(const MatrixAlgebraPresentation& sub,
                                                 const MatrixAlgebraPresentation& ambient, double tol = 1e-10);

}  // namespace mfd

#endif  // MFD_COMMUTANT_HPP
