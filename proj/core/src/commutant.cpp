#include "mfd/commutant.hpp"

#include "mfd/error.hpp"

#include <Eigen/SVD>

namespace mfd {

namespace {

using Complex = std::complex<double>;

Complex inner(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
  return (y.adjoint() * x).trace() / static_cast<double>(x.rows());
}

/// Gram–Schmidt step: appends `candidate` when it is independent of `basis`.
bool extend_basis(std::vector<Eigen::MatrixXcd>& basis, Eigen::MatrixXcd candidate, double tol) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis) candidate -= inner(candidate, b) * b;
  const double norm = std::sqrt(std::max(0.0, inner(candidate, candidate).real()));
  if (norm <= tol) return false;
  basis.push_back(candidate / norm);
  return true;
}

void check_generators(const MatrixAlgebraPresentation& algebra) {
  for (const auto& g : algebra.generators)
    if (static_cast<std::size_t>(g.rows()) != algebra.n || static_cast<std::size_t>(g.cols()) != algebra.n) {
      throw Error(ErrorCode::kInconsistentDimensions, "generator size does not match the algebra",
                  {{"n", algebra.n}, {"generator", {g.rows(), g.cols()}}});
    }
}

}  // namespace

MatrixAlgebraPresentation MatrixAlgebraPresentation::generated_by(std::vector<Eigen::MatrixXcd> generators) {
  MatrixAlgebraPresentation out;
  out.n = generators.empty() ? 0 : static_cast<std::size_t>(generators.front().rows());
  const std::size_t count = generators.size();
  for (std::size_t k = 0; k < count; ++k) generators.push_back(generators[k].adjoint());
  if (out.n > 0) generators.push_back(Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(out.n), static_cast<Eigen::Index>(out.n)));
  out.generators = std::move(generators);
  return out;
}

MatrixAlgebraPresentation MatrixAlgebraPresentation::full(std::size_t n) {
  std::vector<Eigen::MatrixXcd> units;
  const auto size = static_cast<Eigen::Index>(n);
  for (Eigen::Index i = 0; i < size; ++i)
    for (Eigen::Index j = 0; j < size; ++j) {
      Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(size, size);
      e(i, j) = 1.0;
      units.push_back(e);
    }
  return generated_by(std::move(units));
}

MatrixAlgebraPresentation MatrixAlgebraPresentation::diagonal(std::size_t n) {
  std::vector<Eigen::MatrixXcd> units;
  const auto size = static_cast<Eigen::Index>(n);
  for (Eigen::Index i = 0; i < size; ++i) {
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(size, size);
    e(i, i) = 1.0;
    units.push_back(e);
  }
  return generated_by(std::move(units));
}

std::vector<Eigen::MatrixXcd> algebra_basis(const MatrixAlgebraPresentation& algebra, double tol) {
  check_generators(algebra);
  std::vector<Eigen::MatrixXcd> basis;
  for (const auto& g : algebra.generators) extend_basis(basis, g, tol);
  // Close under products until the span stops growing.
  for (bool grew = true; grew;) {
    grew = false;
    const std::size_t current = basis.size();
    for (std::size_t x = 0; x < current; ++x)
      for (std::size_t y = 0; y < current; ++y)
        if (extend_basis(basis, basis[x] * basis[y], tol)) grew = true;
  }
  return basis;
}

std::vector<Eigen::MatrixXcd> relative_commutant(const MatrixAlgebraPresentation& sub,
                                                 const MatrixAlgebraPresentation& ambient, double tol) {
  if (sub.n != ambient.n) {
    throw Error(ErrorCode::kInconsistentDimensions, "algebras act on spaces of different dimension",
                {{"sub", sub.n}, {"ambient", ambient.n}});
  }
  check_generators(sub);
  const std::vector<Eigen::MatrixXcd> span = algebra_basis(ambient, tol);
  const auto n = static_cast<Eigen::Index>(ambient.n);
  const Eigen::Index block = n * n;

  // Column k holds the commutators of span[k] with every generator, stacked.
  Eigen::MatrixXcd system(block * static_cast<Eigen::Index>(sub.generators.size()), static_cast<Eigen::Index>(span.size()));
  for (std::size_t k = 0; k < span.size(); ++k)
    for (std::size_t g = 0; g < sub.generators.size(); ++g) {
      Eigen::MatrixXcd comm = span[k] * sub.generators[g] - sub.generators[g] * span[k];
      system.block(static_cast<Eigen::Index>(g) * block, static_cast<Eigen::Index>(k), block, 1) =
          Eigen::Map<Eigen::VectorXcd>(comm.data(), block);
    }

  std::vector<Eigen::MatrixXcd> result;
  if (system.rows() == 0) return span;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(system, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double scale = std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  for (Eigen::Index c = 0; c < svd.matrixV().cols(); ++c) {
    if (c < sv.size() && sv(c) > tol * scale) continue;
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t k = 0; k < span.size(); ++k) x += svd.matrixV()(static_cast<Eigen::Index>(k), c) * span[k];
    extend_basis(result, x, tol);
  }
  return result;
}

}  // namespace mfd
