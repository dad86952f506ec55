#include "mfd/perron.hpp"

#include "mfd/error.hpp"

#include <cmath>

namespace mfd {

namespace {

Eigen::VectorXd positive_unit(Eigen::VectorXd v) {
  if (v.sum() < 0) v = -v;
  return v / v.norm();
}

}  // namespace

PerronData perron_data(const Matrix& dims, const PerronOptions& options) {
  if (dims.empty()) throw Error(ErrorCode::kEmptyMatrix, "dimension matrix is empty");
  const Eigen::MatrixXd d = dims.to_eigen();
  const Eigen::MatrixXd gram = d.transpose() * d;
  const Eigen::Index b = gram.rows();

  Eigen::VectorXd beta = Eigen::VectorXd::Ones(b) / std::sqrt(static_cast<double>(b));
  std::size_t iter = 0;
  bool converged = false;
  double change = 0.0;
  while (iter < options.max_iter) {
    ++iter;
    Eigen::VectorXd next = gram * beta;
    double norm = next.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) break;
    next /= norm;
    change = (next - beta).lpNorm<Eigen::Infinity>();
    beta = next;
    if (change < options.convergence) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw Error(ErrorCode::kNonConvergence, "power iteration did not converge",
                {{"max_iter", options.max_iter}, {"residual", change}});
  }

  // Direct refinement: dense symmetric eigensolve, oriented like the iterate.
  if (b > 1) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
    if (solver.info() == Eigen::Success) {
      Eigen::VectorXd top = solver.eigenvectors().col(b - 1);
      if (top.dot(beta) < 0) top = -top;
      if (top.minCoeff() > -1e-12 * top.maxCoeff()) beta = top.cwiseAbs();
    }
  }
  beta = positive_unit(beta);

  Eigen::VectorXd image = d * beta;
  double value = image.norm();
  Eigen::VectorXd alpha = image / value;

  PerronData out;
  out.d = Scalar(value);
  out.alpha = from_eigen(alpha);
  out.beta = from_eigen(beta);
  out.iterations = iter;
  return out;
}

PerronData perron_data(const InclusionData& inclusion, const PerronOptions& options) {
  return perron_data(inclusion.dims(), options);
}

Matrix standard_distortion(const PerronData& perron) {
  Matrix sigma(perron.alpha.size(), perron.beta.size());
  for (std::size_t i = 0; i < perron.alpha.size(); ++i)
    for (std::size_t j = 0; j < perron.beta.size(); ++j) sigma(i, j) = perron.d * perron.beta[j] / perron.alpha[i];
  return sigma;
}

Matrix dual_functor_hom(const PerronData& perron) {
  Matrix pi(perron.alpha.size(), perron.beta.size());
  for (std::size_t i = 0; i < perron.alpha.size(); ++i)
    for (std::size_t j = 0; j < perron.beta.size(); ++j)
      pi(i, j) = (perron.alpha[i] * perron.alpha[i]) / (perron.beta[j] * perron.beta[j]);
  return pi;
}

double perron_residual(const Matrix& dims, const PerronData& perron) {
  Vector lhs1 = left_multiply(perron.alpha, dims);
  Vector rhs1 = scaled(perron.beta, perron.d);
  Vector lhs2 = left_multiply(perron.beta, dims.transpose());
  Vector rhs2 = scaled(perron.alpha, perron.d);
  return std::max(max_abs_diff(lhs1, rhs1), max_abs_diff(lhs2, rhs2));
}

}  // namespace mfd
