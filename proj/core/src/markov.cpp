#include "mfd/markov.hpp"

#include "mfd/distortion.hpp"
#include "mfd/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace mfd {

namespace {

/// Dominant eigenpair of a nonnegative irreducible matrix, eigenvector
/// normalized to sum 1.
std::pair<double, Eigen::VectorXd> dominant_eigenpair(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  if (n == 1) return {m(0, 0), Eigen::VectorXd::Ones(1)};
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() == Eigen::Success) {
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < n; ++k)
      if (solver.eigenvalues()(k).real() > solver.eigenvalues()(best).real()) best = k;
    Eigen::VectorXd v = solver.eigenvectors().col(best).real();
    if (v.sum() < 0) v = -v;
    if (v.minCoeff() >= -1e-14 * v.cwiseAbs().maxCoeff() && v.sum() > 0) {
      v = v.cwiseMax(0.0) / v.sum();
      return {solver.eigenvalues()(best).real(), v};
    }
  }
  // Fallback: power iteration on m + I (primitive for irreducible m).
  Eigen::MatrixXd shifted = m + Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n) / static_cast<double>(n);
  for (int iter = 0; iter < 100000; ++iter) {
    Eigen::VectorXd next = shifted * v;
    next /= next.sum();
    double change = (next - v).lpNorm<Eigen::Infinity>();
    v = next;
    if (change < 1e-15) break;
  }
  double value = (m * v).sum() / v.sum();
  return {value, v};
}

Vector require_dimension_vector(const Matrix& lambda, const std::optional<Vector>& m_a) {
  for (std::size_t i = 0; i < lambda.rows(); ++i)
    for (std::size_t j = 0; j < lambda.cols(); ++j) {
      const Scalar& x = lambda(i, j);
      if (!x.is_exact() || boost::multiprecision::denominator(x.rational()) != 1) {
        throw Error(ErrorCode::kInvalidArgument, "multiplicity matrix must have integer entries",
                    {{"entry", {i, j}}, {"value", x.str()}});
      }
    }
  Vector m = m_a.value_or(Vector(lambda.rows(), Scalar(1)));
  if (m.size() != lambda.rows()) {
    throw Error(ErrorCode::kShapeMismatch, "dimension vector length must equal the row count of Lambda",
                {{"m0", m.size()}, {"rows", lambda.rows()}});
  }
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i].sign() <= 0) throw Error(ErrorCode::kInvalidArgument, "dimension vector must be positive", {{"index", i}});
  return m;
}

}  // namespace

TraceMatrices trace_matrices(const InclusionData& inclusion, const PartialMatrix& delta) {
  validate_distortion(inclusion, delta);
  const std::size_t a = inclusion.a();
  const std::size_t b = inclusion.b();
  TraceMatrices out{Matrix(a, b), Matrix(b, a)};
  for (const Edge& e : inclusion.support().edges()) {
    const Scalar& d = delta.value(e.i, e.j);
    const Scalar& jones = inclusion.jones()(e.i, e.j);
    out.t(e.i, e.j) = jones / d;
    out.t_tilde(e.j, e.i) = d * jones;
  }
  return out;
}

TracePair markov_trace(const InclusionData& inclusion, const PartialMatrix& delta, const Tolerance& tol) {
  TraceMatrices tm = trace_matrices(inclusion, delta);
  for (std::size_t j = 0; j < inclusion.b(); ++j) {
    Scalar column = sum(tm.t.col(j));
    if (!tol.close(column, Scalar(1), static_cast<double>(inclusion.a()))) {
      throw Error(ErrorCode::kColumnNormalizationViolation, "trace matrix column does not sum to one",
                  {{"column", j}, {"sum", column.str()}});
    }
  }
  auto [value, tr_b] = dominant_eigenpair(tm.t_tilde.to_eigen() * tm.t.to_eigen());
  Eigen::VectorXd tr_a = tm.t.to_eigen() * tr_b;
  return TracePair{from_eigen(tr_a), from_eigen(tr_b), Scalar(value)};
}

FiniteDimMarkov finite_dim_markov(const Matrix& lambda, const std::optional<Vector>& m_a) {
  Vector m = require_dimension_vector(lambda, m_a);
  InclusionData inclusion = validate_inclusion(lambda);
  PerronData perron = perron_data(inclusion);
  FiniteDimMarkov out;
  out.m_a = m;
  out.m_b = left_multiply(m, lambda);
  out.lambda_a = scaled(perron.alpha, Scalar(1.0) / dot(m, perron.alpha));
  out.lambda_b = scaled(perron.beta, Scalar(1.0) / dot(out.m_b, perron.beta));
  out.d_squared = perron.d * perron.d;
  return out;
}

TracePair finite_dim_trace_pair(const FiniteDimMarkov& markov) {
  TracePair out;
  for (std::size_t i = 0; i < markov.m_a.size(); ++i) out.tr_a.push_back(markov.m_a[i] * markov.lambda_a[i]);
  for (std::size_t j = 0; j < markov.m_b.size(); ++j) out.tr_b.push_back(markov.m_b[j] * markov.lambda_b[j]);
  out.d_squared = markov.d_squared;
  return out;
}

Matrix finite_dim_trace_matrix(const Matrix& lambda, const std::optional<Vector>& m_a) {
  Vector m = require_dimension_vector(lambda, m_a);
  Vector m_b = left_multiply(m, lambda);
  Matrix t(lambda.rows(), lambda.cols());
  for (std::size_t i = 0; i < lambda.rows(); ++i)
    for (std::size_t j = 0; j < lambda.cols(); ++j) t(i, j) = lambda(i, j) * m[i] / m_b[j];
  return t;
}

Matrix finite_dim_distortion(const Matrix& lambda, const std::optional<Vector>& m_a) {
  validate_inclusion(lambda);
  Matrix t = finite_dim_trace_matrix(lambda, m_a);
  PartialMatrix delta(lambda.rows(), lambda.cols());
  for (std::size_t i = 0; i < lambda.rows(); ++i)
    for (std::size_t j = 0; j < lambda.cols(); ++j)
      if (!lambda(i, j).is_zero()) delta.set(i, j, lambda(i, j) / t(i, j));
  return extend_to_complete(delta);
}

ExpectationCoefficients expectation_coefficients(const InclusionData& inclusion, const PartialMatrix& delta,
                                                 const TracePair& traces, const PerronData& perron) {
  validate_distortion(inclusion, delta);
  ExpectationCoefficients out{PartialMatrix(inclusion.a(), inclusion.b()), PartialMatrix(inclusion.a(), inclusion.b())};
  for (const Edge& e : inclusion.support().edges()) {
    out.lambda_markov.set(e.i, e.j, (inclusion.jones()(e.i, e.j) / delta.value(e.i, e.j)) *
                                        (traces.tr_b[e.j] / traces.tr_a[e.i]));
    out.lambda_minimal.set(e.i, e.j, inclusion.dims()(e.i, e.j) * perron.beta[e.j] / (perron.d * perron.alpha[e.i]));
  }
  return out;
}

ExtremalInclusionReport check_extremal_inclusion(const InclusionData& inclusion, const PartialMatrix& delta,
                                                 const TracePair& traces, const PerronData& perron,
                                                 const Tolerance& tol) {
  ExtremalInclusionReport report;
  const bool dims_equal = close(inclusion.dims(), inclusion.jones(), tol);
  ExpectationCoefficients coeffs = expectation_coefficients(inclusion, delta, traces, perron);
  bool markov_is_minimal = true;
  bool delta_from_traces = true;
  for (const Edge& e : inclusion.support().edges()) {
    if (!tol.close(coeffs.lambda_markov.value(e.i, e.j), coeffs.lambda_minimal.value(e.i, e.j), 100.0))
      markov_is_minimal = false;
    Scalar predicted = perron.d * (traces.tr_b[e.j] / perron.beta[e.j]) * (perron.alpha[e.i] / traces.tr_a[e.i]);
    if (!tol.close(delta.value(e.i, e.j), predicted, 100.0)) delta_from_traces = false;
  }
  report.e1 = dims_equal && markov_is_minimal;
  report.e2 = dims_equal && delta_from_traces;
  report.e3 = check_extremality(inclusion, delta, tol).extremal;
  return report;
}

Matrix distortion_from_trace(const Vector& tr_a, const InclusionData& inclusion, const PerronData& perron) {
  if (tr_a.size() != inclusion.a()) {
    throw Error(ErrorCode::kShapeMismatch, "trace vector length must equal the number of A-summands",
                {{"trace_A", tr_a.size()}, {"a", inclusion.a()}});
  }
  Vector weights(inclusion.a());
  for (std::size_t h = 0; h < inclusion.a(); ++h) weights[h] = tr_a[h] / perron.alpha[h];
  Vector column_weights = left_multiply(weights, inclusion.dims());
  Matrix delta(inclusion.a(), inclusion.b());
  for (std::size_t i = 0; i < inclusion.a(); ++i)
    for (std::size_t j = 0; j < inclusion.b(); ++j) delta(i, j) = column_weights[j] / weights[i];
  return delta;
}

bool check_super_extremal_findim(const Vector& m0, const Matrix& lambda, const Tolerance& tol) {
  Vector mu = require_dimension_vector(lambda, m0);
  Vector nu = left_multiply(mu, lambda);
  Vector lhs = left_multiply(nu, lambda.transpose());
  Vector rhs = scaled(mu, dot(nu, nu) / dot(mu, mu));
  return close(lhs, rhs, tol);
}

BasicConstructionTrace basic_construction_trace(const TracePair& traces, const InclusionData& inclusion,
                                                const PartialMatrix& delta) {
  validate_distortion(inclusion, delta);
  const std::size_t a = inclusion.a();
  Vector row_sums(a, Scalar(0));
  for (const Edge& e : inclusion.support().edges())
    row_sums[e.i] += delta.value(e.i, e.j) * inclusion.jones()(e.i, e.j);
  BasicConstructionTrace out{Vector(a), Matrix(inclusion.b(), a)};
  for (std::size_t i = 0; i < a; ++i) out.trace[i] = traces.tr_a[i] * row_sums[i] / traces.d_squared;
  for (const Edge& e : inclusion.support().edges())
    out.matrix(e.j, e.i) = delta.value(e.i, e.j) * inclusion.jones()(e.i, e.j) / row_sums[e.i];
  return out;
}

}  // namespace mfd
