#include "mfd/tower.hpp"

#include "mfd/distortion.hpp"
#include "mfd/error.hpp"
#include "mfd/linalg.hpp"

#include <cmath>

namespace mfd {

namespace {

// Comparisons of derived float quantities allow a little more rounding than
// a single operation.
constexpr double kDerivedSlack = 100.0;

bool all_close(const Vector& x, const Vector& y, const Tolerance& tol) {
  if (x.size() != y.size()) return false;
  for (std::size_t k = 0; k < x.size(); ++k)
    if (!tol.close(x[k], y[k], kDerivedSlack)) return false;
  return true;
}

PartialMatrix on_support(const PartialMatrix& delta, const Matrix& pattern) {
  PartialMatrix out(pattern.rows(), pattern.cols());
  for (std::size_t i = 0; i < pattern.rows(); ++i)
    for (std::size_t j = 0; j < pattern.cols(); ++j)
      if (!pattern(i, j).is_zero()) out.set(i, j, delta.value(i, j));
  return out;
}

Matrix odd_level(const Matrix& even, const InclusionData& inclusion, const Tolerance& tol) {
  PartialMatrix measured = on_support(PartialMatrix(even), inclusion.jones());
  return extend_to_complete(basic_construction_distortion(measured, inclusion.jones()), tol);
}

nlohmann::json to_strings(const Vector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const Scalar& x : v) out.push_back(x.str());
  return out;
}

}  // namespace

bool HomogeneityReport::all() const {
  return h2_row_sums && h3_fixed_point && h4_standard && h5_scalar_jones_trace && h6_trace_preserved &&
         h7_super_extremal;
}

bool HomogeneityReport::none() const {
  return !h2_row_sums && !h3_fixed_point && !h4_standard && !h5_scalar_jones_trace && !h6_trace_preserved &&
         !h7_super_extremal;
}

const char* to_string(FeasibilityStatus status) {
  switch (status) {
    case FeasibilityStatus::kFeasible:
      return "Feasible";
    case FeasibilityStatus::kMarkovTunnelOnly:
      return "MarkovTunnelOnly";
    case FeasibilityStatus::kInfeasible:
      return "Infeasible";
  }
  return "Unknown";
}

PartialMatrix basic_construction_distortion(const PartialMatrix& delta, const Matrix& jones) {
  if (delta.rows() != jones.rows() || delta.cols() != jones.cols()) {
    throw Error(ErrorCode::kShapeMismatch, "distortion and Jones matrix shapes differ");
  }
  const std::size_t a = jones.rows();
  const std::size_t b = jones.cols();
  PartialMatrix out(b, a);
  for (std::size_t i = 0; i < a; ++i) {
    Scalar row_sum(0);
    for (std::size_t k = 0; k < b; ++k)
      if (!jones(i, k).is_zero()) row_sum += delta.value(i, k) * jones(i, k);
    for (std::size_t j = 0; j < b; ++j)
      if (!jones(i, j).is_zero()) out.set(j, i, row_sum / delta.value(i, j));
  }
  return out;
}

Matrix phi_step(const Matrix& delta, const InclusionData& inclusion, const Tolerance& tol) {
  if (delta.rows() != inclusion.a() || delta.cols() != inclusion.b()) {
    throw Error(ErrorCode::kShapeMismatch, "distortion shape does not match D");
  }
  Factorization f = factorize(PartialMatrix(delta), BipartiteGraph::complete(inclusion.a(), inclusion.b()), tol);
  Vector left = left_multiply(f.xi, inclusion.dims().transpose());  // ξDᵀ, length a
  Vector right = left_multiply(left, inclusion.dims());             // ξDᵀD, length b
  Matrix out(inclusion.a(), inclusion.b());
  for (std::size_t i = 0; i < inclusion.a(); ++i)
    for (std::size_t j = 0; j < inclusion.b(); ++j) out(i, j) = right[j] / left[i];
  return out;
}

double relative_residual(const Matrix& delta, const Matrix& sigma) {
  double worst = 0.0;
  for (std::size_t i = 0; i < delta.rows(); ++i)
    for (std::size_t j = 0; j < delta.cols(); ++j) {
      double s = sigma(i, j).to_double();
      worst = std::max(worst, std::abs(delta(i, j).to_double() - s) / std::max(1.0, std::abs(s)));
    }
  return worst;
}

TowerTrace iterate_to_fixed_point(const Matrix& delta0, const InclusionData& inclusion,
                                  const FixedPointOptions& options, const Tolerance& tol) {
  const Matrix sigma = standard_distortion(perron_data(inclusion));
  TowerTrace trace;
  Matrix current = delta0;
  trace.levels.push_back({0, current, Parity::kEven});
  for (;;) {
    trace.residual = relative_residual(current, sigma);
    if (trace.residual < options.tol) {
      trace.converged = true;
      return trace;
    }
    if (trace.iterations >= options.max_iter) {
      throw Error(ErrorCode::kNonConvergence, "distortion iteration did not reach the fixed point",
                  {{"max_iter", options.max_iter}, {"residual", trace.residual}});
    }
    if (options.record_odd_levels)
      trace.levels.push_back({2 * trace.iterations + 1, odd_level(current, inclusion, tol), Parity::kOdd});
    current = phi_step(current, inclusion, tol);
    ++trace.iterations;
    trace.levels.push_back({2 * trace.iterations, current, Parity::kEven});
  }
}

TowerTrace jones_tower(const Matrix& delta0, const InclusionData& inclusion, std::size_t steps, const Tolerance& tol) {
  const Matrix sigma = standard_distortion(perron_data(inclusion));
  TowerTrace trace;
  Matrix current = delta0;
  trace.levels.push_back({0, current, Parity::kEven});
  for (std::size_t n = 0; n < steps; ++n) {
    trace.levels.push_back({2 * n + 1, odd_level(current, inclusion, tol), Parity::kOdd});
    current = phi_step(current, inclusion, tol);
    trace.levels.push_back({2 * n + 2, current, Parity::kEven});
  }
  trace.iterations = steps;
  trace.residual = relative_residual(current, sigma);
  trace.converged = false;
  return trace;
}

HomogeneityReport homogeneity_report(const InclusionData& inclusion, const PartialMatrix& delta,
                                     const std::optional<TracePair>& traces, const PerronData& perron,
                                     const Tolerance& tol) {
  validate_distortion(inclusion, delta);
  const PartialMatrix measured = on_support(delta, inclusion.dims());
  const Scalar d_squared = perron.d * perron.d;
  HomogeneityReport report;

  report.row_sums.assign(inclusion.a(), Scalar(0));
  Vector jones_sums(inclusion.a(), Scalar(0));
  for (const Edge& e : inclusion.support().edges()) {
    report.row_sums[e.i] += measured.value(e.i, e.j) * inclusion.dims()(e.i, e.j);
    jones_sums[e.i] += measured.value(e.i, e.j) * inclusion.jones()(e.i, e.j);
  }
  report.h2_row_sums = all_close(report.row_sums, Vector(inclusion.a(), d_squared), tol);

  const Matrix total = extend_to_complete(measured, inclusion.support(), tol);
  const Matrix next = phi_step(total, inclusion, tol);
  report.h3_fixed_point = true;
  for (std::size_t i = 0; i < total.rows(); ++i)
    for (std::size_t j = 0; j < total.cols(); ++j)
      if (!tol.close(next(i, j), total(i, j), kDerivedSlack)) report.h3_fixed_point = false;

  const Matrix sigma = standard_distortion(perron);
  report.h4_standard = true;
  for (const Edge& e : inclusion.support().edges())
    if (!tol.close(measured.value(e.i, e.j), sigma(e.i, e.j), kDerivedSlack)) report.h4_standard = false;

  report.h5_scalar_jones_trace = all_close(jones_sums, Vector(inclusion.a(), jones_sums.front()), tol);

  const TracePair pair = traces ? *traces : markov_trace(inclusion, measured, tol);
  report.h6_trace_preserved = all_close(basic_construction_trace(pair, inclusion, measured).trace, pair.tr_a, tol);

  Vector alpha_sq;
  Vector beta_sq;
  for (const Scalar& x : perron.alpha) alpha_sq.push_back(x * x);
  for (const Scalar& x : perron.beta) beta_sq.push_back(x * x);
  report.h7_super_extremal = all_close(pair.tr_a, alpha_sq, tol) && all_close(pair.tr_b, beta_sq, tol);
  return report;
}

FeasibilityResult downward_feasibility(const InclusionData& inclusion, const PartialMatrix& delta,
                                       FeasibilityMode mode, const Tolerance& tol) {
  validate_distortion(inclusion, delta);
  const std::size_t a = inclusion.a();
  const std::size_t b = inclusion.b();
  Matrix m(a, b);
  for (const Edge& e : inclusion.support().edges()) m(e.i, e.j) = delta.value(e.i, e.j) * inclusion.jones()(e.i, e.j);
  const Vector ones(a, Scalar(1));

  FeasibilityResult out;
  LinearSolution direct = solve_linear(m, ones, tol);
  if (direct.kind == LinearSolution::Kind::kInconsistent) {
    out.status = FeasibilityStatus::kInfeasible;
    out.certificate = {{"reason", "inconsistent_system"}, {"row", *direct.inconsistent_row}};
    return out;
  }

  Vector pi;
  bool has_zero = false;
  if (direct.kind == LinearSolution::Kind::kUnique) {
    pi = direct.x;
    out.pi = pi;
    for (std::size_t j = 0; j < b; ++j) {
      if (tol.is_zero(pi[j])) {
        has_zero = true;
        continue;
      }
      if (pi[j].sign() < 0) {
        out.status = FeasibilityStatus::kInfeasible;
        out.certificate = {{"reason", "negative_component"}, {"index", j}, {"value", pi[j].str()}};
        out.certificate["candidate_pi"] = to_strings(pi);
        return out;
      }
      if (pi[j] > Scalar(1) && !tol.close(pi[j], Scalar(1))) {
        out.status = FeasibilityStatus::kInfeasible;
        out.certificate = {{"reason", "component_exceeds_one"}, {"index", j}, {"value", pi[j].str()}};
        out.certificate["candidate_pi"] = to_strings(pi);
        return out;
      }
    }
    if (has_zero) {
      std::size_t zero_index = 0;
      while (!tol.is_zero(pi[zero_index])) ++zero_index;
      if (mode == FeasibilityMode::kStrict) {
        out.status = FeasibilityStatus::kInfeasible;
        out.certificate = {{"reason", "zero_component"}, {"index", zero_index}, {"candidate_pi", to_strings(pi)}};
      } else {
        out.status = FeasibilityStatus::kMarkovTunnelOnly;
      }
      return out;
    }
    out.status = FeasibilityStatus::kFeasible;
    return out;
  }

  // Underdetermined: maximize t subject to π_j ≥ t, π_j ≤ 1, Mπ = 1.
  // Variables: π (b), t, slack s (b), slack u (b).
  const std::size_t n = 3 * b + 1;
  const std::size_t t_col = b;
  Matrix lp(2 * b + a, n);
  Vector rhs(2 * b + a, Scalar(0));
  for (std::size_t j = 0; j < b; ++j) {
    lp(j, j) = Scalar(1);
    lp(j, t_col) = Scalar(-1);
    lp(j, b + 1 + j) = Scalar(-1);
    lp(b + j, j) = Scalar(1);
    lp(b + j, 2 * b + 1 + j) = Scalar(1);
    rhs[b + j] = Scalar(1);
  }
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < b; ++j) lp(2 * b + i, j) = m(i, j);
    rhs[2 * b + i] = Scalar(1);
  }
  Vector objective(n, Scalar(0));
  objective[t_col] = Scalar(1);
  LpResult lp_result = simplex_maximize(lp, rhs, objective, tol);
  if (lp_result.status != LpResult::Status::kOptimal) {
    out.status = FeasibilityStatus::kInfeasible;
    out.certificate = {{"reason", "no_solution_in_unit_box"}, {"phase_one_residual", lp_result.infeasibility.str()}};
    return out;
  }
  pi.assign(lp_result.x.begin(), lp_result.x.begin() + static_cast<std::ptrdiff_t>(b));
  out.pi = pi;
  if (tol.is_positive(lp_result.objective)) {
    out.status = FeasibilityStatus::kFeasible;
  } else if (mode == FeasibilityMode::kStrict) {
    out.status = FeasibilityStatus::kInfeasible;
    out.certificate = {{"reason", "no_strictly_positive_solution"}, {"max_min_component", lp_result.objective.str()}};
  } else {
    out.status = FeasibilityStatus::kMarkovTunnelOnly;
  }
  return out;
}

PartialMatrix downward_distortion(const PartialMatrix& delta, const Vector& pi) {
  if (pi.size() != delta.cols()) throw Error(ErrorCode::kShapeMismatch, "pi length must equal the column count");
  PartialMatrix gamma(delta.cols(), delta.rows());
  for (std::size_t i = 0; i < delta.rows(); ++i)
    for (std::size_t j = 0; j < delta.cols(); ++j) {
      if (!delta.has(i, j)) continue;
      if (pi[j].sign() <= 0) throw Error(ErrorCode::kZeroPi, "pi must be positive on every used column", {{"index", j}});
      gamma.set(j, i, Scalar(1) / (pi[j] * delta.value(i, j)));
    }
  return gamma;
}

}  // namespace mfd
