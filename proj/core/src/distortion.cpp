#include "mfd/distortion.hpp"

#include "mfd/error.hpp"

namespace mfd {

namespace {

nlohmann::json cycle_json(const BipartiteCycle& c) { return {{"evens", c.evens}, {"odds", c.odds}}; }

BipartiteGraph support_of(const PartialMatrix& delta) {
  BipartiteGraph g = BipartiteGraph::from_support(delta);
  if (!g.connected()) throw Error(ErrorCode::kDisconnectedSupport, "distortion support is disconnected");
  return g;
}

Scalar one_like(const Scalar& x) { return x.is_exact() ? Scalar(1) : Scalar(1.0); }

}  // namespace

void validate_distortion(const InclusionData& inclusion, const PartialMatrix& delta) {
  if (delta.rows() != inclusion.a() || delta.cols() != inclusion.b()) {
    throw Error(ErrorCode::kShapeMismatch, "distortion shape does not match D",
                {{"delta", {delta.rows(), delta.cols()}}, {"D", {inclusion.a(), inclusion.b()}}});
  }
  for (const Edge& e : inclusion.support().edges()) {
    const Scalar& v = delta.value(e.i, e.j);
    if (v.sign() <= 0) {
      throw Error(ErrorCode::kNegativeEntry, "distortion entries must be strictly positive",
                  {{"matrix", "delta"}, {"entry", {e.i, e.j}}, {"value", v.str()}});
    }
  }
}

CycleCheck check_cycle_condition(const PartialMatrix& delta, const BipartiteGraph& graph, const Tolerance& tol) {
  for (const Edge& e : graph.edges()) (void)delta.value(e.i, e.j);
  CycleCheck out;
  for (const BipartiteCycle& cycle : graph.fundamental_cycles()) {
    Scalar forward(1);
    Scalar backward(1);
    for (const Edge& e : cycle.forward_edges()) forward *= delta.value(e.i, e.j);
    for (const Edge& e : cycle.backward_edges()) backward *= delta.value(e.i, e.j);
    if (!tol.close(forward, backward, static_cast<double>(cycle.length()))) {
      out.holds = false;
      out.witness = cycle;
      return out;
    }
  }
  return out;
}

CycleCheck check_cycle_condition(const PartialMatrix& delta, const Tolerance& tol) {
  return check_cycle_condition(delta, BipartiteGraph::from_support(delta), tol);
}

Factorization factorize(const PartialMatrix& delta, const BipartiteGraph& graph, const Tolerance& tol) {
  if (!graph.connected()) throw Error(ErrorCode::kDisconnectedSupport, "distortion support is disconnected");
  CycleCheck check = check_cycle_condition(delta, graph, tol);
  if (!check.holds) {
    throw Error(ErrorCode::kCycleViolation, "distortion violates the cycle condition",
                {{"cycle", cycle_json(*check.witness)}});
  }
  Factorization f;
  f.eta.assign(graph.a(), Scalar(0));
  f.xi.assign(graph.b(), Scalar(0));
  f.eta[0] = graph.edges().empty() ? Scalar(1) : one_like(delta.value(graph.edges().front().i, graph.edges().front().j));
  for (const auto& step : graph.tree_walk()) {
    const Scalar& v = delta.value(step.edge.i, step.edge.j);
    if (step.discovers_odd) {
      f.xi[step.edge.j] = v * f.eta[step.edge.i];
    } else {
      f.eta[step.edge.i] = f.xi[step.edge.j] / v;
    }
  }
  return f;
}

Factorization factorize(const PartialMatrix& delta, const Tolerance& tol) {
  return factorize(delta, support_of(delta), tol);
}

Matrix extend_to_complete(const PartialMatrix& delta, const BipartiteGraph& graph, const Tolerance& tol) {
  Factorization f = factorize(delta, graph, tol);
  Matrix out(graph.a(), graph.b());
  for (std::size_t i = 0; i < graph.a(); ++i)
    for (std::size_t j = 0; j < graph.b(); ++j)
      out(i, j) = graph.has_edge(i, j) ? delta.value(i, j) : f.xi[j] / f.eta[i];
  return out;
}

Matrix extend_to_complete(const PartialMatrix& delta, const Tolerance& tol) {
  return extend_to_complete(delta, support_of(delta), tol);
}

DistortionMatrix complete_distortion(const PartialMatrix& delta, const Tolerance& tol) {
  BipartiteGraph graph = support_of(delta);
  DistortionMatrix out;
  out.entries = delta;
  out.factorization = factorize(delta, graph, tol);
  out.extension = extend_to_complete(delta, graph, tol);
  return out;
}

GroupoidHom extend_to_groupoid(const Matrix& total, const Tolerance& tol) {
  const std::size_t a = total.rows();
  const std::size_t b = total.cols();
  if (total.empty()) throw Error(ErrorCode::kEmptyMatrix, "distortion is empty");
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t i2 = i + 1; i2 < a; ++i2)
      for (std::size_t j = 0; j < b; ++j)
        for (std::size_t j2 = j + 1; j2 < b; ++j2)
          if (!tol.close(total(i, j) * total(i2, j2), total(i, j2) * total(i2, j), 2.0)) {
            throw Error(ErrorCode::kExtensionConditionViolation, "total distortion is not a rank-one ratio",
                        {{"i", i}, {"i_prime", i2}, {"j", j}, {"j_prime", j2}});
          }

  const Scalar root = total(0, 0);
  Vector potential(a + b);
  for (std::size_t i = 0; i < a; ++i) potential[i] = root / total(i, 0);  // η_i / η_0
  for (std::size_t j = 0; j < b; ++j) potential[a + j] = total(0, j);      // ξ_j / η_0

  GroupoidHom hom;
  hom.n = a + b;
  hom.values = Matrix(a + b, a + b);
  for (std::size_t x = 0; x < a + b; ++x)
    for (std::size_t y = 0; y < a + b; ++y) {
      if (x == y) {
        hom.values(x, y) = one_like(root);
      } else if (x < a && y >= a) {
        hom.values(x, y) = total(x, y - a);
      } else if (x >= a && y < a) {
        hom.values(x, y) = one_like(root) / total(y, x - a);
      } else if (x < a) {
        hom.values(x, y) = total(x, 0) / total(y, 0);
      } else {
        hom.values(x, y) = total(0, y - a) / total(0, x - a);
      }
    }
  hom.potential = std::move(potential);
  return hom;
}

Vector square_groupoid_potential(const Matrix& values, const Tolerance& tol) {
  const std::size_t n = values.rows();
  if (values.empty()) throw Error(ErrorCode::kEmptyMatrix, "groupoid matrix is empty");
  if (values.cols() != n) throw Error(ErrorCode::kShapeMismatch, "groupoid matrix must be square");
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (values(x, y).sign() <= 0) {
        throw Error(ErrorCode::kNotGroupoidHom, "groupoid values must be positive", {{"entry", {x, y}}});
      }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (!tol.close(values(x, y) * values(y, z), values(x, z), 2.0)) {
          throw Error(ErrorCode::kNotGroupoidHom, "values violate the composition law", {{"triple", {x, y, z}}});
        }
  return values.row(0);
}

ExtremalityReport check_extremality(const InclusionData& inclusion, const PartialMatrix& delta, const Tolerance& tol) {
  ExtremalityReport report;
  report.jones_equals_statistical = close(inclusion.dims(), inclusion.jones(), tol);
  CycleCheck check = check_cycle_condition(delta, inclusion.support(), tol);
  report.cycle_condition_holds = check.holds;
  report.witness = check.witness;
  report.extremal = report.jones_equals_statistical && report.cycle_condition_holds;
  return report;
}

}  // namespace mfd
