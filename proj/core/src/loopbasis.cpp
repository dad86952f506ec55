#include "mfd/loopbasis.hpp"

#include "mfd/error.hpp"
#include "mfd/inclusion.hpp"
#include "mfd/markov.hpp"
#include "mfd/perron.hpp"

#include <algorithm>
#include <cmath>

namespace mfd {

namespace {

const char* tag_name(AlgebraTag tag) { return tag == AlgebraTag::kN0 ? "N0" : "N1"; }

void require_tag(const LoopElement& x, AlgebraTag tag) {
  if (x.tag() != tag) {
    throw Error(ErrorCode::kWrongAlgebraTag, "element lives in the wrong algebra",
                {{"expected", tag_name(tag)}, {"actual", tag_name(x.tag())}});
  }
}

std::size_t to_count(const Scalar& x, const char* what) {
  if (!x.is_exact() || boost::multiprecision::denominator(x.rational()) != 1 || x.sign() < 0) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must be a nonnegative integer",
                {{"value", x.str()}});
  }
  return static_cast<std::size_t>(boost::multiprecision::numerator(x.rational()));
}

}  // namespace

LoopElement::LoopElement(AlgebraTag tag, LoopKey loop, Complex coefficient) : tag_(tag) {
  add(loop, coefficient);
}

Complex LoopElement::coefficient(const LoopKey& loop) const {
  auto it = terms_.find(loop);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

void LoopElement::add(const LoopKey& loop, Complex coefficient) {
  if (coefficient == Complex(0.0)) return;
  auto [it, inserted] = terms_.emplace(loop, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == Complex(0.0)) terms_.erase(it);
  }
}

LoopElement& LoopElement::operator+=(const LoopElement& rhs) {
  require_tag(rhs, tag_);
  for (const auto& [loop, c] : rhs.terms_) add(loop, c);
  return *this;
}

LoopElement& LoopElement::operator-=(const LoopElement& rhs) {
  require_tag(rhs, tag_);
  for (const auto& [loop, c] : rhs.terms_) add(loop, -c);
  return *this;
}

LoopElement& LoopElement::operator*=(Complex factor) {
  if (factor == Complex(0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& term : terms_) term.second *= factor;
  return *this;
}

LoopElement operator*(const LoopElement& lhs, const LoopElement& rhs) {
  require_tag(rhs, lhs.tag());
  // A loop is a path followed by a reversed path; concatenation matches the
  // reversed half of the left factor with the forward half of the right one.
  LoopElement out(lhs.tag());
  for (const auto& [left, c1] : lhs.terms()) {
    const std::size_t half = left.size() / 2;
    for (const auto& [right, c2] : rhs.terms()) {
      if (!std::equal(left.rbegin(), left.rbegin() + static_cast<std::ptrdiff_t>(half), right.begin())) continue;
      LoopKey joined(left.begin(), left.begin() + static_cast<std::ptrdiff_t>(half));
      joined.insert(joined.end(), right.begin() + static_cast<std::ptrdiff_t>(half), right.end());
      out.add(joined, c1 * c2);
    }
  }
  return out;
}

LoopElement LoopElement::adjoint() const {
  LoopElement out(tag_);
  for (const auto& [loop, c] : terms_) out.add(LoopKey(loop.rbegin(), loop.rend()), std::conj(c));
  return out;
}

double LoopElement::max_abs() const {
  double worst = 0.0;
  for (const auto& term : terms_) worst = std::max(worst, std::abs(term.second));
  return worst;
}

LoopAlgebraPair build_loop_algebra(const Vector& m0, const Matrix& lambda) {
  FiniteDimMarkov markov = finite_dim_markov(lambda, m0);
  LoopAlgebraPair pair;
  pair.k = lambda.rows();
  pair.l = lambda.cols();
  for (const Scalar& x : m0) pair.m0.push_back(to_count(x, "m0 entry"));
  pair.lambda.assign(pair.k, std::vector<std::size_t>(pair.l, 0));
  for (std::size_t i = 0; i < pair.k; ++i)
    for (std::size_t j = 0; j < pair.l; ++j) pair.lambda[i][j] = to_count(lambda(i, j), "Lambda entry");

  for (std::size_t i = 0; i < pair.k; ++i)
    for (std::size_t c = 0; c < pair.m0[i]; ++c) pair.eta_target.push_back(i);
  for (std::size_t i = 0; i < pair.k; ++i)
    for (std::size_t j = 0; j < pair.l; ++j)
      for (std::size_t c = 0; c < pair.lambda[i][j]; ++c) pair.eps_edge.emplace_back(i, j);

  const auto n_eta = static_cast<std::uint32_t>(pair.eta_target.size());
  const auto n_eps = static_cast<std::uint32_t>(pair.eps_edge.size());
  for (std::uint32_t a = 0; a < n_eta; ++a)
    for (std::uint32_t b = 0; b < n_eta; ++b)
      if (pair.eta_target[a] == pair.eta_target[b]) pair.n0_loops.push_back({a, b});

  // Length-two paths ⋆ → i → j grouped by their end j.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> paths(pair.l);
  for (std::uint32_t a = 0; a < n_eta; ++a)
    for (std::uint32_t e = 0; e < n_eps; ++e)
      if (pair.eps_edge[e].first == pair.eta_target[a]) paths[pair.eps_edge[e].second].emplace_back(a, e);
  for (std::size_t j = 0; j < pair.l; ++j)
    for (const auto& [a, e1] : paths[j])
      for (const auto& [b, e2] : paths[j]) pair.n1_loops.push_back({a, e1, e2, b});
  std::sort(pair.n1_loops.begin(), pair.n1_loops.end());

  for (const Scalar& x : markov.lambda_a) pair.lambda0.push_back(x.to_double());
  for (const Scalar& x : markov.lambda_b) pair.lambda1.push_back(x.to_double());
  pair.d = std::sqrt(markov.d_squared.to_double());
  return pair;
}

LoopElement unit(const LoopAlgebraPair& pair, AlgebraTag tag) {
  LoopElement out(tag);
  for (const LoopKey& loop : tag == AlgebraTag::kN0 ? pair.n0_loops : pair.n1_loops)
    if (std::equal(loop.begin(), loop.end(), loop.rbegin())) out.add(loop, 1.0);
  return out;
}

LoopElement central_projection(const LoopAlgebraPair& pair, std::size_t i) {
  LoopElement out(AlgebraTag::kN0);
  for (std::uint32_t a = 0; a < pair.eta_target.size(); ++a)
    if (pair.eta_target[a] == i) out.add({a, a}, 1.0);
  return out;
}

LoopElement central_element(const LoopAlgebraPair& pair, const std::vector<double>& x) {
  if (x.size() != pair.k) throw Error(ErrorCode::kShapeMismatch, "central vector length must equal the N0 summand count");
  LoopElement out(AlgebraTag::kN0);
  for (std::size_t i = 0; i < pair.k; ++i) out += central_projection(pair, i) * Complex(x[i]);
  return out;
}

double trace(const LoopAlgebraPair& pair, const LoopElement& x) {
  Complex total = 0.0;
  for (const auto& [loop, c] : x.terms()) {
    if (x.tag() == AlgebraTag::kN0) {
      if (loop[0] == loop[1]) total += c * pair.lambda0[pair.eta_target[loop[0]]];
    } else if (loop[0] == loop[3] && loop[1] == loop[2]) {
      total += c * pair.lambda1[pair.eps_edge[loop[1]].second];
    }
  }
  return total.real();
}

LoopElement include(const LoopAlgebraPair& pair, const LoopElement& x) {
  require_tag(x, AlgebraTag::kN0);
  LoopElement out(AlgebraTag::kN1);
  for (const auto& [loop, c] : x.terms()) {
    const std::size_t vertex = pair.eta_target[loop[0]];
    for (std::uint32_t e = 0; e < pair.eps_edge.size(); ++e)
      if (pair.eps_edge[e].first == vertex) out.add({loop[0], e, e, loop[1]}, c);
  }
  return out;
}

LoopElement cond_expectation_N0(const LoopElement& x, const LoopAlgebraPair& pair) {
  require_tag(x, AlgebraTag::kN1);
  LoopElement out(AlgebraTag::kN0);
  for (const auto& [loop, c] : x.terms()) {
    if (loop[1] != loop[2]) continue;
    const auto& [source, target] = pair.eps_edge[loop[1]];
    out.add({loop[0], loop[3]}, c * (pair.lambda1[target] / pair.lambda0[source]));
  }
  return out;
}

std::vector<LoopElement> PimsnerPopaBasis::all() const {
  std::vector<LoopElement> out = parallel;
  out.insert(out.end(), crossing.begin(), crossing.end());
  return out;
}

PimsnerPopaBasis pimsner_popa_basis(const LoopAlgebraPair& pair) {
  PimsnerPopaBasis basis;
  const auto n_eta = static_cast<std::uint32_t>(pair.eta_target.size());
  const auto n_eps = static_cast<std::uint32_t>(pair.eps_edge.size());
  for (std::uint32_t e1 = 0; e1 < n_eps; ++e1)
    for (std::uint32_t e2 = 0; e2 < n_eps; ++e2) {
      if (pair.eps_edge[e1] != pair.eps_edge[e2]) continue;
      const auto [i, j] = pair.eps_edge[e2];
      const double c = std::sqrt(pair.lambda0[i] / pair.lambda1[j]);
      LoopElement b(AlgebraTag::kN1);
      for (std::uint32_t a = 0; a < n_eta; ++a)
        if (pair.eta_target[a] == i) b.add({a, e1, e2, a}, c);
      basis.parallel.push_back(std::move(b));
    }
  for (std::uint32_t a = 0; a < n_eta; ++a)
    for (std::uint32_t e1 = 0; e1 < n_eps; ++e1) {
      if (pair.eps_edge[e1].first != pair.eta_target[a]) continue;
      for (std::uint32_t e2 = 0; e2 < n_eps; ++e2) {
        const auto [i2, j2] = pair.eps_edge[e2];
        if (j2 != pair.eps_edge[e1].second || i2 == pair.eps_edge[e1].first) continue;
        const double c = std::sqrt(pair.lambda0[i2] / (static_cast<double>(pair.m0[i2]) * pair.lambda1[j2]));
        for (std::uint32_t b = 0; b < n_eta; ++b)
          if (pair.eta_target[b] == i2) basis.crossing.emplace_back(AlgebraTag::kN1, LoopKey{a, e1, e2, b}, c);
      }
    }
  return basis;
}

PimsnerPopaReport verify_pp_identity(const LoopAlgebraPair& pair, const std::vector<LoopElement>& basis) {
  PimsnerPopaReport report;
  report.basis_size = basis.size();
  std::vector<LoopElement> adjoints;
  for (const LoopElement& b : basis) adjoints.push_back(b.adjoint());
  for (const LoopKey& loop : pair.n1_loops) {
    LoopElement x(AlgebraTag::kN1, loop);
    LoopElement rebuilt(AlgebraTag::kN1);
    for (std::size_t k = 0; k < basis.size(); ++k)
      rebuilt += basis[k] * include(pair, cond_expectation_N0(adjoints[k] * x, pair));
    report.reconstruction_error = std::max(report.reconstruction_error, (rebuilt - x).max_abs());
    ++report.loops_checked;
  }
  LoopElement index_sum(AlgebraTag::kN1);
  for (std::size_t k = 0; k < basis.size(); ++k) index_sum += basis[k] * adjoints[k];
  report.index_error = (index_sum - unit(pair, AlgebraTag::kN1) * Complex(pair.d_squared())).max_abs();
  return report;
}

std::vector<double> central_coefficients(const LoopAlgebraPair& pair, const LoopElement& x, double tol) {
  require_tag(x, AlgebraTag::kN0);
  std::vector<double> out(pair.k, 0.0);
  std::vector<bool> seen(pair.k, false);
  for (std::uint32_t a = 0; a < pair.eta_target.size(); ++a) {
    const std::size_t i = pair.eta_target[a];
    Complex c = x.coefficient({a, a});
    if (std::abs(c.imag()) > tol) throw Error(ErrorCode::kNotCentral, "central coefficient is not real", {{"loop", {a, a}}});
    if (seen[i] && std::abs(c.real() - out[i]) > tol * std::max(1.0, std::abs(out[i]))) {
      throw Error(ErrorCode::kNotCentral, "element is not constant on a summand", {{"summand", i}});
    }
    if (!seen[i]) out[i] = c.real();
    seen[i] = true;
  }
  for (const auto& [loop, c] : x.terms())
    if (loop[0] != loop[1] && std::abs(c) > tol) {
      throw Error(ErrorCode::kNotCentral, "element has off-diagonal loop terms", {{"loop", loop}});
    }
  return out;
}

Eigen::MatrixXd central_transfer_matrix(const LoopAlgebraPair& pair) {
  Eigen::MatrixXd lam(pair.k, pair.l);
  for (std::size_t i = 0; i < pair.k; ++i)
    for (std::size_t j = 0; j < pair.l; ++j) lam(i, j) = static_cast<double>(pair.lambda[i][j]);
  Eigen::VectorXd dims(pair.k);
  for (std::size_t i = 0; i < pair.k; ++i) dims(i) = static_cast<double>(pair.m0[i]);
  return dims.cwiseInverse().asDiagonal() * (lam * lam.transpose()) * dims.asDiagonal();
}

CentralTransfer central_transfer(const LoopAlgebraPair& pair, const std::vector<LoopElement>& basis,
                                 const std::vector<double>& x) {
  const LoopElement lifted = include(pair, central_element(pair, x));
  LoopElement image(AlgebraTag::kN0);
  for (const LoopElement& b : basis) image += cond_expectation_N0(b.adjoint() * lifted * b, pair);

  CentralTransfer out;
  out.via_loops = central_coefficients(pair, image);
  Eigen::VectorXd closed = central_transfer_matrix(pair) * Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
  out.closed_form.assign(closed.data(), closed.data() + closed.size());
  for (std::size_t i = 0; i < pair.k; ++i)
    out.max_deviation = std::max(out.max_deviation, std::abs(out.via_loops[i] - out.closed_form[i]));
  return out;
}

CentralTransfer central_transfer(const LoopAlgebraPair& pair, const std::vector<LoopElement>& basis,
                                 const LoopElement& x) {
  return central_transfer(pair, basis, central_coefficients(pair, x));
}

double density_trace(const LoopAlgebraPair& pair, const std::vector<double>& h) {
  double total = 0.0;
  for (std::size_t i = 0; i < pair.k; ++i) total += static_cast<double>(pair.m0[i]) * pair.lambda0[i] * h[i];
  return total;
}

DensitySequence density_sequence(const LoopAlgebraPair& pair, const std::vector<LoopElement>& basis, std::size_t n) {
  DensitySequence out;
  const Eigen::MatrixXd transfer = central_transfer_matrix(pair);
  const double d2 = pair.d_squared();
  Eigen::VectorXd closed = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(pair.k));
  std::vector<double> recursive(pair.k, 1.0);
  for (std::size_t m = 0; m <= n; ++m) {
    if (m > 0) {
      closed = transfer * closed / d2;
      std::vector<double> next = central_transfer(pair, basis, recursive).via_loops;
      for (double& v : next) v /= d2;
      recursive = std::move(next);
    }
    out.closed_form.emplace_back(closed.data(), closed.data() + closed.size());
    out.recursion.push_back(recursive);
    for (std::size_t i = 0; i < pair.k; ++i)
      out.max_deviation = std::max(out.max_deviation, std::abs(closed(static_cast<Eigen::Index>(i)) - recursive[i]));
  }
  out.limit.resize(pair.k);
  for (std::size_t i = 0; i < pair.k; ++i) out.limit[i] = pair.lambda0[i] / static_cast<double>(pair.m0[i]);
  const double norm = density_trace(pair, out.limit);
  for (double& v : out.limit) v /= norm;
  return out;
}

NondegeneracyReport nondegeneracy_check(const CommutingSquare& square, const Tolerance& tol) {
  const auto n0 = square.bottom.rows();
  const auto n1 = square.bottom.cols();
  const auto m0 = square.top.rows();
  const auto m1 = square.top.cols();
  if (square.left.rows() != n0 || square.left.cols() != m0 || square.right.rows() != n1 || square.right.cols() != m1) {
    throw Error(ErrorCode::kShapeMismatch, "commuting square matrices have incompatible shapes",
                {{"bottom", {n0, n1}},
                 {"top", {m0, m1}},
                 {"left", {square.left.rows(), square.left.cols()}},
                 {"right", {square.right.rows(), square.right.cols()}}});
  }
  const Eigen::MatrixXd bottom = square.bottom.to_eigen();
  const Eigen::MatrixXd top = square.top.to_eigen();
  const Eigen::MatrixXd left = square.left.to_eigen();
  const Eigen::MatrixXd right = square.right.to_eigen();

  const PerronData top_perron = perron_data(validate_inclusion(square.top));
  const double top_index = top_perron.d.to_double() * top_perron.d.to_double();
  Eigen::VectorXd t = square.trace_m1 ? to_eigen(*square.trace_m1) : to_eigen(top_perron.beta);
  if (t.size() != static_cast<Eigen::Index>(m1)) throw Error(ErrorCode::kShapeMismatch, "trace vector length must match M1");
  t /= t.sum();

  const double slack = 100.0;
  auto ratios_constant = [&](const Eigen::VectorXd& num, const Eigen::VectorXd& den, const char* which) {
    const double first = num(0) / den(0);
    for (Eigen::Index k = 1; k < num.size(); ++k)
      if (!tol.close(Scalar(num(k) / den(k)), Scalar(first), slack)) {
        throw Error(ErrorCode::kInconsistentTraces, std::string("trace is not a Markov trace for the ") + which + " inclusion",
                    {{"inclusion", which}, {"summand", k}});
      }
    return first;
  };
  ratios_constant(top.transpose() * top * t, t, "top");

  const Eigen::VectorXd t_n1 = right * t;
  const Eigen::VectorXd via_bottom = bottom * t_n1;
  const Eigen::VectorXd via_left = left * (top * t);
  for (Eigen::Index k = 0; k < via_bottom.size(); ++k)
    if (!tol.close(Scalar(via_bottom(k)), Scalar(via_left(k)), slack)) {
      throw Error(ErrorCode::kInconsistentTraces, "restrictions of the trace to N0 disagree",
                  {{"summand", k}, {"via_bottom", via_bottom(k)}, {"via_left", via_left(k)}});
    }

  NondegeneracyReport report;
  report.top_index = top_index;
  report.bottom_index = ratios_constant(bottom.transpose() * bottom * t_n1, t_n1, "bottom");
  report.nondegenerate = tol.close(Scalar(report.bottom_index), Scalar(report.top_index), slack);
  return report;
}

CommutingSquare basic_construction_square(const CommutingSquare& square) {
  return CommutingSquare{square.bottom.transpose(), square.top.transpose(), square.right, square.left, std::nullopt};
}

}  // namespace mfd
