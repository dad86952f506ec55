#include "mfd/commutant.hpp"
#include "mfd/error.hpp"
#include "mfd/loopbasis.hpp"

#include "../support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace mfd;
using oracle::kPhi;

namespace {

LoopAlgebraPair a4_pair() { return build_loop_algebra(Vector{1, 2}, Matrix{{1, 0}, {1, 1}}); }

LoopElement random_element(std::mt19937& rng, const std::vector<LoopKey>& loops, AlgebraTag tag) {
  std::normal_distribution<double> g;
  LoopElement x(tag);
  for (const auto& loop : loops) x.add(loop, Complex(g(rng), g(rng)));
  return x;
}

double distance(const LoopElement& x, const LoopElement& y) { return (x - y).max_abs(); }

}  // namespace

TEST_CASE("A4 loop algebra dimensions") {
  LoopAlgebraPair pair = a4_pair();
  CHECK(pair.k == 2);
  CHECK(pair.l == 2);
  // dim N0 = 1 + 4, dim N1 = 9 + 4
  CHECK(pair.n0_loops.size() == 5);
  CHECK(pair.n1_loops.size() == 13);
  CHECK(pair.d_squared() == doctest::Approx(kPhi * kPhi));
  CHECK(pair.lambda0[0] == doctest::Approx(1 / (1 + 2 * kPhi)));
  CHECK(pair.lambda0[1] == doctest::Approx(kPhi / (1 + 2 * kPhi)));
  CHECK(pair.lambda1[0] == doctest::Approx(kPhi / (2 + 3 * kPhi)));
  CHECK(pair.lambda1[1] == doctest::Approx(1 / (2 + 3 * kPhi)));
  CHECK(pimsner_popa_basis(pair).size() == 7);

  CHECK_THROWS_AS(build_loop_algebra(Vector{1, 2}, Matrix{{1, 0}, {0, 1}}), Error);
  CHECK_THROWS_AS(build_loop_algebra(Vector{0, 2}, Matrix{{1, 0}, {1, 1}}), Error);
  CHECK_THROWS_AS(build_loop_algebra(Vector{1, 2}, Matrix{{Scalar::ratio(1, 2), 0}, {1, 1}}), Error);
}

TEST_CASE("loop arithmetic") {
  LoopAlgebraPair pair = a4_pair();
  LoopElement one0 = unit(pair, AlgebraTag::kN0);
  LoopElement one1 = unit(pair, AlgebraTag::kN1);
  CHECK(trace(pair, one0) == doctest::Approx(1.0));
  CHECK(trace(pair, one1) == doctest::Approx(1.0));
  CHECK(distance(include(pair, one0), one1) < 1e-14);
  CHECK(distance(central_projection(pair, 0) + central_projection(pair, 1), one0) < 1e-14);
  CHECK(distance(central_projection(pair, 1) * central_projection(pair, 1), central_projection(pair, 1)) < 1e-14);
  CHECK(distance(central_projection(pair, 0) * central_projection(pair, 1), LoopElement(AlgebraTag::kN0)) < 1e-14);
  CHECK(trace(pair, central_projection(pair, 1)) == doctest::Approx(2 * kPhi / (1 + 2 * kPhi)));
  CHECK_THROWS_AS(one0 * one1, Error);
  CHECK_THROWS_AS(include(pair, one1), Error);
  CHECK_THROWS_AS(cond_expectation_N0(one0, pair), Error);

  std::mt19937 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    LoopElement x = random_element(rng, pair.n1_loops, AlgebraTag::kN1);
    LoopElement y = random_element(rng, pair.n1_loops, AlgebraTag::kN1);
    LoopElement z = random_element(rng, pair.n1_loops, AlgebraTag::kN1);
    CHECK(distance((x * y) * z, x * (y * z)) < 1e-10);
    CHECK(distance((x * y).adjoint(), y.adjoint() * x.adjoint()) < 1e-10);
    CHECK(distance(x * one1, x) < 1e-12);
    CHECK(std::abs(trace(pair, x * y) - trace(pair, y * x)) < 1e-10);
  }
}

TEST_CASE("conditional expectation onto N0") {
  LoopAlgebraPair pair = a4_pair();
  std::mt19937 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    LoopElement x = random_element(rng, pair.n1_loops, AlgebraTag::kN1);
    LoopElement a = random_element(rng, pair.n0_loops, AlgebraTag::kN0);
    LoopElement b = random_element(rng, pair.n0_loops, AlgebraTag::kN0);
    LoopElement ex = cond_expectation_N0(x, pair);
    CHECK(ex.tag() == AlgebraTag::kN0);
    CHECK(distance(cond_expectation_N0(include(pair, a) * x * include(pair, b), pair), a * ex * b) < 1e-10);
    CHECK(std::abs(trace(pair, ex) - trace(pair, x)) < 1e-12);
    CHECK(distance(cond_expectation_N0(x.adjoint(), pair), ex.adjoint()) < 1e-12);
    CHECK(distance(cond_expectation_N0(include(pair, a), pair), a) < 1e-12);
    // Positivity: E(x* x) has nonnegative trace against every p_i.
    LoopElement pos = cond_expectation_N0(x.adjoint() * x, pair);
    for (std::size_t i = 0; i < pair.k; ++i) CHECK(trace(pair, central_projection(pair, i) * pos) >= -1e-12);
  }
}

TEST_CASE("Pimsner-Popa identity") {
  auto direct_errors = [](const LoopAlgebraPair& pair, const std::vector<LoopElement>& basis) {
    double recon = 0.0;
    for (const auto& loop : pair.n1_loops) {
      LoopElement x(AlgebraTag::kN1, loop);
      LoopElement sum(AlgebraTag::kN1);
      for (const auto& b : basis) sum += b * include(pair, cond_expectation_N0(b.adjoint() * x, pair));
      recon = std::max(recon, distance(sum, x));
    }
    LoopElement bb(AlgebraTag::kN1);
    for (const auto& b : basis) bb += b * b.adjoint();
    return std::pair{recon, distance(bb, unit(pair, AlgebraTag::kN1) * pair.d_squared())};
  };

  for (const auto& [m0, lambda] : std::vector<std::pair<Vector, Matrix>>{
           {Vector{1, 2}, Matrix{{1, 0}, {1, 1}}},
           {Vector{1}, Matrix{{3}}},
           {Vector{1, 1}, Matrix{{1}, {1}}},
           {Vector{2, 1}, Matrix{{1, 1}, {1, 2}}},
           {Vector{1, 1, 2}, Matrix{{1, 0}, {1, 1}, {0, 1}}}}) {
    LoopAlgebraPair pair = build_loop_algebra(m0, lambda);
    PimsnerPopaBasis basis = pimsner_popa_basis(pair);
    PimsnerPopaReport report = verify_pp_identity(pair, basis.all());
    CHECK(report.holds(1e-10));
    CHECK(report.loops_checked == pair.n1_loops.size());
    auto [recon, index] = direct_errors(pair, basis.all());
    CHECK(recon < 1e-10);
    CHECK(index < 1e-10);

    // The same basis with an extra √d factor on every element fails.
    if (pair.d > 1.0 + 1e-9) {
      std::vector<LoopElement> scaled = basis.all();
      for (auto& b : scaled) b *= std::sqrt(pair.d);
      CHECK_FALSE(verify_pp_identity(pair, scaled).holds(1e-6));
    }
  }
}

TEST_CASE("central transfer and density sequence") {
  LoopAlgebraPair pair = a4_pair();
  std::vector<LoopElement> basis = pimsner_popa_basis(pair).all();

  Eigen::MatrixXd transfer = central_transfer_matrix(pair);
  CHECK(transfer(0, 0) == doctest::Approx(1.0));
  CHECK(transfer(0, 1) == doctest::Approx(2.0));
  CHECK(transfer(1, 0) == doctest::Approx(0.5));
  CHECK(transfer(1, 1) == doctest::Approx(2.0));

  CentralTransfer ct = central_transfer(pair, basis, std::vector<double>{1.0, 0.0});
  CHECK(ct.max_deviation < 1e-10);
  CHECK(ct.via_loops[0] == doctest::Approx(1.0));
  CHECK(ct.via_loops[1] == doctest::Approx(0.5));

  CentralTransfer from_element = central_transfer(pair, basis, central_element(pair, {2.0, 3.0}));
  CHECK(from_element.via_loops[0] == doctest::Approx(8.0));
  CHECK(from_element.via_loops[1] == doctest::Approx(7.0));

  LoopElement off(AlgebraTag::kN0, pair.n0_loops.back());
  if (off.terms().begin()->first[0] != off.terms().begin()->first[1]) CHECK_THROWS_AS(central_transfer(pair, basis, off), Error);

  DensitySequence seq = density_sequence(pair, basis, 30);
  CHECK(seq.max_deviation < 1e-9);
  CHECK(seq.closed_form[1][0] == doctest::Approx(3 / (kPhi * kPhi)));
  CHECK(seq.closed_form[1][1] == doctest::Approx(2.5 / (kPhi * kPhi)));
  for (const auto& h : seq.recursion) CHECK(density_trace(pair, h) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(density_trace(pair, seq.limit) == doctest::Approx(1.0));
  for (std::size_t i = 0; i < pair.k; ++i) CHECK(seq.closed_form.back()[i] == doctest::Approx(seq.limit[i]).epsilon(1e-8));
}

TEST_CASE("nondegeneracy of commuting squares") {
  CommutingSquare spin{Matrix{{1, 1}}, Matrix{{1}, {1}}, Matrix{{1, 1}}, Matrix{{1}, {1}}, std::nullopt};
  NondegeneracyReport r = nondegeneracy_check(spin);
  CHECK(r.bottom_index == doctest::Approx(2.0));
  CHECK(r.top_index == doctest::Approx(2.0));
  CHECK(r.nondegenerate);

  CommutingSquare degenerate{Matrix{{1}}, Matrix{{2}}, Matrix{{1}}, Matrix{{2}}, std::nullopt};
  r = nondegeneracy_check(degenerate);
  CHECK(r.bottom_index == doctest::Approx(1.0));
  CHECK(r.top_index == doctest::Approx(4.0));
  CHECK_FALSE(r.nondegenerate);

  CommutingSquare bad = spin;
  bad.left = Matrix{{1}};
  CHECK_THROWS_AS(nondegeneracy_check(bad), Error);

  CommutingSquare skewed = spin;
  skewed.trace_m1 = Vector{Scalar(0.7)};
  CHECK_NOTHROW(nondegeneracy_check(skewed));

  CommutingSquare up = basic_construction_square(spin);
  NondegeneracyReport ru = nondegeneracy_check(up);
  CHECK(ru.bottom_index == doctest::Approx(2.0));
  CHECK(ru.nondegenerate);
}

TEST_CASE("relative commutants") {
  using Mat = Eigen::MatrixXcd;
  CHECK(algebra_basis(MatrixAlgebraPresentation::full(3)).size() == 9);
  CHECK(algebra_basis(MatrixAlgebraPresentation::diagonal(3)).size() == 3);

  CHECK(relative_commutant(MatrixAlgebraPresentation::diagonal(2), MatrixAlgebraPresentation::full(2)).size() == 2);
  CHECK(relative_commutant(MatrixAlgebraPresentation::full(2), MatrixAlgebraPresentation::full(2)).size() == 1);
  CHECK(relative_commutant(MatrixAlgebraPresentation::diagonal(3), MatrixAlgebraPresentation::diagonal(3)).size() == 3);

  // Diagonal matrices together with their Hadamard conjugates generate M2.
  Mat h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  Mat e = Mat::Zero(2, 2);
  e(0, 0) = 1;
  auto spin = MatrixAlgebraPresentation::generated_by({e, h * e * h.adjoint()});
  CHECK(algebra_basis(spin).size() == 4);
  auto commutant = relative_commutant(spin, MatrixAlgebraPresentation::full(2));
  REQUIRE(commutant.size() == 1);
  const auto& c = commutant.front();
  CHECK(std::abs(c(0, 1)) < 1e-10);
  CHECK(std::abs(c(0, 0) - c(1, 1)) < 1e-10);

  CHECK_THROWS_AS(relative_commutant(MatrixAlgebraPresentation::full(2), MatrixAlgebraPresentation::full(3)), Error);
}
