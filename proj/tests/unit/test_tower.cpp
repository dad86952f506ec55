#include "mfd/distortion.hpp"
#include "mfd/error.hpp"
#include "mfd/tower.hpp"

#include "../support/oracles.hpp"

#include <doctest.h>

#include <random>

using namespace mfd;

namespace {

const std::optional<Scalar> kAbsent = std::nullopt;

InclusionData a4() { return validate_inclusion(Matrix{{1, 0}, {1, 1}}); }

PartialMatrix to_partial(const Matrix& m) {
  PartialMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.set(i, j, m(i, j));
  return out;
}

}  // namespace

TEST_CASE("basic_construction_distortion") {
  PartialMatrix delta{{2, kAbsent}, {2, 1}};
  PartialMatrix up = basic_construction_distortion(delta, Matrix{{1, 0}, {1, 1}});
  REQUIRE(up.rows() == 2);
  REQUIRE(up.cols() == 2);
  // S = (2, 3)
  CHECK(up.value(0, 0) == Scalar(1));
  CHECK(up.value(0, 1) == Scalar::ratio(3, 2));
  CHECK(up.value(1, 1) == Scalar(3));
  CHECK_FALSE(up.has(1, 0));
}

TEST_CASE("A4 tower follows the Fibonacci closed form exactly") {
  InclusionData inc = a4();
  TowerTrace tower = jones_tower(oracle::fibonacci_level(0), inc, 6);
  REQUIRE(tower.levels.size() == 13);
  for (std::size_t n = 0; n <= 6; ++n) {
    const TowerLevel& level = tower.levels[2 * n];
    CHECK(level.jones_level == 2 * n);
    CHECK(level.parity == Parity::kEven);
    CHECK(level.distortion == oracle::fibonacci_level(static_cast<int>(n)));
    CHECK(level.distortion(0, 0).is_exact());
  }
  for (std::size_t n = 0; n < 6; ++n) {
    const TowerLevel& odd = tower.levels[2 * n + 1];
    CHECK(odd.parity == Parity::kOdd);
    CHECK(odd.distortion.rows() == 2);
    PartialMatrix expected = basic_construction_distortion(to_partial(tower.levels[2 * n].distortion), inc.jones());
    for (const auto& e : inc.support().edges()) CHECK(odd.distortion(e.j, e.i) == expected.value(e.j, e.i));
  }
}

TEST_CASE("phi_step") {
  InclusionData inc = a4();
  CHECK(phi_step(Matrix{{2, 1}, {2, 1}}, inc) == oracle::fibonacci_level(1));
  PerronData p = perron_data(inc);
  Matrix sigma = standard_distortion(p);
  CHECK(relative_residual(phi_step(sigma, inc), sigma) < 1e-12);
  CHECK_THROWS_AS(phi_step(Matrix{{1, 2}, {3, 4}}, inc), Error);
}

TEST_CASE("two basic-construction steps equal one phi step") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t a = 1 + rng() % 3;
    std::size_t b = 1 + rng() % 3;
    Matrix d = oracle::random_connected_support(rng, a, b, 2);
    InclusionData inc = validate_inclusion(d);
    Vector eta(a);
    Vector xi(b);
    for (auto& x : eta) x = oracle::random_rational(rng);
    for (auto& x : xi) x = oracle::random_rational(rng);
    Matrix full(a, b);
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t j = 0; j < b; ++j) full(i, j) = xi[j] / eta[i];
    Matrix once = phi_step(full, inc);
    PartialMatrix up = basic_construction_distortion(to_partial(full), d);
    Matrix up_full = *complete_distortion(up).extension;
    PartialMatrix twice = basic_construction_distortion(to_partial(up_full), d.transpose());
    for (const auto& e : inc.support().edges()) CHECK(twice.value(e.i, e.j) == once(e.i, e.j));
  }
}

TEST_CASE("iterate_to_fixed_point converges to the standard distortion") {
  InclusionData inc = a4();
  Matrix sigma = standard_distortion(perron_data(inc));
  TowerTrace t = iterate_to_fixed_point(Matrix{{2, 1}, {2, 1}}, inc);
  CHECK(t.converged);
  CHECK(t.residual < 1e-9);
  CHECK(relative_residual(t.levels.back().distortion, sigma) < 1e-9);
  CHECK(t.iterations > 1);

  FixedPointOptions tight;
  tight.max_iter = 2;
  tight.tol = 1e-14;
  try {
    iterate_to_fixed_point(Matrix{{2, 1}, {2, 1}}, inc, tight);
    FAIL("expected NonConvergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNonConvergence);
  }

  TowerTrace already = iterate_to_fixed_point(sigma, inc);
  CHECK(already.converged);
  CHECK(already.iterations <= 1);
}

TEST_CASE("fixed point from random starts") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t a = 1 + rng() % 3;
    std::size_t b = 1 + rng() % 3;
    Matrix d = oracle::random_connected_support(rng, a, b, 2);
    InclusionData inc = validate_inclusion(d);
    Vector eta(a);
    Vector xi(b);
    for (auto& x : eta) x = Scalar(oracle::random_rational(rng).to_double());
    for (auto& x : xi) x = Scalar(oracle::random_rational(rng).to_double());
    Matrix start(a, b);
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t j = 0; j < b; ++j) start(i, j) = xi[j] / eta[i];
    TowerTrace t = iterate_to_fixed_point(start, inc);
    CHECK(t.converged);
  }
}

TEST_CASE("homogeneity conditions agree") {
  SUBCASE("standard distortion satisfies all") {
    InclusionData inc = validate_inclusion(Matrix{{1, 1}, {1, 1}});
    PerronData p = perron_data(inc);
    HomogeneityReport r = homogeneity_report(inc, to_partial(standard_distortion(p)), std::nullopt, p);
    CHECK(r.all());
  }
  SUBCASE("A4 start satisfies none") {
    InclusionData inc = a4();
    HomogeneityReport r = homogeneity_report(inc, PartialMatrix{{2, kAbsent}, {2, 1}}, std::nullopt, perron_data(inc));
    CHECK(r.none());
    CHECK(r.row_sums == Vector{2, 3});
  }
  SUBCASE("A4 at the standard distortion") {
    InclusionData inc = a4();
    PerronData p = perron_data(inc);
    PartialMatrix sigma(2, 2);
    Matrix s = standard_distortion(p);
    for (const auto& e : inc.support().edges()) sigma.set(e.i, e.j, s(e.i, e.j));
    CHECK(homogeneity_report(inc, sigma, std::nullopt, p).all());
  }
  SUBCASE("random realizable data") {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 60; ++trial) {
      std::size_t a = 1 + rng() % 3;
      std::size_t b = 1 + rng() % 3;
      Matrix d = oracle::random_connected_support(rng, a, b, 2);
      InclusionData inc = validate_inclusion(d);
      Vector eta(a);
      for (auto& x : eta) x = oracle::random_rational(rng);
      PartialMatrix delta = oracle::factorized_on_support(d, eta, left_multiply(eta, d));
      CHECK(homogeneity_report(inc, delta, std::nullopt, perron_data(inc)).consistent());
    }
  }
}

TEST_CASE("downward feasibility on the A4 tower") {
  InclusionData inc = a4();
  SUBCASE("level 0 admits only a tunnel") {
    PartialMatrix level0 = to_partial(oracle::fibonacci_level(0));
    FeasibilityResult tunnel = downward_feasibility(inc, level0, FeasibilityMode::kMarkovTunnel);
    CHECK(tunnel.status == FeasibilityStatus::kMarkovTunnelOnly);
    REQUIRE(tunnel.pi);
    CHECK(*tunnel.pi == Vector{Scalar::ratio(1, 2), 0});
    FeasibilityResult strict = downward_feasibility(inc, level0, FeasibilityMode::kStrict);
    CHECK(strict.status == FeasibilityStatus::kInfeasible);
    CHECK(strict.certificate["reason"] == "zero_component");
    CHECK(strict.certificate["index"] == 1);
    CHECK(strict.certificate["candidate_pi"] == nlohmann::json::array({"1/2", "0"}));
  }
  SUBCASE("level 2 is feasible") {
    PartialMatrix level2 = to_partial(oracle::fibonacci_level(1));
    FeasibilityResult r = downward_feasibility(inc, level2, FeasibilityMode::kStrict);
    CHECK(r.status == FeasibilityStatus::kFeasible);
    REQUIRE(r.pi);
    CHECK(*r.pi == Vector{Scalar::ratio(2, 5), Scalar::ratio(1, 3)});
    PartialMatrix gamma = downward_distortion(level2, *r.pi);
    CHECK(gamma.value(0, 0) == Scalar(1));
    CHECK(gamma.value(0, 1) == Scalar::ratio(3, 2));
    CHECK(gamma.value(1, 0) == Scalar(2));
    CHECK(gamma.value(1, 1) == Scalar(3));
  }
  SUBCASE("negative component") {
    FeasibilityResult r = downward_feasibility(inc, PartialMatrix{{1, kAbsent}, {2, 1}}, FeasibilityMode::kStrict);
    CHECK(r.status == FeasibilityStatus::kInfeasible);
    CHECK(r.certificate["reason"] == "negative_component");
  }
  SUBCASE("component above one") {
    FeasibilityResult r =
        downward_feasibility(inc, PartialMatrix{{Scalar::ratio(1, 2), kAbsent}, {3, 1}}, FeasibilityMode::kStrict);
    CHECK(r.status == FeasibilityStatus::kInfeasible);
    CHECK(r.certificate["reason"] == "component_exceeds_one");
  }
  SUBCASE("inconsistent") {
    InclusionData col = validate_inclusion(Matrix{{1}, {1}});
    FeasibilityResult r = downward_feasibility(col, PartialMatrix{{1}, {2}}, FeasibilityMode::kStrict);
    CHECK(r.status == FeasibilityStatus::kInfeasible);
    CHECK(r.certificate["reason"] == "inconsistent_system");
  }
  SUBCASE("underdetermined") {
    InclusionData row = validate_inclusion(Matrix{{1, 1}});
    FeasibilityResult r = downward_feasibility(row, PartialMatrix{{1, 1}}, FeasibilityMode::kStrict);
    CHECK(r.status == FeasibilityStatus::kFeasible);
    REQUIRE(r.pi);
    CHECK(((*r.pi)[0] + (*r.pi)[1]) == Scalar(1));
    CHECK((*r.pi)[0].sign() > 0);
    CHECK((*r.pi)[1].sign() > 0);

    FeasibilityResult box = downward_feasibility(row, PartialMatrix{{Scalar::ratio(1, 4), Scalar::ratio(1, 4)}},
                                                 FeasibilityMode::kStrict);
    CHECK(box.status == FeasibilityStatus::kInfeasible);
    CHECK(box.certificate["reason"] == "no_solution_in_unit_box");
  }
  SUBCASE("zero pi") {
    CHECK_THROWS_AS(downward_distortion(PartialMatrix{{2, kAbsent}, {2, 1}}, Vector{Scalar::ratio(1, 2), 0}), Error);
  }
}

TEST_CASE("downward step inverts the basic construction") {
  // γ from the feasible π at level 2 has basic construction equal to level 2
  // on the support.
  InclusionData inc = a4();
  PartialMatrix level2(2, 2);
  Matrix f = oracle::fibonacci_level(1);
  for (const auto& e : inc.support().edges()) level2.set(e.i, e.j, f(e.i, e.j));
  FeasibilityResult r = downward_feasibility(inc, level2, FeasibilityMode::kStrict);
  REQUIRE(r.pi);
  PartialMatrix gamma = downward_distortion(level2, *r.pi);
  PartialMatrix up = basic_construction_distortion(gamma, inc.jones().transpose());
  for (const auto& e : inc.support().edges()) CHECK(up.value(e.i, e.j) == level2.value(e.i, e.j));
}
