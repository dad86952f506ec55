#include "mfd/distortion.hpp"
#include "mfd/error.hpp"

#include "../support/oracles.hpp"

#include <doctest.h>

#include <random>

using namespace mfd;

namespace {

const std::optional<Scalar> kAbsent = std::nullopt;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_CASE("cycle condition") {
  PartialMatrix a4{{2, kAbsent}, {2, 1}};
  CHECK(check_cycle_condition(a4).holds);

  CycleCheck bad = check_cycle_condition(PartialMatrix{{1, 2}, {3, 4}});
  CHECK_FALSE(bad.holds);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->length() == 4);
  std::vector<std::size_t> evens = bad.witness->evens;
  std::sort(evens.begin(), evens.end());
  CHECK(evens == std::vector<std::size_t>{0, 1});

  CHECK(check_cycle_condition(PartialMatrix{{1, 2}, {2, 4}}).holds);

  BipartiteGraph complete = BipartiteGraph::complete(2, 2);
  CHECK(code_of([&] { check_cycle_condition(a4, complete); }) == ErrorCode::kMissingEntry);
}

TEST_CASE("cycle condition in float mode scales with cycle length") {
  Tolerance tol;
  PartialMatrix nearly{{Scalar(1.0), Scalar(2.0)}, {Scalar(2.0), Scalar(4.0 * (1 + 3e-12))}};
  CHECK(check_cycle_condition(nearly, tol).holds);
  PartialMatrix off{{Scalar(1.0), Scalar(2.0)}, {Scalar(2.0), Scalar(4.0 * (1 + 1e-10))}};
  CHECK_FALSE(check_cycle_condition(off, tol).holds);
}

TEST_CASE("factorize") {
  Factorization f = factorize(PartialMatrix{{2, kAbsent}, {2, 1}});
  CHECK(f.eta == Vector{1, 1});
  CHECK(f.xi == Vector{2, 1});

  f = factorize(PartialMatrix{{1, 2}, {2, 4}});
  CHECK(f.eta == Vector{1, Scalar::ratio(1, 2)});
  CHECK(f.xi == Vector{1, 2});

  f = factorize(PartialMatrix{{1, 1, 1}, {1, kAbsent, 1}});
  CHECK(f.eta == Vector{1, 1});
  CHECK(f.xi == Vector{1, 1, 1});

  CHECK(code_of([] { factorize(PartialMatrix{{1, 2}, {3, 4}}); }) == ErrorCode::kCycleViolation);
  CHECK(code_of([] { factorize(PartialMatrix{{1, kAbsent}, {kAbsent, 1}}); }) == ErrorCode::kDisconnectedSupport);
}

TEST_CASE("extend_to_complete") {
  CHECK(extend_to_complete(PartialMatrix{{2, kAbsent}, {2, 1}}) == Matrix{{2, 1}, {2, 1}});
  CHECK(extend_to_complete(PartialMatrix{{7}}) == Matrix{{7}});
  CHECK(extend_to_complete(PartialMatrix{{1, 2}, {2, kAbsent}}) == Matrix{{1, 2}, {2, 4}});
  CHECK(code_of([] { extend_to_complete(PartialMatrix{{1, 2}, {3, 4}}); }) == ErrorCode::kCycleViolation);

  DistortionMatrix dm = complete_distortion(PartialMatrix{{2, kAbsent}, {2, 1}});
  CHECK_FALSE(dm.entries.has(0, 1));
  CHECK((*dm.extension)(0, 1) == Scalar(1));
  CHECK(dm.factorization->xi == Vector{2, 1});
}

TEST_CASE("extend_to_groupoid") {
  GroupoidHom hom = extend_to_groupoid(Matrix{{2, 1}, {2, 1}});
  CHECK(hom.n == 4);
  // even-even block
  CHECK(hom.values(0, 1) == Scalar(1));
  CHECK(hom.values(1, 0) == Scalar(1));
  // odd-odd block
  CHECK(hom.values(2, 3) == Scalar::ratio(1, 2));
  CHECK(hom.values(3, 2) == Scalar(2));
  // cross blocks
  CHECK(hom.values(0, 2) == Scalar(2));
  CHECK(hom.values(2, 0) == Scalar::ratio(1, 2));
  CHECK(square_groupoid_potential(hom.values) == *hom.potential);

  hom = extend_to_groupoid(Matrix{{2}, {4}});
  CHECK(hom.values(0, 1) == Scalar::ratio(1, 2));

  hom = extend_to_groupoid(Matrix{{1, 1}, {1, 1}});
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = 0; y < 4; ++y) CHECK(hom.values(x, y) == Scalar(1));

  try {
    extend_to_groupoid(Matrix{{1, 2}, {3, 4}});
    FAIL("expected ExtensionConditionViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kExtensionConditionViolation);
    CHECK(e.payload()["i"] == 0);
    CHECK(e.payload()["j_prime"] == 1);
  }
}

TEST_CASE("square_groupoid_potential") {
  CHECK(square_groupoid_potential(Matrix{{1, 2}, {Scalar::ratio(1, 2), 1}}) == Vector{1, 2});
  CHECK(square_groupoid_potential(Matrix{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}) == Vector{1, 1, 1});
  try {
    square_groupoid_potential(Matrix{{1, 2}, {1, 1}});
    FAIL("expected NotGroupoidHom");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotGroupoidHom);
    CHECK(e.payload()["triple"] == nlohmann::json::array({0, 1, 0}));
  }
}

TEST_CASE("check_extremality") {
  InclusionData a4 = validate_inclusion(Matrix{{1, 0}, {1, 1}});
  ExtremalityReport r = check_extremality(a4, PartialMatrix{{2, kAbsent}, {2, 1}});
  CHECK(r.extremal);

  InclusionData full = validate_inclusion(Matrix{{1, 1}, {1, 1}});
  r = check_extremality(full, PartialMatrix{{1, 2}, {3, 4}});
  CHECK_FALSE(r.extremal);
  CHECK(r.jones_equals_statistical);
  CHECK_FALSE(r.cycle_condition_holds);
  CHECK(r.witness.has_value());

  InclusionData skew = validate_inclusion(Matrix{{1, 0}, {1, 1}}, Matrix{{2, 0}, {1, 1}});
  r = check_extremality(skew, PartialMatrix{{2, kAbsent}, {2, 1}});
  CHECK_FALSE(r.jones_equals_statistical);
  CHECK(r.cycle_condition_holds);
  CHECK_FALSE(r.extremal);
}

TEST_CASE("fundamental cycles agree with the brute-force all-cycles check") {
  std::mt19937 rng(2024);
  std::bernoulli_distribution perturb(0.5);
  int satisfied = 0;
  int violated = 0;
  for (int trial = 0; trial < 400; ++trial) {
    std::size_t a = 1 + rng() % 3;
    std::size_t b = 1 + rng() % (6 - a > 3 ? 3 : 6 - a);
    Matrix support = oracle::random_connected_support(rng, a, b);
    BipartiteGraph g = BipartiteGraph::from_support(support);
    Vector eta(a);
    Vector xi(b);
    for (auto& x : eta) x = oracle::random_rational(rng);
    for (auto& x : xi) x = oracle::random_rational(rng);
    PartialMatrix delta = oracle::factorized_on_support(support, eta, xi);
    const bool perturbed = perturb(rng) && !g.non_tree_edges().empty();
    if (perturbed) {
      const Edge& e = g.edges()[rng() % g.edges().size()];
      delta.set(e.i, e.j, delta.value(e.i, e.j) * Scalar::ratio(3, 2));
    }
    Matrix dense(a, b);
    for (const auto& e : g.edges()) dense(e.i, e.j) = delta.value(e.i, e.j);

    const bool brute = oracle::all_cycles_multiply_to_one(dense, g, 1e-12);
    const bool fundamental = check_cycle_condition(delta, g).holds;
    CHECK(brute == fundamental);
    (brute ? satisfied : violated)++;

    // The four equivalent conditions.
    bool factorizes = true;
    try {
      Factorization f = factorize(delta, g);
      for (const auto& e : g.edges()) CHECK(delta.value(e.i, e.j) == f.xi[e.j] / f.eta[e.i]);
      CHECK(f.eta[0] == Scalar(1));
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kCycleViolation);
      factorizes = false;
    }
    CHECK(factorizes == fundamental);
    if (factorizes) {
      Matrix total = extend_to_complete(delta, g);
      CHECK_NOTHROW(extend_to_groupoid(total));
      // Extension is unique: re-extending its own restriction is a no-op.
      CHECK(extend_to_complete(restrict_to_support(total, support)) == total);
      if (perturbed) continue;
      // Gauge: a common rescaling of (η, ξ) does not change the extension.
      Vector eta2 = scaled(eta, Scalar::ratio(5, 3));
      Vector xi2 = scaled(xi, Scalar::ratio(5, 3));
      CHECK(extend_to_complete(oracle::factorized_on_support(support, eta2, xi2)) == total);
    }
  }
  CHECK(satisfied > 50);
  CHECK(violated > 30);
}
