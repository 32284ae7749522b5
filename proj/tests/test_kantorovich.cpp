#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ncgdist/kantorovich.hpp>

using namespace ncg;

namespace {

SolverOptions quick() {
  SolverOptions o;
  o.multistarts = 4;
  o.max_iterations = 1500;
  o.seed = 42;
  return o;
}

}  // namespace

TEST_CASE("two-point sampling recovers the exact distance") {
  SpectralTriple t = two_point_triple(1.0);
  auto pairs = sample_pure_pairs(t, 6, 11, quick());
  REQUIRE(pairs.size() == 6);
  for (const auto& c : pairs) CHECK(c.bound >= 0);

  State a = State::delta(t.algebra, 0);
  State b = State::delta(t.algebra, 1);
  double w = wasserstein_upper(t, a, b, pairs);
  // on C^2 the constraint functional is exact once the endpoint pair is
  // among the constraints
  PurePairConstraint endpoints{a, b, spectral_distance(t, a, b, quick()).value};
  double w_exact = wasserstein_upper(t, a, b, pairs, endpoints);
  CHECK(w_exact == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(w >= w_exact - 1e-9);
}

TEST_CASE("sandwich inequality on random pairs") {
  SUBCASE("two-point space") {
    SpectralTriple t = two_point_triple(0.7);
    auto pairs = sample_pure_pairs(t, 8, 21, quick());
    Rng rng(22);
    for (int trial = 0; trial < 10; ++trial) {
      State a = State::pure(t.algebra, 0, random_unit_vector(rng, 1));
      State b = State::pure(t.algebra, 1, random_unit_vector(rng, 1));
      double d = spectral_distance(t, a, b, quick()).value;
      double w = wasserstein_upper(t, a, b, pairs);
      CHECK(d <= w + 1e-6);
    }
  }
  SUBCASE("truncated moyal N=2") {
    SpectralTriple t = truncated_moyal_triple(2, 2.0);
    auto pairs = sample_pure_pairs(t, 14, 23, quick());
    Rng rng(24);
    for (int trial = 0; trial < 6; ++trial) {
      State a = State::pure(t.algebra, 0, random_unit_vector(rng, 2));
      State b = State::pure(t.algebra, 0, random_unit_vector(rng, 2));
      double d = spectral_distance(t, a, b, quick()).value;
      double w = wasserstein_upper(t, a, b, pairs);
      CHECK(d <= w + 1e-6);
    }
  }
}

TEST_CASE("segment equality with an explicit endpoint constraint") {
  SpectralTriple t = truncated_moyal_triple(2, 1.5);
  Rng rng(25);
  State s0 = State::pure(t.algebra, 0, random_unit_vector(rng, 2));
  State s1 = State::pure(t.algebra, 0, random_unit_vector(rng, 2));
  double d01 = spectral_distance(t, s0, s1, quick()).value;
  PurePairConstraint endpoints{s0, s1, d01};
  auto pairs = sample_pure_pairs(t, 10, 26, quick());
  for (double lam : {0.2, 0.5, 0.8}) {
    State mid = mix_states(t.algebra, s0, s1, lam);
    double d = spectral_distance(t, s0, mid, quick()).value;
    double w = wasserstein_upper(t, s0, mid, pairs, endpoints);
    CHECK(d == doctest::Approx((1 - lam) * d01).epsilon(1e-6));
    CHECK(d <= w + 1e-6);
    // the endpoint constraint alone already caps the segment value
    double w_min = wasserstein_upper(t, s0, mid, {}, endpoints);
    CHECK(w_min == doctest::Approx((1 - lam) * d01).epsilon(1e-6));
  }
}

TEST_CASE("more constraints never loosen the bound") {
  SpectralTriple t = two_point_triple(1.3);
  auto many = sample_pure_pairs(t, 12, 31, quick());
  std::vector<PurePairConstraint> few(many.begin(), many.begin() + 3);
  State a = State::delta(t.algebra, 0);
  State b = State::delta(t.algebra, 1);
  double w_few = wasserstein_upper(t, a, b, few);
  double w_many = wasserstein_upper(t, a, b, many);
  CHECK(w_many <= w_few + 1e-9);
}

TEST_CASE("unbounded constraint sets report an infinite bound") {
  // decoupled two blocks: every sampled pair lies inside one block, so the
  // cross-block difference direction is unconstrained
  SpectralTriple t = two_point_triple(0.0);
  State a = State::delta(t.algebra, 0);
  State b = State::delta(t.algebra, 1);
  PurePairConstraint same{a, a, 0.0};
  CHECK(std::isinf(wasserstein_upper(t, a, b, {same})));
}

TEST_CASE("input validation") {
  SpectralTriple t = two_point_triple(1.0);
  State a = State::delta(t.algebra, 0);
  State b = State::delta(t.algebra, 1);
  CHECK_THROWS_AS(wasserstein_upper(t, a, b, {}), InvalidInput);
  CHECK_THROWS_AS(sample_pure_pairs(t, 0, 1), InvalidInput);

  PurePairConstraint bad{a, b, kInf};
  CHECK_THROWS_AS(wasserstein_upper(t, a, b, {bad}), InvalidInput);

  // a decoupled triple has no finite-distance cross pair, but same-block
  // pairs have distance zero, which is finite
  SpectralTriple dec = two_point_triple(0.0);
  auto pairs = sample_pure_pairs(dec, 3, 5, quick());
  for (const auto& c : pairs) CHECK(c.bound == doctest::Approx(0.0));
}
