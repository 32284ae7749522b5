#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ncgdist/algebra.hpp>

using namespace ncg;

TEST_CASE("hermitian basis dimensions") {
  CHECK(hermitian_basis(Algebra({1, 1})).size() == 2);
  CHECK(hermitian_basis(Algebra({2})).size() == 4);
  CHECK(Algebra({2, 1}).herm_dim() == 5);
  CHECK(hermitian_basis(Algebra({2, 1})).size() == 5);
}

TEST_CASE("diagonal algebra basis is per-block units") {
  auto basis = hermitian_basis(Algebra({1, 1}));
  CHECK(basis[0].mats[0](0, 0) == Complex(1));
  CHECK(basis[0].mats[1](0, 0) == Complex(0));
  CHECK(basis[1].mats[0](0, 0) == Complex(0));
  CHECK(basis[1].mats[1](0, 0) == Complex(1));
}

TEST_CASE("basis orthonormality, hermiticity, gram identity") {
  for (auto blocks : {std::vector<int>{3}, {2, 1}, {1, 1, 1}, {2, 3, 1}}) {
    Algebra alg(blocks);
    auto basis = hermitian_basis(alg);
    REQUIRE(static_cast<int>(basis.size()) == alg.herm_dim());
    for (size_t i = 0; i < basis.size(); ++i) {
      CHECK(basis[i].hermitian());
      for (size_t j = 0; j < basis.size(); ++j) {
        double g = frob_inner(basis[i], basis[j]);
        CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) < 1e-10);
      }
    }
  }
}

TEST_CASE("coords round trip") {
  Algebra alg({2, 1});
  Rng rng(7);
  Vector c(alg.herm_dim());
  for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = gaussian(rng);
  auto e = element_from_coords(alg, c);
  CHECK(e.hermitian(1e-12));
  Vector back = coords_of(alg, e);
  CHECK((back - c).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("eval_state basics") {
  Algebra m2({2});
  State pure = State::pure(m2, 0, (CVector(2) << 1, 0).finished());
  auto e11 = AlgebraElement::zero(m2);
  e11.mats[0](0, 0) = 1;
  CHECK(eval_state(m2, pure, e11).real() == doctest::Approx(1.0));

  State mixed = State::mixed({1.0}, {Matrix::Identity(2, 2) / 2.0});
  CHECK(eval_state(m2, mixed, e11).real() == doctest::Approx(0.5));

  Algebra c2({1, 1});
  State d1 = State::delta(c2, 0);
  auto a = AlgebraElement::zero(c2);
  a.mats[0](0, 0) = 3;
  a.mats[1](0, 0) = 7;
  CHECK(eval_state(c2, d1, a).real() == doctest::Approx(3.0));
}

TEST_CASE("state validation rejects bad data") {
  Algebra m2({2});
  Matrix notrace = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(State::mixed({1.0}, {notrace}).validate(m2), InvalidInput);
  Matrix neg(2, 2);
  neg << 2, 0, 0, -1;
  CHECK_THROWS_AS(State::mixed({1.0}, {neg}).validate(m2), InvalidInput);
  State ok = State::mixed({1.0}, {Matrix::Identity(2, 2) / 2.0});
  CHECK_NOTHROW(ok.validate(m2));
}

TEST_CASE("mix_states endpoints and midpoint") {
  Algebra c2({1, 1});
  State d1 = State::delta(c2, 0), d2 = State::delta(c2, 1);
  auto a = AlgebraElement::zero(c2);
  a.mats[0](0, 0) = 3;
  a.mats[1](0, 0) = 7;

  State end = mix_states(c2, d1, d2, 1.0);
  CHECK(eval_state(c2, end, a).real() == doctest::Approx(3.0));
  State mid = mix_states(c2, d1, d2, 0.5);
  CHECK(eval_state(c2, mid, a).real() == doctest::Approx(5.0));
  CHECK_THROWS_AS(mix_states(c2, d1, d2, 1.5), InvalidInput);

  Algebra m2({2});
  State up = State::pure(m2, 0, (CVector(2) << 1, 0).finished());
  State dn = State::pure(m2, 0, (CVector(2) << 0, 1).finished());
  State mm = mix_states(m2, up, dn, 0.5);
  CHECK((mm.densities[0] - Matrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("eval_state is affine in the mixing parameter") {
  Algebra alg({2, 1});
  Rng rng(11);
  auto rho = [&](int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = Complex(gaussian(rng), gaussian(rng));
    Matrix p = m * m.adjoint();
    return Matrix(p / p.trace());
  };
  State s0 = State::mixed({0.3, 0.7}, {rho(2), rho(1)});
  State s1 = State::mixed({0.6, 0.4}, {rho(2), rho(1)});
  Vector c(alg.herm_dim());
  for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = gaussian(rng);
  auto a = element_from_coords(alg, c);
  for (double lam : {0.0, 0.25, 0.5, 0.9, 1.0}) {
    double lhs = eval_state(alg, mix_states(alg, s0, s1, lam), a).real();
    double rhs = lam * eval_state(alg, s0, a).real() + (1 - lam) * eval_state(alg, s1, a).real();
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("bloch map reference points") {
  Algebra m2({2});
  State north = State::pure(m2, 0, (CVector(2) << 1, 0).finished());
  BlochPoint p = bloch_of_state(m2, north);
  CHECK(p.x == doctest::Approx(0.0));
  CHECK(p.y == doctest::Approx(0.0));
  CHECK(p.z == doctest::Approx(1.0));

  State plus = State::pure(m2, 0, (CVector(2) << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0)).finished());
  BlochPoint q = bloch_of_state(m2, plus);
  CHECK(q.x == doctest::Approx(1.0));
  CHECK(q.y == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(std::abs(q.z) < 1e-12);

  State mm = State::mixed({1.0}, {Matrix::Identity(2, 2) / 2.0});
  BlochPoint c = bloch_of_state(m2, mm);
  CHECK(c.norm() < 1e-12);
}

TEST_CASE("bloch round trip on evaluations") {
  Algebra m2({2});
  Rng rng(13);
  auto basis = hermitian_basis(m2);
  for (int trial = 0; trial < 20; ++trial) {
    BlochPoint p{gaussian(rng), gaussian(rng), gaussian(rng)};
    double n = p.norm();
    double scale = uniform(rng, 0.0, 1.0) / std::max(n, 1e-12);
    p.x *= scale;
    p.y *= scale;
    p.z *= scale;
    State s = state_of_bloch(m2, p);
    State back = state_of_bloch(m2, bloch_of_state(m2, s));
    for (const auto& e : basis)
      CHECK(std::abs(eval_state(m2, s, e) - eval_state(m2, back, e)) < 1e-10);
  }
  CHECK_THROWS_AS(state_of_bloch(m2, BlochPoint{1.1, 0, 0}), InvalidInput);
}

TEST_CASE("pure bloch points sit on the unit sphere and invert") {
  Algebra m2({2});
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    CVector xi = random_unit_vector(rng, 2);
    State s = State::pure(m2, 0, xi);
    BlochPoint p = bloch_of_state(m2, s);
    CHECK(p.norm() == doctest::Approx(1.0));
    State back = state_of_bloch(m2, p);
    CHECK(back.is_pure());
    CHECK((back.densities[0] - s.densities[0]).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("state_from_coords inverts state_coords") {
  Algebra alg({2, 2});
  Rng rng(19);
  Matrix m(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = Complex(gaussian(rng), gaussian(rng));
  Matrix rho = m * m.adjoint();
  rho /= rho.trace();
  State s = State::mixed({0.25, 0.75}, {rho, Matrix::Identity(2, 2) / 2.0});
  State back = state_from_coords(alg, state_coords(alg, s));
  CHECK(back.weights[0] == doctest::Approx(0.25));
  CHECK(back.weights[1] == doctest::Approx(0.75));
  CHECK((back.densities[0] - rho).cwiseAbs().maxCoeff() < 1e-10);
}
