#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ncgdist/closed_forms.hpp>
#include <ncgdist/solver.hpp>

using namespace ncg;

namespace {

SolverOptions quick() {
  SolverOptions o;
  o.multistarts = 4;
  o.max_iterations = 1500;
  o.seed = 123;
  return o;
}

double solver_graph_distance(const RealMatrix& w, int i, int j) {
  SpectralTriple t = graph_triple(static_cast<int>(w.rows()), w);
  return spectral_distance(t, State::delta(t.algebra, i), State::delta(t.algebra, j), quick())
      .value;
}

}  // namespace

TEST_CASE("three point reference values") {
  auto [d12, d13, d23] = three_point_distance({1, 1, 1});
  CHECK(d12 == doctest::Approx(std::sqrt(2.0 / 3.0)));
  CHECK(d13 == doctest::Approx(std::sqrt(2.0 / 3.0)));
  CHECK(d23 == doctest::Approx(std::sqrt(2.0 / 3.0)));

  // vanishing third-side coupling: d12 tends to the direct-link value 1/D12
  auto [e12, e13, e23] = three_point_distance({1, 1, 1e-6});
  CHECK(e12 == doctest::Approx(1.0).epsilon(1e-6));

  CHECK_THROWS_AS(three_point_distance({1, -1, 1}), InvalidInput);
}

TEST_CASE("three point matches solver on random couplings") {
  Rng rng(21);
  for (int trial = 0; trial < 6; ++trial) {
    ThreePointParams p{uniform(rng, 0.3, 3.0), uniform(rng, 0.3, 3.0), uniform(rng, 0.3, 3.0)};
    auto [d12, d13, d23] = three_point_distance(p);
    CHECK(solver_graph_distance(p.weights(), 0, 1) == doctest::Approx(d12).epsilon(1e-5));
    CHECK(solver_graph_distance(p.weights(), 1, 2) == doctest::Approx(d23).epsilon(1e-5));
  }
  auto [d12, d13, d23] = three_point_distance({2, 3, 5});
  RealMatrix w = ThreePointParams{2, 3, 5}.weights();
  CHECK(solver_graph_distance(w, 0, 1) == doctest::Approx(d12).epsilon(1e-5));
}

TEST_CASE("squared triangle inequality is an identity of the formula") {
  Rng rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    ThreePointParams p{uniform(rng, 0.1, 5.0), uniform(rng, 0.1, 5.0), uniform(rng, 0.1, 5.0)};
    auto [a, b, c] = three_point_distance(p);
    CHECK(a * a <= b * b + c * c + 1e-12);
    CHECK(b * b <= a * a + c * c + 1e-12);
    CHECK(c * c <= a * a + b * b + 1e-12);
  }
}

TEST_CASE("three point inverse round trip") {
  ThreePointParams unit = three_point_inverse(1, 1, 1);
  CHECK(unit.d12 == doctest::Approx(std::sqrt(2.0 / 3.0)));
  auto [a, b, c] = three_point_distance(unit);
  CHECK(a == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(b == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(c == doctest::Approx(1.0).epsilon(1e-10));

  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    double x = uniform(rng, 0.5, 2.0), y = uniform(rng, 0.5, 2.0), z = uniform(rng, 0.5, 2.0);
    if (x * x >= y * y + z * z || y * y >= x * x + z * z || z * z >= x * x + y * y) continue;
    auto [ra, rb, rc] = three_point_distance(three_point_inverse(x, y, z));
    CHECK(ra == doctest::Approx(x).epsilon(1e-10));
    CHECK(rb == doctest::Approx(y).epsilon(1e-10));
    CHECK(rc == doctest::Approx(z).epsilon(1e-10));
  }

  SUBCASE("homogeneity: scaling distances by s scales couplings by 1/s") {
    ThreePointParams p1 = three_point_inverse(1.2, 1.2, 1.2);
    ThreePointParams p2 = three_point_inverse(2.4, 2.4, 2.4);
    CHECK(p2.d12 == doctest::Approx(p1.d12 / 2));
  }

  CHECK_THROWS_AS(three_point_inverse(3, 1, 1), InvalidInput);
  // exact degenerate case: 5^2 = 3^2 + 4^2
  CHECK_THROWS_WITH_AS(three_point_inverse(5, 3, 4), doctest::Contains("infinite coupling"),
                       InvalidInput);
}

TEST_CASE("star resistances reproduce distances and couplings") {
  Rng rng(24);
  for (int trial = 0; trial < 10; ++trial) {
    double a = uniform(rng, 0.8, 1.5), b = uniform(rng, 0.8, 1.5), c = uniform(rng, 0.8, 1.5);
    auto [r1, r2, r3] = three_point_star_resistances(a, b, c);
    CHECK(r1 + r2 == doctest::Approx(a * a).epsilon(1e-12));
    CHECK(r1 + r3 == doctest::Approx(b * b).epsilon(1e-12));
    CHECK(r2 + r3 == doctest::Approx(c * c).epsilon(1e-12));
    // star-triangle transformation maps the resistances onto the inverse
    // squared couplings of the realizing Dirac operator
    if (a * a < b * b + c * c && b * b < a * a + c * c && c * c < a * a + b * b) {
      ThreePointParams p = three_point_inverse(a, b, c);
      double cross = r1 * r2 + r2 * r3 + r3 * r1;
      CHECK(cross / r3 == doctest::Approx(1.0 / (p.d12 * p.d12)).epsilon(1e-9));
      CHECK(cross / r2 == doctest::Approx(1.0 / (p.d13 * p.d13)).epsilon(1e-9));
      CHECK(cross / r1 == doctest::Approx(1.0 / (p.d23 * p.d23)).epsilon(1e-9));
    }
  }
}

TEST_CASE("four point closed forms") {
  double inf = kInf;
  SUBCASE("all-ones cycle returns 1 via the first guard") {
    auto [d12, d13] = four_point_special({1, inf, 1, 1, inf, 1});
    CHECK(d12 == doctest::Approx(1.0));
  }
  SUBCASE("first guard example") {
    auto [d12, d13] = four_point_special({1, inf, 1, 1, inf, 2});
    CHECK(d12 == doctest::Approx(1.0));
  }
  SUBCASE("d13 direct-path guard") {
    auto [d12, d13] = four_point_special({3, inf, 1, 0.1, inf, 1});
    CHECK(d13 == doctest::Approx(std::sqrt(2.0)));
  }
  SUBCASE("solver cross-check over random parameters") {
    Rng rng(25);
    for (int trial = 0; trial < 5; ++trial) {
      FourPointParams p{uniform(rng, 0.5, 2.0), inf, uniform(rng, 0.5, 2.0),
                        uniform(rng, 0.5, 2.0), inf, uniform(rng, 0.5, 2.0)};
      auto [d12, d13] = four_point_special(p);
      CHECK(solver_graph_distance(p.weights(), 0, 1) == doctest::Approx(d12).epsilon(1e-4));
      CHECK(solver_graph_distance(p.weights(), 0, 2) == doctest::Approx(d13).epsilon(1e-4));
    }
  }
  CHECK_THROWS_AS(four_point_special({1, 1, 1, 1, inf, 1}), InvalidInput);
}

TEST_CASE("complete graph and cut link") {
  CHECK(complete_graph_distance(4, 1) == doctest::Approx(std::sqrt(0.5)));
  CHECK(complete_graph_distance(3, 2) == doctest::Approx(0.5 * std::sqrt(2.0 / 3.0)));
  CHECK(cut_link_distance(4, 1) == doctest::Approx(1.0));
  CHECK_THROWS_AS(cut_link_distance(2, 1), InvalidInput);
  CHECK_THROWS_AS(complete_graph_distance(4, 0), InvalidInput);

  // solver confirms the cut-link value
  RealMatrix w = RealMatrix::Constant(4, 4, 1.0);
  w.diagonal().setZero();
  w(0, 1) = w(1, 0) = 0;
  CHECK(solver_graph_distance(w, 0, 1) == doctest::Approx(cut_link_distance(4, 1)).epsilon(1e-5));
}

TEST_CASE("graph geodesic length") {
  RealMatrix w2 = RealMatrix::Zero(2, 2);
  w2(0, 1) = w2(1, 0) = 4;
  CHECK(graph_geodesic_length(w2, 0, 1) == doctest::Approx(0.25));

  RealMatrix chain = RealMatrix::Zero(3, 3);
  chain(0, 1) = chain(1, 0) = 1;
  chain(1, 2) = chain(2, 1) = 1;
  CHECK(graph_geodesic_length(chain, 0, 2) == doctest::Approx(2.0));

  RealMatrix disc = RealMatrix::Zero(3, 3);
  disc(0, 1) = disc(1, 0) = 1;
  CHECK(std::isinf(graph_geodesic_length(disc, 0, 2)));
  SpectralTriple t = graph_triple(3, disc);
  CHECK_FALSE(is_finite(t, State::delta(t.algebra, 0), State::delta(t.algebra, 2)).finite);
}

TEST_CASE("solver distance never exceeds the geodesic length") {
  Rng rng(26);
  for (int trial = 0; trial < 5; ++trial) {
    int n = 4;
    RealMatrix w = RealMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (uniform(rng, 0, 1) < 0.7) w(i, j) = w(j, i) = uniform(rng, 0.4, 2.0);
    SpectralTriple t = graph_triple(n, w);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        double geo = graph_geodesic_length(w, i, j);
        auto fin = is_finite(t, State::delta(t.algebra, i), State::delta(t.algebra, j));
        if (!std::isfinite(geo)) {
          CHECK_FALSE(fin.finite);
          continue;
        }
        REQUIRE(fin.finite);
        double d = solver_graph_distance(w, i, j);
        CHECK(d <= geo + 1e-8);
      }
  }
}

TEST_CASE("deleting a graph line never decreases distances") {
  RealMatrix w = RealMatrix::Constant(4, 4, 1.0);
  w.diagonal().setZero();
  double before = solver_graph_distance(w, 2, 3);
  RealMatrix cut = w;
  cut(0, 1) = cut(1, 0) = 0;
  double after = solver_graph_distance(cut, 2, 3);
  CHECK(after >= before - 1e-6);
}

TEST_CASE("M2 eigen distance") {
  BlochPoint p{0.6, 0.0, 0.2}, q{0.0, -0.8, 0.2};
  CHECK(m2_eigen_distance(1, 2, p, q) == doctest::Approx(1.0));
  CHECK(m2_eigen_distance(1, 2, p, p) == doctest::Approx(0.0));
  CHECK(std::isinf(m2_eigen_distance(1, 2, p, BlochPoint{0.6, 0.0, 0.3})));
  CHECK(std::isinf(m2_eigen_distance(1, 1, p, q)));
}

TEST_CASE("moyal ball distance") {
  CHECK(moyal_ball_distance(2, {1, 0, 0}, {-1, 0, 0}) == doctest::Approx(2.0));
  CHECK(moyal_ball_distance(2, {0, 0, 1}, {0, 0, -1}) == doctest::Approx(1.0));
  // sector boundary continuity at |dz| = d_eq
  double a = 0.5;
  double b1 = moyal_ball_distance(2, {0, 0, 0}, {a, 0, a});
  double b2 = moyal_ball_distance(2, {0, 0, 0}, {a, 0, a + 1e-12});
  CHECK(b1 == doctest::Approx(b2).epsilon(1e-9));
  CHECK(b1 == doctest::Approx(a));
  CHECK_THROWS_AS(moyal_ball_distance(-1, {0, 0, 0}, {0, 0, 0}), InvalidInput);
}

TEST_CASE("sphere plus point distances") {
  SUBCASE("orthogonal aligned pair at n=2") {
    SpherePointParams p;
    p.v = (CVector(2) << 1, 0).finished();
    p.xi = (CVector(2) << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0)).finished();
    p.zeta = (CVector(2) << -1 / std::sqrt(2.0), 1 / std::sqrt(2.0)).finished();
    auto [dxz, dcx] = sphere_point_distance(p);
    CHECK(dxz == doctest::Approx(2.0));
    CHECK(std::isinf(dcx));
  }
  SUBCASE("identical states") {
    Rng rng(5);
    SpherePointParams p;
    p.v = (CVector(3) << 0.5, Complex(0, 1), 1).finished();
    p.xi = random_unit_vector(rng, 3);
    p.zeta = p.xi;
    auto [dxz, dcx] = sphere_point_distance(p);
    CHECK(dxz == doctest::Approx(0.0));
  }
  SUBCASE("isolated point sees only the Dirac direction") {
    SpherePointParams p;
    p.v = (CVector(2) << 2, 0).finished();
    p.xi = (CVector(2) << 1, 0).finished();
    p.zeta = (CVector(2) << 1, 0).finished();
    auto [dxz, dcx] = sphere_point_distance(p);
    CHECK(dcx == doctest::Approx(0.5));
  }
  SUBCASE("misaligned pair is infinite") {
    SpherePointParams p;
    p.v = (CVector(3) << 1, 0, 0).finished();
    p.xi = (CVector(3) << 0.6, 0.8, 0).finished();
    p.zeta = (CVector(3) << 0.6, 0, 0.8).finished();
    auto [dxz, dcx] = sphere_point_distance(p);
    CHECK(std::isinf(dxz));
  }
  SUBCASE("solver confirms an aligned pair") {
    CVector v = (CVector(2) << 0.8, Complex(0.3, 0.4)).finished();
    SpectralTriple t = sphere_point_triple(v);
    Rng rng(27);
    CVector xi = random_unit_vector(rng, 2);
    // share the component orthogonal to v up to a common phase: rotate the
    // v-component of xi by an arbitrary angle
    CVector vhat = v / v.norm();
    CVector zeta = xi + (std::polar(1.0, 0.9) - 1.0) * vhat * vhat.dot(xi);
    zeta /= zeta.norm();
    SpherePointParams p{v, xi, zeta};
    auto [expect, dcx] = sphere_point_distance(p);
    State sa = State::pure(t.algebra, 0, xi);
    State sb = State::pure(t.algebra, 0, zeta);
    DistanceResult r = spectral_distance(t, sa, sb, quick());
    REQUIRE(r.finite());
    CHECK(r.value == doctest::Approx(expect).epsilon(1e-5));
  }
  SpherePointParams bad;
  bad.v = CVector::Zero(2);
  bad.xi = (CVector(2) << 1, 0).finished();
  bad.zeta = bad.xi;
  CHECK_THROWS_AS(sphere_point_distance(bad), InvalidInput);
}

TEST_CASE("pythagoras bounds") {
  auto [lo, hi] = pythagoras_bounds(3, 4);
  CHECK(lo == doctest::Approx(5.0));
  CHECK(hi == doctest::Approx(7.0));
  auto [l0, h0] = pythagoras_bounds(2, 0);
  CHECK(l0 == doctest::Approx(2.0));
  CHECK(h0 == doctest::Approx(2.0));
  CHECK_THROWS_AS(pythagoras_bounds(-1, 1), InvalidInput);
}

TEST_CASE("product distances obey the pythagoras sandwich") {
  SpectralTriple t1 = two_point_triple(1.0);
  SpectralTriple t2 = two_point_triple(2.0);
  SpectralTriple prod = product_triples(t1, t2);
  State a = product_state(t1, t2, State::delta(t1.algebra, 0), State::delta(t2.algebra, 0));
  State b = product_state(t1, t2, State::delta(t1.algebra, 1), State::delta(t2.algebra, 1));
  double d1 = 1.0, d2 = 0.5;
  DistanceResult r = spectral_distance(prod, a, b, quick());
  REQUIRE(r.finite());
  auto [lo, hi] = pythagoras_bounds(d1, d2);
  CHECK(r.value >= lo - 1e-5);
  CHECK(r.value <= std::min(hi, std::sqrt(2.0) * lo) + 1e-5);

  // single-factor difference reduces to the factor distance
  State c = product_state(t1, t2, State::delta(t1.algebra, 1), State::delta(t2.algebra, 0));
  DistanceResult rc = spectral_distance(prod, a, c, quick());
  CHECK(rc.value == doctest::Approx(d1).epsilon(1e-6));

  // doubled two-point factor: exact pythagoras
  CHECK(r.value * r.value == doctest::Approx(d1 * d1 + d2 * d2).epsilon(1e-5));
}

TEST_CASE("diagonal M_n finiteness matches the per-eigenspace criterion") {
  // D = diag(d,d,e): pure states are finitely separated iff the norms of the
  // components in each eigenspace agree and in-eigenspace parts align in phase
  Algebra alg({3});
  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 1.0, 1.0, 2.5;
  SpectralTriple t{alg, defining_representation(alg), d, std::nullopt};
  Rng rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    CVector xi = random_unit_vector(rng, 3), zeta = random_unit_vector(rng, 3);
    bool criterion;
    {
      double nx = xi.head(2).norm(), nz = zeta.head(2).norm();
      bool same_mod = std::abs(nx - nz) < 1e-10 && std::abs(std::abs(xi[2]) - std::abs(zeta[2])) < 1e-10;
      bool phase_ok = true;
      if (same_mod && nx > 1e-10) {
        Complex inner = zeta.head(2).dot(xi.head(2));
        Complex phase = std::abs(inner) > 0 ? inner / std::abs(inner) : Complex(1);
        phase_ok = (xi.head(2) - phase * zeta.head(2)).norm() < 1e-10;
      }
      criterion = same_mod && phase_ok;
    }
    bool verdict = is_finite(t, State::pure(alg, 0, xi), State::pure(alg, 0, zeta)).finite;
    CHECK(verdict == criterion);
  }
  // a genuinely aligned pair must be finite
  CVector xi = random_unit_vector(rng, 3);
  CVector zeta = xi;
  zeta.head(2) *= std::polar(1.0, 0.9);
  CHECK(is_finite(t, State::pure(alg, 0, xi), State::pure(alg, 0, zeta)).finite);
}
