#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ncgdist/triple.hpp>

using namespace ncg;

TEST_CASE("defining representation validates") {
  Rng rng(1);
  for (auto blocks : {std::vector<int>{2}, {1, 1}, {2, 1}, {3, 2}}) {
    Algebra alg(blocks);
    auto rep = defining_representation(alg);
    CHECK_NOTHROW(rep.validate(alg, rng));
  }
}

TEST_CASE("left multiplication representation validates") {
  Rng rng(2);
  Algebra alg({3});
  auto rep = left_mult_tensor_representation(alg, 2);
  CHECK(rep.hilbert_dim == 18);
  CHECK_NOTHROW(rep.validate(alg, rng));
}

TEST_CASE("seminorm reference values") {
  SUBCASE("two point coupling") {
    SpectralTriple t = two_point_triple(3.0);
    auto a = AlgebraElement::zero(t.algebra);
    a.mats[0](0, 0) = 1;
    CHECK(seminorm(t, a) == doctest::Approx(3.0));
    CHECK(seminorm(t, AlgebraElement::unit(t.algebra)) == doctest::Approx(0.0));
  }
  SUBCASE("M2 diagonal Dirac off-diagonal element") {
    SpectralTriple t = m2_eigen_triple(1.5, -0.5);
    auto a = AlgebraElement::zero(t.algebra);
    a.mats[0](0, 1) = Complex(0.3, 0.4);
    CHECK(seminorm(t, a) == doctest::Approx(0.5 * 2.0));
  }
  SUBCASE("homogeneity and triangle inequality") {
    SpectralTriple t = m2_eigen_triple(0.7, 2.1);
    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
      Vector ca(4), cb(4);
      for (int i = 0; i < 4; ++i) {
        ca[i] = gaussian(rng);
        cb[i] = gaussian(rng);
      }
      auto a = element_from_coords(t.algebra, ca);
      auto b = element_from_coords(t.algebra, cb);
      double alpha = gaussian(rng);
      CHECK(seminorm(t, alpha * a) == doctest::Approx(std::abs(alpha) * seminorm(t, a)));
      auto sum = a;
      sum += b;
      CHECK(seminorm(t, sum) <= seminorm(t, a) + seminorm(t, b) + 1e-9);
    }
  }
}

TEST_CASE("seminorm kernel dimensions") {
  SUBCASE("fully coupled three points") {
    RealMatrix w(3, 3);
    w << 0, 1, 2, 1, 0, 3, 2, 3, 0;
    auto kb = seminorm_kernel(graph_triple(3, w));
    CHECK(kb.dimension() == 1);
  }
  SUBCASE("point three decoupled") {
    RealMatrix w = RealMatrix::Zero(3, 3);
    w(0, 1) = w(1, 0) = 1;
    auto kb = seminorm_kernel(graph_triple(3, w));
    CHECK(kb.dimension() == 2);
    // diag(0,0,1) must lie in the kernel span
    Vector target(3);
    target << 0, 0, 1;
    Vector residual = target;
    for (const auto& k : kb.coords) residual -= k.dot(target) * k;
    CHECK(residual.norm() < 1e-9);
  }
  SUBCASE("M2 diagonal Dirac keeps diagonal matrices") {
    auto kb = seminorm_kernel(m2_eigen_triple(1.0, 2.0));
    CHECK(kb.dimension() == 2);
  }
  SUBCASE("unit always in kernel") {
    SpectralTriple t = truncated_moyal_triple(3, 1.0);
    auto kb = seminorm_kernel(t);
    Vector unit_coords = coords_of(t.algebra, AlgebraElement::unit(t.algebra));
    unit_coords.normalize();
    Vector residual = unit_coords;
    for (const auto& k : kb.coords) residual -= k.dot(unit_coords) * k;
    CHECK(residual.norm() < 1e-9);
  }
  SUBCASE("kernel elements have tiny seminorm") {
    SpectralTriple t = m2_eigen_triple(0.4, 1.9);
    auto kb = seminorm_kernel(t);
    for (const auto& k : kb.coords)
      CHECK(seminorm(t, element_from_coords(t.algebra, k)) <= 10 * kb.tolerance);
  }
}

TEST_CASE("graph triple input validation") {
  RealMatrix w(2, 2);
  w << 0, 1, 2, 0;
  CHECK_THROWS_AS(graph_triple(2, w), InvalidInput);
  RealMatrix d(2, 2);
  d << 1, 0, 0, 1;
  CHECK_THROWS_AS(graph_triple(2, d), InvalidInput);
}

TEST_CASE("triple invariants") {
  for (const SpectralTriple& t :
       {two_point_triple(1.0), truncated_moyal_triple(2, 2.0), truncated_moyal_triple(4, 0.7)})
    CHECK_NOTHROW(t.validate());
}

TEST_CASE("truncated moyal structure") {
  SpectralTriple t = truncated_moyal_triple(2, 2.0);
  CHECK(t.rep.hilbert_dim == 8);
  // X reduces to (1/sqrt(theta)) e_10 at N=2: Dirac entries carry 1/sqrt(theta)*sqrt(2)
  SpectralTriple t2 = truncated_moyal_triple(2, 0.5);
  double m1 = t.dirac.cwiseAbs().maxCoeff();
  double m2 = t2.dirac.cwiseAbs().maxCoeff();
  CHECK(m2 / m1 == doctest::Approx(2.0));
  CHECK_THROWS_AS(truncated_moyal_triple(1, 1.0), InvalidInput);
  CHECK_THROWS_AS(truncated_moyal_triple(3, -1.0), InvalidInput);
}

TEST_CASE("product of two two-point triples") {
  SpectralTriple t1 = two_point_triple(1.5);
  SpectralTriple t2 = two_point_triple(0.75);
  SpectralTriple prod = product_triples(t1, t2);
  CHECK(prod.algebra.blocks == std::vector<int>{1, 1, 1, 1});
  CHECK(prod.rep.hilbert_dim == 4);
  CHECK_NOTHROW(prod.validate());
  Rng rng(5);
  CHECK_NOTHROW(prod.rep.validate(prod.algebra, rng));

  Eigen::SelfAdjointEigenSolver<Matrix> es(prod.dirac, Eigen::EigenvaluesOnly);
  double expect = std::sqrt(1.5 * 1.5 + 0.75 * 0.75);
  Vector ev = es.eigenvalues();
  CHECK(ev[0] == doctest::Approx(-expect));
  CHECK(ev[1] == doctest::Approx(-expect));
  CHECK(ev[2] == doctest::Approx(expect));
  CHECK(ev[3] == doctest::Approx(expect));
}

TEST_CASE("product requires a grading on the first factor") {
  SpectralTriple t1 = m2_eigen_triple(1, 2);
  CHECK_THROWS_AS(product_triples(t1, two_point_triple(1.0)), InvalidInput);
}

TEST_CASE("project triple preconditions and identity projection") {
  SpectralTriple t = two_point_triple(2.0);
  Matrix id = Matrix::Identity(2, 2);
  SpectralTriple same = project_triple(t, id);
  CHECK(same.rep.hilbert_dim == 2);
  CHECK((same.dirac - t.dirac).cwiseAbs().maxCoeff() < 1e-10);

  Matrix notproj = 0.5 * id;
  CHECK_THROWS_WITH_AS(project_triple(t, notproj),
                       doctest::Contains("e must satisfy e = e* = e^2"), InvalidInput);
  Matrix noncomm(2, 2);
  noncomm << 1, 0, 0, 0;
  CHECK_THROWS_WITH_AS(project_triple(t, noncomm),
                       doctest::Contains("commute with the Dirac operator"), InvalidInput);
}

TEST_CASE("spectral projection of a diagonal graph Dirac") {
  RealMatrix w = RealMatrix::Zero(3, 3);
  w(0, 1) = w(1, 0) = 1;
  SpectralTriple t = graph_triple(3, w);
  Eigen::SelfAdjointEigenSolver<Matrix> es(t.dirac);
  // project on the eigenspace of the top eigenvalue
  CVector v = es.eigenvectors().col(2);
  Matrix e = v * v.adjoint();
  SpectralTriple sub = project_triple(t, e);
  CHECK(sub.rep.hilbert_dim == 1);
  CHECK(sub.dirac(0, 0).real() == doctest::Approx(es.eigenvalues()[2]));
}
