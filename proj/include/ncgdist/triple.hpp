#pragma once

#include <cmath>
#include <optional>

#include "ncgdist/algebra.hpp"

namespace ncg {

namespace detail {

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Operator of left multiplication by m on column-major vectorized matrices.
inline Matrix left_mult_op(const Matrix& m, Eigen::Index ncols) {
  return kron(Matrix::Identity(ncols, ncols), m);
}

// Operator of right multiplication by m.
inline Matrix right_mult_op(const Matrix& m, Eigen::Index nrows) {
  return kron(m.transpose(), Matrix::Identity(nrows, nrows));
}

}  // namespace detail

/// Extensional representation: one operator image per Hermitian basis
/// element, extended complex-linearly to the whole algebra.
struct Representation {
  int hilbert_dim = 0;
  std::vector<Matrix> images;

  Matrix apply(const Algebra& alg, const AlgebraElement& a) const {
    auto basis = hermitian_basis(alg);
    Matrix out = Matrix::Zero(hilbert_dim, hilbert_dim);
    for (size_t j = 0; j < basis.size(); ++j) {
      Complex z = 0;
      for (size_t b = 0; b < basis[j].mats.size(); ++b)
        z += (basis[j].mats[b].adjoint() * a.mats[b]).trace();
      if (z != Complex(0)) out += z * images[j];
    }
    return out;
  }

  Matrix apply_coords(const Vector& coords) const {
    Matrix out = Matrix::Zero(hilbert_dim, hilbert_dim);
    for (Eigen::Index j = 0; j < coords.size(); ++j)
      if (coords[j] != 0.0) out += coords[j] * images[static_cast<size_t>(j)];
    return out;
  }

  /// Spot-check *-preservation and multiplicativity on random pairs.
  void validate(const Algebra& alg, Rng& rng, int samples = 4, double tol = 1e-9) const {
    Matrix unit = apply(alg, AlgebraElement::unit(alg));
    if ((unit - Matrix::Identity(hilbert_dim, hilbert_dim)).cwiseAbs().maxCoeff() > tol)
      throw InvalidInput("representation does not map the unit to the identity");
    for (int s = 0; s < samples; ++s) {
      auto a = AlgebraElement::zero(alg);
      auto b = AlgebraElement::zero(alg);
      auto ab = AlgebraElement::zero(alg);
      auto astar = AlgebraElement::zero(alg);
      for (size_t k = 0; k < a.mats.size(); ++k) {
        for (Eigen::Index i = 0; i < a.mats[k].rows(); ++i)
          for (Eigen::Index j = 0; j < a.mats[k].cols(); ++j) {
            a.mats[k](i, j) = Complex(gaussian(rng), gaussian(rng));
            b.mats[k](i, j) = Complex(gaussian(rng), gaussian(rng));
          }
        ab.mats[k] = a.mats[k] * b.mats[k];
        astar.mats[k] = a.mats[k].adjoint();
      }
      double scale = std::max(1.0, a.frob_norm() * b.frob_norm());
      if ((apply(alg, ab) - apply(alg, a) * apply(alg, b)).cwiseAbs().maxCoeff() > tol * scale)
        throw InvalidInput("representation is not multiplicative");
      if ((apply(alg, astar) - apply(alg, a).adjoint()).cwiseAbs().maxCoeff() > tol * scale)
        throw InvalidInput("representation is not *-preserving");
    }
  }
};

struct SpectralTriple {
  Algebra algebra;
  Representation rep;
  Matrix dirac;
  std::optional<Matrix> grading;

  void validate() const {
    if (!is_hermitian(dirac, 1e-12 * std::max(1.0, dirac.cwiseAbs().maxCoeff())))
      throw InvalidInput("Dirac operator is not Hermitian");
    if (grading) {
      const Matrix& g = *grading;
      Matrix id = Matrix::Identity(g.rows(), g.cols());
      if ((g * g - id).cwiseAbs().maxCoeff() > 1e-10) throw InvalidInput("grading^2 != I");
      if ((g * dirac + dirac * g).cwiseAbs().maxCoeff() >
          1e-10 * std::max(1.0, dirac.cwiseAbs().maxCoeff()))
        throw InvalidInput("grading does not anticommute with the Dirac operator");
      for (const auto& img : rep.images)
        if ((g * img - img * g).cwiseAbs().maxCoeff() > 1e-10)
          throw InvalidInput("grading does not commute with the representation");
    }
  }
};

// ---------------------------------------------------------------------------
// Named constructors.

/// C^N (or any block algebra) in its defining block-diagonal action.
inline Representation defining_representation(const Algebra& alg) {
  int dim = 0;
  for (int n : alg.blocks) dim += n;
  Representation rep;
  rep.hilbert_dim = dim;
  for (const auto& e : hermitian_basis(alg)) {
    Matrix img = Matrix::Zero(dim, dim);
    int off = 0;
    for (size_t b = 0; b < e.mats.size(); ++b) {
      img.block(off, off, e.mats[b].rows(), e.mats[b].cols()) = e.mats[b];
      off += static_cast<int>(e.mats[b].rows());
    }
    rep.images.push_back(std::move(img));
  }
  return rep;
}

/// Single block M_N acting by left multiplication on M_N tensor C^k.
inline Representation left_mult_tensor_representation(const Algebra& alg, int copies) {
  if (alg.blocks.size() != 1) throw InvalidInput("left-mult representation needs one block");
  int n = alg.blocks[0];
  Representation rep;
  rep.hilbert_dim = n * n * copies;
  Matrix idk = Matrix::Identity(copies, copies);
  for (const auto& e : hermitian_basis(alg))
    rep.images.push_back(detail::kron(idk, detail::left_mult_op(e.mats[0], n)));
  return rep;
}

/// Seminorm L_D(a) = ||[D, pi(a)]||.
inline double seminorm(const SpectralTriple& t, const AlgebraElement& a) {
  Matrix pa = t.rep.apply(t.algebra, a);
  return operator_norm(t.dirac * pa - pa * t.dirac);
}

/// Precomputed commutators [D, pi(E_j)] for each Hermitian basis element;
/// the workhorse of kernel computation and the distance solver.
struct CommutatorMap {
  std::vector<Matrix> K;
  int hilbert_dim = 0;

  static CommutatorMap of(const SpectralTriple& t) {
    CommutatorMap cm;
    cm.hilbert_dim = t.rep.hilbert_dim;
    cm.K.reserve(t.rep.images.size());
    for (const auto& img : t.rep.images) cm.K.push_back(t.dirac * img - img * t.dirac);
    return cm;
  }

  Eigen::Index dim() const { return static_cast<Eigen::Index>(K.size()); }

  Matrix assemble(const Vector& c) const {
    Matrix m = Matrix::Zero(hilbert_dim, hilbert_dim);
    for (Eigen::Index j = 0; j < c.size(); ++j)
      if (c[j] != 0.0) m += c[j] * K[static_cast<size_t>(j)];
    return m;
  }

  double seminorm(const Vector& c) const { return operator_norm(assemble(c)); }

  /// Gram matrix Re<K_i, K_j>; its null space is Ker L_D in coordinates.
  RealMatrix gram() const {
    Eigen::Index n = dim();
    RealMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i; j < n; ++j) {
        double v = frob_inner(K[static_cast<size_t>(i)], K[static_cast<size_t>(j)]);
        g(i, j) = v;
        g(j, i) = v;
      }
    return g;
  }
};

struct KernelBasis {
  std::vector<Vector> coords;    // orthonormal coordinate vectors spanning Ker L_D
  RealMatrix complement;         // herm_dim x (herm_dim - rank), orthonormal complement
  double tolerance = 0;

  int dimension() const { return static_cast<int>(coords.size()); }
};

/// Null space of c -> [D, pi(c)] by eigenvalue thresholding of the Gram
/// matrix at (tol * largest singular value)^2.
inline KernelBasis seminorm_kernel(const CommutatorMap& cm, double tol = 1e-9) {
  if (tol <= 0) throw InvalidInput("kernel tolerance must be positive");
  RealMatrix g = cm.gram();
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(g);
  const Vector& ev = es.eigenvalues();
  double smax = std::sqrt(std::max(0.0, ev.maxCoeff()));
  double thresh = tol * std::max(smax, 1e-300);
  KernelBasis kb;
  kb.tolerance = thresh;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    double s = std::sqrt(std::max(0.0, ev[i]));
    if (s <= thresh)
      kb.coords.push_back(es.eigenvectors().col(i));
    else
      keep.push_back(i);
  }
  kb.complement.resize(g.rows(), static_cast<Eigen::Index>(keep.size()));
  for (size_t k = 0; k < keep.size(); ++k)
    kb.complement.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(keep[k]);
  return kb;
}

inline KernelBasis seminorm_kernel(const SpectralTriple& t, double tol = 1e-9) {
  return seminorm_kernel(CommutatorMap::of(t), tol);
}

// ---------------------------------------------------------------------------
// Builders.

/// N-point graph triple: C^N diagonal on C^N with the weighted incidence
/// matrix as Dirac operator.
inline SpectralTriple graph_triple(int n, const RealMatrix& weights) {
  if (n < 1 || weights.rows() != n || weights.cols() != n)
    throw InvalidInput("graph weight matrix must be N x N");
  if ((weights - weights.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw InvalidInput("graph weight matrix must be symmetric");
  for (int i = 0; i < n; ++i)
    if (weights(i, i) != 0.0) throw InvalidInput("graph weight matrix must have zero diagonal");
  SpectralTriple t{Algebra(std::vector<int>(n, 1)), defining_representation(Algebra(std::vector<int>(n, 1))),
                   weights.cast<Complex>(), std::nullopt};
  return t;
}

/// Two-point space with coupling m, graded by diag(1,-1).
inline SpectralTriple two_point_triple(double m) {
  RealMatrix w(2, 2);
  w << 0, m, m, 0;
  SpectralTriple t = graph_triple(2, w);
  Matrix g(2, 2);
  g << 1, 0, 0, -1;
  t.grading = g;
  return t;
}

/// M_2 in the defining representation with diagonal Dirac.
inline SpectralTriple m2_eigen_triple(double d1, double d2) {
  Algebra alg({2});
  Matrix d(2, 2);
  d << d1, 0, 0, d2;
  return SpectralTriple{alg, defining_representation(alg), d, std::nullopt};
}

/// M_n + C on C^(n+1) with off-diagonal Dirac column v.
inline SpectralTriple sphere_point_triple(const CVector& v) {
  int n = static_cast<int>(v.size());
  if (n < 1 || v.norm() == 0) throw InvalidInput("sphere+point triple needs nonzero v");
  Algebra alg({n, 1});
  Matrix d = Matrix::Zero(n + 1, n + 1);
  d.block(0, n, n, 1) = v;
  d.block(n, 0, 1, n) = v.adjoint();
  return SpectralTriple{alg, defining_representation(alg), d, std::nullopt};
}

/// Finite truncation of the Moyal-plane triple: M_N acts by left
/// multiplication on M_N tensor C^2, Dirac built from the weighted lowering
/// matrix X with X_{m+1,m} = sqrt(m+1)/sqrt(theta).
inline SpectralTriple truncated_moyal_triple(int n, double theta) {
  if (n < 2) throw InvalidInput("truncated Moyal triple needs N >= 2");
  if (theta <= 0) throw InvalidInput("deformation parameter theta must be positive");
  Algebra alg({n});
  Representation rep = left_mult_tensor_representation(alg, 2);
  Matrix x = Matrix::Zero(n, n);
  for (int m = 0; m + 1 < n; ++m) x(m + 1, m) = std::sqrt(static_cast<double>(m + 1) / theta);
  Matrix ad_xdag = detail::left_mult_op(x.adjoint(), n) - detail::right_mult_op(x.adjoint(), n);
  Matrix ad_x = detail::left_mult_op(x, n) - detail::right_mult_op(x, n);
  int nn = n * n;
  Matrix d = Matrix::Zero(2 * nn, 2 * nn);
  Complex c(0, -std::sqrt(2.0));
  d.block(0, nn, nn, nn) = c * ad_xdag;
  d.block(nn, 0, nn, nn) = -c * ad_x;
  Matrix g = Matrix::Zero(2 * nn, 2 * nn);
  g.block(0, 0, nn, nn) = Matrix::Identity(nn, nn);
  g.block(nn, nn, nn, nn) = -Matrix::Identity(nn, nn);
  return SpectralTriple{alg, std::move(rep), std::move(d), std::move(g)};
}

/// Graded product: A_1 tensor A_2 on H_1 tensor H_2 with
/// D = D_1 x I + Gamma_1 x D_2.
inline SpectralTriple product_triples(const SpectralTriple& t1, const SpectralTriple& t2) {
  if (!t1.grading) throw InvalidInput("product requires a grading on the first factor");
  std::vector<int> blocks;
  for (int ni : t1.algebra.blocks)
    for (int mj : t2.algebra.blocks) blocks.push_back(ni * mj);
  Algebra alg(std::move(blocks));

  auto basis1 = hermitian_basis(t1.algebra);
  auto basis2 = hermitian_basis(t2.algebra);
  int h1 = t1.rep.hilbert_dim, h2 = t2.rep.hilbert_dim;

  // Tensor images pi1(E_p) x pi2(E_q) form a complex basis of the image of
  // the product algebra; expand each product basis element over it.
  Representation rep;
  rep.hilbert_dim = h1 * h2;
  auto pbasis = hermitian_basis(alg);
  for (const auto& e : pbasis) {
    Matrix img = Matrix::Zero(h1 * h2, h1 * h2);
    // locate the single nonzero product block of e
    size_t blk = 0;
    while (blk < e.mats.size() && e.mats[blk].cwiseAbs().maxCoeff() == 0.0) ++blk;
    size_t i = blk / t2.algebra.blocks.size();
    size_t j = blk % t2.algebra.blocks.size();
    for (size_t p = 0; p < basis1.size(); ++p) {
      const Matrix& b1 = basis1[p].mats[i];
      if (b1.cwiseAbs().maxCoeff() == 0.0) continue;
      for (size_t q = 0; q < basis2.size(); ++q) {
        const Matrix& b2 = basis2[q].mats[j];
        if (b2.cwiseAbs().maxCoeff() == 0.0) continue;
        Complex z = (detail::kron(b1, b2).adjoint() * e.mats[blk]).trace();
        if (std::abs(z) > 1e-15)
          img += z * detail::kron(t1.rep.images[p], t2.rep.images[q]);
      }
    }
    rep.images.push_back(std::move(img));
  }

  Matrix dirac = detail::kron(t1.dirac, Matrix::Identity(h2, h2)) +
                 detail::kron(*t1.grading, t2.dirac);
  std::optional<Matrix> grading;
  if (t2.grading) grading = detail::kron(*t1.grading, *t2.grading);
  return SpectralTriple{std::move(alg), std::move(rep), std::move(dirac), std::move(grading)};
}

/// Separable product state s1 x s2 on the product algebra.
inline State product_state(const SpectralTriple& t1, const SpectralTriple& t2, const State& s1,
                           const State& s2) {
  State out;
  for (size_t i = 0; i < t1.algebra.blocks.size(); ++i)
    for (size_t j = 0; j < t2.algebra.blocks.size(); ++j) {
      out.weights.push_back(s1.weights[i] * s2.weights[j]);
      out.densities.push_back(detail::kron(s1.densities[i], s2.densities[j]));
    }
  return out;
}

/// Compression by a projection commuting with D: (A_e, eH, eDe). The result
/// is triple-like: the compressed images need not be multiplicative.
inline SpectralTriple project_triple(const SpectralTriple& t, const Matrix& e) {
  double scale = std::max(1.0, e.cwiseAbs().maxCoeff());
  if (!is_hermitian(e, 1e-10 * scale) || (e * e - e).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw InvalidInput("projection precondition violated: e must satisfy e = e* = e^2");
  double dscale = std::max(1.0, t.dirac.cwiseAbs().maxCoeff());
  if ((e * t.dirac - t.dirac * e).cwiseAbs().maxCoeff() > 1e-10 * dscale)
    throw InvalidInput("projection precondition violated: e must commute with the Dirac operator");

  Eigen::SelfAdjointEigenSolver<Matrix> es(e);
  std::vector<Eigen::Index> range;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()[i] > 0.5) range.push_back(i);
  Matrix v(e.rows(), static_cast<Eigen::Index>(range.size()));
  for (size_t k = 0; k < range.size(); ++k) v.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(range[k]);

  Representation rep;
  rep.hilbert_dim = static_cast<int>(range.size());
  for (const auto& img : t.rep.images) rep.images.push_back(v.adjoint() * img * v);
  Matrix de = v.adjoint() * t.dirac * v;
  return SpectralTriple{t.algebra, std::move(rep), std::move(de), std::nullopt};
}

/// Pullback of a state by the inner automorphism Ad u (per-block unitaries):
/// densities transform as rho -> u* rho u.
inline State state_pullback_adu(const Algebra& alg, const State& s,
                                const std::vector<Matrix>& u) {
  State out = s;
  out.pure_vector.reset();
  for (int b = 0; b < alg.num_blocks(); ++b)
    out.densities[b] = u[b].adjoint() * s.densities[b] * u[b];
  return out;
}

}  // namespace ncg
