#pragma once

#include <cmath>
#include <optional>
#include <utility>

#include "ncgdist/core.hpp"

namespace ncg {

/// A finite direct sum of complex matrix blocks M_{n_1} + ... + M_{n_B}.
struct Algebra {
  std::vector<int> blocks;

  explicit Algebra(std::vector<int> dims) : blocks(std::move(dims)) {
    if (blocks.empty()) throw InvalidInput("algebra needs at least one block");
    for (int n : blocks)
      if (n < 1) throw InvalidInput("block dimensions must be positive");
  }

  int num_blocks() const { return static_cast<int>(blocks.size()); }

  /// Real dimension of the Hermitian part, sum of n_b^2.
  int herm_dim() const {
    int d = 0;
    for (int n : blocks) d += n * n;
    return d;
  }

  bool operator==(const Algebra& o) const { return blocks == o.blocks; }
};

/// One matrix per block.
struct AlgebraElement {
  std::vector<Matrix> mats;

  static AlgebraElement zero(const Algebra& alg) {
    AlgebraElement e;
    for (int n : alg.blocks) e.mats.push_back(Matrix::Zero(n, n));
    return e;
  }

  static AlgebraElement unit(const Algebra& alg) {
    AlgebraElement e;
    for (int n : alg.blocks) e.mats.push_back(Matrix::Identity(n, n));
    return e;
  }

  bool shape_matches(const Algebra& alg) const {
    if (mats.size() != alg.blocks.size()) return false;
    for (size_t b = 0; b < mats.size(); ++b)
      if (mats[b].rows() != alg.blocks[b] || mats[b].cols() != alg.blocks[b]) return false;
    return true;
  }

  bool hermitian(double tol = kHermTol) const {
    for (const auto& m : mats)
      if (!is_hermitian(m, tol)) return false;
    return true;
  }

  AlgebraElement& operator+=(const AlgebraElement& o) {
    for (size_t b = 0; b < mats.size(); ++b) mats[b] += o.mats[b];
    return *this;
  }

  friend AlgebraElement operator*(double s, AlgebraElement e) {
    for (auto& m : e.mats) m *= s;
    return e;
  }

  double frob_norm() const {
    double s = 0;
    for (const auto& m : mats) s += m.squaredNorm();
    return std::sqrt(s);
  }
};

inline double frob_inner(const AlgebraElement& a, const AlgebraElement& b) {
  double s = 0;
  for (size_t i = 0; i < a.mats.size(); ++i) s += frob_inner(a.mats[i], b.mats[i]);
  return s;
}

/// Fixed orthonormal coordinate basis of the Hermitian part: per block the
/// diagonal units, then for each p<q the symmetric and antisymmetric pairs,
/// each unit Frobenius norm. Deterministic order.
inline std::vector<AlgebraElement> hermitian_basis(const Algebra& alg) {
  std::vector<AlgebraElement> basis;
  basis.reserve(alg.herm_dim());
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int b = 0; b < alg.num_blocks(); ++b) {
    int n = alg.blocks[b];
    for (int p = 0; p < n; ++p) {
      auto e = AlgebraElement::zero(alg);
      e.mats[b](p, p) = 1.0;
      basis.push_back(std::move(e));
    }
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        auto es = AlgebraElement::zero(alg);
        es.mats[b](p, q) = inv_sqrt2;
        es.mats[b](q, p) = inv_sqrt2;
        basis.push_back(std::move(es));
        auto ea = AlgebraElement::zero(alg);
        ea.mats[b](p, q) = Complex(0, inv_sqrt2);
        ea.mats[b](q, p) = Complex(0, -inv_sqrt2);
        basis.push_back(std::move(ea));
      }
    }
  }
  return basis;
}

/// Rebuild an element from coordinates in the Hermitian basis.
inline AlgebraElement element_from_coords(const Algebra& alg, const Vector& coords) {
  auto basis = hermitian_basis(alg);
  if (coords.size() != static_cast<Eigen::Index>(basis.size()))
    throw InvalidInput("coordinate vector does not match herm_dim");
  auto e = AlgebraElement::zero(alg);
  for (size_t j = 0; j < basis.size(); ++j) e += coords[static_cast<Eigen::Index>(j)] * basis[j];
  return e;
}

inline Vector coords_of(const Algebra& alg, const AlgebraElement& a) {
  auto basis = hermitian_basis(alg);
  Vector c(static_cast<Eigen::Index>(basis.size()));
  for (size_t j = 0; j < basis.size(); ++j) c[static_cast<Eigen::Index>(j)] = frob_inner(basis[j], a);
  return c;
}

/// A state: convex weights over blocks with one density matrix per block.
/// A pure state additionally remembers its projective vector.
struct State {
  std::vector<double> weights;
  std::vector<Matrix> densities;
  std::optional<std::pair<int, CVector>> pure_vector;  // (block, vector)

  bool is_pure() const { return pure_vector.has_value(); }

  void validate(const Algebra& alg) const {
    if (weights.size() != alg.blocks.size() || densities.size() != alg.blocks.size())
      throw InvalidInput("state block count mismatch");
    double wsum = 0;
    for (size_t b = 0; b < weights.size(); ++b) {
      if (weights[b] < -kTraceTol) throw InvalidInput("negative block weight");
      wsum += weights[b];
      const Matrix& rho = densities[b];
      if (rho.rows() != alg.blocks[b] || rho.cols() != alg.blocks[b])
        throw InvalidInput("density shape mismatch");
      if (!is_hermitian(rho, 1e-10)) throw InvalidInput("density not Hermitian");
      if (std::abs(rho.trace().real() - 1.0) > 1e-9) throw InvalidInput("density trace != 1");
      Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
      if (es.eigenvalues().minCoeff() < kPsdTol) throw InvalidInput("density not PSD");
    }
    if (std::abs(wsum - 1.0) > 1e-9) throw InvalidInput("weights do not sum to 1");
  }

  /// Pure vector state in one block; the stored vector is phase-normalized so
  /// its first nonzero component is real positive.
  static State pure(const Algebra& alg, int block, CVector xi) {
    if (block < 0 || block >= alg.num_blocks()) throw InvalidInput("bad block index");
    if (xi.size() != alg.blocks[block]) throw InvalidInput("pure vector dimension mismatch");
    double nrm = xi.norm();
    if (nrm == 0) throw InvalidInput("zero pure vector");
    xi /= nrm;
    for (Eigen::Index i = 0; i < xi.size(); ++i) {
      if (std::abs(xi[i]) > 1e-14) {
        xi *= std::conj(xi[i]) / std::abs(xi[i]);
        break;
      }
    }
    State s;
    for (int b = 0; b < alg.num_blocks(); ++b) {
      s.weights.push_back(b == block ? 1.0 : 0.0);
      if (b == block)
        s.densities.push_back(xi * xi.adjoint());
      else
        s.densities.push_back(Matrix::Identity(alg.blocks[b], alg.blocks[b]) /
                              static_cast<double>(alg.blocks[b]));
    }
    s.pure_vector = {block, xi};
    return s;
  }

  static State mixed(std::vector<double> w, std::vector<Matrix> rhos) {
    State s;
    s.weights = std::move(w);
    s.densities = std::move(rhos);
    return s;
  }

  /// Point evaluation delta_i on a diagonal algebra C^N (blocks all 1).
  static State delta(const Algebra& alg, int i) {
    return pure(alg, i, CVector::Ones(1));
  }
};

inline Complex eval_state(const Algebra& alg, const State& s, const AlgebraElement& a) {
  if (!a.shape_matches(alg)) throw InvalidInput("element shape mismatch in eval_state");
  Complex v = 0;
  for (int b = 0; b < alg.num_blocks(); ++b)
    if (s.weights[b] != 0.0) v += s.weights[b] * (s.densities[b] * a.mats[b]).trace();
  return v;
}

/// Coordinates of the linear functional a -> s(a) in the Hermitian basis.
inline Vector state_coords(const Algebra& alg, const State& s) {
  auto basis = hermitian_basis(alg);
  Vector c(static_cast<Eigen::Index>(basis.size()));
  for (size_t j = 0; j < basis.size(); ++j)
    c[static_cast<Eigen::Index>(j)] = eval_state(alg, s, basis[j]).real();
  return c;
}

/// Convex mix lambda*s0 + (1-lambda)*s1, renormalizing block densities.
inline State mix_states(const Algebra& alg, const State& s0, const State& s1, double lambda) {
  if (lambda < 0.0 || lambda > 1.0) throw InvalidInput("mixing parameter outside [0,1]");
  State out;
  for (int b = 0; b < alg.num_blocks(); ++b) {
    double w = lambda * s0.weights[b] + (1 - lambda) * s1.weights[b];
    Matrix rho = lambda * s0.weights[b] * s0.densities[b] +
                 (1 - lambda) * s1.weights[b] * s1.densities[b];
    if (w > 1e-14)
      rho /= w;
    else
      rho = Matrix::Identity(alg.blocks[b], alg.blocks[b]) / static_cast<double>(alg.blocks[b]);
    out.weights.push_back(w);
    out.densities.push_back(std::move(rho));
  }
  if (lambda == 1.0 && s0.pure_vector) out.pure_vector = s0.pure_vector;
  if (lambda == 0.0 && s1.pure_vector) out.pure_vector = s1.pure_vector;
  return out;
}

/// Reconstruct a state on `alg` from the values it takes on the Hermitian
/// basis (e.g. a compressed functional). Caller guarantees positivity.
inline State state_from_coords(const Algebra& alg, const Vector& coords) {
  auto e = element_from_coords(alg, coords);
  State s;
  for (int b = 0; b < alg.num_blocks(); ++b) {
    // Tr(rho E) is the Frobenius pairing <E, rho> for Hermitian E, so the
    // coordinate expansion reassembles w_b * rho_b directly.
    Matrix wrho = e.mats[b];
    double w = wrho.trace().real();
    s.weights.push_back(w);
    if (w > 1e-14)
      s.densities.push_back(wrho / w);
    else
      s.densities.push_back(Matrix::Identity(alg.blocks[b], alg.blocks[b]) /
                            static_cast<double>(alg.blocks[b]));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Bloch coordinates for single-block M_2.

struct BlochPoint {
  double x = 0, y = 0, z = 0;

  double r() const { return std::hypot(x, y); }
  double phase() const { return std::atan2(y, x); }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline void require_m2(const Algebra& alg) {
  if (alg.blocks.size() != 1 || alg.blocks[0] != 2)
    throw InvalidInput("operation requires the single-block M_2 algebra");
}

inline BlochPoint bloch_of_state(const Algebra& alg, const State& s) {
  require_m2(alg);
  const Matrix& rho = s.densities[0];
  BlochPoint p;
  p.x = 2.0 * rho(1, 0).real();
  p.y = 2.0 * rho(1, 0).imag();
  p.z = (rho(0, 0) - rho(1, 1)).real();
  return p;
}

inline State state_of_bloch(const Algebra& alg, const BlochPoint& p) {
  require_m2(alg);
  if (p.norm() > 1.0 + 1e-10) throw InvalidInput("Bloch point outside the unit ball");
  Matrix rho(2, 2);
  rho << Complex(0.5 * (1 + p.z), 0), Complex(0.5 * p.x, -0.5 * p.y),
      Complex(0.5 * p.x, 0.5 * p.y), Complex(0.5 * (1 - p.z), 0);
  State s = State::mixed({1.0}, {rho});
  if (p.norm() > 1.0 - 1e-12) {
    // rank-1: recover the projective vector
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    CVector xi = es.eigenvectors().col(1);
    return State::pure(alg, 0, xi);
  }
  return s;
}

}  // namespace ncg
