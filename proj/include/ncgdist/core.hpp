#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;

inline constexpr double kHermTol = 1e-12;
inline constexpr double kPsdTol = -1e-10;
inline constexpr double kTraceTol = 1e-12;

/// Thrown on malformed inputs (shape mismatches, invalid parameters).
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an iterative computation fails to reach its tolerance.
/// Carries the best certified bounds obtained so far.
class NoConvergence : public std::runtime_error {
 public:
  NoConvergence(const std::string& msg, double lower, double upper)
      : std::runtime_error(msg), lower_bound(lower), upper_bound(upper) {}
  double lower_bound;
  double upper_bound;
};

/// Single RNG funnel: every randomized routine takes one of these.
using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double gaussian(Rng& rng) {
  return std::normal_distribution<double>(0.0, 1.0)(rng);
}

inline CVector random_unit_vector(Rng& rng, Eigen::Index n) {
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = Complex(gaussian(rng), gaussian(rng));
  return v / v.norm();
}

inline bool is_hermitian(const Matrix& m, double tol = kHermTol) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

/// Real Frobenius pairing Re tr(A^* B), the inner product on Hermitian matrices.
inline double frob_inner(const Matrix& a, const Matrix& b) {
  return (a.adjoint() * b).trace().real();
}

inline double operator_norm(const Matrix& m) {
  if (m.rows() == 0) return 0.0;
  if (m.rows() <= 48) {
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
  }
  // largest singular value via the normal matrix, much faster at scale
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

}  // namespace ncg
