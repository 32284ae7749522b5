#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "ncgdist/closed_forms.hpp"

namespace ncg {

inline constexpr double kPi = std::numbers::pi;

namespace detail {

inline double wrap_angle(double a) {
  double w = std::fmod(a, 2 * kPi);
  if (w < 0) w += 2 * kPi;
  return w;
}

inline bool angles_equal(double a, double b, double tol) {
  double d = std::abs(wrap_angle(a) - wrap_angle(b));
  return std::min(d, 2 * kPi - d) <= tol;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Circle bundle catalog.

struct FarClasses {
  std::vector<std::vector<int>> classes;  // indices grouped by equal holonomy phase
  std::vector<int> class_of;
  int count() const { return static_cast<int>(classes.size()); }
};

/// Partition bundle directions by holonomy phase equality mod 2*pi. The
/// class count is the torus dimension of the connected component.
inline FarClasses far_classes(const std::vector<double>& theta_values, double tol = 1e-9) {
  FarClasses fc;
  fc.class_of.resize(theta_values.size(), -1);
  for (size_t i = 0; i < theta_values.size(); ++i) {
    for (size_t c = 0; c < fc.classes.size(); ++c) {
      if (detail::angles_equal(theta_values[i], theta_values[fc.classes[c][0]], tol)) {
        fc.classes[c].push_back(static_cast<int>(i));
        fc.class_of[i] = static_cast<int>(c);
        break;
      }
    }
    if (fc.class_of[i] < 0) {
      fc.class_of[i] = static_cast<int>(fc.classes.size());
      fc.classes.push_back({static_cast<int>(i)});
    }
  }
  return fc;
}

/// Fiber distance for a rank-2 bundle at fiber coordinate Xi in [0, 2*pi].
inline double fiber_distance_n2(double r, double omega, double xi) {
  double s = std::sin(omega * kPi);
  if (std::abs(s) < 1e-12) throw InvalidInput("holonomy ratio must not be an integer");
  if (xi < -1e-12 || xi > 2 * kPi + 1e-12)
    throw InvalidInput("fiber coordinate must lie in [0, 2*pi]");
  return (2 * kPi * r / std::abs(s)) * std::sin(xi / 2.0);
}

/// Horizontal (Carnot-Caratheodory) distance to the k-th accessible point.
inline double horizontal_fiber_distance(int k) {
  if (k < 0) throw InvalidInput("winding number must be nonnegative");
  return 2.0 * k * kPi;
}

struct CircleBundleParams {
  std::vector<double> r;      // direction amplitudes, sum = 2
  std::vector<double> omega;  // holonomy ratios, omega[0] = 0 by gauge
  std::vector<double> phi;    // fiber phases, phi[0] = 0 by gauge
  int k = 0;                  // winding
  double tau0 = 0;            // base-point offset, in [0, 2*pi)

  void validate() const {
    size_t n = r.size();
    if (n < 2 || omega.size() != n || phi.size() != n)
      throw InvalidInput("bundle parameter lists must share a length >= 2");
    double sum = 0;
    for (double x : r) {
      if (x < 0) throw InvalidInput("direction amplitudes must be nonnegative");
      sum += x;
    }
    if (std::abs(sum - 2.0) > 1e-10) throw InvalidInput("direction amplitudes must sum to 2");
    if (omega[0] != 0 || phi[0] != 0)
      throw InvalidInput("gauge fixing requires omega[0] = phi[0] = 0");
    if (tau0 < 0 || tau0 >= 2 * kPi) throw InvalidInput("tau0 must lie in [0, 2*pi)");
  }
};

/// General fiber distance at tau0 = 0: pi times the trace norm of the
/// holonomy overlap matrix S_k. The diagonal of S_k is zero; that
/// convention alone reproduces the n=2 chord formula.
inline double fiber_distance_general(const CircleBundleParams& p) {
  p.validate();
  if (p.tau0 != 0) throw InvalidInput("general fiber formula applies at tau0 = 0");
  int n = static_cast<int>(p.r.size());

  std::vector<double> holonomy(p.omega.size());
  for (size_t j = 0; j < p.omega.size(); ++j) holonomy[j] = -2 * kPi * p.omega[j];
  FarClasses fc = far_classes(holonomy);
  for (const auto& cls : fc.classes)
    for (size_t a = 1; a < cls.size(); ++a)
      if (!detail::angles_equal(p.phi[cls[a]], p.phi[cls[0]], 1e-10)) return kInf;
  if (fc.count() < n)
    throw InvalidInput("degenerate holonomy difference: directions coincide mod 1");

  Matrix s = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      double dw = p.omega[j] - p.omega[i];
      s(i, j) = std::sqrt(p.r[i] * p.r[j]) *
                std::sin(p.k * kPi * dw + 0.5 * (p.phi[j] - p.phi[i])) / std::sin(kPi * dw);
    }
  Eigen::JacobiSVD<Matrix> svd(s);
  return kPi * svd.singularValues().sum();
}

namespace detail {

struct TorusObjective {
  double z, r, wk, wk1, tau0;

  double operator()(double t, double d) const {
    auto safe_sqrt = [](double x) { return x > 0 ? std::sqrt(x) : 0.0; };
    double a1 = (tau0 - t) * (tau0 - t) - d * d;
    double a2 = (2 * kPi - tau0 - t) * (2 * kPi - tau0 - t) - d * d;
    return t + z * d + r * wk1 * safe_sqrt(a1) + r * wk * safe_sqrt(a2);
  }
};

}  // namespace detail

/// Distance between base points of a rank-2 bundle: far directions give the
/// base arc (or Infinite when a fiber phase remains); close directions
/// maximize the holonomy-weighted objective over a triangular domain.
inline double torus_distance_n2(double r, double z_xi, double omega, int k, double tau0,
                                double phi) {
  if (r < 0) throw InvalidInput("amplitude must be nonnegative");
  if (tau0 < 0 || tau0 >= 2 * kPi) throw InvalidInput("tau0 must lie in [0, 2*pi)");
  double s = std::sin(omega * kPi);
  if (std::abs(s) < 1e-12) {
    // far directions
    return detail::angles_equal(phi, 0.0, 1e-12) ? std::min(tau0, 2 * kPi - tau0) : kInf;
  }
  auto w = [&](int j) { return std::abs(std::sin(j * omega * kPi + phi / 2.0)) / std::abs(s); };
  detail::TorusObjective h{z_xi >= 0 ? z_xi : -z_xi, r, w(k), w(k + 1), tau0};
  double m = std::min(tau0, 2 * kPi - tau0);
  if (m == 0) return h(0, 0);

  // coarse grid on the triangle t + d <= m, then local simplex refinement
  const int grid = 256;
  double bt = 0, bd = 0, best = h(0, 0);
  for (int i = 0; i <= grid; ++i)
    for (int j = 0; j + i <= grid; ++j) {
      double t = m * i / grid, d = m * j / grid;
      double v = h(t, d);
      if (v > best) {
        best = v;
        bt = t;
        bd = d;
      }
    }
  auto clamp = [&](double& t, double& d) {
    if (t < 0) t = 0;
    if (d < 0) d = 0;
    if (t + d > m) {
      double excess = (t + d - m) / 2;
      t -= excess;
      d -= excess;
      if (t < 0) {
        d += t;
        t = 0;
      }
      if (d < 0) {
        t += d;
        d = 0;
      }
    }
  };
  // Nelder-Mead on (t, d) with projection onto the triangle
  double step = m / grid;
  std::array<std::array<double, 2>, 3> simplex = {{{bt, bd}, {bt + step, bd}, {bt, bd + step}}};
  for (auto& v : simplex) clamp(v[0], v[1]);
  auto value = [&](const std::array<double, 2>& v) { return h(v[0], v[1]); };
  for (int it = 0; it < 300; ++it) {
    std::sort(simplex.begin(), simplex.end(),
              [&](const auto& a, const auto& b) { return value(a) > value(b); });
    if (std::abs(value(simplex[0]) - value(simplex[2])) < 1e-12 * std::max(1.0, best)) break;
    std::array<double, 2> centroid = {(simplex[0][0] + simplex[1][0]) / 2,
                                      (simplex[0][1] + simplex[1][1]) / 2};
    std::array<double, 2> refl = {2 * centroid[0] - simplex[2][0],
                                  2 * centroid[1] - simplex[2][1]};
    clamp(refl[0], refl[1]);
    if (value(refl) > value(simplex[0])) {
      std::array<double, 2> exp = {centroid[0] + 2 * (refl[0] - centroid[0]),
                                   centroid[1] + 2 * (refl[1] - centroid[1])};
      clamp(exp[0], exp[1]);
      simplex[2] = value(exp) > value(refl) ? exp : refl;
    } else if (value(refl) > value(simplex[1])) {
      simplex[2] = refl;
    } else {
      std::array<double, 2> con = {(centroid[0] + simplex[2][0]) / 2,
                                   (centroid[1] + simplex[2][1]) / 2};
      if (value(con) > value(simplex[2])) {
        simplex[2] = con;
      } else {
        for (int i = 1; i < 3; ++i) {
          simplex[i][0] = (simplex[i][0] + simplex[0][0]) / 2;
          simplex[i][1] = (simplex[i][1] + simplex[0][1]) / 2;
        }
      }
    }
  }
  return std::max(best, value(simplex[0]));
}

// ---------------------------------------------------------------------------
// Moyal quantum lengths.

/// Spectral distance between harmonic-oscillator eigenstates of the Moyal
/// plane: additive partial sums of 1/sqrt(k).
inline double moyal_eigenstate_distance(double theta, int m, int n) {
  if (theta <= 0) throw InvalidInput("theta must be positive");
  if (m < 0 || n < 0) throw InvalidInput("eigenstate indices must be nonnegative");
  if (m > n) std::swap(m, n);
  double sum = 0;
  for (int k = m + 1; k <= n; ++k) sum += 1.0 / std::sqrt(static_cast<double>(k));
  return std::sqrt(theta / 2.0) * sum;
}

/// Distance between a coherent state and its translate.
inline double translation_distance(Complex kappa) { return std::abs(kappa); }

struct QuantumLengthParams {
  double lambda_p = 1.0;  // Planck length; theta = lambda_p^2
  int m = 0, n = 0;
  Complex kappa{0, 0}, kappa_tilde{0, 0};

  void validate() const {
    if (lambda_p <= 0) throw InvalidInput("lambda_p must be positive");
    if (m < 0 || n < 0) throw InvalidInput("eigenstate indices must be nonnegative");
  }

  double energy(int level) const { return lambda_p * lambda_p * (level + 0.5); }
};

/// Quantum squared length of a separable pair of translated eigenstates.
inline double quantum_sq_length(const QuantumLengthParams& q) {
  q.validate();
  return 2 * q.energy(q.m) + 2 * q.energy(q.n) + std::norm(q.kappa - q.kappa_tilde);
}

/// Modified quantum length: subtracts the intrinsic diagonal contribution
/// before taking the square root. Reduces to lambda_p(sqrt(2n+1)-sqrt(2m+1))
/// on eigenstate pairs and to the translation amplitude on equal-index
/// coherent pairs.
inline double modified_quantum_length(const QuantumLengthParams& q) {
  q.validate();
  double dl2 = quantum_sq_length(q);
  double self_m = 4 * q.energy(q.m);
  double self_n = 4 * q.energy(q.n);
  double lambda_inv2 = std::sqrt(self_m * self_n);
  return std::sqrt(std::abs(dl2 - lambda_inv2));
}

/// Finite analog of the doubled-plane Pythagoras relation: total length
/// from a translation component and an internal component.
inline double doubled_plane_length(Complex kappa, double internal) {
  if (internal < 0) throw InvalidInput("internal component must be nonnegative");
  return std::hypot(std::abs(kappa), internal);
}

}  // namespace ncg
