#pragma once

#include <cmath>
#include <limits>
#include <queue>
#include <tuple>

#include "ncgdist/triple.hpp"

namespace ncg {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct ThreePointParams {
  double d12, d13, d23;  // Dirac couplings, all positive

  void validate() const {
    if (!(d12 > 0 && d13 > 0 && d23 > 0))
      throw InvalidInput("three-point couplings must be positive");
  }

  RealMatrix weights() const {
    RealMatrix w = RealMatrix::Zero(3, 3);
    w(0, 1) = w(1, 0) = d12;
    w(0, 2) = w(2, 0) = d13;
    w(1, 2) = w(2, 1) = d23;
    return w;
  }
};

/// Distances on the fully coupled three-point space. The distance between
/// two points depends on the couplings of each to the third point.
inline std::tuple<double, double, double> three_point_distance(const ThreePointParams& p) {
  p.validate();
  double a = p.d12 * p.d12, b = p.d13 * p.d13, c = p.d23 * p.d23;
  double s = a * b + a * c + b * c;
  return {std::sqrt((b + c) / s), std::sqrt((a + c) / s), std::sqrt((a + b) / s)};
}

/// Inverse problem: couplings realizing prescribed distances a = d(1,2),
/// b = d(1,3), c = d(2,3). Requires the squared triangle inequality
/// strictly; equality would need an infinite coupling.
inline ThreePointParams three_point_inverse(double a, double b, double c) {
  if (!(a > 0 && b > 0 && c > 0)) throw InvalidInput("distances must be positive");
  double q12 = b * b + c * c - a * a;
  double q13 = c * c + a * a - b * b;
  double q23 = a * a + b * b - c * c;
  double denom = (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c);
  for (double q : {q12, q13, q23}) {
    if (q < 0) throw InvalidInput("squared triangle inequality violated");
    if (q == 0 || denom <= 0) throw InvalidInput("infinite coupling");
  }
  return ThreePointParams{std::sqrt(2 * q12 / denom), std::sqrt(2 * q13 / denom),
                          std::sqrt(2 * q23 / denom)};
}

/// Star resistances of the three-point space: d(i,j)^2 = r_i + r_j.
inline std::tuple<double, double, double> three_point_star_resistances(double a, double b,
                                                                       double c) {
  return {0.5 * (a * a + b * b - c * c), 0.5 * (a * a + c * c - b * b),
          0.5 * (b * b + c * c - a * a)};
}

/// Reciprocal couplings of the four-point space; d2 = d5 = infinity encodes
/// the 4-cycle with links 12, 14, 23, 34 only.
struct FourPointParams {
  double d1, d2, d3, d4, d5, d6;

  RealMatrix weights() const {
    RealMatrix w = RealMatrix::Zero(4, 4);
    auto set = [&](int i, int j, double d) {
      if (std::isfinite(d)) w(i, j) = w(j, i) = 1.0 / d;
    };
    set(0, 1, d1);
    set(0, 2, d2);
    set(0, 3, d3);
    set(1, 2, d4);
    set(1, 3, d5);
    set(2, 3, d6);
    return w;
  }
};

/// Explicit distances d(1,2) and d(1,3) on the 4-cycle (d2 = d5 = infinite).
/// Each distance is the largest attainable stationary value: the two
/// "corner" candidates (where the commutator has two unit singular values)
/// are always attainable; the chain candidates and the smooth-branch value
/// join in under their feasibility guards.
inline std::pair<double, double> four_point_special(const FourPointParams& p) {
  if (std::isfinite(p.d2) || std::isfinite(p.d5))
    throw InvalidInput("four-point special case requires d2 = d5 = infinity");
  double d1 = p.d1, d3 = p.d3, d4 = p.d4, d6 = p.d6;
  for (double d : {d1, d3, d4, d6})
    if (!(d > 0) || !std::isfinite(d)) throw InvalidInput("remaining couplings must be finite positive");

  double sum_len = std::hypot(d3 + d4, d1 - d6);
  double dif_len = std::hypot(d3 - d4, d1 + d6);
  double det = d1 * d6 - d3 * d4;

  // corner candidates are feasible for every parameter choice
  double d12 = std::max(d1 * (d3 + d4) / sum_len, d1 * std::abs(d3 - d4) / dif_len);
  if (d1 * d1 <= d6 * d6) d12 = std::max(d12, d1);
  double big = (std::pow(d3 + d4, 2) * d6 + (d1 - d6) * (d3 * d4 - d6 * d6)) *
               (std::pow(d3 - d4, 2) * d6 + (d1 + d6) * (d3 * d4 + d6 * d6));
  if (big <= 0 && std::abs(det) > 1e-12 * std::max(d1 * d6, d3 * d4))
    d12 = std::max(d12, std::sqrt(d1 * d1 * (d3 * d3 + d6 * d6) * (d4 * d4 + d6 * d6)) /
                            std::abs(det));

  double num = d1 * d3 + d4 * d6;
  double d13 = std::max(num / sum_len, num / dif_len);
  if (d3 * d3 + d6 * d6 <= std::abs(det)) d13 = std::max(d13, std::hypot(d3, d6));
  if (d1 * d1 + d4 * d4 <= std::abs(det)) d13 = std::max(d13, std::hypot(d1, d4));
  return {d12, d13};
}

inline double complete_graph_distance(int n, double k) {
  if (n < 2) throw InvalidInput("complete graph needs N >= 2");
  if (k == 0) throw InvalidInput("coupling must be nonzero");
  return std::sqrt(2.0 / n) / std::abs(k);
}

/// Distance between the two endpoints of a deleted link in an otherwise
/// complete graph with uniform coupling k.
inline double cut_link_distance(int n, double k) {
  if (n < 3) throw InvalidInput("cut-link formula needs N >= 3");
  if (k == 0) throw InvalidInput("coupling must be nonzero");
  return std::sqrt(2.0 / (n - 2)) / std::abs(k);
}

/// Shortest-path length under edge costs 1/|weight|; infinite when
/// disconnected.
inline double graph_geodesic_length(const RealMatrix& weights, int i, int j) {
  int n = static_cast<int>(weights.rows());
  if (i < 0 || j < 0 || i >= n || j >= n) throw InvalidInput("vertex index out of range");
  std::vector<double> dist(n, kInf);
  dist[i] = 0;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pq.push({0, i});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    for (int v = 0; v < n; ++v) {
      double w = std::abs(weights(u, v));
      if (w == 0 || v == u) continue;
      double nd = d + 1.0 / w;
      if (nd < dist[v]) {
        dist[v] = nd;
        pq.push({nd, v});
      }
    }
  }
  return dist[j];
}

/// M_2 with diagonal Dirac: states at different heights are infinitely far;
/// at equal height the distance is the equatorial chord over |d1 - d2|.
inline double m2_eigen_distance(double d1, double d2, const BlochPoint& p, const BlochPoint& q) {
  if (d1 == d2) return kInf;
  if (std::abs(p.z - q.z) > 1e-10) return kInf;
  return std::hypot(p.x - q.x, p.y - q.y) / std::abs(d1 - d2);
}

/// Truncated Moyal N=2 ball: equatorial distance when the height gap is
/// small, else the squared Euclidean chord over twice the height gap.
inline double moyal_ball_distance(double theta, const BlochPoint& p, const BlochPoint& q) {
  if (theta <= 0) throw InvalidInput("theta must be positive");
  if (p.norm() > 1 + 1e-10 || q.norm() > 1 + 1e-10)
    throw InvalidInput("Bloch points must lie in the unit ball");
  double deq = std::hypot(p.x - q.x, p.y - q.y);
  double dz = std::abs(p.z - q.z);
  double scale = std::sqrt(theta / 2.0);
  if (dz <= deq) return scale * deq;
  double dec2 = deq * deq + dz * dz;
  return scale * dec2 / (2.0 * dz);
}

struct SpherePointParams {
  CVector v;
  CVector xi, zeta;

  void validate() const {
    if (v.size() < 1 || v.norm() == 0) throw InvalidInput("v must be nonzero");
    if (xi.size() != v.size() || zeta.size() != v.size())
      throw InvalidInput("state vectors must match the dimension of v");
    if (std::abs(xi.norm() - 1) > 1e-12 || std::abs(zeta.norm() - 1) > 1e-12)
      throw InvalidInput("state vectors must be unit");
  }
};

/// M_n + C with off-diagonal Dirac column v. First value: distance between
/// the vector states of xi and zeta, finite only when their components
/// orthogonal to v agree up to one common phase (the commutant of the
/// Dirac kernel sees exactly that data). Second value: distance from the
/// isolated point, finite only for the state of v itself.
inline std::pair<double, double> sphere_point_distance(const SpherePointParams& p) {
  p.validate();
  CVector vhat = p.v / p.v.norm();

  double first = kInf;
  bool aligned = true;
  {
    CVector x = p.xi - vhat * vhat.dot(p.xi);
    CVector z = p.zeta - vhat * vhat.dot(p.zeta);
    Complex inner = z.dot(x);  // <z, x>
    Complex phase = std::abs(inner) > 0 ? inner / std::abs(inner) : Complex(1);
    aligned = (x - phase * z).norm() <= 1e-10;
  }
  if (aligned) {
    double overlap = std::abs(p.xi.dot(p.zeta));
    first = (2.0 / p.v.norm()) * std::sqrt(std::max(0.0, 1.0 - overlap * overlap));
  }

  double second = kInf;
  double align_v = std::abs(p.xi.dot(p.v)) / p.v.norm();
  if (std::abs(align_v - 1.0) <= 1e-10) second = 1.0 / p.v.norm();
  return {first, second};
}

/// Sharp two-sided bounds for distances on a graded product of triples.
inline std::pair<double, double> pythagoras_bounds(double d1, double d2) {
  if (d1 < 0 || d2 < 0) throw InvalidInput("distances must be nonnegative");
  return {std::sqrt(d1 * d1 + d2 * d2), d1 + d2};
}

}  // namespace ncg
