#pragma once

#include <cmath>
#include <optional>

#include "ncgdist/dual_norm.hpp"
#include "ncgdist/triple.hpp"

namespace ncg {

struct DistanceResult {
  enum class Outcome { Finite, Infinite };
  Outcome outcome = Outcome::Finite;
  double value = 0;         // certified lower bound attained by optimal_element
  double attained = 0;      // |phi(a) - phi'(a)| for the returned element
  double gap_estimate = 0;  // upper bound minus attained
  std::optional<AlgebraElement> optimal_element;  // Finite only
  std::optional<AlgebraElement> witness;          // Infinite only: kernel separator
  int iterations = 0;

  bool finite() const { return outcome == Outcome::Finite; }
};

struct FinitenessVerdict {
  bool finite = true;
  std::optional<AlgebraElement> witness;
};

/// Kernel test: the distance is finite iff the two states agree on every
/// element annihilated by the seminorm.
inline FinitenessVerdict is_finite(const SpectralTriple& t, const State& a, const State& b,
                                   double tol = 1e-8) {
  a.validate(t.algebra);
  b.validate(t.algebra);
  Vector f = state_coords(t.algebra, a) - state_coords(t.algebra, b);
  KernelBasis kb = seminorm_kernel(t);
  FinitenessVerdict v;
  for (const auto& k : kb.coords) {
    if (std::abs(f.dot(k)) > tol) {
      v.finite = false;
      v.witness = element_from_coords(t.algebra, k);
      return v;
    }
  }
  return v;
}

inline DistanceResult spectral_distance(const SpectralTriple& t, const State& a, const State& b,
                                        const SolverOptions& opts = {}) {
  opts.validate();
  a.validate(t.algebra);
  b.validate(t.algebra);
  Vector f = state_coords(t.algebra, a) - state_coords(t.algebra, b);
  CommutatorMap cm = CommutatorMap::of(t);
  KernelBasis kb = seminorm_kernel(cm);

  DistanceResult res;
  double ktol = 1e-8 * std::max(1.0, f.norm());
  for (const auto& k : kb.coords) {
    if (std::abs(f.dot(k)) > ktol) {
      res.outcome = DistanceResult::Outcome::Infinite;
      res.witness = element_from_coords(t.algebra, k);
      return res;
    }
    f -= f.dot(k) * k;  // drop numerical kernel noise
  }

  if (f.norm() < 1e-13) {
    res.optimal_element = AlgebraElement::zero(t.algebra);
    return res;
  }

  DualNormOutcome out = dual_norm(cm.K, f, opts);
  AlgebraElement elem = element_from_coords(t.algebra, out.a_coords);
  res.value = out.value;
  res.attained = std::abs(eval_state(t.algebra, a, elem) - eval_state(t.algebra, b, elem));
  res.gap_estimate = out.upper - res.attained;
  res.optimal_element = std::move(elem);
  res.iterations = out.iterations;
  return res;
}

/// Independent brute-force lower bound: seeded random Hermitian directions
/// in the kernel complement, best ratio refined by coordinate hill climbing.
inline std::pair<double, AlgebraElement> oracle_lower_bound(const SpectralTriple& t,
                                                            const State& a, const State& b,
                                                            int samples, std::uint64_t seed) {
  Vector f = state_coords(t.algebra, a) - state_coords(t.algebra, b);
  CommutatorMap cm = CommutatorMap::of(t);
  KernelBasis kb = seminorm_kernel(cm);
  const RealMatrix& v = kb.complement;
  Rng rng(seed);

  auto ratio = [&](const Vector& c) -> double {
    double fc = std::abs(f.dot(c));
    if (fc == 0) return 0;
    double s = cm.seminorm(c);
    return s > 0 ? fc / s : 0;
  };

  Vector best = Vector::Zero(f.size());
  double best_val = 0;
  for (int i = 0; i < samples; ++i) {
    Vector y(v.cols());
    for (Eigen::Index j = 0; j < y.size(); ++j) y[j] = gaussian(rng);
    Vector c = v * y;
    double nrm = c.norm();
    if (nrm == 0) continue;
    c /= nrm;
    double val = ratio(c);
    if (val > best_val) {
      best_val = val;
      best = c;
    }
  }

  // coordinate-wise hill climbing along complement directions
  double step = 0.5;
  while (step > 1e-7 && best_val > 0) {
    bool improved = false;
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
      for (double sgn : {1.0, -1.0}) {
        Vector c = best + sgn * step * v.col(j);
        double val = ratio(c);
        if (val > best_val) {
          best_val = val;
          best = c;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }

  if (best_val == 0) return {0.0, AlgebraElement::zero(t.algebra)};
  double s = cm.seminorm(best);
  Vector c = best / s;
  if (f.dot(c) < 0) c = -c;
  return {best_val, element_from_coords(t.algebra, c)};
}

struct SegmentReport {
  double base_distance = 0;
  double max_deviation = 0;
};

/// Distances along the mixing segment scale linearly: d(phi_s, phi_t)
/// should equal |s-t| d(phi_0, phi_1) on every grid pair.
inline SegmentReport segment_check(const SpectralTriple& t, const State& s0, const State& s1,
                                   const std::vector<double>& grid,
                                   const SolverOptions& opts = {}) {
  SegmentReport rep;
  DistanceResult base = spectral_distance(t, s0, s1, opts);
  if (!base.finite()) throw InvalidInput("segment_check requires a finite base distance");
  rep.base_distance = base.value;
  for (size_t i = 0; i < grid.size(); ++i)
    for (size_t j = i + 1; j < grid.size(); ++j) {
      State sa = mix_states(t.algebra, s0, s1, grid[i]);
      State sb = mix_states(t.algebra, s0, s1, grid[j]);
      DistanceResult d = spectral_distance(t, sa, sb, opts);
      double expected = std::abs(grid[i] - grid[j]) * rep.base_distance;
      rep.max_deviation = std::max(rep.max_deviation, std::abs(d.value - expected));
    }
  return rep;
}

}  // namespace ncg
