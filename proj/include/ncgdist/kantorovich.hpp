#pragma once

#include <optional>
#include <vector>

#include "ncgdist/closed_forms.hpp"
#include "ncgdist/solver.hpp"

namespace ncg {

/// One sampled Lipschitz constraint: |a(w1) - a(w2)| <= bound, where bound
/// is the spectral distance of the pure pair.
struct PurePairConstraint {
  State w1, w2;
  double bound = 0;
};

/// Draw Haar-like pure states per block and keep finite-distance pairs with
/// their solver distances attached. Deterministic under seed.
inline std::vector<PurePairConstraint> sample_pure_pairs(const SpectralTriple& t, int count,
                                                         std::uint64_t seed,
                                                         const SolverOptions& opts = {}) {
  if (count < 1) throw InvalidInput("constraint count must be >= 1");
  Rng rng(seed);
  auto draw = [&]() {
    int block = static_cast<int>(rng() % t.algebra.blocks.size());
    return State::pure(t.algebra, block, random_unit_vector(rng, t.algebra.blocks[block]));
  };
  std::vector<PurePairConstraint> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 10 * count)
      throw InvalidInput("no finite-distance pure pair found within the sampling budget");
    State w1 = draw(), w2 = draw();
    if (!is_finite(t, w1, w2).finite) continue;
    DistanceResult d = spectral_distance(t, w1, w2, opts);
    out.push_back({std::move(w1), std::move(w2), d.value});
  }
  return out;
}

/// Outer approximation of the Monge-Kantorovich functional: maximize
/// |phi(a) - phi'(a)| over Hermitian a subject to the finite constraint
/// list, as a linear program in Hermitian coordinates. The value upper
/// bounds the true functional, which upper bounds the spectral distance.
/// Returns infinity when the sampled constraints leave the objective
/// unbounded.
inline double wasserstein_upper(const SpectralTriple& t, const State& a, const State& b,
                                const std::vector<PurePairConstraint>& constraints,
                                const std::optional<PurePairConstraint>& must_include = {}) {
  if (constraints.empty() && !must_include)
    throw InvalidInput("wasserstein_upper needs at least one constraint");
  a.validate(t.algebra);
  b.validate(t.algebra);
  Vector f = state_coords(t.algebra, a) - state_coords(t.algebra, b);

  std::vector<const PurePairConstraint*> all;
  for (const auto& c : constraints) all.push_back(&c);
  if (must_include) all.push_back(&*must_include);

  Eigen::Index n = f.size();
  RealMatrix rows(2 * static_cast<Eigen::Index>(all.size()), n);
  Vector rhs(rows.rows());
  for (size_t i = 0; i < all.size(); ++i) {
    if (all[i]->bound < 0 || !std::isfinite(all[i]->bound))
      throw InvalidInput("constraint bounds must be finite and nonnegative");
    Vector g = state_coords(t.algebra, all[i]->w1) - state_coords(t.algebra, all[i]->w2);
    rows.row(2 * static_cast<Eigen::Index>(i)) = g;
    rows.row(2 * static_cast<Eigen::Index>(i) + 1) = -g;
    rhs[2 * static_cast<Eigen::Index>(i)] = all[i]->bound;
    rhs[2 * static_cast<Eigen::Index>(i) + 1] = all[i]->bound;
  }

  LpResult lp = solve_lp(rows, rhs, -f);
  if (lp.status == LpResult::Status::Unbounded) return kInf;
  if (lp.status != LpResult::Status::Optimal)
    throw NoConvergence("constraint LP did not terminate", 0, kInf);
  return -lp.objective;
}

}  // namespace ncg
