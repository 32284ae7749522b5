#pragma once

#include <Eigen/SparseCore>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>

#include "ncgdist/core.hpp"
#include "ncgdist/simplex.hpp"

namespace ncg {

struct SolverOptions {
  double rel_tolerance = 1e-6;
  int multistarts = 16;
  int max_iterations = 5000;
  std::uint64_t seed = 1;

  void validate() const {
    if (rel_tolerance <= 0 || multistarts <= 0 || max_iterations <= 0)
      throw InvalidInput("solver options must be positive");
  }
};

/// sup{ f.c : ||sum_j c_j K_j|| <= 1 } with certified two-sided bounds.
struct DualNormOutcome {
  double value = 0;  // lower bound, attained by a_coords
  double upper = 0;  // upper bound from the outer relaxation
  Vector a_coords;   // ||C(a_coords)|| <= 1 and f.a_coords = value
  int iterations = 0;
};

namespace detail {

using SpMat = Eigen::SparseMatrix<Complex>;

struct SingularPair {
  double sigma;
  CVector u, v;
};

/// Engine for one dual-norm computation. Lower bounds come from feasible
/// points (smoothed Schatten-norm descent and relaxation iterates); upper
/// bounds from a cutting-plane outer approximation of the unit ball, solved
/// as a growing LP.
class DualNormEngine {
 public:
  DualNormEngine(const std::vector<Matrix>& kmats, const Vector& f, const SolverOptions& opts)
      : f_(f), opts_(opts), h_(kmats.empty() ? 0 : static_cast<int>(kmats[0].rows())) {
    ks_.reserve(kmats.size());
    for (const auto& k : kmats) {
      SpMat s = k.sparseView(1.0, 1e-300);
      s.makeCompressed();
      ks_.push_back(std::move(s));
    }
    jdim_ = static_cast<Eigen::Index>(ks_.size());
    detect_split();
  }

  DualNormOutcome run() {
    opts_.validate();
    DualNormOutcome out;
    double fn = f_.norm();
    if (fn == 0) {
      out.a_coords = Vector::Zero(jdim_);
      return out;
    }
    Rng rng(opts_.seed);

    best_lb_ = 0;
    best_a_ = Vector::Zero(jdim_);
    Vector c0 = f_ / (fn * fn);  // f.c0 = 1

    int per_start = std::max(8, opts_.max_iterations / std::max(1, opts_.multistarts));
    for (int s = 0; s < opts_.multistarts; ++s) {
      Vector start = c0;
      if (s > 0) {
        Vector delta(jdim_);
        for (Eigen::Index j = 0; j < jdim_; ++j) delta[j] = gaussian(rng);
        delta -= (delta.dot(f_) / (fn * fn)) * f_;
        if (delta.norm() > 0) start += (0.5 * c0.norm() / delta.norm()) * delta;
      }
      descend(start, per_start);
    }
    if (best_lb_ <= 0)
      throw NoConvergence("no feasible descent point found; functional may be unbounded", 0,
                          std::numeric_limits<double>::infinity());

    return kelley();
  }

 private:
  Vector f_;
  SolverOptions opts_;
  int h_;
  Eigen::Index jdim_ = 0;
  std::vector<SpMat> ks_;
  bool split_ = false;
  int half_ = 0;

  double best_lb_ = 0;
  Vector best_a_;
  std::vector<Vector> cuts_;
  int evals_ = 0;

  // All commutators supported on the two anti-diagonal blocks of a grading
  // split means M^*M is block diagonal and eigenwork halves twice over.
  void detect_split() {
    if (h_ % 2 != 0) return;
    half_ = h_ / 2;
    for (const auto& k : ks_)
      for (int o = 0; o < k.outerSize(); ++o)
        for (SpMat::InnerIterator it(k, o); it; ++it)
          if ((it.row() < half_) == (it.col() < half_)) return;
    split_ = true;
  }

  Matrix assemble(const Vector& c) const {
    Matrix m = Matrix::Zero(h_, h_);
    for (Eigen::Index j = 0; j < jdim_; ++j) {
      double cj = c[j];
      if (cj == 0.0) continue;
      const SpMat& k = ks_[static_cast<size_t>(j)];
      for (int o = 0; o < k.outerSize(); ++o)
        for (SpMat::InnerIterator it(k, o); it; ++it) m(it.row(), it.col()) += cj * it.value();
    }
    return m;
  }

  struct Spec {
    bool split = false;
    Vector lam;           // ascending eigenvalues of M^*M (full mode)
    Matrix v;
    Vector lam1, lam2;    // split mode: bottom-left and top-right blocks
    Matrix v1, v2;

    double lam_max() const {
      if (!split) return lam.size() ? std::max(0.0, lam[lam.size() - 1]) : 0.0;
      double a = lam1.size() ? lam1[lam1.size() - 1] : 0.0;
      double b = lam2.size() ? lam2[lam2.size() - 1] : 0.0;
      return std::max(0.0, std::max(a, b));
    }
  };

  Spec spectrum(const Matrix& m, bool vectors) const {
    Spec sp;
    auto flag = vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
    if (split_) {
      sp.split = true;
      Matrix c = m.block(half_, 0, half_, half_);
      Matrix b = m.block(0, half_, half_, half_);
      Eigen::SelfAdjointEigenSolver<Matrix> e1(c.adjoint() * c, flag);
      Eigen::SelfAdjointEigenSolver<Matrix> e2(b.adjoint() * b, flag);
      sp.lam1 = e1.eigenvalues();
      sp.lam2 = e2.eigenvalues();
      if (vectors) {
        sp.v1 = e1.eigenvectors();
        sp.v2 = e2.eigenvectors();
      }
    } else {
      Eigen::SelfAdjointEigenSolver<Matrix> es(m.adjoint() * m, flag);
      sp.lam = es.eigenvalues();
      if (vectors) sp.v = es.eigenvectors();
    }
    return sp;
  }

  double opnorm(const Matrix& m) const { return std::sqrt(spectrum(m, false).lam_max()); }

  static double sum_ratio_pow(const Vector& lam, double lmax, int p) {
    double s = 0;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
      double r = std::max(0.0, lam[i]) / lmax;
      if (r > 1e-12) s += std::pow(r, p);
    }
    return s;
  }

  // Schatten-2p norm F_p(c) = (sum sigma_i^2p)^(1/2p); optional gradient.
  double schatten(const Vector& c, int p, Vector* grad) {
    ++evals_;
    Matrix m = assemble(c);
    Spec sp = spectrum(m, grad != nullptr);
    double lmax = sp.lam_max();
    if (lmax <= 0) {
      if (grad) grad->setZero(jdim_);
      return 0;
    }
    double s = sp.split ? sum_ratio_pow(sp.lam1, lmax, p) + sum_ratio_pow(sp.lam2, lmax, p)
                        : sum_ratio_pow(sp.lam, lmax, p);
    double value = std::sqrt(lmax) * std::pow(s, 1.0 / (2 * p));
    if (grad) {
      // grad_j = lmax^{-1/2} s^{1/2p-1} <M (M^*M/lmax)^{p-1}, K_j>_F
      Matrix a(h_, h_);
      if (sp.split) {
        auto powblock = [&](const Vector& lam, const Matrix& v) {
          Vector w(lam.size());
          for (Eigen::Index i = 0; i < lam.size(); ++i)
            w[i] = std::pow(std::max(0.0, lam[i]) / lmax, p - 1);
          return Matrix(v * w.asDiagonal() * v.adjoint());
        };
        a.setZero();
        a.block(half_, 0, half_, half_) = m.block(half_, 0, half_, half_) * powblock(sp.lam1, sp.v1);
        a.block(0, half_, half_, half_) = m.block(0, half_, half_, half_) * powblock(sp.lam2, sp.v2);
      } else {
        Vector w(sp.lam.size());
        for (Eigen::Index i = 0; i < sp.lam.size(); ++i)
          w[i] = std::pow(std::max(0.0, sp.lam[i]) / lmax, p - 1);
        a = m * sp.v * w.asDiagonal() * sp.v.adjoint();
      }
      double pref = std::pow(s, 1.0 / (2 * p) - 1.0) / std::sqrt(lmax);
      grad->resize(jdim_);
      for (Eigen::Index j = 0; j < jdim_; ++j) {
        const SpMat& k = ks_[static_cast<size_t>(j)];
        double acc = 0;
        for (int o = 0; o < k.outerSize(); ++o)
          for (SpMat::InnerIterator it(k, o); it; ++it)
            acc += (std::conj(a(it.row(), it.col())) * it.value()).real();
        (*grad)[j] = pref * acc;
      }
    }
    return value;
  }

  std::vector<SingularPair> top_pairs(const Matrix& m, int count) const {
    Spec sp = spectrum(m, true);
    std::vector<SingularPair> pairs;
    auto harvest = [&](const Vector& lam, const Matrix& v, bool first_half) {
      for (Eigen::Index i = lam.size() - 1; i >= 0 && lam.size() - i <= count; --i) {
        double sig = std::sqrt(std::max(0.0, lam[i]));
        if (sig <= 0) continue;
        SingularPair p;
        p.sigma = sig;
        p.v = CVector::Zero(h_);
        if (sp.split) {
          if (first_half)
            p.v.head(half_) = v.col(i);
          else
            p.v.tail(half_) = v.col(i);
        } else {
          p.v = v.col(i);
        }
        p.u = m * p.v / sig;
        pairs.push_back(std::move(p));
      }
    };
    if (sp.split) {
      harvest(sp.lam1, sp.v1, true);
      harvest(sp.lam2, sp.v2, false);
    } else {
      harvest(sp.lam, sp.v, false);
    }
    std::sort(pairs.begin(), pairs.end(),
              [](const SingularPair& a, const SingularPair& b) { return a.sigma > b.sigma; });
    if (static_cast<int>(pairs.size()) > count) pairs.resize(count);
    return pairs;
  }

  Vector cut_from_pair(const SingularPair& p) const {
    Vector g(jdim_);
    for (Eigen::Index j = 0; j < jdim_; ++j) {
      const SpMat& k = ks_[static_cast<size_t>(j)];
      double acc = 0;
      for (int o = 0; o < k.outerSize(); ++o)
        for (SpMat::InnerIterator it(k, o); it; ++it)
          acc += (std::conj(p.u[it.row()]) * it.value() * p.v[it.col()]).real();
      g[j] = acc;
    }
    return g;
  }

  void add_cuts(const Matrix& m, int count) {
    for (const auto& p : top_pairs(m, count)) {
      Vector g = cut_from_pair(p);
      if (g.norm() < 1e-14) continue;
      cuts_.push_back(g);
      cuts_.push_back(-g);
    }
  }

  void consider(const Vector& c) {
    double fc = f_.dot(c);
    if (fc <= 0) return;
    double s = opnorm(assemble(c));
    if (s <= 0) return;
    if (fc / s > best_lb_ ||
        (fc / s > best_lb_ * (1 - 1e-12) && (c / s).norm() < best_a_.norm())) {
      best_lb_ = fc / s;
      best_a_ = c / s;
    }
  }

  // Barzilai-Borwein descent on F_p over the slice f.c = 1, with a
  // p -> 2p continuation so the smooth objective approaches the norm.
  void descend(Vector c, int budget) {
    const int stages[] = {1, 2, 4, 8, 16, 32, 64, 128};
    int per_stage = std::max(4, budget / 8);
    double fn2 = f_.squaredNorm();
    for (int p : stages) {
      Vector g, gprev, cprev;
      double fcur = schatten(c, p, &g);
      g -= (g.dot(f_) / fn2) * f_;
      std::deque<double> recent{fcur};
      double t = 0.1 * std::max(c.norm(), 1e-12) / std::max(g.norm(), 1e-12);
      for (int it = 0; it < per_stage; ++it) {
        if (g.norm() < 1e-14 * std::max(1.0, fcur)) break;
        Vector cnew = c - t * g;
        Vector gnew;
        double fnew = schatten(cnew, p, &gnew);
        int backtracks = 0;
        double worst = *std::max_element(recent.begin(), recent.end());
        while (fnew > worst * (1 + 1e-12) && backtracks < 10) {
          t *= 0.25;
          cnew = c - t * g;
          fnew = schatten(cnew, p, &gnew);
          ++backtracks;
        }
        gnew -= (gnew.dot(f_) / fn2) * f_;
        cprev = c;
        gprev = g;
        c = cnew;
        g = gnew;
        double fprevval = fcur;
        fcur = fnew;
        recent.push_back(fcur);
        if (recent.size() > 5) recent.pop_front();
        Vector sv = c - cprev, yv = g - gprev;
        double sy = sv.dot(yv);
        t = (sy > 1e-300) ? sv.squaredNorm() / sy
                          : 0.1 * std::max(c.norm(), 1e-12) / std::max(g.norm(), 1e-12);
        if (std::abs(fprevval - fcur) < 1e-12 * std::max(1.0, fcur) && it > 2) break;
      }
      consider(c);
    }
    add_cuts(assemble(c), 2);
  }

  DualNormOutcome kelley() {
    double ub = std::numeric_limits<double>::infinity();
    int max_rounds = std::clamp(opts_.max_iterations / 10, 50, 400);
    double tol = opts_.rel_tolerance;
    int rounds = 0;
    for (; rounds < max_rounds; ++rounds) {
      if (std::isfinite(ub) && ub - best_lb_ <= tol * std::max(best_lb_, 1e-300)) break;

      RealMatrix a(static_cast<Eigen::Index>(cuts_.size()), jdim_);
      for (size_t i = 0; i < cuts_.size(); ++i) a.row(static_cast<Eigen::Index>(i)) = cuts_[i];
      Vector b = Vector::Ones(a.rows());
      LpResult lp = solve_lp(a, b, -f_);

      if (lp.status == LpResult::Status::Unbounded) {
        Vector r = lp.ray / std::max(lp.ray.norm(), 1e-300);
        Matrix mr = assemble(r);
        if (opnorm(mr) < 1e-13)
          throw NoConvergence("relaxation unbounded along a seminorm-null direction", best_lb_,
                              std::numeric_limits<double>::infinity());
        add_cuts(mr, 3);
        continue;
      }
      if (lp.status != LpResult::Status::Optimal)
        throw NoConvergence("cutting-plane subproblem failed", best_lb_, ub);

      const Vector& cstar = lp.x;
      double fc = f_.dot(cstar);
      ub = std::min(ub, fc);
      Matrix m = assemble(cstar);
      double s = opnorm(m);
      if (s > 0 && fc > 0) {
        consider(cstar);
        if (fc / s >= ub * (1 - tol)) break;
      }
      add_cuts(m, 3);
      purge(cstar);
    }
    if (!std::isfinite(ub) || ub - best_lb_ > 10 * tol * std::max(best_lb_, 1e-300))
      throw NoConvergence("distance bounds did not close to tolerance", best_lb_, ub);
    DualNormOutcome out;
    out.value = best_lb_;
    out.upper = std::max(ub, best_lb_);
    out.a_coords = best_a_;
    out.iterations = evals_ + rounds;
    return out;
  }

  void purge(const Vector& cstar) {
    const size_t cap = 420, keep = 280;
    if (cuts_.size() <= cap) return;
    std::vector<std::pair<double, size_t>> slack(cuts_.size());
    for (size_t i = 0; i < cuts_.size(); ++i) slack[i] = {1.0 - cuts_[i].dot(cstar), i};
    std::sort(slack.begin(), slack.end());
    std::vector<Vector> kept;
    kept.reserve(keep);
    for (size_t i = 0; i < keep; ++i) kept.push_back(std::move(cuts_[slack[i].second]));
    cuts_ = std::move(kept);
  }
};

}  // namespace detail

inline DualNormOutcome dual_norm(const std::vector<Matrix>& commutators, const Vector& f,
                                 const SolverOptions& opts) {
  return detail::DualNormEngine(commutators, f, opts).run();
}

}  // namespace ncg
