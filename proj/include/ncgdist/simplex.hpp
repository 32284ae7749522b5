#pragma once

#include <cmath>
#include <limits>

#include "ncgdist/core.hpp"

namespace ncg {

/// Outcome of a linear program min c.x s.t. A x <= b over free variables.
struct LpResult {
  enum class Status { Optimal, Unbounded, Infeasible, IterationLimit };
  Status status = Status::IterationLimit;
  double objective = 0;
  Vector x;    // optimum when Optimal
  Vector ray;  // improving ray when Unbounded
};

namespace detail {

/// Dense tableau simplex on the split x = u - v with slack variables. The
/// tableau is periodically rebuilt from the original data and the current
/// basis, which keeps ill-conditioned constraint sets (near-duplicate rows)
/// from accumulating pivot error and reporting an infeasible "optimum".
class SimplexTableau {
 public:
  SimplexTableau(const RealMatrix& a, const Vector& b, const Vector& c)
      : a_(a), b_(b), c_(c), m_(a.rows()), n_(a.cols()), total_(2 * n_ + m_) {
    basis_.resize(static_cast<size_t>(m_));
    for (Eigen::Index i = 0; i < m_; ++i) basis_[static_cast<size_t>(i)] = 2 * n_ + i;
    rebuild();
  }

  LpResult solve(int max_iters) {
    const double eps = 1e-9;
    int degenerate_run = 0;
    int since_rebuild = 0;
    LpResult res;
    for (int iter = 0; iter < max_iters; ++iter) {
      bool bland = degenerate_run > 2 * static_cast<int>(total_);
      Eigen::Index enter = price(eps, bland);
      if (enter < 0) {
        if (since_rebuild > 0) {
          // confirm optimality against fresh data before declaring it
          rebuild();
          since_rebuild = 0;
          enter = price(eps, bland);
          if (enter < 0) return extract();
        } else {
          return extract();
        }
      }

      Eigen::Index leave = ratio_test(enter, eps);
      if (leave < 0) {
        Vector dir = Vector::Zero(total_);
        dir[enter] = 1.0;
        for (Eigen::Index i = 0; i < m_; ++i) dir[basis_[static_cast<size_t>(i)]] = -t_(i, enter);
        res.status = LpResult::Status::Unbounded;
        res.ray = dir.head(n_) - dir.segment(n_, n_);
        return res;
      }
      degenerate_run = (t_(leave, total_) / t_(leave, enter) < 1e-12) ? degenerate_run + 1 : 0;

      pivot(leave, enter);
      basis_[static_cast<size_t>(leave)] = enter;
      if (++since_rebuild >= 64) {
        rebuild();
        since_rebuild = 0;
      }
    }
    res.status = LpResult::Status::IterationLimit;
    return res;
  }

 private:
  const RealMatrix& a_;
  const Vector& b_;
  const Vector& c_;
  Eigen::Index m_, n_, total_;
  RealMatrix t_;
  std::vector<Eigen::Index> basis_;

  double col_entry(Eigen::Index row, Eigen::Index j) const {
    if (j < n_) return a_(row, j);
    if (j < 2 * n_) return -a_(row, j - n_);
    return j - 2 * n_ == row ? 1.0 : 0.0;
  }

  double cost_entry(Eigen::Index j) const {
    if (j < n_) return c_[j];
    if (j < 2 * n_) return -c_[j - n_];
    return 0.0;
  }

  /// Recompute the tableau from the original data for the current basis:
  /// T = [B^{-1} A_full | B^{-1} b], cost row = c - c_B B^{-1} A_full.
  void rebuild() {
    RealMatrix bmat(m_, m_);
    for (Eigen::Index i = 0; i < m_; ++i)
      for (Eigen::Index k = 0; k < m_; ++k) bmat(i, k) = col_entry(i, basis_[static_cast<size_t>(k)]);
    Eigen::ColPivHouseholderQR<RealMatrix> qr(bmat);

    RealMatrix full(m_, total_ + 1);
    for (Eigen::Index j = 0; j < total_; ++j)
      for (Eigen::Index i = 0; i < m_; ++i) full(i, j) = col_entry(i, j);
    full.col(total_) = b_;

    t_.resize(m_ + 1, total_ + 1);
    t_.topRows(m_) = qr.solve(full);
    Vector cb(m_);
    for (Eigen::Index k = 0; k < m_; ++k) cb[k] = cost_entry(basis_[static_cast<size_t>(k)]);
    for (Eigen::Index j = 0; j <= total_; ++j)
      t_(m_, j) = (j < total_ ? cost_entry(j) : 0.0) - cb.dot(t_.col(j).head(m_));
    // basic columns are unit vectors by construction; clamp solver residue
    for (Eigen::Index k = 0; k < m_; ++k) {
      Eigen::Index j = basis_[static_cast<size_t>(k)];
      t_.col(j).setZero();
      t_(k, j) = 1.0;
    }
    if (!restore_feasibility()) {
      // near-singular basis beyond repair: restart from the all-slack basis
      for (Eigen::Index i = 0; i < m_; ++i) basis_[static_cast<size_t>(i)] = 2 * n_ + i;
      t_.setZero();
      t_.block(0, 0, m_, n_) = a_;
      t_.block(0, n_, m_, n_) = -a_;
      t_.block(0, 2 * n_, m_, m_) = RealMatrix::Identity(m_, m_);
      t_.block(0, total_, m_, 1) = b_;
      for (Eigen::Index j = 0; j < n_; ++j) {
        t_(m_, j) = c_[j];
        t_(m_, n_ + j) = -c_[j];
      }
    }
  }

  /// Exact refactorization can expose a primal-infeasible basis that the
  /// drifted tableau thought feasible; dual-simplex steps repair it while
  /// the cost row stays dual feasible up to tolerance.
  bool restore_feasibility() {
    const double feas = 1e-9, eps = 1e-11;
    for (int guard = 0; guard < 200; ++guard) {
      Eigen::Index leave = -1;
      double worst = -feas;
      for (Eigen::Index i = 0; i < m_; ++i)
        if (t_(i, total_) < worst) {
          worst = t_(i, total_);
          leave = i;
        }
      if (leave < 0) {
        for (Eigen::Index i = 0; i < m_; ++i)
          if (t_(i, total_) < 0) t_(i, total_) = 0.0;
        return true;
      }
      Eigen::Index enter = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < total_; ++j) {
        double pj = t_(leave, j);
        if (pj < -eps) {
          double ratio = std::max(0.0, t_(m_, j)) / -pj;
          if (ratio < best_ratio - 1e-12 ||
              (ratio < best_ratio + 1e-12 && (enter < 0 || pj < t_(leave, enter)))) {
            best_ratio = ratio;
            enter = j;
          }
        }
      }
      if (enter < 0) return false;
      pivot(leave, enter);
      basis_[static_cast<size_t>(leave)] = enter;
    }
    return false;
  }

  Eigen::Index price(double eps, bool bland) const {
    // relative tolerance: reduced-cost noise scales with the objective
    eps *= std::max(1.0, std::abs(t_(m_, total_)));
    Eigen::Index enter = -1;
    double best = -eps;
    for (Eigen::Index j = 0; j < total_; ++j) {
      double rc = t_(m_, j);
      if (rc < -eps) {
        if (bland) return j;
        if (rc < best) {
          best = rc;
          enter = j;
        }
      }
    }
    return enter;
  }

  Eigen::Index ratio_test(Eigen::Index enter, double eps) const {
    Eigen::Index leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m_; ++i) {
      double piv = t_(i, enter);
      if (piv > eps) {
        double ratio = std::max(0.0, t_(i, total_)) / piv;
        // among (near-)ties prefer the largest pivot for stability
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 && (leave < 0 || piv > t_(leave, enter)))) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    return leave;
  }

  void pivot(Eigen::Index leave, Eigen::Index enter) {
    t_.row(leave) /= t_(leave, enter);
    for (Eigen::Index i = 0; i <= m_; ++i) {
      if (i == leave) continue;
      double f = t_(i, enter);
      if (f != 0.0) t_.row(i) -= f * t_.row(leave);
    }
  }

  // callers only reach this right after a rebuild, so the basic values
  // reflect the original data
  LpResult extract() {
    LpResult res;
    Vector full = Vector::Zero(total_);
    for (Eigen::Index i = 0; i < m_; ++i) full[basis_[static_cast<size_t>(i)]] = t_(i, total_);
    res.x = full.head(n_) - full.segment(n_, n_);
    res.objective = c_.dot(res.x);
    res.status = LpResult::Status::Optimal;
    return res;
  }
};

}  // namespace detail

/// min c.x s.t. A x <= b over free variables; requires b >= 0 so the
/// all-slack basis is feasible (callers shift otherwise). The returned
/// optimum is recomputed from the original data and checked for
/// feasibility; Dantzig pricing with a Bland fallback against cycling.
inline LpResult solve_lp(const RealMatrix& a, const Vector& b, const Vector& c,
                         int max_iters = 20000) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    if (b[i] < 0) throw InvalidInput("solve_lp requires b >= 0");
  detail::SimplexTableau tab(a, b, c);
  LpResult res = tab.solve(max_iters);
  if (res.status == LpResult::Status::Optimal && a.rows() > 0) {
    double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
    if ((a * res.x - b).maxCoeff() > 1e-6 * scale) res.status = LpResult::Status::IterationLimit;
  }
#ifdef NCGDIST_LP_DUMP
  if (res.status == LpResult::Status::IterationLimit ||
      res.status == LpResult::Status::Infeasible) {
    static int dumpn = 0;
    char name[128];
    std::snprintf(name, sizeof(name), "/tmp/scratch/dump_lp_%d.txt", dumpn++);
    FILE* fp = std::fopen(name, "w");
    std::fprintf(fp, "%d %d\n", (int)a.rows(), (int)a.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      for (Eigen::Index j = 0; j < a.cols(); ++j) std::fprintf(fp, "%.17g ", a(i, j));
      std::fprintf(fp, "\n");
    }
    for (Eigen::Index j = 0; j < a.cols(); ++j) std::fprintf(fp, "%.17g ", c[j]);
    std::fprintf(fp, "\nb ");
    for (Eigen::Index i = 0; i < a.rows(); ++i) std::fprintf(fp, "%.17g ", b[i]);
    std::fprintf(fp, "\n");
    std::fclose(fp);
  }
#endif
  return res;
}

}  // namespace ncg
