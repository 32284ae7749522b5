#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "ncgdist/catalog.hpp"
#include "ncgdist/kantorovich.hpp"

namespace ncg {

struct VerifyRow {
  std::string case_id;
  std::string formula_ref;
  double expected = 0;
  double computed = 0;
  double tolerance = 0;
  bool relative = true;
  long runtime_ms = 0;

  double abs_err() const {
    if (std::isinf(expected) || std::isinf(computed))
      return std::isinf(expected) && std::isinf(computed) ? 0.0 : kInf;
    return std::abs(expected - computed);
  }
  double rel_err() const {
    double a = abs_err();
    if (a == 0) return 0;
    double scale = std::max(std::abs(expected), std::abs(computed));
    return std::isinf(scale) ? kInf : a / scale;
  }
  bool pass() const {
    if (std::isinf(expected) || std::isinf(computed)) return abs_err() == 0;
    if (expected == 0 || !relative) return abs_err() <= tolerance;
    return rel_err() <= tolerance;
  }
};

struct VerifyOptions {
  std::uint64_t seed = 7;
  bool timing = false;
};

namespace detail {

/// Collects rows for one criterion; timestamps are opt-in so reports are
/// byte-stable by default.
class Reporter {
 public:
  Reporter(std::vector<VerifyRow>& out, std::string prefix, std::string ref, bool timing)
      : out_(out), prefix_(std::move(prefix)), ref_(std::move(ref)), timing_(timing),
        mark_(std::chrono::steady_clock::now()) {}

  void value(double expected, double computed, double tol, bool relative = true) {
    VerifyRow r;
    char id[64];
    std::snprintf(id, sizeof(id), "%s_%03d", prefix_.c_str(), index_++);
    r.case_id = id;
    r.formula_ref = ref_;
    r.expected = expected;
    r.computed = computed;
    r.tolerance = tol;
    r.relative = relative;
    if (timing_) {
      auto now = std::chrono::steady_clock::now();
      r.runtime_ms =
          std::chrono::duration_cast<std::chrono::milliseconds>(now - mark_).count();
      mark_ = now;
    }
    out_.push_back(std::move(r));
  }

  /// Inequality-style check: computed is a violation magnitude, zero when
  /// the property holds.
  void bound(double violation, double tol) { value(0.0, std::max(0.0, violation), tol, false); }

  void verdict(bool expected_infinite, bool computed_infinite) {
    value(expected_infinite ? kInf : 1.0, computed_infinite ? kInf : 1.0, 0.0, false);
  }

 private:
  std::vector<VerifyRow>& out_;
  std::string prefix_, ref_;
  bool timing_;
  int index_ = 0;
  std::chrono::steady_clock::time_point mark_;
};

inline SolverOptions suite_solver(std::uint64_t seed, int multistarts = 4, int iters = 2500,
                                  double tol = 1e-7) {
  SolverOptions o;
  o.multistarts = multistarts;
  o.max_iterations = iters;
  o.rel_tolerance = tol;
  o.seed = seed;
  return o;
}

inline double graph_solver_distance(const RealMatrix& w, int i, int j, const SolverOptions& o) {
  SpectralTriple t = graph_triple(static_cast<int>(w.rows()), w);
  DistanceResult r = spectral_distance(t, State::delta(t.algebra, i), State::delta(t.algebra, j), o);
  return r.finite() ? r.value : kInf;
}

inline BlochPoint random_ball_point(Rng& rng, double max_norm = 1.0) {
  BlochPoint p{gaussian(rng), gaussian(rng), gaussian(rng)};
  double n = p.norm();
  double target = max_norm * std::cbrt(uniform(rng, 0.0, 1.0));
  if (n > 1e-12) {
    p.x *= target / n;
    p.y *= target / n;
    p.z *= target / n;
  } else {
    p = BlochPoint{target, 0, 0};
  }
  return p;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// One function per verified claim family.

inline std::vector<VerifyRow> verify_two_point(const VerifyOptions& vo) {
  std::vector<VerifyRow> rows;
  detail::Reporter rep(rows, "twopoint", "two_point", vo.timing);
  Rng rng(vo.seed * 1000 + 1);
  SolverOptions o = detail::suite_solver(vo.seed, 4, 1500);
  for (int i = 0; i < 20; ++i) {
    double m = uniform(rng, 0.1, 10.0);
    SpectralTriple t = two_point_triple(m);
    DistanceResult r =
        spectral_distance(t, State::delta(t.algebra, 0), State::delta(t.algebra, 1), o);
    rep.value(1.0 / m, r.finite() ? r.value : kInf, 1e-6);
  }
  return rows;
}

inline std::vector<VerifyRow> verify_three_point(const VerifyOptions& vo) {
  std::vector<VerifyRow> rows;
  detail::Reporter rep(rows, "threept", "three_point", vo.timing);
  detail::Reporter idr(rows, "threept_sqtri", "three_point", vo.timing);
  Rng rng(vo.seed * 1000 + 2);
  SolverOptions o = detail::suite_solver(vo.seed);
  for (int i = 0; i < 50; ++i) {
    ThreePointParams p{uniform(rng, 0.3, 3.0), uniform(rng, 0.3, 3.0), uniform(rng, 0.3, 3.0)};
    auto [d12, d13, d23] = three_point_distance(p);
    RealMatrix w = p.weights();
    rep.value(d12, detail::graph_solver_distance(w, 0, 1, o), 1e-5);
    rep.value(d13, detail::graph_solver_distance(w, 0, 2, o), 1e-5);
    rep.value(d23, detail::graph_solver_distance(w, 1, 2, o), 1e-5);
    double v = std::max({d12 * d12 - d13 * d13 - d23 * d23, d13 * d13 - d12 * d12 - d23 * d23,
                         d23 * d23 - d12 * d12 - d13 * d13});
    idr.bound(v, 1e-12);
  }
  return rows;
}

inline std::vector<VerifyRow> verify_three_point_inverse(const VerifyOptions& vo) {
  std::vector<VerifyRow> rows;
  detail::Reporter rep(rows, "threept_inv", "three_point_inverse", vo.timing);
  Rng rng(vo.seed * 1000 + 3);
  SolverOptions o = detail::suite_solver(vo.seed);
  for (int i = 0; i < 50; ++i) {
    // admissible target distances generated through the forward map
    ThreePointParams gen{uniform(rng, 0.4, 2.5), uniform(rng, 0.4, 2.5), uniform(rng, 0.4, 2.5)};
    auto [a, b, c] = three_point_distance(gen);
    ThreePointParams p = three_point_inverse(a, b, c);
    RealMatrix w = p.weights();
    rep.value(a, detail::graph_solver_distance(w, 0, 1, o), 1e-4);
    rep.value(b, detail::graph_solver_distance(w, 0, 2, o), 1e-4);
    rep.value(c, detail::graph_solver_distance(w, 1, 2, o), 1e-4);
  }
  return rows;
}

inline std::vector<VerifyRow> verify_four_point(const VerifyOptions& vo) {
  std::vector<VerifyRow> rows;
  detail::Reporter rep(rows, "fourpt", "four_point_special", vo.timing);
  Rng rng(vo.seed * 1000 + 4);
  SolverOptions o = detail::suite_solver(vo.seed, 6, 4000, 1e-6);

  auto check = [&](const FourPointParams& p) {
    auto [d12, d13] = four_point_special(p);
    SpectralTriple t = graph_triple(4, p.weights());
    State s0 = State::delta(t.algebra, 0);
    DistanceResult r01 = spectral_distance(t, s0, State::delta(t.algebra, 1), o);
    DistanceResult r02 = spectral_distance(t, s0, State::delta(t.algebra, 2), o);
    rep.value(d12, r01.finite() ? r01.value : kInf, 1e-4);
    rep.value(d13, r02.finite() ? r02.value : kInf, 1e-4);
  };

  // all-ones cycle pins the overlapping-guard resolution
  {
    FourPointParams ones{1, kInf, 1, 1, kInf, 1};
    auto [d12, d13] = four_point_special(ones);
    rep.value(1.0, d12, 1e-12);
    check(ones);
    (void)d13;
  }

  // 50 draws landing in each guard region of each distance
  int need_direct = 50, need_smooth = 50, need_corner12 = 50, need_chain13 = 50,
      need_corner13 = 50;
  int attempts = 0;
  auto draw = [&]() { return std::pow(10.0, uniform(rng, -1.2, 1.2)); };
  while ((need_direct > 0 || need_smooth > 0 || need_corner12 > 0 || need_chain13 > 0 ||
          need_corner13 > 0) &&
         ++attempts < 4000) {
    FourPointParams p{draw(), kInf, draw(), draw(), kInf, draw()};
    double d1 = p.d1, d3 = p.d3, d4 = p.d4, d6 = p.d6;
    double big = (std::pow(d3 + d4, 2) * d6 + (d1 - d6) * (d3 * d4 - d6 * d6)) *
                 (std::pow(d3 - d4, 2) * d6 + (d1 + d6) * (d3 * d4 + d6 * d6));
    double det = std::abs(d1 * d6 - d3 * d4);
    bool direct = d1 * d1 <= d6 * d6;
    bool smooth = !direct && big <= 0;
    bool chain13 = d3 * d3 + d6 * d6 <= det || d1 * d1 + d4 * d4 <= det;
    int& c12 = direct ? need_direct : (smooth ? need_smooth : need_corner12);
    int& c13 = chain13 ? need_chain13 : need_corner13;
    if (c12 <= 0 && c13 <= 0) continue;
    --c12;
    --c13;
    check(p);
  }
  // degenerate ridge d1*d6 = d3*d4, unreachable by generic draws
  for (int i = 0; i < 50; ++i) {
    double d1 = draw(), d3 = draw(), d4 = draw();
    check(FourPointParams{d1, kInf, d3, d4, kInf, d3 * d4 / d1});
  }
  return rows;
}

inline std::vector<VerifyRow> verify_complete_graphs(const VerifyOptions& vo) {
  std::vector<VerifyRow> rows;
  detail::Reporter rep(rows, "complete", "complete_graph", vo.timing);
  detail::Reporter cut(rows, "cutlink", "cut_link", vo.timing);
  SolverOptions o = detail::suite_solver(vo.seed);
  for (int n = 3; n <= 8; ++n)
    for (double k : {1.0, 2.5}) {
      RealMatrix w = RealMatrix::Constant(n, n, k);
      w.diagonal().setZero();
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          rep.value(complete_graph_distance(n, k), detail::graph_solver_distance(w, i, j, o),
                    1e-5);
      RealMatrix wc = w;
      wc(0, 1) = wc(1, 0) = 0;
      cut.value(cut_link_distance(n, k), detail::graph_solver_distance(wc, 0, 1, o), 1e-5);
    }
  return rows;
}

inline std::vector<VerifyRow> verify_graph_properties(const VerifyOptions& vo) {
  std::vector<VerifyRow> rows;
  detail::Reporter geo(rows, "graph_geo", "graph_geodesic", vo.timing);
  detail::Reporter mono(rows, "graph_mono", "solver", vo.timing);
  detail::Reporter conn(rows, "graph_conn", "solver", vo.timing);
  Rng rng(vo.seed * 1000 + 6);
  SolverOptions o = detail::suite_solver(vo.seed, 3, 2000);
  for (int g = 0; g < 20; ++g) {
    int n = 3 + static_cast<int>(rng() % 5);
    RealMatrix w = RealMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (uniform(rng, 0, 1) > 0.4) w(i, j) = w(j, i) = uniform(rng, 0.3, 2.0);
    int i = static_cast<int>(rng() % n), j = static_cast<int>(rng() % n);
    if (i == j) j = (j + 1) % n;
    double geod = graph_geodesic_length(w, i, j);
    double d = detail::graph_solver_distance(w, i, j, o);
    conn.verdict(std::isinf(geod), std::isinf(d));
    if (std::isfinite(geod) && std::isfinite(d)) geo.bound(d - geod - 1e-8, 1e-8);

    // delete one present line; distances never decrease
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (w(a, b) != 0) edges.push_back({a, b});
    if (!edges.empty() && std::isfinite(d)) {
      auto [a, b] = edges[rng() % edges.size()];
      RealMatrix wd = w;
      wd(a, b) = wd(b, a) = 0;
      double dd = detail::graph_solver_distance(wd, i, j, o);
      mono.bound(std::isinf(dd) ? 0.0 : d - dd, 3e-5);
    }
  }
  return rows;
}

inline std::vector<VerifyRow> verify_m2_eigen(const VerifyOptions& vo) {
  std::vector<VerifyRow> rows;
  detail::Reporter rep(rows, "m2chord", "m2_eigen", vo.timing);
  detail::Reporter inf(rows, "m2inf", "m2_eigen", vo.timing);
  Rng rng(vo.seed * 1000 + 7);
  SolverOptions o = detail::suite_solver(vo.seed, 4, 1500);
  for (int i = 0; i < 100; ++i) {
    double d1 = uniform(rng, 0.4, 2.0);
    double d2 = d1 + uniform(rng, 0.3, 1.5);
    SpectralTriple t = m2_eigen_triple(d1, d2);
    BlochPoint p = detail::random_ball_point(rng, 0.65);
    BlochPoint q = detail::random_ball_point(rng, 0.65);
    q.z = p.z;
    DistanceResult r =
        spectral_distance(t, state_of_bloch(t.algebra, p), state_of_bloch(t.algebra, q), o);
    rep.value(m2_eigen_distance(d1, d2, p, q), r.finite() ? r.value : kInf, 1e-5);
  }
  for (int i = 0; i < 20; ++i) {
    SpectralTriple t = m2_eigen_triple(1.0, 2.0);
    BlochPoint p = detail::random_ball_point(rng, 0.8);
    double ang = uniform(rng, 0, 2 * kPi);
    BlochPoint q{0.3 * std::cos(ang), 0.3 * std::sin(ang),
                 p.z > 0 ? p.z - 0.4 : p.z + 0.4};
    inf.verdict(true, !is_finite(t, state_of_bloch(t.algebra, p), state_of_bloch(t.algebra, q))
                           .finite);
  }
  return rows;
}

inline std::vector<VerifyRow> verify_moyal_ball(const VerifyOptions& vo) {
  std::vector<VerifyRow> rows;
  detail::Reporter rep(rows, "moyalball", "moyal_ball", vo.timing);
  Rng rng(vo.seed * 1000 + 8);
  SolverOptions o = detail::suite_solver(vo.seed, 4, 2000);
  double theta = 2.0;
  SpectralTriple t = truncated_moyal_triple(2, theta);
  for (int i = 0; i < 100; ++i) {
    // half the draws land on the pure-state sphere, half stay mixed
    BlochPoint p = detail::random_ball_point(rng);
    BlochPoint q = detail::random_ball_point(rng);
    if (i % 2 == 0) {
      double np = p.norm(), nq = q.norm();
      if (np > 1e-6 && nq > 1e-6) {
        p.x /= np; p.y /= np; p.z /= np;
        q.x /= nq; q.y /= nq; q.z /= nq;
      }
    }
    DistanceResult r =
        spectral_distance(t, state_of_bloch(t.algebra, p), state_of_bloch(t.algebra, q), o);
    rep.value(moyal_ball_distance(theta, p, q), r.finite() ? r.value : kInf, 1e-5);
  }
  return rows;
}

inline std::vector<VerifyRow> verify_sphere_point(const VerifyOptions& vo) {
  std::vector<VerifyRow> rows;
  detail::Reporter rep(rows, "spherept", "sphere_point", vo.timing);
  detail::Reporter ext(rows, "spherept_ext", "sphere_point", vo.timing);
  detail::Reporter inf(rows, "spherept_inf", "sphere_point", vo.timing);
  Rng rng(vo.seed * 1000 + 9);
  SolverOptions o = detail::suite_solver(vo.seed, 4, 2500);
  for (int n : {2, 3}) {
    CVector v = random_unit_vector(rng, n) * uniform(rng, 0.7, 1.6);
    CVector vhat = v / v.norm();
    SpectralTriple t = sphere_point_triple(v);
    for (int i = 0; i < 10; ++i) {
      CVector xi = random_unit_vector(rng, n);
      Complex rot = std::polar(1.0, uniform(rng, 0.2, 3.0));
      CVector zeta = xi + (rot - 1.0) * vhat * vhat.dot(xi);
      zeta /= zeta.norm();
      SpherePointParams sp{v, xi, zeta};
      auto [pair_d, point_d] = sphere_point_distance(sp);
      (void)point_d;
      DistanceResult r = spectral_distance(t, State::pure(t.algebra, 0, xi),
                                           State::pure(t.algebra, 0, zeta), o);
      rep.value(pair_d, r.finite() ? r.value : kInf, 1e-5);
    }
    // the isolated point sits at 1/||v|| from the state of v itself
    DistanceResult rc = spectral_distance(t, State::delta(t.algebra, 1),
                                          State::pure(t.algebra, 0, vhat), o);
    ext.value(1.0 / v.norm(), rc.finite() ? rc.value : kInf, 1e-5);
    for (int i = 0; i < 5; ++i) {
      CVector xi = random_unit_vector(rng, n);
      CVector zeta = random_unit_vector(rng, n);
      SpherePointParams sp{v, xi, zeta};
      if (std::isfinite(sphere_point_distance(sp).first)) continue;
      inf.verdict(true,
                  !is_finite(t, State::pure(t.algebra, 0, xi), State::pure(t.algebra, 0, zeta))
                       .finite);
    }
  }
  return rows;
}

inline std::vector<VerifyRow> verify_products(const VerifyOptions& vo) {
  std::vector<VerifyRow> rows;
  detail::Reporter sand(rows, "prod_sandwich", "solver", vo.timing);
  detail::Reporter single(rows, "prod_single", "solver", vo.timing);
  detail::Reporter doubled(rows, "prod_doubled", "solver", vo.timing);
  Rng rng(vo.seed * 1000 + 10);
  SolverOptions o = detail::suite_solver(vo.seed, 4, 2500);
  for (int i = 0; i < 50; ++i) {
    double m1 = uniform(rng, 0.5, 2.0), m2 = uniform(rng, 0.5, 2.0);
    SpectralTriple t1 = two_point_triple(m1), t2 = two_point_triple(m2);
    SpectralTriple t = product_triples(t1, t2);
    double p1 = uniform(rng, 0, 1), p1b = uniform(rng, 0, 1);
    double p2 = uniform(rng, 0, 1), p2b = uniform(rng, 0, 1);
    auto tp_state = [&](const SpectralTriple& tt, double p) {
      return mix_states(tt.algebra, State::delta(tt.algebra, 0), State::delta(tt.algebra, 1), p);
    };
    double d1 = std::abs(p1 - p1b) / m1;
    double d2 = std::abs(p2 - p2b) / m2;
    State a = product_state(t1, t2, tp_state(t1, p1), tp_state(t2, p2));
    State b = product_state(t1, t2, tp_state(t1, p1b), tp_state(t2, p2b));
    DistanceResult r = spectral_distance(t, a, b, o);
    double d = r.finite() ? r.value : kInf;
    double lo = std::hypot(d1, d2);
    double hi = std::min(d1 + d2, std::sqrt(2.0) * lo);
    sand.bound(std::max(lo - d, d - hi), 1e-5);
    if (i < 10) {
      // one factor pinned: the product distance collapses to the live factor
      State bs = product_state(t1, t2, tp_state(t1, p1b), tp_state(t2, p2));
      DistanceResult rs = spectral_distance(t, a, bs, o);
      if (d1 < 1e-9)
        single.bound(std::abs(rs.value - d1), 1e-6);
      else
        single.value(d1, rs.finite() ? rs.value : kInf, 1e-6);
      // both factors flipped between extreme points: exact squared addition
      State da = product_state(t1, t2, State::delta(t1.algebra, 0), State::delta(t2.algebra, 0));
      State db = product_state(t1, t2, State::delta(t1.algebra, 1), State::delta(t2.algebra, 1));
      DistanceResult rd = spectral_distance(t, da, db, o);
      doubled.value(std::hypot(1.0 / m1, 1.0 / m2), rd.finite() ? rd.value : kInf, 1e-5);
    }
  }
  return rows;
}

inline std::vector<VerifyRow> verify_segments(const VerifyOptions& vo) {
  std::vector<VerifyRow> rows;
  detail::Reporter rep(rows, "segment", "solver", vo.timing);
  detail::Reporter conv(rows, "segment_conv", "solver", vo.timing);
  Rng rng(vo.seed * 1000 + 11);
  SolverOptions o = detail::suite_solver(vo.seed, 3, 1500);
  std::vector<double> grid = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (int i = 0; i < 20; ++i) {
    SpectralTriple t = [&]() {
      switch (i % 3) {
        case 0: return two_point_triple(uniform(rng, 0.5, 2.0));
        case 1: {
          double d1 = uniform(rng, 0.4, 1.5);
          return m2_eigen_triple(d1, d1 + uniform(rng, 0.5, 1.5));
        }
        default: return truncated_moyal_triple(2, 2.0);
      }
    }();
    State s0, s1;
    if (i % 3 == 0) {
      s0 = State::delta(t.algebra, 0);
      s1 = State::delta(t.algebra, 1);
    } else if (i % 3 == 1) {
      BlochPoint p = detail::random_ball_point(rng, 0.65);
      BlochPoint q = detail::random_ball_point(rng, 0.65);
      q.z = p.z;
      s0 = state_of_bloch(t.algebra, p);
      s1 = state_of_bloch(t.algebra, q);
    } else {
      s0 = State::pure(t.algebra, 0, random_unit_vector(rng, 2));
      s1 = State::pure(t.algebra, 0, random_unit_vector(rng, 2));
    }
    SegmentReport sr = segment_check(t, s0, s1, grid, o);
    rep.bound(sr.max_deviation, 1e-5);
    for (double s : {0.3, 0.7})
      conv.verdict(false, !is_finite(t, s0, mix_states(t.algebra, s0, s1, s)).finite);
  }
  return rows;
}

inline std::vector<VerifyRow> verify_symmetry_reductions(const VerifyOptions& vo) {
  std::vector<VerifyRow> rows;
  detail::Reporter iso(rows, "isometry", "solver", vo.timing);
  detail::Reporter proj(rows, "projection", "solver", vo.timing);
  Rng rng(vo.seed * 1000 + 12);
  SolverOptions o = detail::suite_solver(vo.seed, 3, 1500);
  for (int i = 0; i < 20; ++i) {
    double d1 = uniform(rng, 0.4, 1.5);
    SpectralTriple t = m2_eigen_triple(d1, d1 + uniform(rng, 0.5, 1.5));
    Matrix u = Matrix::Zero(2, 2);
    u(0, 0) = std::polar(1.0, uniform(rng, 0, 6.28));
    u(1, 1) = std::polar(1.0, uniform(rng, 0, 6.28));
    BlochPoint p = detail::random_ball_point(rng, 0.65);
    BlochPoint q = detail::random_ball_point(rng, 0.65);
    q.z = p.z;
    State a = state_of_bloch(t.algebra, p), b = state_of_bloch(t.algebra, q);
    double d = spectral_distance(t, a, b, o).value;
    double du = spectral_distance(t, state_pullback_adu(t.algebra, a, {u}),
                                  state_pullback_adu(t.algebra, b, {u}), o)
                    .value;
    iso.value(d, du, 1e-5);
  }
  for (int i = 0; i < 20; ++i) {
    int n1 = 2 + static_cast<int>(rng() % 2), n2 = 2 + static_cast<int>(rng() % 2);
    int n = n1 + n2;
    RealMatrix w = RealMatrix::Zero(n, n);
    for (int a = 0; a < n1; ++a)
      for (int b = a + 1; b < n1; ++b) w(a, b) = w(b, a) = uniform(rng, 0.5, 2.0);
    for (int a = n1; a < n; ++a)
      for (int b = a + 1; b < n; ++b) w(a, b) = w(b, a) = uniform(rng, 0.5, 2.0);
    SpectralTriple t = graph_triple(n, w);
    Matrix e = Matrix::Zero(n, n);
    for (int a = 0; a < n1; ++a) e(a, a) = 1;
    SpectralTriple sub = project_triple(t, e);
    State sa = State::delta(t.algebra, 0), sb = State::delta(t.algebra, 1);
    double full = spectral_distance(t, sa, sb, o).value;
    double compressed = spectral_distance(sub, sa, sb, o).value;
    proj.value(full, compressed, 1e-5);
  }
  return rows;
}

inline std::vector<VerifyRow> verify_bundle(const VerifyOptions& vo) {
  std::vector<VerifyRow> rows;
  detail::Reporter red(rows, "bundle_n2", "fiber_general", vo.timing);
  detail::Reporter tor(rows, "bundle_torus", "torus_n2", vo.timing);
  detail::Reporter far(rows, "bundle_far", "torus_n2", vo.timing);
  Rng rng(vo.seed * 1000 + 13);
  for (int i = 0; i < 1000; ++i) {
    double r1 = uniform(rng, 0.05, 1.95);
    double omega = uniform(rng, 0.05, 0.95);
    double phi = uniform(rng, 0, 2 * kPi);
    int k = static_cast<int>(rng() % 5);
    CircleBundleParams p;
    p.r = {r1, 2 - r1};
    p.omega = {0.0, omega};
    p.phi = {0.0, phi};
    p.k = k;
    double general = fiber_distance_general(p);
    double chord =
        fiber_distance_n2(std::sqrt(r1 * (2 - r1)), omega,
                          detail::wrap_angle(2 * k * omega * kPi + phi));
    red.value(chord, general, 1e-10);
  }
  for (int i = 0; i < 200; ++i) {
    double omega = uniform(rng, 0.05, 0.95);
    double phi = uniform(rng, 0, 2 * kPi);
    double tau0 = uniform(rng, 0, 2 * kPi);
    int k = static_cast<int>(rng() % 3);
    double s = std::abs(std::sin(omega * kPi));
    double wk = std::abs(std::sin(k * omega * kPi + phi / 2)) / s;
    double wk1 = std::abs(std::sin((k + 1) * omega * kPi + phi / 2)) / s;
    // equatorial states force equal direction amplitudes, hence r = 1
    tor.value(wk1 * tau0 + wk * (2 * kPi - tau0), torus_distance_n2(1.0, 0.0, omega, k, tau0, phi),
              1e-6);
  }
  for (int i = 0; i < 10; ++i) {
    double tau0 = uniform(rng, 0, 2 * kPi);
    far.value(std::min(tau0, 2 * kPi - tau0), torus_distance_n2(1.0, 0.3, 1.0, 1, tau0, 0.0),
              1e-12, false);
    far.verdict(true, std::isinf(torus_distance_n2(1.0, 0.3, 1.0, 1, tau0, 0.7)));
  }
  return rows;
}

inline std::vector<VerifyRow> verify_moyal_ladder(const VerifyOptions& vo) {
  std::vector<VerifyRow> rows;
  detail::Reporter rep(rows, "moyal_ladder", "moyal_eigenstate", vo.timing);
  detail::Reporter add(rows, "moyal_additive", "moyal_eigenstate", vo.timing);
  SolverOptions o;
  o.multistarts = 1;
  o.max_iterations = 800;
  o.rel_tolerance = 1e-4;
  o.seed = vo.seed;
  double limit = moyal_eigenstate_distance(2.0, 0, 1);
  std::vector<double> errs;
  for (int n : {4, 8, 12, 16}) {
    SpectralTriple t = truncated_moyal_triple(n, 2.0);
    State w0 = State::pure(t.algebra, 0, CVector::Unit(n, 0));
    State w1 = State::pure(t.algebra, 0, CVector::Unit(n, 1));
    DistanceResult r = spectral_distance(t, w0, w1, o);
    double d = r.finite() ? r.value : kInf;
    errs.push_back(std::abs(d - limit) / limit);
    rep.value(limit, d, 0.02);
  }
  double worst = 0;
  for (size_t i = 1; i < errs.size(); ++i) worst = std::max(worst, errs[i] - errs[i - 1]);
  rep.bound(worst, 5e-4);

  for (int m = 0; m < 4; ++m)
    for (int n = m + 1; n < 6; ++n)
      for (int p = n + 1; p < 7; ++p)
        add.value(moyal_eigenstate_distance(2.0, m, p),
                  moyal_eigenstate_distance(2.0, m, n) + moyal_eigenstate_distance(2.0, n, p),
                  1e-14);
  return rows;
}

inline std::vector<VerifyRow> verify_quantum_length(const VerifyOptions& vo) {
  std::vector<VerifyRow> rows;
  detail::Reporter rep(rows, "qlength", "modified_quantum_length", vo.timing);
  Rng rng(vo.seed * 1000 + 15);

  // translation invariance of the squared length
  for (int i = 0; i < 10; ++i) {
    Complex shift(gaussian(rng), gaussian(rng));
    Complex dk(gaussian(rng), gaussian(rng));
    QuantumLengthParams a, b;
    a.kappa = shift;
    a.kappa_tilde = shift + dk;
    b.kappa_tilde = dk;
    rep.value(quantum_sq_length(b), quantum_sq_length(a), 1e-12);
  }
  // eigenstate pair values
  for (int n = 1; n <= 6; ++n) {
    QuantumLengthParams q;
    q.n = n;
    rep.value(std::sqrt(2.0 * n + 1) - 1.0, modified_quantum_length(q), 1e-12);
  }
  // coherent pairs reduce to the translation amplitude
  for (int i = 0; i < 5; ++i) {
    Complex dk(gaussian(rng), gaussian(rng));
    QuantumLengthParams q;
    q.kappa_tilde = dk;
    rep.value(std::abs(dk), modified_quantum_length(q), 1e-12);
  }
  // relative gap against the spectral eigenstate distance
  auto gap = [](int n) {
    QuantumLengthParams q;
    q.n = n;
    double spec = moyal_eigenstate_distance(1.0, 0, n);
    return std::abs(modified_quantum_length(q) - spec) / spec;
  };
  rep.bound(gap(100), 0.01);
  double worst = 0;
  double prev = gap(10);
  for (int n : {20, 50, 100}) {
    double g = gap(n);
    worst = std::max(worst, g - prev);
    prev = g;
  }
  rep.bound(worst, 1e-12);
  return rows;
}

inline std::vector<VerifyRow> verify_kantorovich_suite(const VerifyOptions& vo) {
  std::vector<VerifyRow> rows;
  detail::Reporter exact(rows, "wd_exact", "solver", vo.timing);
  detail::Reporter seg(rows, "wd_segment", "solver", vo.timing);
  detail::Reporter sand(rows, "wd_sandwich", "solver", vo.timing);
  Rng rng(vo.seed * 1000 + 16);
  SolverOptions o = detail::suite_solver(vo.seed, 4, 2000);

  SpectralTriple c2 = two_point_triple(1.3);
  State da = State::delta(c2.algebra, 0), db = State::delta(c2.algebra, 1);
  double dref = spectral_distance(c2, da, db, o).value;
  PurePairConstraint endpoints{da, db, dref};
  exact.value(dref, wasserstein_upper(c2, da, db, {}, endpoints), 1e-8);

  SpectralTriple moyal = truncated_moyal_triple(2, 2.0);
  State s0 = State::pure(moyal.algebra, 0, random_unit_vector(rng, 2));
  State s1 = State::pure(moyal.algebra, 0, random_unit_vector(rng, 2));
  double d01 = spectral_distance(moyal, s0, s1, o).value;
  PurePairConstraint moyal_pair{s0, s1, d01};
  for (double lam : {0.25, 0.5, 0.75}) {
    State mid = mix_states(moyal.algebra, s0, s1, lam);
    seg.value((1 - lam) * d01, wasserstein_upper(moyal, s0, mid, {}, moyal_pair), 1e-6);
  }

  auto c2_pairs = sample_pure_pairs(c2, 8, vo.seed * 1000 + 17, o);
  for (int i = 0; i < 20; ++i) {
    State a = mix_states(c2.algebra, da, db, uniform(rng, 0, 1));
    State b = mix_states(c2.algebra, da, db, uniform(rng, 0, 1));
    double d = spectral_distance(c2, a, b, o).value;
    sand.bound(d - wasserstein_upper(c2, a, b, c2_pairs), 1e-6);
  }
  auto moyal_pairs = sample_pure_pairs(moyal, 12, vo.seed * 1000 + 18, o);
  for (int i = 0; i < 20; ++i) {
    State a = State::pure(moyal.algebra, 0, random_unit_vector(rng, 2));
    State b = State::pure(moyal.algebra, 0, random_unit_vector(rng, 2));
    double d = spectral_distance(moyal, a, b, o).value;
    sand.bound(d - wasserstein_upper(moyal, a, b, moyal_pairs), 1e-6);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Suite composition and CSV output.

inline const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {"discrete", "graphs",  "ball",       "products",
                                                 "bundle",   "moyal",   "kantorovich"};
  return names;
}

inline std::vector<VerifyRow> run_suite(const std::string& name, const VerifyOptions& vo) {
  std::vector<VerifyRow> rows;
  auto append = [&](std::vector<VerifyRow> part) {
    for (auto& r : part) rows.push_back(std::move(r));
  };
  bool all = name == "all";
  bool known = all;
  if (all || name == "discrete") {
    append(verify_two_point(vo));
    append(verify_three_point(vo));
    append(verify_three_point_inverse(vo));
    append(verify_four_point(vo));
    known = true;
  }
  if (all || name == "graphs") {
    append(verify_complete_graphs(vo));
    append(verify_graph_properties(vo));
    known = true;
  }
  if (all || name == "ball") {
    append(verify_m2_eigen(vo));
    append(verify_moyal_ball(vo));
    append(verify_sphere_point(vo));
    known = true;
  }
  if (all || name == "products") {
    append(verify_products(vo));
    append(verify_segments(vo));
    append(verify_symmetry_reductions(vo));
    known = true;
  }
  if (all || name == "bundle") {
    append(verify_bundle(vo));
    known = true;
  }
  if (all || name == "moyal") {
    append(verify_moyal_ladder(vo));
    append(verify_quantum_length(vo));
    known = true;
  }
  if (all || name == "kantorovich") {
    append(verify_kantorovich_suite(vo));
    known = true;
  }
  if (!known) throw InvalidInput("unknown verification suite: " + name);
  std::sort(rows.begin(), rows.end(),
            [](const VerifyRow& a, const VerifyRow& b) { return a.case_id < b.case_id; });
  return rows;
}

inline std::string format_report_number(double v) {
  if (std::isinf(v)) return "inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline std::string report_to_csv(const std::vector<VerifyRow>& rows) {
  std::string out = "case_id,formula_ref,expected,computed,abs_err,rel_err,status,runtime_ms\n";
  for (const auto& r : rows) {
    out += r.case_id + "," + r.formula_ref + "," + format_report_number(r.expected) + "," +
           format_report_number(r.computed) + "," + format_report_number(r.abs_err()) + "," +
           format_report_number(r.rel_err()) + "," + (r.pass() ? "pass" : "fail") + "," +
           std::to_string(r.runtime_ms) + "\n";
  }
  return out;
}

}  // namespace ncg
