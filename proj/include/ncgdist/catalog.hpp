#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ncgdist/bundle_moyal.hpp"
#include "ncgdist/json_io.hpp"

namespace ncg {

struct CatalogEntry {
  std::string id;
  std::string description;
  std::function<json(const json&)> eval;
};

namespace detail {

inline json finite_or(double v) { return std::isinf(v) ? json("infinite") : json(v); }

inline BlochPoint bloch_from_json(const json& j, const std::string& field) {
  if (!j.is_object())
    throw InvalidInput("field '" + field + "' must be an object with x, y, z");
  BlochPoint p;
  p.x = number_field(j, "x");
  p.y = number_field(j, "y");
  p.z = number_field(j, "z");
  return p;
}

inline std::vector<double> real_list(const json& j, const std::string& field) {
  if (!j.is_array()) throw InvalidInput("field '" + field + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : j) {
    if (!x.is_number()) throw InvalidInput("field '" + field + "' entries must be numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

inline QuantumLengthParams qlength_from_json(const json& p) {
  QuantumLengthParams q;
  q.lambda_p = number_field(p, "lambda_p");
  q.m = static_cast<int>(number_field(p, "m"));
  q.n = static_cast<int>(number_field(p, "n"));
  if (p.contains("kappa")) q.kappa = complex_entry(p["kappa"], "kappa");
  if (p.contains("kappa_tilde")) q.kappa_tilde = complex_entry(p["kappa_tilde"], "kappa_tilde");
  return q;
}

}  // namespace detail

inline const std::vector<CatalogEntry>& catalog() {
  using detail::finite_or;
  static const std::vector<CatalogEntry> entries = {
      {"two_point", "distance between the two points of a two-point space with coupling m",
       [](const json& p) {
         double m = number_field(p, "m");
         return json{{"value", m == 0 ? json("infinite") : json(1.0 / std::abs(m))}};
       }},
      {"three_point", "pairwise distances of the fully coupled three-point space",
       [](const json& p) {
         auto [a, b, c] = three_point_distance(
             {number_field(p, "d12"), number_field(p, "d13"), number_field(p, "d23")});
         return json{{"d12", a}, {"d13", b}, {"d23", c}};
       }},
      {"three_point_inverse", "couplings realizing prescribed three-point distances",
       [](const json& p) {
         ThreePointParams out = three_point_inverse(number_field(p, "d12"),
                                                    number_field(p, "d13"),
                                                    number_field(p, "d23"));
         return json{{"d12", out.d12}, {"d13", out.d13}, {"d23", out.d23}};
       }},
      {"three_point_star", "star resistances with d(i,j)^2 = r_i + r_j",
       [](const json& p) {
         auto [r1, r2, r3] = three_point_star_resistances(
             number_field(p, "d12"), number_field(p, "d13"), number_field(p, "d23"));
         return json{{"r1", r1}, {"r2", r2}, {"r3", r3}};
       }},
      {"four_point_special", "distances d(1,2), d(1,3) on the four-point cycle",
       [](const json& p) {
         FourPointParams fp{number_field(p, "d1"), kInf, number_field(p, "d3"),
                            number_field(p, "d4"), kInf, number_field(p, "d6")};
         auto [d12, d13] = four_point_special(fp);
         return json{{"d12", d12}, {"d13", d13}};
       }},
      {"complete_graph", "distance between any two vertices of the complete graph",
       [](const json& p) {
         return json{{"value", complete_graph_distance(static_cast<int>(number_field(p, "n")),
                                                       number_field(p, "k"))}};
       }},
      {"cut_link", "distance across the deleted link of an otherwise complete graph",
       [](const json& p) {
         return json{{"value", cut_link_distance(static_cast<int>(number_field(p, "n")),
                                                 number_field(p, "k"))}};
       }},
      {"graph_geodesic", "shortest-path length under edge costs 1/|weight|",
       [](const json& p) {
         if (!p.contains("weights") || !p["weights"].is_array())
           throw InvalidInput("field 'weights' must be a matrix of numbers");
         const json& jw = p["weights"];
         RealMatrix w(jw.size(), jw.size());
         for (size_t r = 0; r < jw.size(); ++r) {
           if (!jw[r].is_array() || jw[r].size() != jw.size())
             throw InvalidInput("field 'weights' must be a square matrix");
           for (size_t c = 0; c < jw.size(); ++c) {
             if (!jw[r][c].is_number())
               throw InvalidInput("field 'weights' entries must be numbers");
             w(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                 jw[r][c].get<double>();
           }
         }
         return json{{"value", finite_or(graph_geodesic_length(
                                   w, static_cast<int>(number_field(p, "i")),
                                   static_cast<int>(number_field(p, "j"))))}};
       }},
      {"m2_eigen", "M_2 with diagonal Dirac: chord distance at equal height",
       [](const json& p) {
         if (!p.contains("p") || !p.contains("q"))
           throw InvalidInput("fields 'p' and 'q' (Bloch points) are required");
         return json{{"value", finite_or(m2_eigen_distance(
                                   number_field(p, "d1"), number_field(p, "d2"),
                                   detail::bloch_from_json(p["p"], "p"),
                                   detail::bloch_from_json(p["q"], "q")))}};
       }},
      {"moyal_ball", "truncated Moyal N=2 distance on the Bloch ball",
       [](const json& p) {
         if (!p.contains("p") || !p.contains("q"))
           throw InvalidInput("fields 'p' and 'q' (Bloch points) are required");
         return json{{"value", moyal_ball_distance(number_field(p, "theta"),
                                                   detail::bloch_from_json(p["p"], "p"),
                                                   detail::bloch_from_json(p["q"], "q"))}};
       }},
      {"sphere_point", "M_n plus an extra point coupled through a vector v",
       [](const json& p) {
         SpherePointParams sp;
         sp.v = cvector_from_json(p.value("v", json::array()), "v");
         sp.xi = cvector_from_json(p.value("xi", json::array()), "xi");
         sp.zeta = cvector_from_json(p.value("zeta", json::array()), "zeta");
         auto [pair_d, point_d] = sphere_point_distance(sp);
         return json{{"pair_distance", finite_or(pair_d)},
                     {"point_distance", finite_or(point_d)}};
       }},
      {"pythagoras_bounds", "two-sided bounds for distances on graded products",
       [](const json& p) {
         auto [lo, hi] = pythagoras_bounds(number_field(p, "d1"), number_field(p, "d2"));
         return json{{"lower", lo}, {"upper", hi}};
       }},
      {"far_classes", "partition of bundle directions by holonomy phase equality",
       [](const json& p) {
         FarClasses fc = far_classes(detail::real_list(p.value("theta", json::array()), "theta"),
                                     p.value("tol", 1e-9));
         return json{{"count", fc.count()}, {"class_of", fc.class_of}};
       }},
      {"fiber_n2", "rank-2 fiber distance at fiber coordinate xi",
       [](const json& p) {
         return json{{"value", fiber_distance_n2(number_field(p, "r"), number_field(p, "omega"),
                                                 number_field(p, "xi"))}};
       }},
      {"fiber_general", "general fiber distance as pi times a trace norm",
       [](const json& p) {
         CircleBundleParams bp;
         bp.r = detail::real_list(p.value("r", json::array()), "r");
         bp.omega = detail::real_list(p.value("omega", json::array()), "omega");
         bp.phi = detail::real_list(p.value("phi", json::array()), "phi");
         bp.k = static_cast<int>(number_field(p, "k"));
         return json{{"value", finite_or(fiber_distance_general(bp))}};
       }},
      {"horizontal_fiber", "horizontal distance to the k-th accessible point",
       [](const json& p) {
         return json{
             {"value", horizontal_fiber_distance(static_cast<int>(number_field(p, "k")))}};
       }},
      {"torus_n2", "rank-2 base-point distance via the triangle maximization",
       [](const json& p) {
         return json{{"value", finite_or(torus_distance_n2(
                                   number_field(p, "r"), number_field(p, "z"),
                                   number_field(p, "omega"),
                                   static_cast<int>(number_field(p, "k")),
                                   number_field(p, "tau0"), number_field(p, "phi")))}};
       }},
      {"moyal_eigenstate", "Moyal plane distance between oscillator eigenstates",
       [](const json& p) {
         return json{{"value", moyal_eigenstate_distance(number_field(p, "theta"),
                                                         static_cast<int>(number_field(p, "m")),
                                                         static_cast<int>(number_field(p, "n")))}};
       }},
      {"translation", "distance between a coherent state and its translate",
       [](const json& p) {
         if (!p.contains("kappa")) throw InvalidInput("field 'kappa' is required");
         return json{{"value", translation_distance(complex_entry(p["kappa"], "kappa"))}};
       }},
      {"quantum_sq_length", "quantum squared length of a translated eigenstate pair",
       [](const json& p) {
         return json{{"value", quantum_sq_length(detail::qlength_from_json(p))}};
       }},
      {"modified_quantum_length", "quantum length with the diagonal contribution removed",
       [](const json& p) {
         return json{{"value", modified_quantum_length(detail::qlength_from_json(p))}};
       }},
      {"doubled_plane", "total length from translation and internal components",
       [](const json& p) {
         if (!p.contains("kappa")) throw InvalidInput("field 'kappa' is required");
         return json{{"value", doubled_plane_length(complex_entry(p["kappa"], "kappa"),
                                                    number_field(p, "internal"))}};
       }},
      {"n_point_realization",
       "existence of a Dirac operator realizing prescribed N-point distances",
       [](const json&) -> json {
         throw InvalidInput(
             "n_point_realization: only existence is known; no construction is provided");
       }},
  };
  return entries;
}

inline const CatalogEntry* catalog_find(const std::string& id) {
  for (const auto& e : catalog())
    if (e.id == id) return &e;
  return nullptr;
}

}  // namespace ncg
