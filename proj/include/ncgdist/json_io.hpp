#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "ncgdist/solver.hpp"

namespace ncg {

using nlohmann::json;

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open file: " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw InvalidInput("malformed JSON in file: " + path);
  return j;
}

inline double number_field(const json& j, const std::string& field) {
  if (!j.contains(field) || !j[field].is_number())
    throw InvalidInput("field '" + field + "' must be a number");
  return j[field].get<double>();
}

inline Complex complex_entry(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InvalidInput("field '" + field + "': complex entries must be [re, im] pairs");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

inline CVector cvector_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty())
    throw InvalidInput("field '" + field + "' must be a nonempty array");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = complex_entry(j[i], field);
  return v;
}

inline json cvector_to_json(const CVector& v) {
  json j = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back({v[i].real(), v[i].imag()});
  return j;
}

/// Matrix given as rows of [re, im] pairs.
inline Matrix complex_matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty())
    throw InvalidInput("field '" + field + "' must be a nonempty array of rows");
  size_t cols = 0;
  Matrix m;
  for (size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array()) throw InvalidInput("field '" + field + "': rows must be arrays");
    if (r == 0) {
      cols = j[r].size();
      m = Matrix::Zero(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
    }
    if (j[r].size() != cols) throw InvalidInput("field '" + field + "': ragged rows");
    for (size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_entry(j[r][c], field);
  }
  return m;
}

inline json complex_matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Matrix given as {"re": [[...]], "im": [[...]]} with "im" optional.
inline Matrix re_im_matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_object() || !j.contains("re"))
    throw InvalidInput("field '" + field + "' must be an object with a 're' matrix");
  const json& re = j["re"];
  if (!re.is_array() || re.empty())
    throw InvalidInput("field '" + field + ".re' must be a nonempty array of rows");
  Eigen::Index rows = static_cast<Eigen::Index>(re.size());
  Eigen::Index cols = static_cast<Eigen::Index>(re[0].size());
  Matrix m = Matrix::Zero(rows, cols);
  auto fill = [&](const json& part, const std::string& name, bool imag) {
    if (!part.is_array() || static_cast<Eigen::Index>(part.size()) != rows)
      throw InvalidInput("field '" + field + "." + name + "' has wrong row count");
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (!part[r].is_array() || static_cast<Eigen::Index>(part[r].size()) != cols)
        throw InvalidInput("field '" + field + "." + name + "' has ragged rows");
      for (Eigen::Index c = 0; c < cols; ++c) {
        if (!part[r][c].is_number())
          throw InvalidInput("field '" + field + "." + name + "' entries must be numbers");
        double x = part[r][c].get<double>();
        m(r, c) += imag ? Complex(0, x) : Complex(x, 0);
      }
    }
  };
  fill(re, "re", false);
  if (j.contains("im")) fill(j["im"], "im", true);
  return m;
}

inline json re_im_matrix_to_json(const Matrix& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json rre = json::array(), rim = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rre.push_back(m(r, c).real());
      rim.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rre));
    im.push_back(std::move(rim));
  }
  return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

inline State state_from_json(const Algebra& alg, const json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw InvalidInput("state field 'type' must be \"pure\" or \"mixed\"");
  std::string type = j["type"].get<std::string>();
  if (type == "pure") {
    if (!j.contains("block") || !j["block"].is_number_integer())
      throw InvalidInput("pure state field 'block' must be an integer");
    int block = j["block"].get<int>();
    if (block < 0 || block >= static_cast<int>(alg.blocks.size()))
      throw InvalidInput("pure state field 'block' is out of range");
    CVector v = cvector_from_json(j.value("vector", json::array()), "vector");
    if (v.size() != alg.blocks[static_cast<size_t>(block)])
      throw InvalidInput("pure state field 'vector' has wrong dimension for its block");
    double n = v.norm();
    if (n < 1e-14) throw InvalidInput("pure state field 'vector' must be nonzero");
    return State::pure(alg, block, v / n);
  }
  if (type == "mixed") {
    if (!j.contains("weights") || !j["weights"].is_array() ||
        j["weights"].size() != alg.blocks.size())
      throw InvalidInput("mixed state field 'weights' must list one weight per block");
    if (!j.contains("densities") || !j["densities"].is_array() ||
        j["densities"].size() != alg.blocks.size())
      throw InvalidInput("mixed state field 'densities' must list one density per block");
    std::vector<double> weights;
    std::vector<Matrix> densities;
    for (size_t b = 0; b < alg.blocks.size(); ++b) {
      if (!j["weights"][b].is_number())
        throw InvalidInput("mixed state field 'weights' entries must be numbers");
      weights.push_back(j["weights"][b].get<double>());
      Matrix rho = complex_matrix_from_json(j["densities"][b], "densities");
      if (rho.rows() != alg.blocks[b] || rho.cols() != alg.blocks[b])
        throw InvalidInput("mixed state field 'densities' has a wrong-sized block");
      densities.push_back(std::move(rho));
    }
    State s = State::mixed(std::move(weights), std::move(densities));
    s.validate(alg);
    return s;
  }
  throw InvalidInput("state field 'type' must be \"pure\" or \"mixed\"");
}

inline json state_to_json(const State& s) {
  if (s.pure_vector) {
    return json{{"type", "pure"},
                {"block", s.pure_vector->first},
                {"vector", cvector_to_json(s.pure_vector->second)}};
  }
  json dens = json::array();
  for (const auto& rho : s.densities) dens.push_back(complex_matrix_to_json(rho));
  return json{{"type", "mixed"}, {"weights", s.weights}, {"densities", std::move(dens)}};
}

inline SpectralTriple triple_from_json(const json& j) {
  if (!j.is_object() || !j.contains("algebra") || !j["algebra"].is_object() ||
      !j["algebra"].contains("blocks"))
    throw InvalidInput("triple field 'algebra.blocks' is required");
  const json& jb = j["algebra"]["blocks"];
  if (!jb.is_array() || jb.empty())
    throw InvalidInput("triple field 'algebra.blocks' must be a nonempty integer array");
  std::vector<int> blocks;
  for (const auto& x : jb) {
    if (!x.is_number_integer() || x.get<int>() < 1)
      throw InvalidInput("triple field 'algebra.blocks' entries must be positive integers");
    blocks.push_back(x.get<int>());
  }
  Algebra alg(blocks);

  Representation rep;
  std::string kind = "defining";
  if (j.contains("representation")) {
    const json& jr = j["representation"];
    if (!jr.is_object() || !jr.contains("kind") || !jr["kind"].is_string())
      throw InvalidInput("triple field 'representation.kind' must be a string");
    kind = jr["kind"].get<std::string>();
  }
  if (kind == "diagonal" || kind == "defining") {
    rep = defining_representation(alg);
  } else if (kind == "left_mult_tensor") {
    int copies = 1;
    if (j["representation"].contains("tensor_copies")) {
      const json& tc = j["representation"]["tensor_copies"];
      if (!tc.is_number_integer() || tc.get<int>() < 1)
        throw InvalidInput("triple field 'representation.tensor_copies' must be a positive integer");
      copies = tc.get<int>();
    }
    rep = left_mult_tensor_representation(alg, copies);
  } else if (kind == "custom") {
    const json& jr = j["representation"];
    if (!jr.contains("images") || !jr["images"].is_array() ||
        jr["images"].size() != hermitian_basis(alg).size())
      throw InvalidInput(
          "triple field 'representation.images' must list one operator per Hermitian basis "
          "element");
    for (const auto& img : jr["images"]) rep.images.push_back(re_im_matrix_from_json(img, "images"));
    rep.hilbert_dim = static_cast<int>(rep.images.front().rows());
    Rng rng(0);
    rep.validate(alg, rng);
  } else {
    throw InvalidInput("triple field 'representation.kind' must be one of diagonal, defining, "
                       "left_mult_tensor, custom");
  }

  if (!j.contains("dirac")) throw InvalidInput("triple field 'dirac' is required");
  SpectralTriple t{alg, std::move(rep), re_im_matrix_from_json(j["dirac"], "dirac"), {}};
  if (t.dirac.rows() != t.rep.hilbert_dim || t.dirac.cols() != t.rep.hilbert_dim)
    throw InvalidInput("triple field 'dirac' does not match the Hilbert space dimension");
  if (j.contains("grading")) t.grading = re_im_matrix_from_json(j["grading"], "grading");
  t.validate();
  return t;
}

inline json triple_to_json(const SpectralTriple& t) {
  json j;
  j["algebra"] = json{{"blocks", t.algebra.blocks}};
  json images = json::array();
  for (const auto& img : t.rep.images) images.push_back(re_im_matrix_to_json(img));
  j["representation"] = json{{"kind", "custom"}, {"images", std::move(images)}};
  j["dirac"] = re_im_matrix_to_json(t.dirac);
  if (t.grading) j["grading"] = re_im_matrix_to_json(*t.grading);
  return j;
}

inline json element_to_json(const AlgebraElement& e) {
  json blocks = json::array();
  for (const auto& m : e.mats) blocks.push_back(complex_matrix_to_json(m));
  return json{{"blocks", std::move(blocks)}};
}

inline json result_to_json(const DistanceResult& r) {
  json j;
  if (r.finite()) {
    j["outcome"] = "finite";
    j["value"] = r.value;
    j["gap"] = r.gap_estimate;
    if (r.optimal_element) j["optimal_element"] = element_to_json(*r.optimal_element);
  } else {
    j["outcome"] = "infinite";
    if (r.witness) j["witness"] = element_to_json(*r.witness);
  }
  j["iterations"] = r.iterations;
  return j;
}

}  // namespace ncg
