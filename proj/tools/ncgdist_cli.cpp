#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ncgdist/catalog.hpp"
#include "ncgdist/kantorovich.hpp"
#include "ncgdist/verify.hpp"

namespace {

using ncg::json;

void apply_thread_cap() {
  if (const char* env = std::getenv("NCGDIST_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) Eigen::setNbThreads(n);
  }
}

void emit(const std::string& text, const std::string& out_path) {
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw ncg::InvalidInput("cannot write file: " + out_path);
    out << text;
  }
  std::cout << text;
}

int run_compute(const std::string& triple_path, const std::string& a_path,
                const std::string& b_path, const ncg::SolverOptions& opts,
                const std::string& out_path) {
  ncg::SpectralTriple t = ncg::triple_from_json(ncg::load_json_file(triple_path));
  ncg::State a = ncg::state_from_json(t.algebra, ncg::load_json_file(a_path));
  ncg::State b = ncg::state_from_json(t.algebra, ncg::load_json_file(b_path));
  ncg::DistanceResult r = ncg::spectral_distance(t, a, b, opts);
  emit(ncg::result_to_json(r).dump(2) + "\n", out_path);
  if (r.finite() &&
      r.gap_estimate > 100 * opts.rel_tolerance * std::max(1.0, r.value))
    return 3;
  return 0;
}

int run_verify(const std::string& suite, std::uint64_t seed, bool timing,
               const std::string& out_path) {
  ncg::VerifyOptions vo;
  vo.seed = seed;
  vo.timing = timing;
  std::vector<ncg::VerifyRow> rows = ncg::run_suite(suite, vo);
  emit(ncg::report_to_csv(rows), out_path);
  int failures = 0;
  for (const auto& r : rows)
    if (!r.pass()) {
      ++failures;
      std::cerr << "FAIL " << r.case_id << " (" << r.formula_ref
                << "): expected " << ncg::format_report_number(r.expected) << ", computed "
                << ncg::format_report_number(r.computed) << "\n";
    }
  std::cerr << rows.size() - failures << "/" << rows.size() << " checks passed\n";
  return failures == 0 ? 0 : 1;
}

int run_catalog(bool list, const std::string& id, const std::string& params_path,
                const std::string& out_path) {
  if (list) {
    json j = json::array();
    for (const auto& e : ncg::catalog()) j.push_back({{"id", e.id}, {"description", e.description}});
    emit(j.dump(2) + "\n", out_path);
    return 0;
  }
  const ncg::CatalogEntry* entry = ncg::catalog_find(id);
  if (!entry) {
    std::cerr << "unknown catalog id: " << id << "\n";
    return 2;
  }
  json params = params_path.empty() ? json::object() : ncg::load_json_file(params_path);
  emit(entry->eval(params).dump(2) + "\n", out_path);
  return 0;
}

/// Batch closed-form evaluation: a JSON array of parameter objects becomes
/// CSV rows (id, inputs..., value, formula_ref). Input columns come from the
/// first row's keys so the file must be homogeneous.
int run_batch_eval(const std::string& catalog_id, const std::string& params_path,
                   const std::string& out_path) {
  const ncg::CatalogEntry* entry = ncg::catalog_find(catalog_id);
  if (!entry) throw ncg::InvalidInput("unknown catalog id: " + catalog_id);
  json params = ncg::load_json_file(params_path);
  if (params.is_object()) params = json::array({params});
  if (!params.is_array() || params.empty())
    throw ncg::InvalidInput("params file must hold an object or a nonempty array of objects");

  std::vector<std::string> keys;
  for (auto it = params[0].begin(); it != params[0].end(); ++it)
    if (it.key() != "id") keys.push_back(it.key());
  std::sort(keys.begin(), keys.end());

  auto scalar = [](const json& v) -> std::string {
    if (v.is_number()) return ncg::format_report_number(v.get<double>());
    return v.dump();
  };

  std::string csv = "id";
  for (const auto& k : keys) csv += "," + k;
  csv += ",value,formula_ref\n";
  for (size_t i = 0; i < params.size(); ++i) {
    const json& p = params[i];
    if (!p.is_object()) throw ncg::InvalidInput("params rows must be objects");
    csv += p.contains("id") ? scalar(p["id"]) : std::to_string(i);
    for (const auto& k : keys) {
      if (!p.contains(k)) throw ncg::InvalidInput("params rows must share the same fields");
      csv += "," + scalar(p[k]);
    }
    json result = entry->eval(p);
    const json& v = result.contains("value") ? result["value"] : result;
    csv += "," + (v.is_string() ? std::string("inf") : scalar(v)) + "," + catalog_id + "\n";
  }
  emit(csv, out_path);
  return 0;
}

/// Fiber rows may mix the closed two-direction chord formula with the
/// general trace-norm one; the parameter shape picks the evaluator.
int run_bundle_fiber(const std::string& params_path, const std::string& out_path) {
  json params = ncg::load_json_file(params_path);
  if (params.is_array() && params.empty())
    throw ncg::InvalidInput("params file must hold an object or a nonempty array of objects");
  const json& first = params.is_array() ? params[0] : params;
  return run_batch_eval(first.contains("xi") ? "fiber_n2" : "fiber_general", params_path,
                        out_path);
}

int run_wd(const std::string& triple_path, const std::string& a_path, const std::string& b_path,
           int pairs, std::uint64_t seed, const ncg::SolverOptions& opts,
           const std::string& out_path) {
  ncg::SpectralTriple t = ncg::triple_from_json(ncg::load_json_file(triple_path));
  ncg::State a = ncg::state_from_json(t.algebra, ncg::load_json_file(a_path));
  ncg::State b = ncg::state_from_json(t.algebra, ncg::load_json_file(b_path));
  ncg::DistanceResult r = ncg::spectral_distance(t, a, b, opts);
  double d = r.finite() ? r.value : ncg::kInf;
  auto constraints = ncg::sample_pure_pairs(t, pairs, seed, opts);
  double w = ncg::wasserstein_upper(t, a, b, constraints);
  json j;
  j["d_D"] = std::isinf(d) ? json("infinite") : json(d);
  j["W_upper"] = std::isinf(w) ? json("infinite") : json(w);
  j["gap"] = (std::isinf(d) || std::isinf(w)) ? json("infinite") : json(w - d);
  emit(j.dump(2) + "\n", out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_cap();

  CLI::App app{"spectral distances on finite spectral triples"};
  app.require_subcommand(1);

  std::string triple_path, a_path, b_path, params_path, out_path;
  std::uint64_t seed = 7;
  double tol = 1e-7;
  int multistarts = 8, pairs = 20;
  bool timing = false;

  auto add_solver_flags = [&](CLI::App* cmd) {
    cmd->add_option("--tol", tol, "relative solver tolerance");
    cmd->add_option("--multistarts", multistarts, "number of solver restarts");
    cmd->add_option("--seed", seed, "random seed");
    cmd->add_option("--out", out_path, "also write the output to this file");
  };
  auto add_state_flags = [&](CLI::App* cmd) {
    cmd->add_option("--triple", triple_path, "spectral triple JSON file")->required();
    cmd->add_option("--state-a", a_path, "first state JSON file")->required();
    cmd->add_option("--state-b", b_path, "second state JSON file")->required();
  };

  CLI::App* compute = app.add_subcommand("compute", "distance between two states");
  add_state_flags(compute);
  add_solver_flags(compute);

  CLI::App* verify = app.add_subcommand("verify", "run a closed-form verification suite");
  std::string suite;
  verify->add_option("suite", suite, "all|discrete|graphs|ball|products|bundle|moyal|kantorovich")
      ->required();
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--out", out_path, "also write the CSV to this file");
  verify->add_flag("--timing", timing, "record per-case runtimes (breaks byte determinism)");

  CLI::App* catalog = app.add_subcommand("catalog", "closed-form formula registry");
  CLI::App* cat_list = catalog->add_subcommand("list", "list all formula ids");
  cat_list->add_option("--out", out_path, "also write the output to this file");
  CLI::App* cat_eval = catalog->add_subcommand("eval", "evaluate one formula");
  std::string catalog_id;
  cat_eval->add_option("id", catalog_id, "formula id")->required();
  cat_eval->add_option("--params", params_path, "JSON parameter file");
  cat_eval->add_option("--out", out_path, "also write the output to this file");
  catalog->require_subcommand(1);

  CLI::App* bundle = app.add_subcommand("bundle", "circle-bundle distance formulas");
  CLI::App* bundle_fiber = bundle->add_subcommand("fiber", "fiber distances");
  CLI::App* bundle_torus = bundle->add_subcommand("torus", "base-point distances");
  for (CLI::App* c : {bundle_fiber, bundle_torus}) {
    c->add_option("--params", params_path, "JSON file: object or array of parameter objects")
        ->required();
    c->add_option("--out", out_path, "also write the CSV to this file");
  }
  bundle->require_subcommand(1);

  CLI::App* moyal = app.add_subcommand("moyal", "Moyal-plane distance formulas");
  CLI::App* moyal_eigen = moyal->add_subcommand("eigen", "eigenstate distances");
  CLI::App* moyal_qlength = moyal->add_subcommand("qlength", "modified quantum lengths");
  for (CLI::App* c : {moyal_eigen, moyal_qlength}) {
    c->add_option("--params", params_path, "JSON file: object or array of parameter objects")
        ->required();
    c->add_option("--out", out_path, "also write the CSV to this file");
  }
  moyal->require_subcommand(1);

  CLI::App* wd = app.add_subcommand("wd", "spectral distance vs sampled Kantorovich bound");
  add_state_flags(wd);
  wd->add_option("--pairs", pairs, "number of sampled pure-pair constraints");
  add_solver_flags(wd);

  CLI11_PARSE(app, argc, argv);

  ncg::SolverOptions opts;
  opts.rel_tolerance = tol;
  opts.multistarts = multistarts;
  opts.max_iterations = 5000;
  opts.seed = seed;

  try {
    if (*compute) return run_compute(triple_path, a_path, b_path, opts, out_path);
    if (*verify) return run_verify(suite, seed, timing, out_path);
    if (*cat_list) return run_catalog(true, "", "", out_path);
    if (*cat_eval) return run_catalog(false, catalog_id, params_path, out_path);
    if (*bundle_fiber) return run_bundle_fiber(params_path, out_path);
    if (*bundle_torus) return run_batch_eval("torus_n2", params_path, out_path);
    if (*moyal_eigen) return run_batch_eval("moyal_eigenstate", params_path, out_path);
    if (*moyal_qlength) return run_batch_eval("modified_quantum_length", params_path, out_path);
    if (*wd) return run_wd(triple_path, a_path, b_path, pairs, seed, opts, out_path);
  } catch (const ncg::InvalidInput& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
