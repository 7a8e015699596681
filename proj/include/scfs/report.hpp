// Experiment report model and its JSON serialization. Round-trips are
// lossless for finite values; schema changes bump schema_version.
#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "scfs/errors.hpp"
#include "scfs/evaluation.hpp"
#include "scfs/types.hpp"

namespace scfs {

using Json = nlohmann::json;

struct PerKReport {
  int k = 0;
  std::vector<int> selected;  // feature indices, relevance order
  EvalReport eval;
  double eval_wall_ms = 0.0;
};

struct GridCellReport {
  int alpha_index = 0;
  int beta_index = 0;
  double alpha = 0.0;
  double beta = 0.0;
  std::uint64_t cell_seed = 0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> objective_trace;
  std::vector<double> penalized_trace;
  double fit_wall_ms = 0.0;
  std::vector<PerKReport> per_k;
};

struct BestCellReport {
  int k = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double acc_mean = 0.0;
  double nmi_mean = 0.0;
};

struct ExperimentReport {
  int schema_version = 1;
  std::string dataset_name;
  std::int64_t samples = 0;
  std::int64_t features = 0;
  int classes = 0;
  std::string preprocess_mode;
  double gamma = 0.0;
  double tol = 0.0;
  int max_iter = 0;
  std::vector<double> alpha_grid;
  std::vector<double> beta_grid;
  std::vector<int> k_list;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<GridCellReport> cells;
  std::vector<BestCellReport> best_per_k;
  double total_wall_ms = 0.0;
};

inline void to_json(Json& j, const EvalReport& r) {
  Json trials = Json::array();
  for (const auto& [acc, nm] : r.per_trial) trials.push_back(Json::array({acc, nm}));
  j = Json{{"acc_mean", r.acc_mean}, {"acc_std", r.acc_std},
           {"nmi_mean", r.nmi_mean}, {"nmi_std", r.nmi_std},
           {"trials", r.trials},     {"per_trial", std::move(trials)},
           {"degenerate_nmi_trials", r.degenerate_nmi_trials}};
}

inline void from_json(const Json& j, EvalReport& r) {
  j.at("acc_mean").get_to(r.acc_mean);
  j.at("acc_std").get_to(r.acc_std);
  j.at("nmi_mean").get_to(r.nmi_mean);
  j.at("nmi_std").get_to(r.nmi_std);
  j.at("trials").get_to(r.trials);
  j.at("degenerate_nmi_trials").get_to(r.degenerate_nmi_trials);
  r.per_trial.clear();
  for (const Json& t : j.at("per_trial"))
    r.per_trial.emplace_back(t.at(0).get<double>(), t.at(1).get<double>());
}

inline void to_json(Json& j, const PerKReport& r) {
  j = Json{{"k", r.k},
           {"selected", r.selected},
           {"eval", r.eval},
           {"eval_wall_ms", r.eval_wall_ms}};
}

inline void from_json(const Json& j, PerKReport& r) {
  j.at("k").get_to(r.k);
  j.at("selected").get_to(r.selected);
  j.at("eval").get_to(r.eval);
  j.at("eval_wall_ms").get_to(r.eval_wall_ms);
}

inline void to_json(Json& j, const GridCellReport& r) {
  j = Json{{"alpha_index", r.alpha_index},
           {"beta_index", r.beta_index},
           {"alpha", r.alpha},
           {"beta", r.beta},
           {"cell_seed", r.cell_seed},
           {"iterations", r.iterations},
           {"converged", r.converged},
           {"objective_trace", r.objective_trace},
           {"penalized_trace", r.penalized_trace},
           {"fit_wall_ms", r.fit_wall_ms},
           {"per_k", r.per_k}};
}

inline void from_json(const Json& j, GridCellReport& r) {
  j.at("alpha_index").get_to(r.alpha_index);
  j.at("beta_index").get_to(r.beta_index);
  j.at("alpha").get_to(r.alpha);
  j.at("beta").get_to(r.beta);
  j.at("cell_seed").get_to(r.cell_seed);
  j.at("iterations").get_to(r.iterations);
  j.at("converged").get_to(r.converged);
  j.at("objective_trace").get_to(r.objective_trace);
  j.at("penalized_trace").get_to(r.penalized_trace);
  j.at("fit_wall_ms").get_to(r.fit_wall_ms);
  j.at("per_k").get_to(r.per_k);
}

inline void to_json(Json& j, const BestCellReport& r) {
  j = Json{{"k", r.k},
           {"alpha", r.alpha},
           {"beta", r.beta},
           {"acc_mean", r.acc_mean},
           {"nmi_mean", r.nmi_mean}};
}

inline void from_json(const Json& j, BestCellReport& r) {
  j.at("k").get_to(r.k);
  j.at("alpha").get_to(r.alpha);
  j.at("beta").get_to(r.beta);
  j.at("acc_mean").get_to(r.acc_mean);
  j.at("nmi_mean").get_to(r.nmi_mean);
}

inline void to_json(Json& j, const ExperimentReport& r) {
  j = Json{{"schema_version", r.schema_version},
           {"dataset_name", r.dataset_name},
           {"samples", r.samples},
           {"features", r.features},
           {"classes", r.classes},
           {"preprocess_mode", r.preprocess_mode},
           {"gamma", r.gamma},
           {"tol", r.tol},
           {"max_iter", r.max_iter},
           {"alpha_grid", r.alpha_grid},
           {"beta_grid", r.beta_grid},
           {"k_list", r.k_list},
           {"trials", r.trials},
           {"seed", r.seed},
           {"cells", r.cells},
           {"best_per_k", r.best_per_k},
           {"total_wall_ms", r.total_wall_ms}};
}

inline void from_json(const Json& j, ExperimentReport& r) {
  j.at("schema_version").get_to(r.schema_version);
  j.at("dataset_name").get_to(r.dataset_name);
  j.at("samples").get_to(r.samples);
  j.at("features").get_to(r.features);
  j.at("classes").get_to(r.classes);
  j.at("preprocess_mode").get_to(r.preprocess_mode);
  j.at("gamma").get_to(r.gamma);
  j.at("tol").get_to(r.tol);
  j.at("max_iter").get_to(r.max_iter);
  j.at("alpha_grid").get_to(r.alpha_grid);
  j.at("beta_grid").get_to(r.beta_grid);
  j.at("k_list").get_to(r.k_list);
  j.at("trials").get_to(r.trials);
  j.at("seed").get_to(r.seed);
  j.at("cells").get_to(r.cells);
  j.at("best_per_k").get_to(r.best_per_k);
  j.at("total_wall_ms").get_to(r.total_wall_ms);
}

inline bool operator==(const ExperimentReport& a, const ExperimentReport& b) {
  return Json(a) == Json(b);
}

// One line per iteration, 1-based, shortest-round-trip doubles.
inline void write_trace_csv(const std::vector<double>& objective_trace,
                            const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "iteration,objective\n";
  char buf[64];
  for (std::size_t i = 0; i < objective_trace.size(); ++i) {
    out << (i + 1) << ',';
    const auto res = std::to_chars(buf, buf + sizeof buf, objective_trace[i]);
    out.write(buf, res.ptr - buf);
    out << '\n';
  }
  if (!out) throw IoError("write failed for " + path);
}

// Writes the JSON report plus one convergence CSV per grid cell next to it,
// named <stem>.trace.a<alpha_index>.b<beta_index>.csv.
inline void write_report(const ExperimentReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << Json(report).dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path);
  const std::string stem = path.ends_with(".json") ? path.substr(0, path.size() - 5) : path;
  for (const GridCellReport& cell : report.cells)
    write_trace_csv(cell.objective_trace,
                    stem + ".trace.a" + std::to_string(cell.alpha_index) + ".b" +
                        std::to_string(cell.beta_index) + ".csv");
}

inline ExperimentReport read_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError(path + ": not valid JSON: " + e.what());
  }
  try {
    if (!j.contains("schema_version") || !j.at("schema_version").is_number_integer())
      throw SchemaError(path + ": missing schema_version");
    if (j.at("schema_version").get<int>() != 1)
      throw SchemaError(path + ": unsupported schema_version");
    return j.get<ExperimentReport>();
  } catch (const Json::exception& e) {
    throw SchemaError(path + ": schema mismatch: " + e.what());
  }
}

}  // namespace scfs
