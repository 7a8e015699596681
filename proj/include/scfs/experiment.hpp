// Grid experiment driver: fits every (alpha, beta) cell, evaluates each
// selection size by repeated k-means, and reports the best cell per size.
// Cells run concurrently up to the SCFS_THREADS cap; results are identical
// for any worker count because every cell derives its own seed.
#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "scfs/dataset.hpp"
#include "scfs/errors.hpp"
#include "scfs/evaluation.hpp"
#include "scfs/report.hpp"
#include "scfs/rng.hpp"
#include "scfs/solver.hpp"
#include "scfs/types.hpp"

namespace scfs {

struct RunSpec {
  std::string data_path;
  std::optional<int> label_column;  // 0-based, -1 = last column
  Preprocess preprocess = Preprocess::ShiftNonneg;
  std::vector<double> alpha_grid{1e-4, 1e-2, 1.0, 1e2, 1e4};
  std::vector<double> beta_grid{1e-4, 1e-2, 1.0, 1e2, 1e4};
  double gamma = 1e6;
  std::optional<int> clusters;  // defaults to the number of label classes
  std::vector<int> k_list{50, 100, 150, 200, 250, 300};
  int trials = 20;
  std::uint64_t seed = 0;
  double tol = 1e-5;
  int max_iter = 100;
  std::string out_path;  // empty: nothing is written
};

// Worker cap: SCFS_THREADS when set (minimum 1), hardware concurrency otherwise.
inline int thread_cap() {
  if (const char* env = std::getenv("SCFS_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace detail {

inline std::string fmt_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since)
      .count();
}

inline std::vector<BestCellReport> best_cells_per_k(const std::vector<GridCellReport>& cells,
                                                    const std::vector<int>& k_list) {
  std::vector<BestCellReport> out;
  for (std::size_t ki = 0; ki < k_list.size(); ++ki) {
    const GridCellReport* best = nullptr;
    const PerKReport* best_entry = nullptr;
    for (const GridCellReport& cell : cells) {
      if (ki >= cell.per_k.size()) continue;
      const PerKReport& entry = cell.per_k[ki];
      if (!best) {
        best = &cell;
        best_entry = &entry;
        continue;
      }
      const auto challenger = std::make_tuple(-entry.eval.acc_mean, -entry.eval.nmi_mean,
                                              cell.alpha, cell.beta);
      const auto incumbent = std::make_tuple(-best_entry->eval.acc_mean,
                                             -best_entry->eval.nmi_mean, best->alpha,
                                             best->beta);
      if (challenger < incumbent) {
        best = &cell;
        best_entry = &entry;
      }
    }
    if (best)
      out.push_back({k_list[ki], best->alpha, best->beta, best_entry->eval.acc_mean,
                     best_entry->eval.nmi_mean});
  }
  return out;
}

}  // namespace detail

using CellCallback = std::function<void(const GridCellReport&)>;

// Runs the full grid on an already loaded dataset. Writes the report (plus
// per-cell trace CSVs) to spec.out_path when set; if a cell fails, the
// completed cells are flushed before the error is rethrown with the failing
// cell identified.
inline ExperimentReport run_experiment(const RunSpec& spec, const Dataset& dataset,
                                       const CellCallback& on_cell = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  dataset.X.validate();
  if (!dataset.y)
    throw InvalidInputError("run_experiment: labels are required for evaluation");
  if (spec.alpha_grid.empty() || spec.beta_grid.empty())
    throw InvalidInputError("run_experiment: empty weight grid");
  if (spec.k_list.empty()) throw InvalidInputError("run_experiment: empty k list");
  if (spec.trials < 1) throw InvalidInputError("run_experiment: trials must be at least 1");
  const int clusters = spec.clusters.value_or(dataset.classes);
  if (clusters < 1)
    throw InvalidInputError("run_experiment: cluster count missing");
  for (int k : spec.k_list)
    if (k < 1 || k > dataset.X.features())
      throw InvalidInputError("run_experiment: selection size " + std::to_string(k) +
                              " outside [1, feature count]");

  const DataMatrix x = preprocess(dataset.X, spec.preprocess);
  const LabelVector& y = *dataset.y;

  const int na = static_cast<int>(spec.alpha_grid.size());
  const int nb = static_cast<int>(spec.beta_grid.size());
  const int total = na * nb;
  std::vector<std::optional<GridCellReport>> cells(total);

  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::mutex state_mutex;
  std::string failure;

  const auto run_cell = [&](int idx) {
    const int ai = idx / nb;
    const int bi = idx % nb;
    GridCellReport cell;
    cell.alpha_index = ai;
    cell.beta_index = bi;
    cell.alpha = spec.alpha_grid[ai];
    cell.beta = spec.beta_grid[bi];
    cell.cell_seed = derive_seed(spec.seed, ai, bi);

    SolverConfig config;
    config.alpha = cell.alpha;
    config.beta = cell.beta;
    config.gamma = spec.gamma;
    config.clusters = clusters;
    config.tol = spec.tol;
    config.max_iter = spec.max_iter;
    config.seed = cell.cell_seed;

    const auto fit_start = std::chrono::steady_clock::now();
    const FitResult result = fit(x, config);
    cell.fit_wall_ms = detail::elapsed_ms(fit_start);
    cell.iterations = result.iterations;
    cell.converged = result.converged;
    cell.objective_trace = result.objective_trace;
    cell.penalized_trace = result.penalized_trace;

    for (std::size_t ki = 0; ki < spec.k_list.size(); ++ki) {
      PerKReport entry;
      entry.k = spec.k_list[ki];
      entry.selected = select_features(result, entry.k);
      const auto eval_start = std::chrono::steady_clock::now();
      entry.eval = evaluate_selection(
          x, entry.selected, y, spec.trials,
          derive_seed(cell.cell_seed, seed_stream::kEvaluation, ki));
      entry.eval_wall_ms = detail::elapsed_ms(eval_start);
      cell.per_k.push_back(std::move(entry));
    }
    return cell;
  };

  const auto worker = [&]() {
    while (!failed.load()) {
      const int idx = next.fetch_add(1);
      if (idx >= total) return;
      try {
        GridCellReport cell = run_cell(idx);
        std::lock_guard<std::mutex> lock(state_mutex);
        if (on_cell) on_cell(cell);
        cells[idx] = std::move(cell);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(state_mutex);
        if (failure.empty())
          failure = "grid cell alpha=" + detail::fmt_double(spec.alpha_grid[idx / nb]) +
                    " beta=" + detail::fmt_double(spec.beta_grid[idx % nb]) +
                    " failed: " + e.what();
        failed.store(true);
      }
    }
  };

  const int workers = std::max(1, std::min(thread_cap(), total));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  ExperimentReport report;
  report.dataset_name = dataset.name;
  report.samples = dataset.X.samples();
  report.features = dataset.X.features();
  report.classes = clusters;
  report.preprocess_mode = to_string(spec.preprocess);
  report.gamma = spec.gamma;
  report.tol = spec.tol;
  report.max_iter = spec.max_iter;
  report.alpha_grid = spec.alpha_grid;
  report.beta_grid = spec.beta_grid;
  report.k_list = spec.k_list;
  report.trials = spec.trials;
  report.seed = spec.seed;
  for (std::optional<GridCellReport>& cell : cells)
    if (cell) report.cells.push_back(std::move(*cell));
  report.best_per_k = detail::best_cells_per_k(report.cells, spec.k_list);
  report.total_wall_ms = detail::elapsed_ms(t0);

  if (failed.load()) {
    if (!spec.out_path.empty()) {
      try {
        write_report(report, spec.out_path);
      } catch (const std::exception&) {
        // the original failure is the one worth reporting
      }
    }
    throw Error(failure);
  }
  if (!spec.out_path.empty()) write_report(report, spec.out_path);
  return report;
}

// Loads the dataset named by the spec and runs the grid on it.
inline ExperimentReport run_experiment(const RunSpec& spec, const CellCallback& on_cell = {}) {
  const Dataset dataset =
      load_csv(spec.data_path, csv_has_header(spec.data_path), spec.label_column);
  return run_experiment(spec, dataset, on_cell);
}

// Single fit at (alpha_grid[0], beta_grid[0]) with the base seed; writes the
// per-iteration objective to out_path as CSV and returns the trace.
inline std::vector<double> convergence_trace(const RunSpec& spec, const Dataset& dataset) {
  if (spec.alpha_grid.empty() || spec.beta_grid.empty())
    throw InvalidInputError("convergence_trace: empty weight grid");
  const int clusters = spec.clusters.value_or(dataset.classes);
  if (clusters < 1)
    throw InvalidInputError("convergence_trace: cluster count missing");

  SolverConfig config;
  config.alpha = spec.alpha_grid.front();
  config.beta = spec.beta_grid.front();
  config.gamma = spec.gamma;
  config.clusters = clusters;
  config.tol = spec.tol;
  config.max_iter = spec.max_iter;
  config.seed = spec.seed;

  const DataMatrix x = preprocess(dataset.X, spec.preprocess);
  const FitResult result = fit(x, config);
  if (!spec.out_path.empty()) write_trace_csv(result.objective_trace, spec.out_path);
  return result.objective_trace;
}

inline std::vector<double> convergence_trace(const RunSpec& spec) {
  const Dataset dataset =
      load_csv(spec.data_path, csv_has_header(spec.data_path), spec.label_column);
  return convergence_trace(spec, dataset);
}

}  // namespace scfs
