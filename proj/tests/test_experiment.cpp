#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "scfs/experiment.hpp"
#include "scfs/synthetic.hpp"

using scfs::Dataset;
using scfs::ExperimentReport;
using scfs::RunSpec;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name)
      : path((std::filesystem::temp_directory_path() / name).string()) {}
  ~TempFile() { std::remove(path.c_str()); }
};

RunSpec small_spec() {
  RunSpec spec;
  spec.alpha_grid = {0.01, 1.0};
  spec.beta_grid = {1.0, 100.0};
  spec.k_list = {3, 6};
  spec.trials = 2;
  spec.max_iter = 25;
  spec.seed = 7;
  spec.out_path.clear();
  return spec;
}

Dataset small_data() { return scfs::generate_planted(24, 3, 9, 3, 8.0, 5); }

ExperimentReport normalized(ExperimentReport r) {
  r.total_wall_ms = 0.0;
  for (auto& cell : r.cells) {
    cell.fit_wall_ms = 0.0;
    for (auto& entry : cell.per_k) entry.eval_wall_ms = 0.0;
  }
  return r;
}

}  // namespace

TEST_CASE("the grid is enumerated exhaustively and in order", "[experiment]") {
  const Dataset data = small_data();
  const RunSpec spec = small_spec();
  int callbacks = 0;
  const ExperimentReport report =
      scfs::run_experiment(spec, data, [&](const scfs::GridCellReport&) { ++callbacks; });

  REQUIRE(report.cells.size() == 4);
  CHECK(callbacks == 4);
  int idx = 0;
  for (int ai = 0; ai < 2; ++ai) {
    for (int bi = 0; bi < 2; ++bi, ++idx) {
      const auto& cell = report.cells[idx];
      CHECK(cell.alpha == spec.alpha_grid[ai]);
      CHECK(cell.beta == spec.beta_grid[bi]);
      CHECK(cell.iterations >= 1);
      CHECK(cell.objective_trace.size() == static_cast<std::size_t>(cell.iterations));
      REQUIRE(cell.per_k.size() == 2);
      for (const auto& entry : cell.per_k) {
        CHECK(entry.eval.trials == 2);
        CHECK(entry.selected.size() == static_cast<std::size_t>(entry.k));
        std::set<int> unique(entry.selected.begin(), entry.selected.end());
        CHECK(unique.size() == entry.selected.size());
      }
    }
  }
  REQUIRE(report.best_per_k.size() == 2);
  CHECK(report.best_per_k[0].k == 3);
  CHECK(report.best_per_k[1].k == 6);
  // The winner's stats must equal those of its own cell.
  for (const auto& best : report.best_per_k) {
    bool found = false;
    for (const auto& cell : report.cells) {
      if (cell.alpha != best.alpha || cell.beta != best.beta) continue;
      for (const auto& entry : cell.per_k)
        if (entry.k == best.k) {
          CHECK(entry.eval.acc_mean == best.acc_mean);
          CHECK(entry.eval.nmi_mean == best.nmi_mean);
          found = true;
        }
    }
    CHECK(found);
  }
}

TEST_CASE("repeated runs produce identical reports apart from timings", "[experiment]") {
  const Dataset data = small_data();
  const RunSpec spec = small_spec();
  const ExperimentReport a = scfs::run_experiment(spec, data);
  const ExperimentReport b = scfs::run_experiment(spec, data);
  CHECK(normalized(a) == normalized(b));
}

TEST_CASE("the worker count does not change the result", "[experiment]") {
  const Dataset data = small_data();
  const RunSpec spec = small_spec();
  const ExperimentReport solo = scfs::run_experiment(spec, data);
  setenv("SCFS_THREADS", "3", 1);
  const ExperimentReport pooled = scfs::run_experiment(spec, data);
  unsetenv("SCFS_THREADS");
  CHECK(normalized(solo) == normalized(pooled));
}

TEST_CASE("a full run recovers planted structure", "[experiment]") {
  const Dataset data = scfs::generate_planted(60, 5, 45, 3, 8.0, 99);
  RunSpec spec;
  spec.alpha_grid = {1.0};
  spec.beta_grid = {100.0};
  spec.k_list = {5};
  spec.trials = 3;
  spec.seed = 17;
  const ExperimentReport report = scfs::run_experiment(spec, data);
  REQUIRE(report.best_per_k.size() == 1);
  CHECK(report.best_per_k[0].acc_mean >= 0.9);
  const auto& selected = report.cells[0].per_k[0].selected;
  int planted = 0;
  for (int j : selected)
    if (std::binary_search(data.informative_indices.begin(),
                           data.informative_indices.end(), j))
      ++planted;
  CHECK(planted >= 4);
}

TEST_CASE("the report lands on disk when an output path is set", "[experiment]") {
  const Dataset data = small_data();
  RunSpec spec = small_spec();
  spec.alpha_grid = {1.0};
  spec.beta_grid = {100.0};
  TempFile f("scfs_run_report.json");
  spec.out_path = f.path;
  const ExperimentReport direct = scfs::run_experiment(spec, data);
  const ExperimentReport loaded = scfs::read_report(f.path);
  CHECK(loaded == direct);
  std::remove((f.path.substr(0, f.path.size() - 5) + ".trace.a0.b0.csv").c_str());
}

TEST_CASE("a failing cell aborts with the cell identified and flushes partial results",
          "[experiment]") {
  Dataset data = small_data();
  RunSpec spec = small_spec();
  spec.clusters = 20;  // exceeds min(n, p): every fit refuses to start
  TempFile f("scfs_partial.json");
  spec.out_path = f.path;
  try {
    scfs::run_experiment(spec, data);
    FAIL("expected the run to abort");
  } catch (const scfs::Error& e) {
    const std::string message = e.what();
    CHECK(message.find("grid cell alpha=") != std::string::npos);
    CHECK(message.find("failed:") != std::string::npos);
  }
  const ExperimentReport partial = scfs::read_report(f.path);
  CHECK(partial.cells.empty());  // the very first cell failed
}

TEST_CASE("convergence traces follow the solver exactly", "[experiment]") {
  const Dataset data = small_data();
  RunSpec spec = small_spec();
  spec.alpha_grid = {1.0};
  spec.beta_grid = {100.0};

  TempFile f("scfs_trace_out.csv");
  spec.out_path = f.path;
  const std::vector<double> trace = scfs::convergence_trace(spec, data);
  REQUIRE(trace.size() >= 2);
  // The run stops once the relative decrease falls under tol, or at the cap.
  const double last = trace.back();
  const double prev = trace[trace.size() - 2];
  if (trace.size() < static_cast<std::size_t>(spec.max_iter))
    CHECK((prev - last) / last < spec.tol);

  std::ifstream in(f.path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "iteration,objective");
  std::size_t rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == trace.size());
}

TEST_CASE("a one-iteration trace has exactly one data row", "[experiment]") {
  const Dataset data = small_data();
  RunSpec spec = small_spec();
  spec.alpha_grid = {0.5};
  spec.beta_grid = {2.0};
  spec.max_iter = 1;
  const std::vector<double> trace = scfs::convergence_trace(spec, data);
  CHECK(trace.size() == 1);
}

TEST_CASE("experiment preconditions are enforced", "[experiment]") {
  const Dataset data = small_data();

  RunSpec no_k = small_spec();
  no_k.k_list.clear();
  CHECK_THROWS_AS(scfs::run_experiment(no_k, data), scfs::InvalidInputError);

  RunSpec big_k = small_spec();
  big_k.k_list = {500};  // beyond the feature count
  CHECK_THROWS_AS(scfs::run_experiment(big_k, data), scfs::InvalidInputError);

  RunSpec no_grid = small_spec();
  no_grid.alpha_grid.clear();
  CHECK_THROWS_AS(scfs::run_experiment(no_grid, data), scfs::InvalidInputError);

  Dataset unlabeled = small_data();
  unlabeled.y.reset();
  CHECK_THROWS_AS(scfs::run_experiment(small_spec(), unlabeled), scfs::InvalidInputError);
}
