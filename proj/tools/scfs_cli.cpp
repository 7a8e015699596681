// Command line front end: grid experiments, single-fit convergence traces,
// and synthetic dataset generation.
#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scfs/scfs.hpp"

namespace {

struct CommonArgs {
  std::string data;
  int labels_col = -1;
  bool labels_set = false;
  std::string preprocess = "shift-nonneg";
  std::vector<double> alpha_grid{1e-4, 1e-2, 1.0, 1e2, 1e4};
  std::vector<double> beta_grid{1e-4, 1e-2, 1.0, 1e2, 1e4};
  double gamma = 1e6;
  int clusters = 0;
  double tol = 1e-5;
  int max_iter = 100;
  std::uint64_t seed = 0;
  std::string out;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--data", args.data, "input CSV path")->required();
  cmd->add_option("--labels-col", args.labels_col,
                  "0-based label column; -1 means last column")
      ->each([&args](const std::string&) { args.labels_set = true; });
  cmd->add_option("--preprocess", args.preprocess,
                  "shift-nonneg, minmax, or none (default shift-nonneg)");
  cmd->add_option("--alpha-grid", args.alpha_grid, "regression weights to scan")
      ->delimiter(',');
  cmd->add_option("--beta-grid", args.beta_grid, "sparsity weights to scan")
      ->delimiter(',');
  cmd->add_option("--gamma", args.gamma, "indicator constraint penalty (default 1e6)");
  cmd->add_option("--clusters", args.clusters,
                  "cluster count; defaults to the number of label classes");
  cmd->add_option("--tol", args.tol, "relative objective decrease that stops a fit");
  cmd->add_option("--max-iter", args.max_iter, "iteration cap per fit");
  cmd->add_option("--seed", args.seed, "base seed");
  cmd->add_option("--out", args.out, "output path")->required();
}

scfs::RunSpec to_spec(const CommonArgs& args) {
  scfs::RunSpec spec;
  spec.data_path = args.data;
  if (args.labels_set) spec.label_column = args.labels_col;
  spec.preprocess = scfs::parse_preprocess(args.preprocess);
  spec.alpha_grid = args.alpha_grid;
  spec.beta_grid = args.beta_grid;
  spec.gamma = args.gamma;
  if (args.clusters > 0) spec.clusters = args.clusters;
  spec.tol = args.tol;
  spec.max_iter = args.max_iter;
  spec.seed = args.seed;
  spec.out_path = args.out;
  return spec;
}

int run_grid(const CommonArgs& args, const std::vector<int>& k_list, int trials) {
  scfs::RunSpec spec = to_spec(args);
  spec.k_list = k_list;
  spec.trials = trials;
  const auto progress = [](const scfs::GridCellReport& cell) {
    std::cout << "cell alpha=" << cell.alpha << " beta=" << cell.beta
              << " iterations=" << cell.iterations
              << (cell.converged ? " converged" : " hit iteration cap") << '\n';
  };
  const scfs::ExperimentReport report = scfs::run_experiment(spec, progress);
  std::cout << report.dataset_name << ": " << report.samples << " samples, "
            << report.features << " features, " << report.classes << " clusters\n";
  for (const scfs::BestCellReport& best : report.best_per_k)
    std::cout << "k=" << best.k << " best alpha=" << best.alpha << " beta=" << best.beta
              << " acc=" << best.acc_mean << " nmi=" << best.nmi_mean << '\n';
  std::cout << "report written to " << spec.out_path << '\n';
  return 0;
}

int run_trace(const CommonArgs& args) {
  if (args.alpha_grid.size() != 1 || args.beta_grid.size() != 1)
    throw scfs::InvalidInputError(
        "trace expects exactly one value in --alpha-grid and --beta-grid");
  const scfs::RunSpec spec = to_spec(args);
  const std::vector<double> trace = scfs::convergence_trace(spec);
  std::cout << "fit took " << trace.size() << " iterations, objective "
            << trace.back() << "; trace written to " << spec.out_path << '\n';
  return 0;
}

int run_synth(int n, int informative, int noise, int clusters, double separation,
              std::uint64_t seed, const std::string& out) {
  const scfs::Dataset data =
      scfs::generate_planted(n, informative, noise, clusters, separation, seed);
  scfs::write_dataset_csv(data, out);
  std::cout << "wrote " << data.X.samples() << "x" << data.X.features()
            << " dataset with " << data.classes << " classes to " << out << '\n';
  std::cout << "informative columns:";
  for (int j : data.informative_indices) std::cout << ' ' << j;
  std::cout << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subspace-clustering-guided unsupervised feature selection"};
  app.require_subcommand(1);

  CommonArgs run_args;
  std::vector<int> k_list{50, 100, 150, 200, 250, 300};
  int trials = 20;
  CLI::App* run = app.add_subcommand("run", "scan a weight grid and evaluate selections");
  add_common(run, run_args);
  run->add_option("--k-list", k_list, "selection sizes to evaluate")->delimiter(',');
  run->add_option("--trials", trials, "k-means repetitions per selection size");

  CommonArgs trace_args;
  CLI::App* trace = app.add_subcommand(
      "trace", "single fit; write the per-iteration objective as CSV");
  add_common(trace, trace_args);

  int synth_n = 100, synth_informative = 5, synth_noise = 45, synth_clusters = 3;
  double synth_separation = 8.0;
  std::uint64_t synth_seed = 0;
  std::string synth_out;
  CLI::App* synth = app.add_subcommand("synth", "generate a planted-cluster dataset");
  synth->add_option("--n", synth_n, "sample count");
  synth->add_option("--informative", synth_informative, "informative column count");
  synth->add_option("--noise", synth_noise, "noise column count");
  synth->add_option("--clusters", synth_clusters, "class count");
  synth->add_option("--separation", synth_separation, "class separation per column");
  synth->add_option("--seed", synth_seed, "generator seed");
  synth->add_option("--out", synth_out, "output CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_grid(run_args, k_list, trials);
    if (trace->parsed()) return run_trace(trace_args);
    return run_synth(synth_n, synth_informative, synth_noise, synth_clusters,
                     synth_separation, synth_seed, synth_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
