#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "scfs/dataset.hpp"
#include "scfs/report.hpp"

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SCFS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("synth writes a loadable, deterministic dataset", "[cli]") {
  const std::string a = temp_path("scfs_cli_synth_a.csv");
  const std::string b = temp_path("scfs_cli_synth_b.csv");
  const std::string flags = "synth --n 30 --informative 3 --noise 7 --clusters 3 "
                            "--separation 8 --seed 4 --out ";
  REQUIRE(run_cli(flags + a) == 0);
  REQUIRE(run_cli(flags + b) == 0);
  CHECK(slurp(a) == slurp(b));

  const scfs::Dataset data = scfs::load_csv(a, true, -1);
  CHECK(data.X.samples() == 30);
  CHECK(data.X.features() == 10);
  CHECK(data.classes == 3);
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST_CASE("run scans the grid and writes a readable report", "[cli]") {
  const std::string csv = temp_path("scfs_cli_run.csv");
  const std::string report_path = temp_path("scfs_cli_report.json");
  REQUIRE(run_cli("synth --n 24 --informative 3 --noise 9 --clusters 3 --separation 8 "
                  "--seed 5 --out " + csv) == 0);
  REQUIRE(run_cli("run --data " + csv + " --labels-col -1 --alpha-grid 1 "
                  "--beta-grid 1,100 --k-list 3,6 --trials 2 --seed 7 --max-iter 25 "
                  "--out " + report_path) == 0);

  const scfs::ExperimentReport report = scfs::read_report(report_path);
  CHECK(report.cells.size() == 2);
  CHECK(report.trials == 2);
  CHECK(report.k_list == std::vector<int>{3, 6});
  CHECK(report.best_per_k.size() == 2);
  for (int bi = 0; bi < 2; ++bi) {
    const std::string trace =
        temp_path("scfs_cli_report.trace.a0.b" + std::to_string(bi) + ".csv");
    CHECK(std::filesystem::exists(trace));
    std::remove(trace.c_str());
  }
  std::remove(csv.c_str());
  std::remove(report_path.c_str());
}

TEST_CASE("trace writes the per-iteration objective", "[cli]") {
  const std::string csv = temp_path("scfs_cli_trace_data.csv");
  const std::string out = temp_path("scfs_cli_trace.csv");
  REQUIRE(run_cli("synth --n 24 --informative 3 --noise 9 --clusters 3 --separation 8 "
                  "--seed 6 --out " + csv) == 0);
  REQUIRE(run_cli("trace --data " + csv + " --labels-col -1 --alpha-grid 1 "
                  "--beta-grid 100 --seed 3 --out " + out) == 0);
  const std::string contents = slurp(out);
  CHECK(contents.rfind("iteration,objective\n", 0) == 0);
  CHECK(contents.find("\n1,") != std::string::npos);
  std::remove(csv.c_str());
  std::remove(out.c_str());
}

TEST_CASE("trace refuses grids with more than one point", "[cli]") {
  const std::string csv = temp_path("scfs_cli_trace_multi.csv");
  REQUIRE(run_cli("synth --n 24 --informative 3 --noise 9 --clusters 3 --separation 8 "
                  "--seed 6 --out " + csv) == 0);
  CHECK(run_cli("trace --data " + csv + " --labels-col -1 --alpha-grid 1,10 "
                "--beta-grid 100 --out " + temp_path("unused.csv")) == 1);
  std::remove(csv.c_str());
}

TEST_CASE("errors surface as a nonzero exit status", "[cli]") {
  CHECK(run_cli("run --data /nonexistent.csv --out " + temp_path("unused.json")) == 1);
  CHECK(run_cli("") != 0);  // missing subcommand
  const std::string csv = temp_path("scfs_cli_badmode.csv");
  REQUIRE(run_cli("synth --n 20 --informative 2 --noise 3 --clusters 2 --separation 5 "
                  "--seed 1 --out " + csv) == 0);
  CHECK(run_cli("run --data " + csv + " --labels-col -1 --preprocess median --out " +
                temp_path("unused.json")) != 0);
  std::remove(csv.c_str());
}
