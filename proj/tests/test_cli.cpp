// Exercises the installed binary end to end through std::system: exit codes,
// JSON shapes and rerun determinism. BREGMAN_CLI_PATH is injected by the
// build so the test always runs the binary it was built next to.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

int checks = 0, failed = 0;

void expect(bool ok, const std::string& what) {
  ++checks;
  if (!ok) {
    ++failed;
    std::fprintf(stderr, "FAILED: %s\n", what.c_str());
  }
}

struct CmdResult {
  int exit_code;
  std::string out;
};

CmdResult run_cli(const std::string& args) {
  const std::string out_file = "cli_stdout.tmp";
  const std::string cmd = std::string(BREGMAN_CLI_PATH) + " " + args + " > " +
                          out_file + " 2> cli_stderr.tmp";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out_file, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, buf.str()};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

const char* kRunConfig = R"(dataset.kind = fixture
potential.kind = identity
norm.kind = l2
algo = bppa
schedule.kind = constant
schedule.eta = 1
run.T = 40
solver.inner.mode = tolerance
output.trajectory = cli_traj.csv
output.summary = cli_summary.json
)";

void test_usage_errors() {
  expect(run_cli("").exit_code == 2, "no subcommand exits 2");
  expect(run_cli("frobnicate").exit_code == 2, "unknown subcommand exits 2");
  expect(run_cli("run").exit_code == 2, "run without a config exits 2");
  expect(run_cli("run no_such_config.txt").exit_code == 2,
         "missing config file exits 2");
  expect(run_cli("--help").exit_code == 0, "help exits 0");
  expect(run_cli("repro nonsense").exit_code == 2, "unknown repro exits 2");
  expect(run_cli("bounds --eps 0.7").exit_code == 2,
         "out-of-range eps exits 2");
  expect(run_cli("oracle --dataset csv").exit_code == 2,
         "csv oracle without --path exits 2");
  expect(run_cli("oracle --norm mahalanobis").exit_code == 2,
         "mahalanobis oracle without matrix exits 2");
}

void test_run_and_outputs() {
  write_file("cli_config.txt", kRunConfig);
  const CmdResult r = run_cli("run cli_config.txt");
  expect(r.exit_code == 0, "configured run exits 0");
  const json summary = json::parse(r.out, nullptr, false);
  expect(!summary.is_discarded(), "run prints JSON");
  expect(summary.contains("final_loss") && summary.contains("gamma_star"),
         "summary carries final_loss and gamma_star");
  expect(summary["final_loss"].get<double>() < 0.5, "loss decreased");
  expect(std::filesystem::exists("cli_traj.csv"), "trajectory file written");
  expect(std::filesystem::exists("cli_summary.json"), "summary file written");

  // bad key in the config is a usage error
  write_file("cli_bad.txt", std::string(kRunConfig) + "bogus = 1\n");
  expect(run_cli("run cli_bad.txt").exit_code == 2, "unknown key exits 2");
  std::remove("cli_bad.txt");
}

void test_determinism() {
  const CmdResult a = run_cli("run cli_config.txt");
  std::ifstream t1("cli_traj.csv", std::ios::binary);
  std::ostringstream b1;
  b1 << t1.rdbuf();
  const CmdResult b = run_cli("run cli_config.txt");
  std::ifstream t2("cli_traj.csv", std::ios::binary);
  std::ostringstream b2;
  b2 << t2.rdbuf();
  expect(a.exit_code == 0 && b.exit_code == 0, "reruns exit 0");
  expect(a.out == b.out, "rerun summary is byte identical");
  expect(b1.str() == b2.str() && !b1.str().empty(),
         "rerun trajectory is byte identical");
  std::remove("cli_config.txt");
  std::remove("cli_traj.csv");
  std::remove("cli_summary.json");
}

void test_infeasible() {
  write_file("cli_nonsep.csv", "1,0,1\n1,0,-1\n0,1,1\n");

  const CmdResult oracle =
      run_cli("oracle --dataset csv --path cli_nonsep.csv");
  expect(oracle.exit_code == 3, "non-separable oracle exits 3");
  const json cert = json::parse(oracle.out, nullptr, false);
  expect(!cert.is_discarded() && cert["feasible"].get<bool>() == false,
         "oracle still prints its certificate");

  write_file("cli_nonsep_run.txt",
             "dataset.kind = csv\ndataset.path = cli_nonsep.csv\n"
             "potential.kind = identity\nnorm.kind = l2\nalgo = md\n"
             "schedule.kind = constant\nschedule.eta = 1\nrun.T = 5\n");
  expect(run_cli("run cli_nonsep_run.txt").exit_code == 3,
         "non-separable run exits 3");
  std::remove("cli_nonsep.csv");
  std::remove("cli_nonsep_run.txt");
}

void test_oracle_outputs() {
  const CmdResult r = run_cli("oracle --norm l2 --grid 5000");
  expect(r.exit_code == 0, "fixture oracle exits 0");
  const json cert = json::parse(r.out, nullptr, false);
  expect(!cert.is_discarded(), "oracle prints JSON");
  expect(std::abs(cert["gamma_star"].get<double>() - 1.0) < 1e-8,
         "fixture margin is 1");
  expect(std::abs(cert["grid_gamma"].get<double>() - 1.0) < 1e-3,
         "grid cross-check close to 1");
  expect(cert["u_star"][1].get<double>() > 0.999, "direction points at (0,1)");

  const CmdResult t = run_cli("oracle --dataset tightness --m 9 --norm l1");
  const json tcert = json::parse(t.out, nullptr, false);
  expect(t.exit_code == 0 && !tcert.is_discarded(), "tightness oracle runs");
  expect(std::abs(tcert["gamma_star"].get<double>() - 1.0) < 1e-8,
         "tightness margin under the l1 ball is 1");
}

void test_bounds_outputs() {
  const CmdResult r = run_cli(
      "bounds --gamma 1 --mu-w 1 --l-w 1 --mu-2 1 --d-dual 1 --d-2 1 "
      "--eta 1 --eps 0.25 --alpha 1 --t 100 --t 200");
  expect(r.exit_code == 0, "bounds exits 0");
  const json out = json::parse(r.out, nullptr, false);
  expect(!out.is_discarded(), "bounds prints JSON");
  expect(out["loss_bound"].size() == 2, "one entry per requested t");
  expect(std::abs(out["loss_bound"][0]["value"].get<double>() - 0.0630189) <
             1e-5,
         "loss bound value at t=100");
  expect(std::abs(out["margin_floor"].get<double>() - 1.0) < 1e-12,
         "margin floor at unit inputs");
  expect(out["beta"].get<double>() > 0.0 && out["beta"].get<double>() < 1.0,
         "beta lies in (0,1)");
  expect(out["t0"].contains("const_bppa") && out["t0"].contains("vary_md"),
         "threshold block present");
}

void test_repro_tightness() {
  const CmdResult r = run_cli("repro tightness --out cli_repro_out");
  expect(r.exit_code == 0, "tightness repro exits 0");
  const json out = json::parse(r.out, nullptr, false);
  expect(!out.is_discarded(), "repro prints JSON");
  expect(std::filesystem::exists("cli_repro_out"), "output directory created");
  std::filesystem::remove_all("cli_repro_out");
}

} // namespace

int main() {
  test_usage_errors();
  test_run_and_outputs();
  test_determinism();
  test_infeasible();
  test_oracle_outputs();
  test_bounds_outputs();
  test_repro_tightness();
  std::remove("cli_stdout.tmp");
  std::remove("cli_stderr.tmp");
  std::printf("%d checks, %d failed\n", checks, failed);
  return failed == 0 ? 0 : 1;
}
