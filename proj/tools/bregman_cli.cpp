#include <cstdio>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bregman/bounds.hpp"
#include "bregman/experiment.hpp"
#include "bregman/oracle.hpp"

namespace {

using nlohmann::json;
using namespace bregman;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitNumerical = 4;

struct infeasible_exit {}; // oracle printed its certificate, exit 3

SymMatrix matrix_flag(const std::string& text) {
  try {
    return SymMatrix::from_rows(parse_matrix(text));
  } catch (const std::invalid_argument& e) {
    throw config_error(std::string("bad matrix: ") + e.what());
  }
}

NormSpec norm_flag(const std::string& kind, const std::string& matrix_text) {
  if (kind == "l1") return NormSpec::l1();
  if (kind == "l2") return NormSpec::l2();
  if (kind == "linf") return NormSpec::linf();
  if (kind == "mahalanobis") {
    if (matrix_text.empty())
      throw config_error("norm 'mahalanobis' requires --norm-matrix");
    try {
      return NormSpec::mahalanobis(matrix_flag(matrix_text));
    } catch (const numerical_error& e) {
      throw config_error(std::string("bad norm matrix: ") + e.what());
    }
  }
  throw config_error("unknown norm kind '" + kind + "'");
}

int cmd_run(const std::string& config_path) {
  const ExperimentConfig cfg = parse_config_file(config_path);
  const RunOutcome outcome = execute_run(cfg);
  std::cout << outcome.summary_json << "\n";
  return kExitOk;
}

int cmd_repro(const std::string& name, std::string out_dir) {
  if (out_dir.empty()) out_dir = "repro_" + name;
  std::string summary;
  if (name == "synthetic4")
    summary = repro_synthetic4(out_dir);
  else if (name == "spheres")
    summary = repro_spheres(out_dir);
  else if (name == "tightness")
    summary = repro_tightness(out_dir);
  else
    throw config_error("unknown repro name '" + name +
                       "' (expected synthetic4, spheres or tightness)");
  std::cout << summary << "\n";
  return kExitOk;
}

struct OracleArgs {
  std::string dataset = "fixture";
  std::string path;
  std::size_t m = 4;
  std::size_t n = 2;
  std::size_t d = 2;
  double r = 0.8;
  std::uint64_t seed = 1;
  std::string norm = "l2";
  std::string norm_matrix;
  std::size_t grid = 0;
};

int cmd_oracle(const OracleArgs& args) {
  Dataset data = [&]() -> Dataset {
    if (args.dataset == "fixture") return fixture_four_point();
    if (args.dataset == "tightness") return gen_tightness(args.m).data;
    if (args.dataset == "spheres") {
      SpheresConfig sc{args.n, args.m, args.d, args.r, args.seed};
      return gen_spheres(sc).labeled;
    }
    if (args.dataset == "csv") {
      if (args.path.empty()) throw config_error("dataset 'csv' requires --path");
      try {
        return load_csv(args.path);
      } catch (const std::runtime_error& e) {
        throw config_error(e.what());
      }
    }
    throw config_error("unknown dataset kind '" + args.dataset + "'");
  }();

  const NormSpec norm_spec = norm_flag(args.norm, args.norm_matrix);
  const MarginCertificate cert = max_margin(data, norm_spec);
  json out = {{"u_star", cert.u_star},
              {"gamma_star", cert.gamma_star},
              {"feasible", cert.feasible}};
  if (args.grid > 0) {
    const MarginCertificate grid = grid_oracle(data, norm_spec, args.grid);
    out["grid_gamma"] = grid.gamma_star;
  }
  std::cout << out.dump(2) << "\n";
  if (!cert.feasible) throw infeasible_exit{};
  return kExitOk;
}

struct BoundArgs {
  BoundInputs inputs{1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.25};
  double alpha = 1.0;
  std::vector<double> ts;
};

int cmd_bounds(const BoundArgs& args) {
  args.inputs.validate();
  json curve = json::array();
  for (double t : args.ts.empty() ? std::vector<double>{100.0} : args.ts)
    curve.push_back({{"t", t}, {"value", loss_upper_bound_const(args.inputs, t)}});
  const json out = {
      {"loss_bound", curve},
      {"margin_floor", margin_floor(args.inputs)},
      {"beta",
       contraction_beta(args.alpha, args.inputs.gamma, args.inputs.l_w)},
      {"beta_lower",
       contraction_beta_lower(args.alpha, args.inputs.d_dual, args.inputs.mu_w)},
      {"t0",
       {{"const_bppa", t0_estimate(args.inputs, Regime::ConstBppa)},
        {"vary_bppa", t0_estimate(args.inputs, Regime::VaryBppa)},
        {"const_md", t0_estimate(args.inputs, Regime::ConstMd)},
        {"vary_md", t0_estimate(args.inputs, Regime::VaryMd)}}}};
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bregman proximal point / mirror descent margin experiments"};
  app.require_subcommand(1);

  std::string run_config;
  CLI::App* run = app.add_subcommand("run", "execute one configured run");
  run->add_option("config", run_config, "path to a key = value config file")
      ->required();

  std::string repro_name, repro_out;
  CLI::App* repro = app.add_subcommand("repro", "reproduce a built-in experiment");
  repro->add_option("name", repro_name, "synthetic4 | spheres | tightness")
      ->required();
  repro->add_option("--out", repro_out, "output directory (default repro_<name>)");

  OracleArgs oargs;
  CLI::App* oracle = app.add_subcommand("oracle", "max-margin certificate");
  oracle->add_option("--dataset", oargs.dataset, "fixture | csv | spheres | tightness");
  oracle->add_option("--path", oargs.path, "csv file (dataset csv)");
  oracle->add_option("--m", oargs.m, "tightness dimension / spheres unlabeled count");
  oracle->add_option("--n", oargs.n, "spheres labeled count");
  oracle->add_option("--d", oargs.d, "spheres dimension");
  oracle->add_option("--r", oargs.r, "spheres radius");
  oracle->add_option("--seed", oargs.seed, "spheres seed");
  oracle->add_option("--norm", oargs.norm, "l1 | l2 | linf | mahalanobis");
  oracle->add_option("--norm-matrix", oargs.norm_matrix, "rows 'a,b;c,d'");
  oracle->add_option("--grid", oargs.grid, "also sweep this many directions (d=2)");

  BoundArgs bargs;
  CLI::App* bounds = app.add_subcommand("bounds", "evaluate closed-form bounds");
  bounds->add_option("--gamma", bargs.inputs.gamma, "max margin");
  bounds->add_option("--mu-w", bargs.inputs.mu_w, "strong convexity vs norm");
  bounds->add_option("--l-w", bargs.inputs.l_w, "smoothness vs norm");
  bounds->add_option("--mu-2", bargs.inputs.mu_2, "strong convexity vs l2");
  bounds->add_option("--d-dual", bargs.inputs.d_dual, "max dual-norm data radius");
  bounds->add_option("--d-2", bargs.inputs.d_2, "max l2 data radius");
  bounds->add_option("--eta", bargs.inputs.eta, "constant stepsize");
  bounds->add_option("--eps", bargs.inputs.eps, "target accuracy in (0, 1/2)");
  bounds->add_option("--alpha", bargs.alpha, "step multiplier for beta");
  bounds->add_option("--t", bargs.ts, "loss bound evaluation points (repeatable)");

  try {
    app.parse(argc, argv);
    if (run->parsed()) return cmd_run(run_config);
    if (repro->parsed()) return cmd_repro(repro_name, repro_out);
    if (oracle->parsed()) return cmd_oracle(oargs);
    return cmd_bounds(bargs);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  } catch (const infeasible_exit&) {
    return kExitInfeasible;
  } catch (const not_separable_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const numerical_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
