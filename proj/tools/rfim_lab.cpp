#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "rfim/experiments.hpp"

namespace {

template <class T>
void set_if(const CLI::Option* opt, const T& value, T& target) {
  if (opt->count() > 0) target = value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random field Ising model disagreement-percolation lab"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string config_path;
  std::uint64_t seed = 0;
  std::size_t replicas = 0;
  unsigned workers = 1;
  std::string out_dir;
  std::string mode;
  std::size_t sweeps = 0;
  double beta = 0, J = 0, h = 0, eps = 0;

  app.add_option("--config", config_path, "JSON config (a manifest.json is accepted)")->check(CLI::ExistingFile);
  auto* o_seed = app.add_option("--seed", seed, "master seed");
  auto* o_replicas = app.add_option("--replicas", replicas, "disorder replicas");
  auto* o_workers = app.add_option("--workers", workers, "worker threads");
  auto* o_out = app.add_option("--out", out_dir, "output directory");
  auto* o_mode = app.add_option("--mode", mode, "sampler")->check(CLI::IsMember({"glauber", "cftp"}));
  auto* o_sweeps = app.add_option("--sweeps", sweeps, "Glauber sweeps (0 = 100 |V|)");
  auto* o_beta = app.add_option("--beta", beta, "inverse temperature");
  auto* o_J = app.add_option("--J", J, "coupling");
  auto* o_h = app.add_option("--h", h, "uniform field");
  auto* o_eps = app.add_option("--eps", eps, "disorder strength");

  int max_vertices = 0;
  double tolerance = 0;
  std::size_t instances = 0;
  bool mutate_lambda = false;
  auto* verify = app.add_subcommand("verify", "exact identity suite");
  auto* o_maxv = verify->add_option("--max-vertices", max_vertices, "largest random region");
  auto* o_tol = verify->add_option("--tolerance", tolerance, "absolute/relative tolerance");
  auto* o_inst = verify->add_option("--instances", instances, "base instance count");
  verify->add_flag("--mutate-lambda", mutate_lambda)->group("");

  std::vector<int> L_list;
  auto* mL = app.add_subcommand("mL", "order parameter m(L) by sampling");
  auto* o_L = mL->add_option("--L", L_list, "box radii")->delimiter(',');

  std::vector<int> l_list;
  auto* tort = app.add_subcommand("tortuosity", "annulus crossing statistics");
  auto* o_l = tort->add_option("--l", l_list, "annulus scales")->delimiter(',');

  double t_max = 0;
  int n_points = 0;
  std::string rule, inner_json, outer_json;
  auto* st = app.add_subcommand("surface-tension", "exact and integral surface tension");
  auto* o_tmax = st->add_option("--t-max", t_max, "quadrature cutoff (0 = automatic)");
  auto* o_npts = st->add_option("--n-points", n_points, "quadrature nodes");
  auto* o_rule = st->add_option("--rule", rule, "quadrature rule")->check(CLI::IsMember({"simpson", "trapezoid"}));
  auto* o_inner = st->add_option("--inner", inner_json, "inner region as JSON");
  auto* o_outer = st->add_option("--outer", outer_json, "outer region as JSON");

  std::string input;
  auto* fit = app.add_subcommand("fit", "exponential fit of an mL table");
  auto* o_input = fit->add_option("--input", input, "results.csv from mL")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    rfim::ExperimentConfig c;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      c = rfim::merge_config(c, nlohmann::json::parse(in));
    }
    c.command = app.get_subcommands().front()->get_name();

    nlohmann::json flags = nlohmann::json::object();
    if (o_mode->count()) flags["mode"] = mode;
    if (o_rule->count()) flags["quadrature"]["rule"] = rule;
    if (o_inner->count()) flags["inner"] = nlohmann::json::parse(inner_json);
    if (o_outer->count()) flags["outer"] = nlohmann::json::parse(outer_json);
    c = rfim::merge_config(c, flags);

    set_if(o_seed, seed, c.seed);
    set_if(o_replicas, replicas, c.replicas);
    set_if(o_workers, workers, c.workers);
    set_if(o_out, out_dir, c.out_dir);
    set_if(o_sweeps, sweeps, c.sweeps);
    set_if(o_beta, beta, c.params.beta);
    set_if(o_J, J, c.params.J);
    set_if(o_h, h, c.params.h);
    set_if(o_eps, eps, c.params.eps);
    set_if(o_maxv, max_vertices, c.max_vertices);
    set_if(o_tol, tolerance, c.tolerance);
    set_if(o_inst, instances, c.instances);
    if (mutate_lambda) c.mutate_lambda = true;
    set_if(o_L, L_list, c.L_list);
    set_if(o_l, l_list, c.l_list);
    set_if(o_tmax, t_max, c.quadrature.t_max);
    set_if(o_npts, n_points, c.quadrature.n_points);
    set_if(o_input, input, c.input);

    const int code = rfim::run_command(c);
    std::cout << c.command << ": " << (code == 0 ? "pass" : "check failed") << " (" << c.out_dir << ")\n";
    return code;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
