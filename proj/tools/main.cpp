// SPDX-License-Identifier: Apache-2.0
//
// friction-walk: event-driven simulator for a tracer in a dilute gas.
//
// Subcommands: constants | simulate | ensemble | meanfield | verify.
// Exit codes: 0 success, 1 check failure, 2 usage error, 3 resource limit.

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <vector>

#include <CLI11.hpp>

#include "friction_walk/analysis.hpp"
#include "friction_walk/constants.hpp"
#include "friction_walk/errors.hpp"
#include "friction_walk/io.hpp"
#include "friction_walk/meanfield.hpp"
#include "friction_walk/simulate.hpp"

namespace fw = friction_walk;

namespace {

struct CommonOpts {
  double m = 1.0;
  double M = 1.0;
  std::vector<double> x0{0.0, 0.0, 0.0};
  std::vector<double> k0{1.0, 0.0, 0.0};
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
  int threads = 0;  // 0: FRICTION_WALK_THREADS or 1
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--m", o.m, "Tracer mass")->check(CLI::PositiveNumber);
  cmd->add_option("--M", o.M, "Gas atom mass")->check(CLI::PositiveNumber);
  cmd->add_option("--x0", o.x0, "Initial position (3 components)")->expected(3);
  cmd->add_option("--k0", o.k0, "Initial momentum (3 components)")->expected(3);
  cmd->add_option("--seed", o.seed, "Base RNG seed");
  cmd->add_option("--out", o.out, "Output file (default: stdout)");
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", o.threads, "Worker threads (0: FRICTION_WALK_THREADS or 1)")
      ->check(CLI::NonNegativeNumber);
}

fw::Vec3 to_vec(const std::vector<double>& v) { return {v[0], v[1], v[2]}; }

/// Every stateful subcommand needs a nonzero initial momentum.
fw::Vec3 require_k0(const std::vector<double>& v) {
  const fw::Vec3 k = to_vec(v);
  if (k.norm() == 0.0) throw fw::DomainError("|k0| must be positive");
  return k;
}

fw::RunConfig run_config(const CommonOpts& o, unsigned threads) {
  fw::RunConfig cfg;
  cfg.m = o.m;
  cfg.M = o.M;
  cfg.x0 = to_vec(o.x0);
  cfg.k0 = to_vec(o.k0);
  cfg.seed = o.seed;
  cfg.threads = threads;
  return cfg;
}

/// Output sink: file when --out is given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw fw::ResourceLimitError("cannot open output file: " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<double> log_grid(double t_lo, double t_hi, int per_decade) {
  std::vector<double> grid;
  const double decades = std::log10(t_hi / t_lo);
  const int steps = static_cast<int>(std::ceil(decades * per_decade));
  for (int i = 0; i <= steps; ++i) {
    grid.push_back(t_lo * std::pow(10.0, decades * i / steps));
  }
  return grid;
}

int cmd_constants(const CommonOpts& o) {
  const fw::PhysParams p(o.m, o.M);
  Sink sink(o.out);
  fw::write_constants_json(sink.os(), p, run_config(o, fw::resolve_threads(o.threads)));
  return 0;
}

int cmd_simulate(const CommonOpts& o, double t_max, int points) {
  const fw::PhysParams p(o.m, o.M);
  const unsigned threads = fw::resolve_threads(o.threads);
  fw::RandomStream rng(o.seed, 0);
  const fw::Trajectory traj =
      fw::simulate_trajectory(p, to_vec(o.x0), require_k0(o.k0), t_max, rng);
  std::vector<double> grid;
  for (int i = 0; i <= points; ++i) grid.push_back(t_max * i / points);
  Sink sink(o.out);
  if (o.format == "json") {
    fw::write_trajectory_json(sink.os(), traj, run_config(o, threads), grid);
  } else {
    fw::write_trajectory_csv(sink.os(), traj, run_config(o, threads), grid);
  }
  return 0;
}

int cmd_ensemble(const CommonOpts& o, double t_max, std::size_t count, bool terminals) {
  const fw::PhysParams p(o.m, o.M);
  const unsigned threads = fw::resolve_threads(o.threads);
  const fw::EnsembleSummary summary =
      fw::run_ensemble(p, to_vec(o.x0), require_k0(o.k0), t_max, count, o.seed, threads);
  Sink sink(o.out);
  fw::write_ensemble_json(sink.os(), summary, run_config(o, threads), t_max, terminals);
  return 0;
}

int cmd_meanfield(const CommonOpts& o, double t_lo, double t_hi, int per_decade) {
  const fw::PhysParams p(o.m, o.M);
  const fw::MeanFieldState st(p, to_vec(o.x0), require_k0(o.k0));
  Sink sink(o.out);
  fw::write_meanfield_csv(sink.os(), st, run_config(o, fw::resolve_threads(o.threads)),
                          log_grid(t_lo, t_hi, per_decade));
  return 0;
}

int cmd_verify(const CommonOpts& o, std::vector<std::string> checks, bool all, bool timings,
               long long n, long long ensemble) {
  if (all || checks.empty()) checks = fw::check_names();
  fw::CheckConfig cfg;
  cfg.params = fw::PhysParams(o.m, o.M);
  cfg.x0 = to_vec(o.x0);
  cfg.k0 = require_k0(o.k0);
  cfg.seed = o.seed;
  cfg.threads = fw::resolve_threads(o.threads);
  cfg.n = n;
  cfg.ensemble = ensemble;

  std::vector<fw::StatReport> reports;
  for (const std::string& name : checks) reports.push_back(fw::run_check(name, cfg));

  Sink sink(o.out);
  if (o.format == "json") {
    fw::write_reports_json(sink.os(), reports, run_config(o, cfg.threads), timings);
  } else {
    fw::write_reports_text(sink.os(), reports);
  }
  for (const fw::StatReport& r : reports) {
    if (!r.pass) return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"friction-walk: linear Boltzmann tracer simulator"};
  app.require_subcommand(1);

  CommonOpts oc, os, oe, om, ov;
  double sim_tmax = 1000.0, ens_tmax = 1000.0;
  int sim_points = 200;
  std::size_t ens_count = 1000;
  bool ens_terminals = false;
  double mf_tlo = 0.1, mf_thi = 1e6;
  int mf_per_decade = 8;
  std::vector<std::string> checks;
  bool verify_all = false, verify_timings = false;
  long long verify_n = -1, verify_ensemble = -1;

  auto* c_const = app.add_subcommand("constants", "Print derived model constants");
  add_common(c_const, oc);

  auto* c_sim = app.add_subcommand("simulate", "Simulate one trajectory");
  add_common(c_sim, os);
  c_sim->add_option("--t-max", sim_tmax, "Simulation horizon")->check(CLI::PositiveNumber);
  c_sim->add_option("--points", sim_points, "Output grid points")->check(CLI::PositiveNumber);

  auto* c_ens = app.add_subcommand("ensemble", "Simulate an ensemble of trajectories");
  add_common(c_ens, oe);
  c_ens->add_option("--t-max", ens_tmax, "Simulation horizon")->check(CLI::PositiveNumber);
  c_ens->add_option("--count", ens_count, "Number of trajectories")->check(CLI::PositiveNumber);
  c_ens->add_flag("--terminals", ens_terminals, "Include per-trajectory terminal states");

  auto* c_mf = app.add_subcommand("meanfield", "Evaluate the deterministic friction ODE");
  add_common(c_mf, om);
  c_mf->add_option("--t-lo", mf_tlo, "Grid start")->check(CLI::PositiveNumber);
  c_mf->add_option("--t-hi", mf_thi, "Grid end")->check(CLI::PositiveNumber);
  c_mf->add_option("--per-decade", mf_per_decade, "Grid points per decade")
      ->check(CLI::PositiveNumber);

  auto* c_ver = app.add_subcommand("verify", "Run statistical verification checks");
  add_common(c_ver, ov);
  c_ver->add_option("--check", checks, "Check names (repeatable)")
      ->check(CLI::IsMember(fw::check_names()));
  c_ver->add_flag("--all", verify_all, "Run every check");
  c_ver->add_flag("--timings", verify_timings, "Include wall times in JSON output");
  c_ver->add_option("--n", verify_n, "Override chain length / sample count");
  c_ver->add_option("--ensemble", verify_ensemble, "Override ensemble size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_const->parsed()) return cmd_constants(oc);
    if (c_sim->parsed()) return cmd_simulate(os, sim_tmax, sim_points);
    if (c_ens->parsed()) return cmd_ensemble(oe, ens_tmax, ens_count, ens_terminals);
    if (c_mf->parsed()) return cmd_meanfield(om, mf_tlo, mf_thi, mf_per_decade);
    if (c_ver->parsed()) {
      return cmd_verify(ov, checks, verify_all, verify_timings, verify_n, verify_ensemble);
    }
  } catch (const fw::ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const fw::DomainError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
