// SPDX-License-Identifier: Apache-2.0
#include "friction_walk/io.hpp"

#include <charconv>
#include <cmath>

#include <json.hpp>

#include "friction_walk/constants.hpp"
#include "friction_walk/meanfield.hpp"

namespace friction_walk {

namespace {

using json = nlohmann::ordered_json;

json config_json(const RunConfig& cfg) {
  // worker count deliberately not echoed: results are thread-invariant and
  // outputs must stay byte-identical across --threads
  return {{"m", cfg.m},
          {"M", cfg.M},
          {"x0", {cfg.x0.x, cfg.x0.y, cfg.x0.z}},
          {"k0", {cfg.k0.x, cfg.k0.y, cfg.k0.z}}};
}

json header_json(const RunConfig& cfg) {
  return {{"version", kVersion}, {"config", config_json(cfg)}, {"seed", cfg.seed}};
}

double sanitize(double v) { return std::isfinite(v) ? v : 0.0; }

json metric_json(const Metric& m) {
  json j{{"name", m.label},
         {"estimate", sanitize(m.estimate)},
         {"target", sanitize(m.target)},
         {"tolerance", std::isfinite(m.tolerance) ? json(m.tolerance) : json("inf")},
         {"pass", m.pass}};
  return j;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const RunConfig& cfg,
                          const std::vector<double>& t_grid) {
  os << "# " << header_json(cfg).dump() << "\n";
  os << "t,x1,x2,x3,k1,k2,k3\n";
  for (const double t : t_grid) {
    const Vec3 x = traj.position(t);
    const Vec3 k = traj.momentum(t);
    os << format_double(t) << ',' << format_double(x.x) << ',' << format_double(x.y) << ','
       << format_double(x.z) << ',' << format_double(k.x) << ',' << format_double(k.y) << ','
       << format_double(k.z) << "\n";
  }
}

void write_trajectory_json(std::ostream& os, const Trajectory& traj, const RunConfig& cfg,
                           const std::vector<double>& t_grid) {
  json out = header_json(cfg);
  json samples = json::array();
  for (const double t : t_grid) {
    const Vec3 x = traj.position(t);
    const Vec3 k = traj.momentum(t);
    samples.push_back({{"t", t}, {"x", {x.x, x.y, x.z}}, {"k", {k.x, k.y, k.z}}});
  }
  out["jumps"] = traj.skeleton().steps();
  out["absorbed"] = traj.skeleton().absorbed;
  out["samples"] = std::move(samples);
  os << out.dump(2) << "\n";
}

void write_ensemble_json(std::ostream& os, const EnsembleSummary& summary, const RunConfig& cfg,
                         double t_max, bool include_terminals) {
  json out = header_json(cfg);
  out["t_max"] = t_max;
  out["count"] = summary.terminals.size();
  out["summary"] = {{"mean_x", {summary.mean_x.x, summary.mean_x.y, summary.mean_x.z}},
                    {"mean_k", {summary.mean_k.x, summary.mean_k.y, summary.mean_k.z}},
                    {"mean_k_norm", summary.mean_k_norm},
                    {"mean_abs_displacement", summary.mean_abs_displacement},
                    {"mean_jumps", summary.mean_jumps}};
  if (include_terminals) {
    json terms = json::array();
    for (const auto& t : summary.terminals) {
      terms.push_back({{"x", {t.x.x, t.x.y, t.x.z}},
                       {"k", {t.k.x, t.k.y, t.k.z}},
                       {"jumps", t.jumps},
                       {"absorbed", t.absorbed}});
    }
    out["terminals"] = std::move(terms);
  }
  os << out.dump(2) << "\n";
}

void write_constants_json(std::ostream& os, const PhysParams& p, const RunConfig& cfg) {
  const Constants c = closed_form_constants(p);
  json out = header_json(cfg);
  out["constants"] = {{"a", c.a},
                      {"rate_coeff", p.rate_coeff()},
                      {"eta", p.eta()},
                      {"position_prefactor", p.position_prefactor()},
                      {"b", c.b},
                      {"log_theta", c.log_theta},
                      {"theta", c.theta},
                      {"sigma2", c.sigma2}};
  out["quadrature_deltas"] = {
      {"delta_b", std::abs(b_by_quadrature(c.a) - c.b)},
      {"delta_log_theta", std::abs(logtheta_by_quadrature(c.a) - c.log_theta)}};
  os << out.dump(2) << "\n";
}

void write_meanfield_csv(std::ostream& os, const MeanFieldState& st, const RunConfig& cfg,
                         const std::vector<double>& t_grid) {
  os << "# " << header_json(cfg).dump() << "\n";
  os << "t,knorm,xdist\n";
  for (const double t : t_grid) {
    os << format_double(t) << ',' << format_double(meanfield_momentum(st, t).norm()) << ','
       << format_double((meanfield_position(st, t) - st.x0).norm()) << "\n";
  }
}

void write_reports_json(std::ostream& os, const std::vector<StatReport>& reports,
                        const RunConfig& cfg, bool with_timings) {
  json out = header_json(cfg);
  json checks = json::array();
  bool all_pass = true;
  for (const StatReport& r : reports) {
    json metrics = json::array();
    for (const Metric& m : r.metrics) metrics.push_back(metric_json(m));
    json item{{"name", r.name},
              {"pass", r.pass},
              {"seed", r.seed},
              {"sample_sizes", r.sample_sizes},
              {"metrics", std::move(metrics)}};
    if (with_timings) item["wall_time_ms"] = r.wall_time_ms;
    checks.push_back(std::move(item));
    all_pass = all_pass && r.pass;
  }
  out["checks"] = std::move(checks);
  out["pass"] = all_pass;
  os << out.dump(2) << "\n";
}

void write_reports_text(std::ostream& os, const std::vector<StatReport>& reports) {
  for (const StatReport& r : reports) {
    os << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  (" << r.sample_sizes << ")\n";
    for (const Metric& m : r.metrics) {
      os << "  " << (m.pass ? "ok  " : "FAIL") << "  " << m.label << "  estimate="
         << format_double(m.estimate) << "  target=" << format_double(m.target)
         << "  tol=" << format_double(m.tolerance) << "\n";
    }
  }
}

}  // namespace friction_walk
