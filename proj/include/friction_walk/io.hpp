// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>

#include "friction_walk/analysis.hpp"
#include "friction_walk/meanfield.hpp"
#include "friction_walk/simulate.hpp"

namespace friction_walk {

inline constexpr const char* kVersion = "1.0.0";

/// Run configuration echoed into every output artifact.
struct RunConfig {
  double m = 1.0;
  double M = 1.0;
  Vec3 x0{0.0, 0.0, 0.0};
  Vec3 k0{1.0, 0.0, 0.0};
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

/// Trajectory sampled on a time grid as CSV, header `t,x1,x2,x3,k1,k2,k3`.
/// A leading `#` comment line carries {version, config, seed}.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const RunConfig& cfg,
                          const std::vector<double>& t_grid);

/// Same content as JSON: {version, config, seed, samples: [...]}.
void write_trajectory_json(std::ostream& os, const Trajectory& traj, const RunConfig& cfg,
                           const std::vector<double>& t_grid);

/// Ensemble summary as JSON: {version, config, seed, count, summary, terminals}.
void write_ensemble_json(std::ostream& os, const EnsembleSummary& summary, const RunConfig& cfg,
                         double t_max, bool include_terminals);

/// Closed-form constants as JSON.
void write_constants_json(std::ostream& os, const PhysParams& p, const RunConfig& cfg);

/// Mean-field solution on a time grid as CSV `t,knorm,xdist`.
void write_meanfield_csv(std::ostream& os, const MeanFieldState& st, const RunConfig& cfg,
                         const std::vector<double>& t_grid);

/// Verification report as JSON. `with_timings` controls whether wall_time_ms
/// appears; omitting it keeps repeated runs byte-identical.
void write_reports_json(std::ostream& os, const std::vector<StatReport>& reports,
                        const RunConfig& cfg, bool with_timings);

/// One human-readable pass/fail line per report to `os`.
void write_reports_text(std::ostream& os, const std::vector<StatReport>& reports);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace friction_walk
