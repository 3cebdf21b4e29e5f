// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "friction_walk/io.hpp"

using namespace friction_walk;

namespace {

Trajectory tiny_trajectory() {
  const PhysParams p(1.0, 1.0);
  RandomStream rng(4);
  return simulate_trajectory(p, {0, 0, 0}, {1, 0, 0}, 5.0, rng);
}

}  // namespace

TEST_CASE("csv header and repeatability") {
  const Trajectory traj = tiny_trajectory();
  RunConfig cfg;
  std::ostringstream a, b;
  write_trajectory_csv(a, traj, cfg, {0.0, 1.0, 5.0});
  write_trajectory_csv(b, traj, cfg, {0.0, 1.0, 5.0});
  CHECK(a.str() == b.str());
  std::istringstream lines(a.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line.rfind("# {", 0) == 0);  // embedded config comment
  std::getline(lines, line);
  CHECK(line == "t,x1,x2,x3,k1,k2,k3");
  std::getline(lines, line);
  CHECK(line.rfind("0,0,0,0,1,0,0", 0) == 0);
}

TEST_CASE("json outputs embed version, config and seed") {
  const Trajectory traj = tiny_trajectory();
  RunConfig cfg;
  cfg.seed = 99;
  std::ostringstream os;
  write_trajectory_json(os, traj, cfg, {0.0, 5.0});
  const auto j = nlohmann::json::parse(os.str());
  CHECK(j["version"] == kVersion);
  CHECK(j["seed"] == 99);
  CHECK(j["config"]["m"] == 1.0);
  CHECK(j["config"]["k0"][0] == 1.0);
  CHECK(j["samples"].size() == 2);
}

TEST_CASE("constants json carries quadrature deltas") {
  std::ostringstream os;
  write_constants_json(os, PhysParams(1.0, 1.0), RunConfig{});
  const auto j = nlohmann::json::parse(os.str());
  CHECK(std::abs(j["constants"]["b"].get<double>() - 2.0 / 3.0) <= 1e-10);
  CHECK(std::abs(j["constants"]["theta"].get<double>() - 0.606531) <= 1e-6);
  CHECK(std::abs(j["constants"]["sigma2"].get<double>() - 0.202642) <= 1e-6);
  CHECK(j["quadrature_deltas"]["delta_b"].get<double>() <= 1e-8);
  CHECK(j["quadrature_deltas"]["delta_log_theta"].get<double>() <= 1e-8);
}

TEST_CASE("report json shape") {
  StatReport rep;
  rep.name = "demo";
  rep.seed = 7;
  rep.sample_sizes = "n=1";
  rep.metrics.push_back({"metric", 1.0, 1.0, 0.5, true});
  rep.finish();
  RunConfig cfg;
  std::ostringstream with, without;
  write_reports_json(with, {rep}, cfg, true);
  write_reports_json(without, {rep}, cfg, false);
  const auto jw = nlohmann::json::parse(with.str());
  const auto jo = nlohmann::json::parse(without.str());
  CHECK(jw["checks"][0].contains("wall_time_ms"));
  CHECK_FALSE(jo["checks"][0].contains("wall_time_ms"));
  CHECK(jo["checks"][0]["metrics"][0]["estimate"] == 1.0);
  CHECK(jo["pass"] == true);
}

TEST_CASE("round trip double formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0 / 3.0) == format_double(1.0 / 3.0));
  const double v = 3.141592653589793;
  CHECK(std::stod(format_double(v)) == v);
}
