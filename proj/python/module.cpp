// SPDX-License-Identifier: Apache-2.0
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <vector>

#include "friction_walk/analysis.hpp"
#include "friction_walk/constants.hpp"
#include "friction_walk/meanfield.hpp"
#include "friction_walk/simulate.hpp"

namespace py = pybind11;
namespace fw = friction_walk;

namespace {

using Triple = std::array<double, 3>;

fw::Vec3 to_vec(const Triple& t) { return {t[0], t[1], t[2]}; }
Triple from_vec(const fw::Vec3& v) { return {v.x, v.y, v.z}; }

py::dict sample_trajectory(double m, double M, const Triple& x0, const Triple& k0, double t_max,
                           std::uint64_t seed, const std::vector<double>& t_grid) {
  const fw::PhysParams p(m, M);
  fw::RandomStream rng(seed, 0);
  const fw::Trajectory traj = fw::simulate_trajectory(p, to_vec(x0), to_vec(k0), t_max, rng);
  std::vector<Triple> xs, ks;
  for (const double t : t_grid) {
    xs.push_back(from_vec(traj.position(t)));
    ks.push_back(from_vec(traj.momentum(t)));
  }
  py::dict out;
  out["t"] = t_grid;
  out["x"] = xs;
  out["k"] = ks;
  out["jumps"] = traj.skeleton().steps();
  out["absorbed"] = traj.skeleton().absorbed;
  return out;
}

py::dict run_named_check(const std::string& name, double m, double M, std::uint64_t seed,
                         unsigned threads, long long n, long long ensemble) {
  fw::CheckConfig cfg;
  cfg.params = fw::PhysParams(m, M);
  cfg.seed = seed;
  cfg.threads = threads;
  cfg.n = n;
  cfg.ensemble = ensemble;
  const fw::StatReport rep = fw::run_check(name, cfg);
  py::list metrics;
  for (const fw::Metric& mt : rep.metrics) {
    py::dict d;
    d["name"] = mt.label;
    d["estimate"] = mt.estimate;
    d["target"] = mt.target;
    d["tolerance"] = mt.tolerance;
    d["pass"] = mt.pass;
    metrics.append(d);
  }
  py::dict out;
  out["name"] = rep.name;
  out["pass"] = rep.pass;
  out["seed"] = rep.seed;
  out["sample_sizes"] = rep.sample_sizes;
  out["metrics"] = metrics;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Event-driven simulator for a momentum jump process with linear friction";

  py::class_<fw::PhysParams>(mod, "PhysParams")
      .def(py::init<double, double>(), py::arg("m"), py::arg("M"))
      .def_property_readonly("m", &fw::PhysParams::m)
      .def_property_readonly("M", &fw::PhysParams::M)
      .def_property_readonly("mass_ratio", &fw::PhysParams::mass_ratio)
      .def_property_readonly("rate_coeff", &fw::PhysParams::rate_coeff)
      .def_property_readonly("eta", &fw::PhysParams::eta)
      .def_property_readonly("position_prefactor", &fw::PhysParams::position_prefactor);

  mod.def(
      "constants",
      [](double m, double M) {
        const fw::Constants c = fw::closed_form_constants(fw::PhysParams(m, M));
        py::dict out;
        out["a"] = c.a;
        out["b"] = c.b;
        out["log_theta"] = c.log_theta;
        out["theta"] = c.theta;
        out["sigma2"] = c.sigma2;
        return out;
      },
      py::arg("m") = 1.0, py::arg("M") = 1.0);

  mod.def("rate_function", &fw::rate_function, py::arg("a"), py::arg("x"),
          "Cramer rate function I(x) of the per-jump log contraction");
  mod.def("lambda_mgf", &fw::lambda_mgf, py::arg("a"), py::arg("xi"));

  mod.def("scattering_rate",
          [](double m, double M, const Triple& k) {
            return fw::scattering_rate(fw::PhysParams(m, M), to_vec(k));
          },
          py::arg("m"), py::arg("M"), py::arg("k"));

  mod.def("simulate", &sample_trajectory, py::arg("m"), py::arg("M"), py::arg("x0"),
          py::arg("k0"), py::arg("t_max"), py::arg("seed"), py::arg("t_grid"),
          "One trajectory, sampled at the given times");

  mod.def(
      "meanfield",
      [](double m, double M, const Triple& x0, const Triple& k0, double t) {
        const fw::MeanFieldState st(fw::PhysParams(m, M), to_vec(x0), to_vec(k0));
        py::dict out;
        out["k"] = from_vec(fw::meanfield_momentum(st, t));
        out["x"] = from_vec(fw::meanfield_position(st, t));
        return out;
      },
      py::arg("m"), py::arg("M"), py::arg("x0"), py::arg("k0"), py::arg("t"));

  mod.def("check_names", &fw::check_names);
  mod.def("run_check", &run_named_check, py::arg("name"), py::arg("m") = 1.0, py::arg("M") = 1.0,
          py::arg("seed") = 1, py::arg("threads") = 1, py::arg("n") = -1,
          py::arg("ensemble") = -1);
}
