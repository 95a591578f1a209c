// Copyright 2026 The sea-oco Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

#include "sea/acceptance.h"
#include "sea/config.h"
#include "sea/errors.h"
#include "sea/geometry.h"
#include "sea/harness.h"
#include "sea/metrics.h"

namespace py = pybind11;

namespace {

sea::ExperimentConfig MakeConfig(const std::string& text,
                                 const std::map<std::string, std::string>& overrides) {
  sea::ExperimentConfig cfg = sea::ExperimentConfig::FromString(text);
  for (const auto& [k, v] : overrides) cfg.Set(k, v);
  cfg.Validate();
  return cfg;
}

py::dict TraceToDict(const sea::Trace& trace) {
  const auto n = static_cast<Eigen::Index>(trace.records.size());
  const Eigen::Index d = n > 0 ? trace.records.front().x.size() : 0;
  Eigen::MatrixXd x(n, d), g(n, d);
  Eigen::VectorXd eta(n), sigma_sq(n), variation_sq(n), loss(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const sea::RoundRecord& r = trace.records[i];
    x.row(i) = r.x.transpose();
    g.row(i) = r.g.transpose();
    eta[i] = r.eta;
    sigma_sq[i] = r.sigma_sq;
    variation_sq[i] = r.variation_sq;
    loss[i] = r.loss_value;
  }
  py::dict out;
  out["env"] = trace.env;
  out["learner"] = trace.learner;
  out["seed"] = trace.seed;
  out["convention"] = sea::ToString(trace.convention);
  out["x"] = x;
  out["g"] = g;
  out["eta"] = eta;
  out["sigma_sq"] = sigma_sq;
  out["variation_sq"] = variation_sq;
  out["loss_value"] = loss;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Optimistic online learners, SEA environments and the experiment harness.";

  py::register_exception<sea::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<sea::UnknownKeyError>(m, "UnknownKeyError", PyExc_KeyError);
  py::register_exception<sea::ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<sea::ProtocolError>(m, "ProtocolError", PyExc_RuntimeError);
  py::register_exception<sea::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<sea::TrialError>(m, "TrialError", PyExc_RuntimeError);

  py::class_<sea::FeasibleSet>(m, "FeasibleSet")
      .def_static("ball", &sea::FeasibleSet::MakeBall, py::arg("center"), py::arg("radius"))
      .def_static("box", &sea::FeasibleSet::MakeBox, py::arg("lo"), py::arg("hi"))
      .def_property_readonly("dim", &sea::FeasibleSet::dim)
      .def_property_readonly("diameter", &sea::FeasibleSet::Diameter)
      .def_property_readonly("center", &sea::FeasibleSet::Center)
      .def("contains", &sea::FeasibleSet::Contains, py::arg("p"), py::arg("tol") = 1e-12);

  m.def("project", &sea::Project, py::arg("p"), py::arg("set"));
  m.def("linear_minimize", &sea::LinearMinimize, py::arg("direction"), py::arg("set"));
  m.def("reg_argmin", &sea::RegArgmin, py::arg("theta"), py::arg("c"), py::arg("set"));

  m.def("theorem1_bound", &sea::Theorem1Bound, py::arg("D"), py::arg("G"), py::arg("L"),
        py::arg("nu"), py::arg("sigma_bar"), py::arg("Sigma_bar"), py::arg("T"));
  m.def("worst_case_bound", &sea::WorstCaseBound, py::arg("D"), py::arg("G"), py::arg("T"));
  m.def(
      "theorem3_bound",
      [](double mu, double l, double d, double g, double sigma_max, double variation_max,
         double t, bool with_first_round) {
        return sea::Theorem3Bound(mu, l, d, g, sigma_max, variation_max, t,
                                  with_first_round ? sea::Theorem3Form::kWithFirstRoundTerm
                                                   : sea::Theorem3Form::kStatement);
      },
      py::arg("mu"), py::arg("L"), py::arg("D"), py::arg("G"), py::arg("sigma_max"),
      py::arg("Sigma_max"), py::arg("T"), py::arg("with_first_round") = true);
  m.def(
      "fit_loglog_slope",
      [](const std::vector<double>& horizons, const std::vector<double>& values) {
        return sea::FitLogLogSlope(horizons, values);
      },
      py::arg("horizons"), py::arg("values"));

  m.def(
      "run_trial",
      [](const std::string& config, int horizon, std::uint64_t seed,
         const std::map<std::string, std::string>& overrides) {
        const sea::ExperimentConfig cfg = MakeConfig(config, overrides);
        sea::Trace trace;
        {
          py::gil_scoped_release release;
          trace = sea::RunTrial(cfg, horizon, seed);
        }
        return TraceToDict(trace);
      },
      py::arg("config"), py::arg("horizon"), py::arg("seed"),
      py::arg("overrides") = std::map<std::string, std::string>{},
      "Plays one seeded trial of an INI config; returns per-round arrays.");

  m.def(
      "run_experiment_json",
      [](const std::string& config, const std::map<std::string, std::string>& overrides) {
        const sea::ExperimentConfig cfg = MakeConfig(config, overrides);
        py::gil_scoped_release release;
        const sea::Aggregate agg = sea::RunExperiment(cfg);
        return sea::SummaryJson(cfg, agg);
      },
      py::arg("config"), py::arg("overrides") = std::map<std::string, std::string>{});

  m.def(
      "run_acceptance",
      [](const std::vector<int>& only) {
        sea::AcceptanceOptions options;
        options.only = only;
        std::vector<sea::CriterionResult> results;
        {
          py::gil_scoped_release release;
          results = sea::RunAcceptance(options);
        }
        py::list out;
        for (const sea::CriterionResult& r : results) {
          py::dict d;
          d["id"] = r.id;
          d["name"] = r.name;
          d["passed"] = r.pass;
          d["detail"] = r.detail;
          d["seconds"] = r.seconds;
          out.append(d);
        }
        return out;
      },
      py::arg("only") = std::vector<int>{});
}
