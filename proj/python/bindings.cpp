// Copyright 2026 The qtdpinn Authors
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

// Python bindings. Structured values cross the boundary as plain dicts and
// lists, using the same JSON schemas as the CLI.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "qtd/audit.hpp"
#include "qtd/constructions.hpp"
#include "qtd/experiment.hpp"
#include "qtd/statevector.hpp"
#include "qtd/verify.hpp"

namespace py = pybind11;
using namespace qtd;

namespace {

py::object to_py(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

Json from_py(const py::object& o) {
  if (o.is_none()) return Json::object();
  return Json::parse(
      py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

template <typename T>
T parse(const py::object& o) {
  T value;
  from_json(from_py(o), value);
  return value;
}

MarketParams market_of(const py::object& o) {
  MarketParams m = parse<MarketParams>(o);
  m.validate();
  return m;
}

ModelSpec spec_of(const std::string& kind, double scale) {
  return {model_kind_from_string(kind), scale};
}

py::dict bundle_dict(const DerivBundle& d) {
  py::dict out;
  out["v"] = d.v;
  out["v_t"] = d.v_t;
  out["v_x"] = d.v_x;
  out["v_xx"] = d.v_xx;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Tensor-decomposed quantum PINN core";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<SizeError>(m, "SizeError", base.ptr());
  py::register_exception<BoundError>(m, "BoundError", base.ptr());
  py::register_exception<DegenerateControlError>(m, "DegenerateControlError",
                                                 base.ptr());

  // Merton problem.
  m.def("k_constant",
        [](const py::object& market) { return k_constant(market_of(market)); },
        py::arg("market") = py::none());
  m.def(
      "analytical_v",
      [](double t, double x, const py::object& market) {
        return analytical_v(market_of(market), t, x);
      },
      py::arg("t"), py::arg("x"), py::arg("market") = py::none());
  m.def(
      "analytical_bundle",
      [](double t, double x, const py::object& market) {
        return bundle_dict(analytical_bundle(market_of(market), t, x));
      },
      py::arg("t"), py::arg("x"), py::arg("market") = py::none());
  m.def(
      "optimal_control",
      [](double v_x, double v_xx, double x, const py::object& market) {
        return optimal_control(v_x, v_xx, x, market_of(market));
      },
      py::arg("v_x"), py::arg("v_xx"), py::arg("x"),
      py::arg("market") = py::none());

  // Models.
  m.def(
      "param_count",
      [](const std::string& kind) {
        return param_count(model_kind_from_string(kind));
      },
      py::arg("kind"));
  m.def(
      "init_params",
      [](const std::string& kind, std::uint64_t seed, double angle_range,
         double coeff_range) {
        return init_params(model_kind_from_string(kind), seed,
                           InitOptions{angle_range, coeff_range})
            .values;
      },
      py::arg("kind"), py::arg("seed") = 0, py::arg("angle_range") = 0.1,
      py::arg("coeff_range") = 0.1);
  m.def(
      "model_value",
      [](const std::string& kind, const std::vector<double>& params, double t,
         double x, double scale) {
        return model_value(spec_of(kind, scale), params, t, x);
      },
      py::arg("kind"), py::arg("params"), py::arg("t"), py::arg("x"),
      py::arg("output_scale") = 10.0);
  m.def(
      "model_bundle",
      [](const std::string& kind, const std::vector<double>& params, double t,
         double x, double scale) {
        return bundle_dict(model_bundle(spec_of(kind, scale), params, t, x));
      },
      py::arg("kind"), py::arg("params"), py::arg("t"), py::arg("x"),
      py::arg("output_scale") = 10.0);
  m.def(
      "model_loss",
      [](const std::string& kind, const std::vector<double>& params,
         std::uint64_t collocation_seed, const py::object& market,
         const py::object& weights, double scale) {
        const CollocationSet c = sample_collocation(collocation_seed);
        return to_py(Json(model_loss(spec_of(kind, scale), params, c,
                                     parse<LossWeights>(weights),
                                     market_of(market))));
      },
      py::arg("kind"), py::arg("params"), py::arg("collocation_seed") = 0,
      py::arg("market") = py::none(), py::arg("weights") = py::none(),
      py::arg("output_scale") = 10.0);
  m.def("qpinn_circuit", [] { return to_py(Json(qpinn_circuit())); });

  // Circuits and polynomials.
  m.def(
      "synthesize_angles",
      [](const std::vector<double>& coeffs, int L, std::uint64_t seed) {
        SynthesisOptions opts;
        opts.seed = seed;
        const AnglePair a = synthesize_angles(UnivariatePoly{coeffs}, L, opts);
        return py::make_tuple(a.theta1, a.theta2);
      },
      py::arg("coeffs"), py::arg("L"), py::arg("seed") = 0);
  m.def(
      "univariate_model",
      [](const std::vector<double>& theta1, const std::vector<double>& theta2) {
        const BoundCircuit b = build_univariate_model(theta1, theta2);
        return py::make_tuple(to_py(Json(b.circuit)), b.params);
      },
      py::arg("theta1"), py::arg("theta2"));
  m.def(
      "expect_z0",
      [](const py::object& circuit, const std::vector<double>& params,
         const std::vector<double>& inputs) {
        const Circuit c = parse<Circuit>(circuit);
        return expect_z0(run<double>(c, params, inputs));
      },
      py::arg("circuit"), py::arg("params"),
      py::arg("inputs") = std::vector<double>{});
  m.def(
      "hadamard_test_shots",
      [](const py::object& circuit, const std::vector<double>& params,
         const std::vector<double>& inputs, std::int64_t shots,
         std::uint64_t seed) {
        const ShotEstimate e = hadamard_test_shots(parse<Circuit>(circuit),
                                                   params, inputs, shots, seed);
        return py::make_tuple(e.mean, e.std_error);
      },
      py::arg("circuit"), py::arg("params"), py::arg("inputs"),
      py::arg("shots"), py::arg("seed") = 0);
  m.def(
      "audit_resources",
      [](const std::string& construction, int L, int D, int R,
         const std::string& native) {
        AuditRequest req{construction_from_string(construction), L, D, R,
                         native_gate_set_from_string(native)};
        req.validate();
        return to_py(Json(audit_resources(req)));
      },
      py::arg("construction"), py::arg("L") = 1, py::arg("D") = 1,
      py::arg("R") = 1, py::arg("native") = "double_controlled");

  // Verification and training.
  m.def("suite_names", &suite_names);
  m.def(
      "run_suite",
      [](const std::string& name, std::uint64_t seed) {
        return to_py(Json(run_suite(name, seed)));
      },
      py::arg("name"), py::arg("seed") = 0);
  m.def(
      "lr_at",
      [](int epoch, const py::object& schedule) {
        const LrSchedule s = parse<LrSchedule>(schedule);
        s.validate();
        return lr_at(s, epoch);
      },
      py::arg("epoch"), py::arg("schedule") = py::none());
  m.def(
      "train_run",
      [](const std::string& kind, std::uint64_t seed, const py::object& config) {
        const RunConfig cfg = parse_run_config(from_py(config).dump());
        RunLog log;
        {
          py::gil_scoped_release release;
          log = train_run(spec_of(kind, cfg.output_scale), cfg.train,
                          cfg.market, cfg.weights, seed);
        }
        py::dict out;
        out["kind"] = std::string(to_string(log.kind));
        out["seed"] = log.seed;
        out["losses"] = to_py(Json(log.losses));
        out["lr"] = log.lr;
        out["final_params"] = log.final_params.values;
        out["aborted"] = log.aborted;
        out["abort_reason"] = log.abort_reason;
        return out;
      },
      py::arg("kind"), py::arg("seed") = 0, py::arg("config") = py::none(),
      "Trains one model. `config` follows the run-config JSON schema.");
}
