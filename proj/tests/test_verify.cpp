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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qtd/audit.hpp"
#include "qtd/experiment.hpp"
#include "qtd/poly.hpp"
#include "qtd/verify.hpp"

using namespace qtd;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("every property suite passes") {
  for (const auto& name : suite_names()) {
    const SuiteReport r = run_suite(name, 7);
    INFO(name);
    CHECK_FALSE(r.checks.empty());
    for (const auto& c : r.checks) {
      INFO(c.name << ": " << c.value << " vs " << c.threshold << " "
                  << c.detail);
      CHECK(c.passed);
    }
    CHECK(r.passed());
  }
  CHECK_THROWS_AS(run_suite("nope"), InvalidArgument);
}

TEST_CASE("an injected parity-split fault is detected") {
  fault::set_parity_split_sign_flip(true);
  const SuiteReport r = run_suite("circuits", 0);
  fault::set_parity_split_sign_flip(false);
  CHECK_FALSE(r.passed());
  bool parity_failed = false;
  for (const auto& c : r.checks)
    if (c.name == "parity_split_reconstructs") parity_failed = !c.passed;
  CHECK(parity_failed);
  CHECK(run_suite("circuits", 0).passed());
}

TEST_CASE("resource audit passes across sizes") {
  for (auto c : {Construction::Prop1, Construction::Cor1, Construction::Thm2,
                 Construction::Thm1})
    for (int L = 1; L <= 3; ++L)
      for (int D = 1; D <= 2; ++D) {
        AuditRequest req{c, L, D, 2, NativeGateSet::DoubleControlledNative};
        INFO(to_string(c) << " L=" << L << " D=" << D);
        CHECK(audit_resources(req).passed);
        req.native = NativeGateSet::CnotSingleQubit;
        CHECK(audit_resources(req).passed);
      }
  CHECK_THROWS(AuditRequest{Construction::Prop1, 17, 1, 1}.validate());
  CHECK(construction_from_string("thm2") == Construction::Thm2);
  CHECK_THROWS_AS(construction_from_string("thm9"), InvalidArgument);
}

TEST_CASE("curve dominance window") {
  const std::vector<double> a{5, 1, 1, 1}, b{2, 2, 2, 2};
  CHECK(curve_below(a, b, 3));
  CHECK_FALSE(curve_below(a, b, 4));
  CHECK_THROWS_AS(curve_below(a, b, 5), InvalidArgument);
}

TEST_CASE("surface grid and analytical error") {
  const auto g = surface_grid();
  REQUIRE(g.size() == 2500);
  CHECK(g.front().first == 0.01);
  CHECK(g.back().second == doctest::Approx(0.99).epsilon(1e-15));
  const ModelSpec zero{ModelKind::Counterpart};
  CHECK(grid_relative_error(zero, std::vector<double>(6, 0.0), {}) == 1.0);
}

TEST_CASE("small experiment writes reproducible outputs") {
  RunConfig cfg;
  cfg.models = {ModelKind::Counterpart, ModelKind::QuantumInspired};
  cfg.train.epochs = 4;
  cfg.train.schedule.total_epochs = 4;
  cfg.train.schedule.cosine_epochs = 2;
  cfg.train.schedule.hold_until = 3;
  cfg.train.n_runs = 2;
  cfg.train.checkpoint_every = 2;
  cfg.out = (std::filesystem::temp_directory_path() / "qtd_test_exp").string();
  std::filesystem::remove_all(cfg.out);

  const auto r1 = run_experiment(cfg, 2);
  REQUIRE(r1.models.size() == 2);
  for (const auto& m : r1.models) {
    CHECK(m.n_complete == 2);
    CHECK(m.best >= 0);
    CHECK(m.best_controls.size() == kControlProbes.size());
    CHECK(m.aggregate.geomean.size() == 4);
  }
  write_experiment(r1);
  const std::filesystem::path out(cfg.out);
  for (const char* f : {"summary.json", "surface.csv", "slice_t0.5.csv",
                        "counterpart/run_s0.csv", "counterpart/aggregate.csv",
                        "quantum_inspired/params_s1.json",
                        "counterpart/checkpoint_s1_e4.json"})
    CHECK(std::filesystem::exists(out / f));

  const std::string agg = slurp(out / "counterpart/aggregate.csv");
  const std::string surface = slurp(out / "surface.csv");
  const auto r2 = run_experiment(cfg, 1);
  write_experiment(r2);
  CHECK(slurp(out / "counterpart/aggregate.csv") == agg);
  CHECK(slurp(out / "surface.csv") == surface);
  const Json summary = Json::parse(slurp(out / "summary.json"));
  CHECK(summary.contains("metadata"));
  CHECK(summary["models"].size() == 2);
  std::filesystem::remove_all(cfg.out);
}
