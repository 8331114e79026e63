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

// qtdpinn: verification suites, resource audits and training runs.
//
// Exit status: 0 when every executed check passes, 1 when a check fails,
// 2 on usage, configuration or runtime errors.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qtd/audit.hpp"
#include "qtd/experiment.hpp"
#include "qtd/poly.hpp"
#include "qtd/verify.hpp"

namespace {

using namespace qtd;

struct VerifyArgs {
  std::string suite = "all";
  std::uint64_t seed = 0;
  std::string report;
  std::string fault;
  bool json = false;
};

struct ResourceArgs {
  std::string construction = "prop1";
  int L = 1, D = 1, R = 1;
  std::string native = "double_controlled";
  bool json = false;
};

struct TrainArgs {
  std::string config;
  std::vector<std::string> models;
  int runs = 0;
  int epochs = 0;
  long long seed = -1;
  std::string out;
};

int cmd_verify(const VerifyArgs& a) {
  if (!a.fault.empty()) {
    if (a.fault != "parity_split_sign")
      throw InvalidArgument("unknown fault '" + a.fault + "'");
    fault::set_parity_split_sign_flip(true);
  }
  std::vector<std::string> names;
  if (a.suite == "all") {
    names = suite_names();
  } else {
    names.push_back(a.suite);
  }
  Json report = Json::array();
  bool ok = true;
  for (const auto& name : names) {
    const SuiteReport r = run_suite(name, a.seed);
    ok = ok && r.passed();
    report.push_back(r);
    if (a.json) continue;
    std::printf("suite %s (%.2f s)\n", r.suite.c_str(), r.seconds);
    for (const auto& c : r.checks) {
      std::printf("  %s %-36s %.3e <= %.1e%s%s\n", c.passed ? "PASS" : "FAIL",
                  c.name.c_str(), c.value, c.threshold,
                  c.detail.empty() ? "" : "  ", c.detail.c_str());
    }
  }
  if (a.json) std::cout << report.dump(2) << '\n';
  if (!a.report.empty()) {
    std::ofstream os(a.report);
    if (!os) throw Error("cannot write '" + a.report + "'");
    os << report.dump(2) << '\n';
  }
  if (!a.json) std::printf("%s\n", ok ? "all checks passed" : "FAILED");
  return ok ? 0 : 1;
}

int cmd_resources(const ResourceArgs& a) {
  AuditRequest req;
  req.construction = construction_from_string(a.construction);
  req.L = a.L;
  req.D = a.D;
  req.R = a.R;
  req.native = native_gate_set_from_string(a.native);
  req.validate();
  const AuditReport r = audit_resources(req);
  if (a.json) {
    std::cout << Json(r).dump(2) << '\n';
    return r.passed ? 0 : 1;
  }
  const ResourceReport& m = r.measured;
  std::printf("%s L=%d D=%d R=%d native=%s\n", a.construction.c_str(), a.L,
              a.D, a.R, a.native.c_str());
  std::printf("width %d  depth %d  single %d  cnot %d  multi %d  params %d\n",
              m.width, m.depth, m.n_single_qubit, m.n_cnot,
              m.n_multi_controlled, m.n_params);
  std::printf("%-18s %10s %4s %10s  %-22s %s\n", "quantity", "measured", "",
              "formula", "published", "status");
  for (const auto& row : r.rows)
    std::printf("%-18s %10lld %4s %10lld  %-22s %s\n", row.quantity.c_str(),
                row.measured, row.relation.c_str(), row.formula,
                row.published.c_str(), row.passed ? "pass" : "FAIL");
  if (!r.note.empty()) std::printf("note: %s\n", r.note.c_str());
  return r.passed ? 0 : 1;
}

int cmd_train(const TrainArgs& a) {
  RunConfig cfg = a.config.empty() ? RunConfig{} : load_run_config(a.config);
  if (!a.models.empty()) {
    cfg.models.clear();
    for (const auto& m : a.models) cfg.models.push_back(model_kind_from_string(m));
  }
  if (a.runs > 0) cfg.train.n_runs = a.runs;
  if (a.epochs > 0) {
    cfg.train.epochs = a.epochs;
    if (a.epochs > cfg.train.schedule.total_epochs)
      cfg.train.schedule.total_epochs = a.epochs;
  }
  if (a.seed >= 0) cfg.train.base_seed = static_cast<std::uint64_t>(a.seed);
  if (!a.out.empty()) cfg.out = a.out;
  cfg.validate();

  const int threads = worker_threads();
  std::printf("training %zu model(s) x %d run(s) x %d epochs on %d thread(s)\n",
              cfg.models.size(), cfg.train.n_runs, cfg.train.epochs, threads);
  const ExperimentResult r = run_experiment(cfg, threads);
  write_experiment(r);
  for (const auto& m : r.models) {
    const std::string name(to_string(m.kind));
    for (const auto& run : m.runs)
      if (run.aborted)
        std::fprintf(stderr, "warning: %s seed %llu aborted: %s\n",
                     name.c_str(), static_cast<unsigned long long>(run.seed),
                     run.abort_reason.c_str());
    if (m.n_complete == 0) {
      std::printf("%-18s no run completed\n", name.c_str());
      continue;
    }
    std::printf("%-18s final geomean %.4e (geostd %.3f)  best grid error %.4e\n",
                name.c_str(), m.aggregate.geomean.back(),
                m.aggregate.geostd.back(), m.best_grid_error);
  }
  std::printf("outputs written to %s\n", cfg.out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum tensor-decomposed PINN toolkit"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run property suites");
  verify->add_option("--suite", va.suite, "circuits|lowering|derivatives|hjb|all")
      ->capture_default_str();
  verify->add_option("--seed", va.seed, "Seed for random draws")
      ->capture_default_str();
  verify->add_option("--report", va.report, "Write the JSON report here");
  verify->add_option("--inject-fault", va.fault,
                     "Deliberate fault to check detection: parity_split_sign");
  verify->add_flag("--json", va.json, "Print the JSON report to stdout");

  ResourceArgs ra;
  auto* resources =
      app.add_subcommand("resources", "Audit circuit resources");
  resources->add_option("--construction", ra.construction,
                        "prop1|thm1|thm2|cor1")
      ->capture_default_str();
  resources->add_option("--L", ra.L, "Chain length")->capture_default_str();
  resources->add_option("--D", ra.D, "Input dimension")->capture_default_str();
  resources->add_option("--R", ra.R, "Tensor rank")->capture_default_str();
  resources->add_option("--native", ra.native, "double_controlled|cnot_single")
      ->capture_default_str();
  resources->add_flag("--json", ra.json, "Print JSON");

  TrainArgs ta;
  auto* train = app.add_subcommand("train", "Train and compare models");
  train->add_option("--config", ta.config, "Run configuration JSON");
  train->add_option("--models", ta.models,
                    "qpinn,quantum_inspired,counterpart,fully_connected")
      ->delimiter(',');
  train->add_option("--runs", ta.runs, "Runs (seeds) per model");
  train->add_option("--epochs", ta.epochs, "Epochs per run");
  train->add_option("--seed", ta.seed, "Base seed");
  train->add_option("--out", ta.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  try {
    if (*verify) return cmd_verify(va);
    if (*resources) return cmd_resources(ra);
    return cmd_train(ta);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
