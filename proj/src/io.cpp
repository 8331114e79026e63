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

#include "qtd/io.hpp"

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

namespace qtd {

namespace {

void check_keys(const Json& j, std::initializer_list<std::string_view> allowed,
                std::string_view what) {
  if (!j.is_object())
    throw ConfigError(std::string(what) + " must be a JSON object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || item.key() == a;
    if (!known)
      throw ConfigError("unknown key '" + item.key() + "' in " +
                        std::string(what));
  }
}

template <typename T>
void read(const Json& j, const char* key, T& out, std::string_view what) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string(what) + "." + key + ": " + e.what());
  }
}

template <typename T>
void read_required(const Json& j, const char* key, T& out,
                   std::string_view what) {
  if (!j.contains(key))
    throw ConfigError(std::string(what) + " is missing '" + key + "'");
  read(j, key, out, what);
}

// Library validation errors surface as configuration errors.
template <typename F>
void validated(F&& check, std::string_view what) {
  try {
    check();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

void to_json(Json& j, const AngleExpr& a) {
  switch (a.kind) {
    case AngleExpr::Kind::Const:
      j = {{"kind", "const"}, {"value", a.offset}};
      return;
    case AngleExpr::Kind::Param:
      j = {{"kind", "param"},
           {"index", a.index},
           {"scale", a.scale},
           {"offset", a.offset}};
      return;
    case AngleExpr::Kind::InputArccos:
      j = {{"kind", "input_arccos"},
           {"var", a.index},
           {"scale", a.scale},
           {"offset", a.offset}};
      return;
  }
}

void from_json(const Json& j, AngleExpr& a) {
  constexpr std::string_view what = "angle";
  check_keys(j, {"kind", "value", "index", "var", "scale", "offset"}, what);
  std::string kind;
  read_required(j, "kind", kind, what);
  a = AngleExpr{};
  if (kind == "const") {
    a.kind = AngleExpr::Kind::Const;
    read_required(j, "value", a.offset, what);
  } else if (kind == "param") {
    a.kind = AngleExpr::Kind::Param;
    read_required(j, "index", a.index, what);
    read(j, "scale", a.scale, what);
    read(j, "offset", a.offset, what);
  } else if (kind == "input_arccos") {
    a.kind = AngleExpr::Kind::InputArccos;
    read_required(j, "var", a.index, what);
    read_required(j, "scale", a.scale, what);
    read(j, "offset", a.offset, what);
  } else {
    throw ConfigError("unknown angle kind '" + kind + "'");
  }
}

void to_json(Json& j, const Gate& g) {
  j = {{"kind", std::string(to_string(g.kind))}, {"qubits", g.qubits}};
  if (g.has_angle()) j["angle"] = g.angle;
  if (!g.controls.empty()) {
    Json cs = Json::array();
    for (const auto& c : g.controls)
      cs.push_back({{"qubit", c.qubit}, {"polarity", c.polarity}});
    j["controls"] = cs;
  }
  if (g.kind == GateKind::PrepareAmplitudes) j["amplitudes"] = g.amplitudes;
}

void from_json(const Json& j, Gate& g) {
  constexpr std::string_view what = "gate";
  check_keys(j, {"kind", "qubits", "angle", "controls", "amplitudes"}, what);
  std::string kind;
  read_required(j, "kind", kind, what);
  g = Gate{};
  validated([&] { g.kind = gate_kind_from_string(kind); }, what);
  read_required(j, "qubits", g.qubits, what);
  if (g.has_angle()) read_required(j, "angle", g.angle, what);
  if (j.contains("controls")) {
    const Json& cs = j.at("controls");
    if (!cs.is_array()) throw ConfigError("gate.controls must be an array");
    for (const auto& c : cs) {
      check_keys(c, {"qubit", "polarity"}, "control");
      Control ctl;
      read_required(c, "qubit", ctl.qubit, "control");
      read(c, "polarity", ctl.polarity, "control");
      if (ctl.polarity != 0 && ctl.polarity != 1)
        throw ConfigError("control polarity must be 0 or 1");
      g.controls.push_back(ctl);
    }
  }
  read(j, "amplitudes", g.amplitudes, what);
}

void to_json(Json& j, const Circuit& c) {
  j = {{"width", c.width()},
       {"n_params", c.n_params()},
       {"n_inputs", c.n_inputs()},
       {"gates", c.gates()}};
}

void from_json(const Json& j, Circuit& c) {
  constexpr std::string_view what = "circuit";
  check_keys(j, {"width", "n_params", "n_inputs", "gates"}, what);
  int width = 0, n_params = 0, n_inputs = 0;
  std::vector<Gate> gates;
  read_required(j, "width", width, what);
  read(j, "n_params", n_params, what);
  read(j, "n_inputs", n_inputs, what);
  read(j, "gates", gates, what);
  Circuit out(width, n_params, n_inputs);
  for (auto& g : gates) out.add(std::move(g));
  c = std::move(out);
}

void to_json(Json& j, const ResourceReport& r) {
  j = {{"width", r.width},
       {"depth", r.depth},
       {"n_single_qubit", r.n_single_qubit},
       {"n_cnot", r.n_cnot},
       {"n_multi_controlled", r.n_multi_controlled},
       {"n_params", r.n_params}};
}

void to_json(Json& j, const UnivariatePoly& p) { j = p.coeffs; }
void from_json(const Json& j, UnivariatePoly& p) {
  try {
    p.coeffs = j.get<std::vector<double>>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("polynomial: ") + e.what());
  }
}

void to_json(Json& j, const TdPoly& p) {
  j = {{"R", p.R},
       {"D", p.D},
       {"L", p.L},
       {"lambdas", p.lambdas},
       {"factors", p.factors}};
}

void from_json(const Json& j, TdPoly& p) {
  constexpr std::string_view what = "td_poly";
  check_keys(j, {"R", "D", "L", "lambdas", "factors"}, what);
  p = TdPoly{};
  read_required(j, "R", p.R, what);
  read_required(j, "D", p.D, what);
  read_required(j, "L", p.L, what);
  read_required(j, "lambdas", p.lambdas, what);
  read_required(j, "factors", p.factors, what);
  validated([&] { p.validate(); }, what);
}

void to_json(Json& j, const MonomialList& m) {
  Json es = Json::array();
  for (const auto& e : m.entries) es.push_back({{"n", e.n}, {"c", e.c}});
  j = {{"entries", es}};
}

void from_json(const Json& j, MonomialList& m) {
  check_keys(j, {"entries"}, "monomials");
  m.entries.clear();
  if (!j.contains("entries")) return;
  const Json& es = j.at("entries");
  if (!es.is_array()) throw ConfigError("monomials.entries must be an array");
  for (const auto& e : es) {
    check_keys(e, {"n", "c"}, "monomial");
    Monomial mono;
    read_required(e, "n", mono.n, "monomial");
    read_required(e, "c", mono.c, "monomial");
    m.entries.push_back(std::move(mono));
  }
}

void to_json(Json& j, const ParamVector& p) {
  j = {{"kind", std::string(to_string(p.kind))}, {"values", p.values}};
}

void from_json(const Json& j, ParamVector& p) {
  constexpr std::string_view what = "params";
  check_keys(j, {"kind", "values"}, what);
  std::string kind;
  read_required(j, "kind", kind, what);
  validated([&] { p.kind = model_kind_from_string(kind); }, what);
  read_required(j, "values", p.values, what);
  validated([&] { p.validate(); }, what);
}

void to_json(Json& j, const MarketParams& m) {
  j = {{"r", m.r},
       {"T", m.T},
       {"gamma", m.gamma},
       {"mu", m.mu},
       {"sigma", m.sigma}};
}

void from_json(const Json& j, MarketParams& m) {
  constexpr std::string_view what = "market";
  check_keys(j, {"r", "T", "gamma", "mu", "sigma"}, what);
  read(j, "r", m.r, what);
  read(j, "T", m.T, what);
  read(j, "gamma", m.gamma, what);
  read(j, "mu", m.mu, what);
  read(j, "sigma", m.sigma, what);
}

void to_json(Json& j, const LossWeights& w) {
  j = {{"w_d", w.w_d}, {"w_1", w.w_1}, {"w_2", w.w_2}};
}

void from_json(const Json& j, LossWeights& w) {
  constexpr std::string_view what = "weights";
  check_keys(j, {"w_d", "w_1", "w_2"}, what);
  read(j, "w_d", w.w_d, what);
  read(j, "w_1", w.w_1, what);
  read(j, "w_2", w.w_2, what);
}

void to_json(Json& j, const LrSchedule& s) {
  j = {{"lr_max", s.lr_max},
       {"lr_min", s.lr_min},
       {"cosine_epochs", s.cosine_epochs},
       {"hold_until", s.hold_until},
       {"tail_lr", s.tail_lr},
       {"total_epochs", s.total_epochs}};
}

void from_json(const Json& j, LrSchedule& s) {
  constexpr std::string_view what = "schedule";
  check_keys(j,
             {"lr_max", "lr_min", "cosine_epochs", "hold_until", "tail_lr",
              "total_epochs"},
             what);
  read(j, "lr_max", s.lr_max, what);
  read(j, "lr_min", s.lr_min, what);
  read(j, "cosine_epochs", s.cosine_epochs, what);
  read(j, "hold_until", s.hold_until, what);
  read(j, "tail_lr", s.tail_lr, what);
  read(j, "total_epochs", s.total_epochs, what);
}

void to_json(Json& j, const TrainConfig& c) {
  j = {{"epochs", c.epochs},
       {"schedule", c.schedule},
       {"betas", {c.beta1, c.beta2}},
       {"weight_decay", c.weight_decay},
       {"eps", c.eps},
       {"trust_clamp", c.trust_clamp},
       {"n_runs", c.n_runs},
       {"base_seed", c.base_seed},
       {"gradient", std::string(to_string(c.gradient))},
       {"fd_step", c.fd_step},
       {"n_interior", c.n_interior},
       {"n_boundary", c.n_boundary},
       {"init",
        {{"angle_range", c.init.angle_range},
         {"coeff_range", c.init.coeff_range}}},
       {"checkpoint_every", c.checkpoint_every}};
}

void from_json(const Json& j, TrainConfig& c) {
  constexpr std::string_view what = "train";
  check_keys(j,
             {"epochs", "schedule", "betas", "weight_decay", "eps",
              "trust_clamp", "n_runs", "base_seed", "gradient", "fd_step",
              "n_interior", "n_boundary", "init", "checkpoint_every"},
             what);
  read(j, "epochs", c.epochs, what);
  read(j, "schedule", c.schedule, what);
  if (j.contains("betas")) {
    std::vector<double> b;
    read(j, "betas", b, what);
    if (b.size() != 2) throw ConfigError("train.betas needs two entries");
    c.beta1 = b[0];
    c.beta2 = b[1];
  }
  read(j, "weight_decay", c.weight_decay, what);
  read(j, "eps", c.eps, what);
  read(j, "trust_clamp", c.trust_clamp, what);
  read(j, "n_runs", c.n_runs, what);
  read(j, "base_seed", c.base_seed, what);
  if (j.contains("gradient")) {
    std::string g;
    read(j, "gradient", g, what);
    validated([&] { c.gradient = gradient_method_from_string(g); }, what);
  }
  read(j, "fd_step", c.fd_step, what);
  read(j, "n_interior", c.n_interior, what);
  read(j, "n_boundary", c.n_boundary, what);
  if (j.contains("init")) {
    const Json& init = j.at("init");
    check_keys(init, {"angle_range", "coeff_range"}, "train.init");
    read(init, "angle_range", c.init.angle_range, "train.init");
    read(init, "coeff_range", c.init.coeff_range, "train.init");
  }
  read(j, "checkpoint_every", c.checkpoint_every, what);
}

void to_json(Json& j, const LossBreakdown& l) {
  j = {{"l_d", l.l_d}, {"l_1b", l.l_1b}, {"l_2b", l.l_2b}, {"total", l.total}};
}

void RunConfig::validate() const {
  validated([&] { market.validate(); }, "market");
  validated([&] { weights.validate(); }, "weights");
  validated([&] { train.validate(); }, "train");
  validated(
      [&] {
        if (!(train.init.angle_range >= 0.0 && train.init.coeff_range >= 0.0))
          throw InvalidArgument("init ranges must be nonnegative");
      },
      "train.init");
  if (models.empty()) throw ConfigError("models must not be empty");
  if (!(output_scale > 0.0)) throw ConfigError("output_scale must be > 0");
  if (out.empty()) throw ConfigError("out must not be empty");
}

void to_json(Json& j, const RunConfig& c) {
  Json models = Json::array();
  for (ModelKind k : c.models) models.push_back(std::string(to_string(k)));
  j = {{"market", c.market},   {"weights", c.weights},
       {"models", models},     {"output_scale", c.output_scale},
       {"train", c.train},     {"out", c.out}};
}

void from_json(const Json& j, RunConfig& c) {
  constexpr std::string_view what = "config";
  check_keys(j, {"market", "weights", "models", "output_scale", "train", "out"},
             what);
  read(j, "market", c.market, what);
  read(j, "weights", c.weights, what);
  if (j.contains("models")) {
    std::vector<std::string> names;
    read(j, "models", names, what);
    c.models.clear();
    for (const auto& n : names)
      validated([&] { c.models.push_back(model_kind_from_string(n)); }, what);
  }
  read(j, "output_scale", c.output_scale, what);
  read(j, "train", c.train, what);
  read(j, "out", c.out, what);
}

RunConfig parse_run_config(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig c;
  from_json(j, c);
  c.validate();
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_run_csv(std::ostream& os, const RunLog& log) {
  os << "epoch,l_d,l_1b,l_2b,total,lr,wall_ms\n";
  for (std::size_t e = 0; e < log.losses.size(); ++e) {
    const auto& l = log.losses[e];
    os << e << ',' << format_double(l.l_d) << ',' << format_double(l.l_1b)
       << ',' << format_double(l.l_2b) << ',' << format_double(l.total) << ','
       << format_double(log.lr[e]) << ',' << format_double(log.wall_ms[e])
       << '\n';
  }
}

void write_aggregate_csv(std::ostream& os, const AggregateStats& s) {
  os << "epoch,geomean,geostd_lo,geostd_hi\n";
  for (std::size_t e = 0; e < s.geomean.size(); ++e) {
    os << e << ',' << format_double(s.geomean[e]) << ','
       << format_double(s.geomean[e] / s.geostd[e]) << ','
       << format_double(s.geomean[e] * s.geostd[e]) << '\n';
  }
}

}  // namespace qtd
