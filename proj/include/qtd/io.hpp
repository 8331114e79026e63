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

#pragma once

#include <json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "qtd/circuit.hpp"
#include "qtd/merton.hpp"
#include "qtd/models.hpp"
#include "qtd/poly.hpp"
#include "qtd/resources.hpp"
#include "qtd/trainer.hpp"

namespace qtd {

using Json = nlohmann::json;

// Serialization. Readers reject unknown keys and wrong types with
// ConfigError; missing keys keep their defaults unless noted.
void to_json(Json& j, const AngleExpr& a);
void from_json(const Json& j, AngleExpr& a);
void to_json(Json& j, const Gate& g);
void from_json(const Json& j, Gate& g);
/// Gates are re-validated through Circuit::add.
void to_json(Json& j, const Circuit& c);
void from_json(const Json& j, Circuit& c);
void to_json(Json& j, const ResourceReport& r);
void to_json(Json& j, const UnivariatePoly& p);
void from_json(const Json& j, UnivariatePoly& p);
void to_json(Json& j, const TdPoly& p);
void from_json(const Json& j, TdPoly& p);
void to_json(Json& j, const MonomialList& m);
void from_json(const Json& j, MonomialList& m);
void to_json(Json& j, const ParamVector& p);
void from_json(const Json& j, ParamVector& p);
void to_json(Json& j, const MarketParams& m);
void from_json(const Json& j, MarketParams& m);
void to_json(Json& j, const LossWeights& w);
void from_json(const Json& j, LossWeights& w);
void to_json(Json& j, const LrSchedule& s);
void from_json(const Json& j, LrSchedule& s);
void to_json(Json& j, const TrainConfig& c);
void from_json(const Json& j, TrainConfig& c);
void to_json(Json& j, const LossBreakdown& l);

/// Contents of a training config file.
struct RunConfig {
  MarketParams market;
  LossWeights weights;
  std::vector<ModelKind> models{ModelKind::QPINN, ModelKind::QuantumInspired,
                                ModelKind::Counterpart,
                                ModelKind::FullyConnected};
  double output_scale = 10.0;
  TrainConfig train;
  std::string out = "qtd_runs";

  /// Validates every section; throws ConfigError.
  void validate() const;
};

void to_json(Json& j, const RunConfig& c);
void from_json(const Json& j, RunConfig& c);

/// Parses and validates a config document.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);

/// %.17g, round-trip exact for doubles.
std::string format_double(double v);

/// epoch,l_d,l_1b,l_2b,total,lr,wall_ms
void write_run_csv(std::ostream& os, const RunLog& log);
/// epoch,geomean,geostd_lo,geostd_hi with lo = mean / std, hi = mean * std.
void write_aggregate_csv(std::ostream& os, const AggregateStats& s);

}  // namespace qtd
