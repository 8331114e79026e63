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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qtd/io.hpp"

namespace qtd {

struct CheckResult {
  std::string name;
  bool passed = false;
  /// Worst observed error (or count) and the bound it was held to.
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  double seconds = 0.0;

  bool passed() const;
};

/// "circuits", "lowering", "derivatives", "hjb".
const std::vector<std::string>& suite_names();

/// Runs a property suite. Exceptions inside a check mark it failed with
/// the message as detail. Unknown names raise InvalidArgument.
SuiteReport run_suite(std::string_view name, std::uint64_t seed = 0);

void to_json(Json& j, const CheckResult& c);
void to_json(Json& j, const SuiteReport& r);

}  // namespace qtd
