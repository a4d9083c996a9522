// Copyright 2026 The z3ws Authors
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
#include <vector>

#include "serialize.hpp"

namespace z3ws::cli {

struct Check {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
  json certificates = json::array();
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  /// Sampled places per non-rational gamma order.
  int samples = 3;
  /// Random beta values for the polynomial identities.
  int betas = 20;
  int prec = 0;
};

std::vector<Check> run_polyfam(const curve::Curve& curve, const SuiteOptions& opt, LevelLog& log);
std::vector<Check> run_valuations(const curve::Curve& curve, const SuiteOptions& opt, LevelLog& log);
std::vector<Check> run_semigroups(const curve::Curve& curve, const SuiteOptions& opt, LevelLog& log);
std::vector<Check> run_autgroup(const curve::Curve& curve, const SuiteOptions& opt, LevelLog& log);

json check_json(const Check& c);

}  // namespace z3ws::cli
