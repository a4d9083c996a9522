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

#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "z3ws/curve.hpp"
#include "z3ws/numsemi.hpp"

namespace z3ws::cli {

using json = nlohmann::ordered_json;

enum class Format { Json, Csv, Text };

/// Records which tower levels appear in a document so their moduli can go into the header.
class LevelLog {
 public:
  void note(int level) { levels_.insert(level); }
  /// {"<level>": [modulus coefficients, low degree first], ...}
  json moduli(const ff::FieldTower& tower) const;

 private:
  std::set<int> levels_;
};

/// F_3 coefficients, low degree first.
json element_json(const ff::FieldElement& x, LevelLog& log);

json place_json(const curve::Curve& curve, const curve::Place& place, LevelLog& log);
json gaps_json(const numsemi::GapSet& gaps);

/// Top-level document: q, genus, command, then t, moduli, summary, results.
json make_document(const curve::Curve& curve, const std::string& command, const LevelLog& log, json summary, json results);

/// JSON is the format of record. CSV writes the result rows only (no moduli header); nested values become compact JSON.
void render(std::ostream& out, const json& doc, Format format);

}  // namespace z3ws::cli
