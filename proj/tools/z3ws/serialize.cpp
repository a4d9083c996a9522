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

#include "serialize.hpp"

#include <algorithm>

namespace z3ws::cli {

json LevelLog::moduli(const ff::FieldTower& tower) const {
  json out = json::object();
  for (int n : levels_) {
    json coeffs = json::array();
    for (auto c : tower.level(n).modulus()) coeffs.push_back(static_cast<int>(c));
    out[std::to_string(n)] = coeffs;
  }
  return out;
}

json element_json(const ff::FieldElement& x, LevelLog& log) {
  log.note(x.degree());
  json out = json::array();
  for (int c : x.coeffs()) out.push_back(c);
  return out;
}

json place_json(const curve::Curve& curve, const curve::Place& place, LevelLog& log) {
  json out;
  out["infinity"] = place.at_infinity;
  if (place.at_infinity) {
    out["level"] = nullptr;
    out["a"] = nullptr;
    out["b"] = nullptr;
    out["beta"] = nullptr;
  } else {
    out["level"] = place.a.degree();
    out["a"] = element_json(place.a, log);
    out["b"] = element_json(place.b, log);
    out["beta"] = element_json(curve.tower().embed(place.beta, place.a.degree()), log);
  }
  out["degree"] = place.degree;
  out["class"] = curve::to_string(place.cls.kind);
  out["gamma_order"] = place.cls.gamma_order;
  out["i"] = place.cls.i;
  out["K"] = place.cls.K;
  return out;
}

json gaps_json(const numsemi::GapSet& gaps) {
  json out = json::array();
  for (int g : gaps.gaps()) out.push_back(g);
  return out;
}

json make_document(const curve::Curve& curve, const std::string& command, const LevelLog& log, json summary, json results) {
  json doc;
  doc["q"] = curve.q();
  doc["genus"] = curve.genus();
  doc["command"] = command;
  doc["t"] = curve.t();
  doc["moduli"] = log.moduli(curve.tower());
  doc["summary"] = std::move(summary);
  doc["results"] = std::move(results);
  return doc;
}

namespace {

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_number_integer(); })) {
    std::string s;
    for (const auto& e : v) {
      if (!s.empty()) s.push_back(' ');
      s += std::to_string(e.get<long long>());
    }
    return s;
  }
  return v.dump();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

}  // namespace

void render(std::ostream& out, const json& doc, Format format) {
  if (format == Format::Json) {
    out << doc.dump(2) << '\n';
    return;
  }
  const json& rows = doc.at("results");
  if (format == Format::Csv) {
    std::vector<std::string> columns;
    for (const auto& row : rows) {
      for (const auto& [k, v] : row.items()) {
        if (std::find(columns.begin(), columns.end(), k) == columns.end()) columns.push_back(k);
      }
    }
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << csv_escape(columns[c]);
    out << '\n';
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < columns.size(); ++c) {
        out << (c ? "," : "");
        if (row.contains(columns[c])) out << csv_escape(cell(row.at(columns[c])));
      }
      out << '\n';
    }
    return;
  }
  out << doc.at("command").get<std::string>() << "  q=" << doc.at("q") << "  genus=" << doc.at("genus") << '\n';
  for (const auto& [k, v] : doc.at("summary").items()) out << "  " << k << ": " << cell(v) << '\n';
  std::size_t idx = 0;
  for (const auto& row : rows) {
    out << "[" << idx++ << "]";
    for (const auto& [k, v] : row.items()) out << ' ' << k << '=' << cell(v);
    out << '\n';
  }
}

}  // namespace z3ws::cli
