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

#include "z3ws/linalg_f3.hpp"

namespace z3ws::ff {

namespace detail {

inline linalg::F3Vec to_vec(const FieldElement& x, int n) {
  linalg::F3Vec v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(x.coeff(i));
  return v;
}

inline FieldElement from_vec(const Field& field, const linalg::F3Vec& v) {
  Trits t{};
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 1) t.p |= std::uint64_t{1} << i;
    if (v[i] == 2) t.m |= std::uint64_t{1} << i;
  }
  return field.from_raw(t);
}

}  // namespace detail

template <class Map>
std::optional<LinearSolution> solve_linear(const Field& field, Map&& map, const FieldElement& rhs) {
  const int n = field.degree();
  std::vector<linalg::F3Vec> columns;
  columns.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const FieldElement basis = field.from_raw({std::uint64_t{1} << i, 0});
    columns.push_back(detail::to_vec(map(basis), n));
  }
  auto sol = linalg::solve(columns, detail::to_vec(rhs, n));
  if (!sol) return std::nullopt;
  LinearSolution out{detail::from_vec(field, sol->particular), {}};
  for (const auto& k : sol->kernel) out.kernel.push_back(detail::from_vec(field, k));
  return out;
}

}  // namespace z3ws::ff
