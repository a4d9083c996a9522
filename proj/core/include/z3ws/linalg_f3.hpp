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
#include <optional>
#include <vector>

namespace z3ws::linalg {

/// Dense vector over F_3, entries in {0, 1, 2}.
using F3Vec = std::vector<std::uint8_t>;

struct F3Solution {
  F3Vec particular;
  std::vector<F3Vec> kernel;
};

/// Solves sum_j x_j * columns[j] = rhs. Free variables of the particular solution are 0.
std::optional<F3Solution> solve(const std::vector<F3Vec>& columns, const F3Vec& rhs);

/// Indices of a maximal linearly independent subset of rows, chosen greedily in order.
std::vector<std::size_t> independent_rows(const std::vector<F3Vec>& rows);

/// Inverse of a square matrix given by rows; nullopt if singular.
std::optional<std::vector<F3Vec>> invert(const std::vector<F3Vec>& rows);

}  // namespace z3ws::linalg
