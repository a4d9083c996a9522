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
#include <vector>

#include "z3ws/numsemi.hpp"

namespace z3ws::gapsets {

/// <2q/3, q, q+1>.
std::vector<int> generators_infinity(int q);
/// <q-1, q, q+1, 2q-4>.
std::vector<int> generators_beta_zero(int q);
/// <q, q+1, (q-1) + j(q-2) : 0 <= j < m>; also the rational case i in {(q-1)/2, q}.
std::vector<int> generators_beta_one(int q);
/// <q, q+1, (q-1) + j(q-2) : 0 <= j < i, (i+1)(q-2)> for i < m - 1; the beta = 1 generators otherwise.
std::vector<int> generators_rational(int q, std::uint64_t i);

/// {jq + k : 0 <= j < m, 1 <= k <= q - 2 - 3j}.
numsemi::GapSet generic_gaps(int q);
/// Generic gaps with (m-K-2-l(i+1))q + 3K+4 + 3l(i+1) replaced by its successor, l = 0 .. floor((m-K-2)/(i+1)).
/// Requires K <= m - 2.
numsemi::GapSet special_gaps(int q, std::uint64_t i, std::uint64_t K);
/// The replaced pairs (old, new) of special_gaps.
std::vector<std::pair<int, int>> special_replacements(int q, std::uint64_t i, std::uint64_t K);

/// Gaps of the rational-place semigroups from the interval bookkeeping: for beta = 1 (and i >= m - 1) the runs
/// {j(q+1) + 1, ..., j(q+1) + q - 2 - 3j}; for i < m - 1 the runs between the blocks
/// {(k(i+1)+j)(q-2)+1, ..., (k(i+1)+j)(q+1)}. Independent of the reachability computation.
numsemi::GapSet interval_gaps_beta_one(int q);
numsemi::GapSet interval_gaps_rational(int q, std::uint64_t i);

}  // namespace z3ws::gapsets
