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
#include <map>

namespace z3ws {

__extension__ typedef unsigned __int128 u128;

namespace factor {

bool is_prime(u128 n);

/// Prime factorization: trial division to 10^6, then Miller-Rabin and Pollard-Brent rho.
std::map<u128, int> factorize(u128 n);

/// 3^k - 1, cached; k <= 80.
const std::map<u128, int>& factor_three_power_minus_one(int k);

u128 pow3(int k);

}  // namespace factor
}  // namespace z3ws
