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

#include "z3ws/gapsets.hpp"

#include <stdexcept>

namespace z3ws::gapsets {
namespace {

void check_q(int q) {
  if (q < 9 || q % 3 != 0) throw std::invalid_argument("q must be a power of 3 with q >= 9");
}

}  // namespace

std::vector<int> generators_infinity(int q) {
  check_q(q);
  return {2 * q / 3, q, q + 1};
}

std::vector<int> generators_beta_zero(int q) {
  check_q(q);
  return {q - 1, q, q + 1, 2 * q - 4};
}

std::vector<int> generators_beta_one(int q) {
  check_q(q);
  std::vector<int> out{q, q + 1};
  for (int j = 0; j < q / 3; ++j) out.push_back((q - 1) + j * (q - 2));
  return out;
}

std::vector<int> generators_rational(int q, std::uint64_t i) {
  check_q(q);
  const auto m = static_cast<std::uint64_t>(q / 3);
  if (i + 1 >= m) return generators_beta_one(q);
  std::vector<int> out{q, q + 1};
  for (std::uint64_t j = 0; j < i; ++j) out.push_back((q - 1) + static_cast<int>(j) * (q - 2));
  out.push_back(static_cast<int>(i + 1) * (q - 2));
  return out;
}

numsemi::GapSet generic_gaps(int q) {
  check_q(q);
  std::set<int> g;
  for (int j = 0; j < q / 3; ++j) {
    for (int k = 1; k <= q - 2 - 3 * j; ++k) g.insert(j * q + k);
  }
  return numsemi::GapSet(std::move(g));
}

std::vector<std::pair<int, int>> special_replacements(int q, std::uint64_t i, std::uint64_t K) {
  check_q(q);
  const int m = q / 3;
  const int kk = static_cast<int>(K);
  const int ii = static_cast<int>(i);
  if (kk > m - 2) throw std::invalid_argument("special gap sets need K <= m - 2");
  std::vector<std::pair<int, int>> out;
  for (int l = 0; l <= (m - kk - 2) / (ii + 1); ++l) {
    const int old_gap = (m - kk - 2 - l * (ii + 1)) * q + 3 * kk + 4 + 3 * l * (ii + 1);
    out.emplace_back(old_gap, old_gap + 1);
  }
  return out;
}

numsemi::GapSet special_gaps(int q, std::uint64_t i, std::uint64_t K) {
  std::set<int> g = generic_gaps(q).gaps();
  for (const auto& [old_gap, new_gap] : special_replacements(q, i, K)) {
    if (g.erase(old_gap) != 1 || !g.insert(new_gap).second) {
      throw std::logic_error("special gap replacement is not a gamma -> gamma + 1 swap");
    }
  }
  return numsemi::GapSet(std::move(g));
}

numsemi::GapSet interval_gaps_beta_one(int q) {
  check_q(q);
  std::set<int> g;
  for (int j = 0; j < q / 3; ++j) {
    for (int k = 1; k <= q - 2 - 3 * j; ++k) g.insert(j * (q + 1) + k);
  }
  return numsemi::GapSet(std::move(g));
}

numsemi::GapSet interval_gaps_rational(int q, std::uint64_t i) {
  check_q(q);
  const int ii = static_cast<int>(i);
  if (ii + 1 >= q / 3) return interval_gaps_beta_one(q);
  if ((q + 1) % (ii + 1) != 0) throw std::invalid_argument("i + 1 must divide q + 1");
  // Non-gaps claimed by the block argument: blocks n = 1 .. q + 1; n a multiple of i + 1 misses n(q-2) + 1.
  const int top = (q + 1) * (q + 1);
  std::vector<bool> nongap(static_cast<std::size_t>(top) + 1, false);
  nongap[0] = true;
  for (int n = 1; n <= q + 1; ++n) {
    const bool multiple = n % (ii + 1) == 0;
    if (multiple) nongap[static_cast<std::size_t>(n * (q - 2))] = true;
    for (int v = n * (q - 2) + 1; v <= n * (q + 1) && v <= top; ++v) {
      if (multiple && v == n * (q - 2) + 1) continue;
      nongap[static_cast<std::size_t>(v)] = true;
    }
  }
  std::set<int> g;
  for (int v = 1; v <= top; ++v) {
    if (!nongap[static_cast<std::size_t>(v)]) g.insert(v);
  }
  return numsemi::GapSet(std::move(g));
}

}  // namespace z3ws::gapsets
