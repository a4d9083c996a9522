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


#include "z3ws/numsemi.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace z3ws::numsemi {

NumericalSemigroup NumericalSemigroup::from_generators(const std::set<int>& gens) {
  if (gens.empty()) throw std::invalid_argument("semigroup needs at least one generator");
  if (*gens.begin() <= 0) throw std::invalid_argument("generators must be positive");
  int g = 0;
  for (int x : gens) g = std::gcd(g, x);
  if (g != 1) throw std::invalid_argument("generators have gcd " + std::to_string(g) + " (infinitely many gaps)");

  const int smallest = *gens.begin();
  long bound = smallest;
  if (gens.size() > 1) bound = static_cast<long>(smallest) * *std::next(gens.begin());

  // Reachability up to the bound; extend until a run of `smallest` consecutive non-gaps,
  // after which every larger integer is reachable.
  std::vector<char> reach;
  for (;;) {
    reach.assign(static_cast<std::size_t>(bound) + 1, 0);
    reach[0] = 1;
    for (long n = 1; n <= bound; ++n) {
      for (int x : gens) {
        if (x > n) break;
        if (reach[static_cast<std::size_t>(n - x)]) {
          reach[static_cast<std::size_t>(n)] = 1;
          break;
        }
      }
    }
    long run = 0;
    for (long n = bound; n >= 0 && reach[static_cast<std::size_t>(n)]; --n) ++run;
    if (run >= smallest) break;
    bound *= 2;
  }

  NumericalSemigroup s;
  s.generators_ = gens;
  std::set<int> gaps;
  for (long n = 1; n <= bound; ++n) {
    if (!reach[static_cast<std::size_t>(n)]) gaps.insert(static_cast<int>(n));
  }
  s.gaps_ = GapSet(std::move(gaps));
  return s;
}

std::vector<int> NumericalSemigroup::minimal_generators() const { return numsemi::minimal_generators(gaps_); }

bool is_cofinite_monoid(const GapSet& g) {
  const auto& gaps = g.gaps();
  if (gaps.empty()) return true;
  if (*gaps.begin() <= 0) return false;
  // A gap that is a sum of two positive non-gaps breaks closure; sums beyond the last gap are non-gaps anyway.
  for (int gamma : gaps) {
    for (int x = 1; x <= gamma / 2; ++x) {
      if (g.contains(x) && g.contains(gamma - x)) return false;
    }
  }
  return true;
}

std::vector<int> minimal_generators(const GapSet& g) {
  if (!is_cofinite_monoid(g)) throw std::invalid_argument("gap set does not come from a numerical semigroup");
  int multiplicity = 1;
  while (!g.contains(multiplicity)) ++multiplicity;
  std::vector<int> out;
  for (int n = 1; n < g.conductor() + multiplicity; ++n) {
    if (!g.contains(n)) continue;
    bool decomposable = false;
    for (int x = 1; x <= n / 2 && !decomposable; ++x) decomposable = g.contains(x) && g.contains(n - x);
    if (!decomposable) out.push_back(n);
  }
  return out;
}

std::string to_string(const GapSet& g) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int x : g.gaps()) {
    if (!first) os << ',';
    os << x;
    first = false;
  }
  os << '}';
  return os.str();
}

}  // namespace z3ws::numsemi
