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

#include <set>
#include <string>
#include <vector>

namespace z3ws::numsemi {

/// Explicit set of gaps. The complement in Z>=0 is expected to be a monoid; see is_cofinite_monoid.
class GapSet {
 public:
  GapSet() = default;
  explicit GapSet(std::set<int> gaps) : gaps_(std::move(gaps)) {}

  const std::set<int>& gaps() const noexcept { return gaps_; }
  int genus() const noexcept { return static_cast<int>(gaps_.size()); }
  /// Largest gap plus one, 0 for the empty set.
  int conductor() const noexcept { return gaps_.empty() ? 0 : *gaps_.rbegin() + 1; }
  bool contains_gap(int n) const { return gaps_.count(n) != 0; }
  /// Non-gap membership.
  bool contains(int n) const { return n >= 0 && gaps_.count(n) == 0; }

  friend bool operator==(const GapSet&, const GapSet&) = default;

 private:
  std::set<int> gaps_;
};

class NumericalSemigroup {
 public:
  /// Throws std::invalid_argument when gens is empty, has a non-positive entry, or has gcd > 1.
  static NumericalSemigroup from_generators(const std::set<int>& gens);

  const std::set<int>& generators() const noexcept { return generators_; }
  const GapSet& gap_set() const noexcept { return gaps_; }
  const std::set<int>& gaps() const noexcept { return gaps_.gaps(); }
  int genus() const noexcept { return gaps_.genus(); }
  int conductor() const noexcept { return gaps_.conductor(); }
  bool contains(int n) const { return gaps_.contains(n); }
  /// Minimal generating set (the generators that are not sums of two nonzero elements).
  std::vector<int> minimal_generators() const;

 private:
  std::set<int> generators_;
  GapSet gaps_;
};

/// True iff the complement of g contains 0 and is closed under addition.
bool is_cofinite_monoid(const GapSet& g);

/// Minimal generators of the monoid whose gaps are g. Requires is_cofinite_monoid(g).
std::vector<int> minimal_generators(const GapSet& g);

std::string to_string(const GapSet& g);

}  // namespace z3ws::numsemi
