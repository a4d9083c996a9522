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
#include <stdexcept>
#include <string>
#include <vector>

#include "z3ws/curve.hpp"
#include "z3ws/numsemi.hpp"

namespace z3ws::weier {

using curve::ClassKind;
using curve::Curve;
using curve::Place;

enum class EntryKind { NonGap, Gap, GenusCount };
std::string to_string(EntryKind kind);

/// One certified claim about an integer n at a place.
struct CertificateEntry {
  EntryKind kind = EntryKind::NonGap;
  int value = 0;
  std::string witness;
  int v_at_p = 0;
  /// Pole bound at P_inf of the witness (non-gaps: whole function, must be <= 0; gaps: must be <= 2g - 2).
  int pole_bound = 0;
  bool verified = false;
};

struct SemigroupAssignment {
  Place place;
  ClassKind tag = ClassKind::Infinity;
  /// Generators for rational places, empty otherwise.
  std::vector<int> generators;
  numsemi::GapSet gaps;
  /// Special classes: the replaced pairs (gap of the generic set, its successor).
  std::vector<std::pair<int, int>> replacements;
  std::vector<CertificateEntry> certificate;

  bool rational() const noexcept { return place.rational(); }
  /// Every certificate entry verified and the list non-empty.
  bool verified() const noexcept;
};

class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Short statement of the result used for a class, e.g. "<2q/3, q, q+1>".
std::string theorem_statement(ClassKind tag);

/// Gap set or generators for the place's class. Rational results are cross-checked against the interval
/// bookkeeping and every result against the genus; a mismatch throws std::logic_error.
SemigroupAssignment semigroup_at(const Curve& curve, const Place& place);

/// Witnesses with pole exactly n at P and no other pole, for every generator. Requires a rational place.
/// lift_index selects the Hermitian lift used for the series; prec = 0 means 2q + 1.
/// Throws VerificationError if any generator fails.
std::vector<CertificateEntry> verify_nongaps(const Curve& curve, const SemigroupAssignment& a, int lift_index = 0,
                                             int prec = 0);
/// Differential witnesses for every gap. Requires a non-rational place. Throws VerificationError on a failure.
std::vector<CertificateEntry> verify_gaps(const Curve& curve, const SemigroupAssignment& a, int lift_index = 0,
                                          int prec = 0);
/// Runs the applicable verifier plus the genus count and stores the entries in a.certificate.
void certify(const Curve& curve, SemigroupAssignment& a, int lift_index = 0, int prec = 0);

struct CensusOptions {
  /// Sampled places per non-rational gamma order.
  int samples_per_class = 3;
  std::uint64_t seed = 1;
  /// Certify every rational place (otherwise only one per orbit).
  bool verify_all_rational = true;
  /// Non-rational gamma orders to sample; empty selects default_gamma_orders.
  std::vector<std::uint64_t> gamma_orders;
  /// Series precision, 0 for 2q + 1.
  int prec = 0;
};

/// Orders n >= 4, prime to 3, not dividing q + 1, up to q + 2: covers every special class and a few generic ones.
std::vector<std::uint64_t> default_gamma_orders(int q);

struct ClassSummary {
  curve::PlaceClass cls;
  std::size_t places = 0;
  std::size_t certified = 0;
  numsemi::GapSet gaps;
};

struct CensusReport {
  int q = 0;
  std::map<ClassKind, std::size_t> tag_counts;
  /// Rational general places by P-order.
  std::map<std::uint64_t, std::size_t> rational_p_orders;
  /// Rational classes by tag and P-order, then sampled classes by gamma order.
  std::vector<ClassSummary> classes;
  std::vector<std::uint64_t> unrealized_gamma_orders;
  std::size_t orbits = 0;
  bool orbit_consistent = false;
  std::size_t certificate_entries = 0;
  std::size_t failures = 0;
  std::vector<std::string> failure_messages;
};

CensusReport full_census(const Curve& curve, const CensusOptions& options = {});

}  // namespace z3ws::weier
