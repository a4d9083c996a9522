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

#include <string>
#include <vector>

#include "z3ws/curve.hpp"

namespace z3ws::autgroup {

using curve::Curve;
using curve::Place;
using ff::FieldElement;

/// (x, y) -> (x + a, sign*y + b) with a^q + a = 0 and p(b) = 0; a, b in F_{q^2}.
struct Automorphism {
  FieldElement a, b;
  int sign = 1;
  friend bool operator==(const Automorphism&, const Automorphism&) = default;
  bool is_identity() const noexcept { return a.is_zero() && b.is_zero() && sign == 1; }
  std::string to_string() const;
};

/// sigma o tau: (a1 + a2, b1 + e1*b2, e1*e2).
Automorphism compose(const Automorphism& sigma, const Automorphism& tau);
Automorphism inverse(const Automorphism& sigma);

/// Translations (elementary abelian, order q^2/3) extended by the sign flip: 2q^2/3 elements acting on places.
class AutGroup {
 public:
  explicit AutGroup(const Curve& curve);

  const Curve& curve() const noexcept { return *curve_; }
  /// Throws std::invalid_argument unless a^q + a = 0, p(b) = 0 and sign = +-1.
  Automorphism make(const FieldElement& a, const FieldElement& b, int sign) const;
  Automorphism identity() const;
  /// (0, 0, -1).
  Automorphism sign_flip() const { return make(base_zero(), base_zero(), -1); }

  /// Every element, ordered by (sign, index of b, index of a).
  const std::vector<Automorphism>& elements() const noexcept { return elements_; }
  /// F_3-bases of the a- and b-translations plus the sign flip.
  const std::vector<Automorphism>& generators() const noexcept { return generators_; }
  std::uint64_t order() const noexcept { return elements_.size(); }

  Place apply(const Automorphism& sigma, const Place& place) const;
  /// Image of an arbitrary point; both coordinates embedded into a common level.
  std::pair<FieldElement, FieldElement> apply_point(const Automorphism& sigma, const FieldElement& x, const FieldElement& y) const;

  /// Closure of {place} under the generators.
  std::vector<Place> orbit(const Place& place) const;
  /// Partition of the given places into orbits, in order of first appearance.
  std::vector<std::vector<Place>> orbits(const std::vector<Place>& places) const;

 private:
  FieldElement base_zero() const { return curve_->base().zero(); }

  const Curve* curve_;
  std::vector<Automorphism> elements_;
  std::vector<Automorphism> generators_;
};

}  // namespace z3ws::autgroup
