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
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "z3ws/ff.hpp"

namespace z3ws::curve {

using ff::Field;
using ff::FieldElement;
using ff::FieldTower;

enum class ClassKind { Infinity, BetaZero, BetaOne, RationalGeneral, NonRationalGeneric, NonRationalSpecial };

/// "infinity", "beta-zero", "beta-one", "rational-general", "nonrational-generic", "nonrational-special".
std::string to_string(ClassKind kind);
std::optional<ClassKind> class_kind_from_string(const std::string& name);

struct PlaceClass {
  ClassKind kind = ClassKind::Infinity;
  std::uint64_t gamma_order = 0;  // 0 when beta is 0, 1 or infinite
  std::uint64_t i = 0;            // P-order
  std::uint64_t K = 0;            // R-order
  friend bool operator==(const PlaceClass&, const PlaceClass&) = default;
  std::string to_string() const;
};

/// (level, a planes, b planes); P_inf has level 0.
using PlaceKey = std::tuple<int, std::uint64_t, std::uint64_t, std::uint64_t, std::uint64_t>;

/// P_inf or P_(a,b). Affine coordinates live in the smallest tower level containing F_{q^2}(a, b).
struct Place {
  bool at_infinity = false;
  FieldElement a, b;
  FieldElement beta;
  int degree = 1;  // over F_{q^2}
  PlaceClass cls;

  bool rational() const noexcept { return degree == 1; }
  PlaceKey key() const noexcept;
  friend bool operator==(const Place& x, const Place& y) noexcept { return x.key() == y.key(); }
  std::string to_string() const;
};

/// Point of u^q + u = v^{q+1} above P_(a,b): B^3 - B = b, A = -a - B^2, c = B^q - B = p(b).
struct HermitianLift {
  FieldElement A, B, c;
};

/// Z_3 : x^q + x + p(y)^2 = 0 over F_{q^2}, q = 3^t.
class Curve {
 public:
  /// Tower levels 2t*d for each d in extra_degrees (d = 3 is always added, rational lifts need it).
  /// With no extra degrees every 2t*d up to the maximum field degree is available.
  explicit Curve(int t);
  Curve(int t, const std::set<int>& extra_degrees);
  Curve(const Curve&) = delete;
  Curve& operator=(const Curve&) = delete;

  int t() const noexcept { return t_; }
  int q() const noexcept { return q_; }
  int m() const noexcept { return q_ / 3; }
  int genus() const noexcept { return q_ * (q_ - 1) / 6; }
  /// deg (dy) = 2g - 2 = (m-1)(q+2).
  int canonical_degree() const noexcept { return (m() - 1) * (q_ + 2); }
  /// q^2 + 1 + 2qg.
  std::uint64_t rational_place_count() const noexcept;

  const FieldTower& tower() const noexcept { return tower_; }
  /// F_{q^2}.
  const Field& base() const { return tower_.level(2 * t_); }

  /// p(y) = y + y^3 + ... + y^(q/3).
  FieldElement p(const FieldElement& y) const { return ff::trace_p(y, t_); }
  bool on_curve(const FieldElement& a, const FieldElement& b) const;

  Place infinity() const;
  /// Throws std::invalid_argument when (a, b) is not on the curve.
  Place place_from_coords(const FieldElement& a, const FieldElement& b) const;
  PlaceClass classify(const Place& place) const;
  PlaceClass classify_beta(const FieldElement& beta, const FieldElement& root) const;

  /// P_inf first, then affine places ordered by (index of b, index of a) in F_{q^2}.
  std::vector<Place> enumerate_rational() const;

  /// The three lifts, B running through a root and its F_3-translates. Throws for beta = 0.
  std::vector<HermitianLift> hermitian_lifts(const Place& place) const;

  /// A place whose gamma has the given multiplicative order, built from a random point of the
  /// Hermitian curve. Tries tower levels in increasing order up to max_level; nullopt if none work.
  std::optional<Place> sample_place(std::uint64_t gamma_order, std::mt19937_64& rng, int max_level = ff::kMaxDegree) const;

 private:
  Place make_place(const FieldElement& a, const FieldElement& b, const FieldElement& beta) const;

  int t_;
  int q_;
  FieldTower tower_;
  mutable std::mutex cache_mu_;
  mutable std::map<std::tuple<int, std::uint64_t, std::uint64_t>, PlaceClass> class_cache_;
};

}  // namespace z3ws::curve
