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

namespace z3ws::series {

using curve::Curve;
using curve::Place;
using ff::Field;
using ff::FieldElement;

/// Largest precision accepted by the expansion routines.
inline constexpr int kMaxPrecision = 4096;

/// c_0 + c_1 T + ... + c_{prec-1} T^{prec-1} + O(T^prec).
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  /// Zero to the given precision.
  TruncatedSeries(const Field& field, int prec);
  static TruncatedSeries monomial(const FieldElement& c, int k, int prec);
  static TruncatedSeries constant(const FieldElement& c, int prec) { return monomial(c, 0, prec); }

  const Field& field() const noexcept { return *field_; }
  int prec() const noexcept { return prec_; }
  /// Index of the first nonzero coefficient; prec() when the series vanishes to its precision.
  int valuation() const noexcept;
  bool is_zero_to_prec() const noexcept { return valuation() == prec_; }
  /// Zero beyond the precision.
  FieldElement coeff(int k) const;
  void set_coeff(int k, const FieldElement& c);

  TruncatedSeries operator-() const;
  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
  /// Precision min(v(a) + prec(b), v(b) + prec(a)), capped at the larger input precision.
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(const FieldElement& c, const TruncatedSeries& a);
  TruncatedSeries pow(int e) const;
  /// (sum c_k T^k)^(3^r) = sum c_k^(3^r) T^(k 3^r), same precision.
  TruncatedSeries frobenius(int r) const;
  TruncatedSeries with_prec(int prec) const;

  std::string to_string(int terms = 8) const;

 private:
  const Field* field_ = nullptr;
  int prec_ = 0;
  std::vector<FieldElement> c_;
};

/// Expansions at P in T = (v - B)/(B^q - B), with coefficients in the level of B.
struct GeneratorBasis {
  FieldElement beta;  // beta(P), embedded in the level of B
  FieldElement c;     // B^q - B = p(b)
  TruncatedSeries x_a, y_b, f0;
  int newton_iterations = 0;
};

/// Exact Newton lift of u^q + u = v^(q+1) with v = B + cT. Requires q + 1 <= prec <= kMaxPrecision.
GeneratorBasis expand_coordinates(const Curve& curve, const Place& place, const curve::HermitianLift& lift, int prec);

/// f_0 .. f_up_to. Requires beta not in {0, 1} and up_to <= p_order.
std::vector<TruncatedSeries> build_f_chain(const GeneratorBasis& basis, int up_to, std::uint64_t p_order);
/// g_0 .. g_up_to from an f chain reaching up_to. Requires up_to <= r_order.
std::vector<TruncatedSeries> build_g_chain(const GeneratorBasis& basis, const std::vector<TruncatedSeries>& f, int up_to,
                                           std::uint64_t r_order);
/// h_0 .. h_up_to for beta = 1.
std::vector<TruncatedSeries> build_beta1_chain(const GeneratorBasis& basis, int up_to);

/// Expansions at a beta = 0 place in the local parameter s = y - b: X = x - a solves X^q + X = -p(s)^2.
struct BetaZeroExpansion {
  TruncatedSeries x_minus_a, y_minus_b;
};
BetaZeroExpansion expand_beta_zero(const Curve& curve, const Place& place, int prec);

/// F_P^e times a product of expanded factors. F_P is symbolic: v_P(F_P) = q + 1 at rational P, q otherwise,
/// and F_P has a pole of order exactly q + 1 at P_inf.
struct TrackedFunction {
  std::string description;
  int fp_exponent = 0;
  TruncatedSeries series;
  int series_valuation = 0;
  int v_at_p = 0;
  /// Certified upper bound on the pole order at P_inf; negative means a zero of at least that order.
  int pole_bound = 0;
};

struct Factor {
  std::string name;
  TruncatedSeries series;
  int pole_bound = 0;
};

/// Throws std::runtime_error when the series part vanishes to its precision.
TrackedFunction make_tracked(const Curve& curve, bool rational, int fp_exponent, const std::vector<Factor>& factors);

/// Everything the gap and non-gap witnesses need at one place and one choice of Hermitian lift.
class PlaceExpansion {
 public:
  /// prec = 0 selects 2q + 1.
  PlaceExpansion(const Curve& curve, const Place& place, int lift_index = 0, int prec = 0);

  const Curve& curve() const noexcept { return *curve_; }
  const Place& place() const noexcept { return place_; }
  int prec() const noexcept { return prec_; }
  const GeneratorBasis& basis() const noexcept { return basis_; }
  const std::vector<TruncatedSeries>& f() const noexcept { return f_; }
  const std::vector<TruncatedSeries>& g() const noexcept { return g_; }
  const std::vector<TruncatedSeries>& h() const noexcept { return h_; }

  int pole_x_a() const noexcept { return 2 * curve_->m(); }
  int pole_y_b() const noexcept { return curve_->q(); }
  int pole_f(int j) const noexcept { return (j + 1) * curve_->q(); }
  int pole_g(int l) const noexcept { return (3 * l + 4) * curve_->m(); }

  /// Generic table at a non-rational place with K >= m - 1 (also used for small k at special places).
  TrackedFunction gap_witness_generic(int j, int k) const;
  /// Table built on g_K for k >= 3K + 4 and j <= m - K - 2 at a special place; other indices delegate to the generic table.
  TrackedFunction gap_witness_special(int j, int k) const;
  /// gap = jq + k with 1 <= k <= q, dispatched on the place class.
  TrackedFunction gap_witness(int gap) const;

 private:
  const TruncatedSeries& f_at(int j) const;
  const TruncatedSeries& g_at(int l) const;
  TrackedFunction tracked(int fp_exponent, const std::vector<Factor>& factors) const;
  Factor fac_x() const;
  Factor fac_f(int j, int power = 1) const;
  Factor fac_g(int l) const;

  const Curve* curve_;
  Place place_;
  int prec_;
  GeneratorBasis basis_;
  TruncatedSeries one_;
  std::vector<TruncatedSeries> f_, g_, h_;
};

}  // namespace z3ws::series
