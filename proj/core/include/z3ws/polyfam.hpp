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
#include <string>
#include <vector>

#include "z3ws/ff.hpp"

namespace z3ws::polyfam {

using ff::FieldElement;
using ff::FieldTower;

/// Values P_i(beta), Q_i(beta), R_i(beta).
struct FamilyTriple {
  int index = 0;
  FieldElement p, q, r;
  friend bool operator==(const FamilyTriple&, const FamilyTriple&) = default;
};

/// Rational function s^e * f(s) * (s-1)^d over F_3, with f prime to s and s-1.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  static LaurentPoly constant(int c);
  static LaurentPoly s();
  /// Coefficients low degree first.
  static LaurentPoly from_coeffs(std::vector<std::uint8_t> coeffs, int s_exp = 0, int sm1_exp = 0);

  bool is_zero() const noexcept { return core_.empty(); }
  int s_exponent() const noexcept { return s_exp_; }
  int sm1_exponent() const noexcept { return sm1_exp_; }
  const std::vector<std::uint8_t>& core() const noexcept { return core_; }

  LaurentPoly operator-() const;
  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;
  /// Integer powers; negative exponents need a monomial core.
  LaurentPoly pow(int e) const;
  /// Division by s^a (s-1)^b.
  LaurentPoly divided_by_monomial(int a, int b) const;

  /// beta must not be 0 or 1 when the corresponding exponent is negative.
  FieldElement evaluate(const FieldElement& beta) const;
  std::string to_string() const;

 private:
  void normalize();

  std::vector<std::uint8_t> core_;
  int s_exp_ = 0;
  int sm1_exp_ = 0;
};

struct SymbolicTriple {
  LaurentPoly p, q, r;
};

/// Symbolic P_i, Q_i, R_i for i = 0..n from the recursion.
std::vector<SymbolicTriple> symbolic_families(int n);

/// Throws std::invalid_argument when beta is 0 or 1.
FamilyTriple eval_recursive(int i, const FieldElement& beta);
/// Triples 0..n.
std::vector<FamilyTriple> eval_recursive_upto(int n, const FieldElement& beta);

/// Closed forms evaluated with the given square root of beta (which may lie in a larger level of the tower).
FamilyTriple eval_closed(int i, const FieldElement& beta, const FieldElement& root, const FieldTower& tower);
FamilyTriple eval_closed(int i, const FieldElement& beta, const FieldTower& tower);

/// The three product identities at (i, j, l).
bool identity_check(int i, int j, int l, const FieldElement& beta);
bool identity_check_symbolic(int i, int j, int l);
/// R_i = R_{i-1} s (s-1)^2 + P_i / s.
bool corollary_check(int i, const FieldElement& beta);
bool corollary_check_symbolic(int i);

/// P_n(beta) and R_n(beta) for large n through 2x2 matrix powers of the recursion.
FieldElement p_value(std::uint64_t n, const FieldElement& beta);
FieldElement r_value(std::uint64_t n, const FieldElement& beta);

struct Orders {
  std::uint64_t gamma_order = 0;  // multiplicative order of (r+1)/(r-1)
  std::uint64_t p_order = 0;      // i
  std::uint64_t r_order = 0;      // K
};

/// K determined by i: the least K >= 0 with R_{K+1}(beta) = 0.
std::uint64_t r_order_from_p_order(std::uint64_t i);

/// Orders from gamma, cross-checked against the recursion. A mismatch throws std::logic_error.
Orders orders(const FieldElement& beta, const FieldElement& root, const FieldTower& tower);
Orders orders(const FieldElement& beta, const FieldTower& tower);
std::uint64_t p_order(const FieldElement& beta, const FieldTower& tower);
std::uint64_t r_order(const FieldElement& beta, const FieldTower& tower);

}  // namespace z3ws::polyfam
