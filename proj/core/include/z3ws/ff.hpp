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
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace z3ws {

__extension__ typedef unsigned __int128 u128;

namespace ff {

/// Largest extension degree over F_3 supported by the bit-sliced representation.
inline constexpr int kMaxDegree = 64;

/// Bit-sliced vector of F_3 digits. Bit i of `p` set means digit i is 1,
/// bit i of `m` set means digit i is 2; never both.
template <class Word>
struct TritPlanes {
  Word p{0};
  Word m{0};

  friend constexpr TritPlanes operator+(TritPlanes x, TritPlanes y) noexcept {
    const Word t = (x.p | y.m) ^ (x.m | y.p);
    return {(x.m | y.m) ^ t, (x.p | y.p) ^ t};
  }
  friend constexpr TritPlanes operator-(TritPlanes x) noexcept { return {x.m, x.p}; }
  friend constexpr TritPlanes operator-(TritPlanes x, TritPlanes y) noexcept { return x + (-y); }
  friend constexpr bool operator==(TritPlanes, TritPlanes) = default;

  constexpr TritPlanes shl(int k) const noexcept { return {static_cast<Word>(p << k), static_cast<Word>(m << k)}; }
  constexpr bool is_zero() const noexcept { return (p | m) == 0; }
};

using Trits = TritPlanes<std::uint64_t>;
using WideTrits = TritPlanes<u128>;

class Field;

/// An element of F_{3^n}, stored in the polynomial basis of its level.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(const Field* field, Trits value) noexcept : field_(field), v_(value) {}

  const Field& field() const noexcept { return *field_; }
  const Field* field_ptr() const noexcept { return field_; }
  Trits raw() const noexcept { return v_; }
  int degree() const noexcept;

  bool is_zero() const noexcept { return v_.is_zero(); }
  bool is_one() const noexcept;
  int coeff(int i) const noexcept {
    return static_cast<int>((v_.p >> i) & 1U) | (static_cast<int>((v_.m >> i) & 1U) << 1);
  }
  std::vector<int> coeffs() const;

  FieldElement operator-() const noexcept { return {field_, -v_}; }
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);
  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  friend bool operator==(const FieldElement& a, const FieldElement& b) noexcept {
    return a.field_ == b.field_ && a.v_ == b.v_;
  }

  FieldElement scaled(int c) const noexcept;  // c taken mod 3
  FieldElement square() const;
  FieldElement pow(u128 e) const;
  FieldElement inverse() const;
  /// x^(3^k).
  FieldElement frobenius(int k = 1) const;
  /// Degree of the smallest subfield F_{3^k} containing this element.
  int minimal_degree() const;

  /// Coefficient vectors compared low degree first, digits ordered 0 < 1 < 2.
  bool lex_less(const FieldElement& o) const noexcept;
  std::string to_string() const;

 private:
  const Field* field_ = nullptr;
  Trits v_{};
};

/// One level F_{3^n} = F_3[X]/(f) of a tower.
class Field {
 public:
  /// Uses the lexicographically smallest monic irreducible of the given degree.
  explicit Field(int degree);
  Field(int degree, std::vector<std::uint8_t> modulus);
  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  int degree() const noexcept { return n_; }
  /// 3^n.
  u128 size() const noexcept { return size_; }
  /// Coefficients of the modulus, low degree first, length n + 1.
  const std::vector<std::uint8_t>& modulus() const noexcept { return modulus_; }

  FieldElement zero() const noexcept { return {this, {}}; }
  FieldElement one() const noexcept { return {this, {1, 0}}; }
  FieldElement constant(int c) const noexcept;
  /// Class of X.
  FieldElement gen() const noexcept;
  FieldElement from_coeffs(std::span<const int> coeffs) const;
  /// Base-3 digits of idx, low digit = constant coefficient. Enumerates the field for idx < 3^n.
  FieldElement from_index(u128 idx) const;
  FieldElement random(std::mt19937_64& rng) const;
  FieldElement from_raw(Trits t) const noexcept { return {this, t}; }

  Trits mul(Trits a, Trits b) const noexcept;
  Trits frob(Trits a) const noexcept;
  Trits mask() const noexcept { return {mask_, mask_}; }

 private:
  void init_tables();
  Trits reduce(WideTrits w) const noexcept;

  int n_;
  u128 size_;
  std::uint64_t mask_;
  std::vector<std::uint8_t> modulus_;
  std::vector<Trits> reduce_table_;  // X^(n+k) mod f, k = 0 .. n-2
  std::vector<Trits> frob_cols_;     // X^(3i) mod f
};

/// Monic polynomial over F_3 is irreducible (Rabin's test), coefficients low degree first.
bool is_irreducible_f3(const std::vector<std::uint8_t>& poly);
/// Lexicographically smallest monic irreducible of degree n, coefficients compared low degree first.
std::vector<std::uint8_t> smallest_irreducible(int n);

struct SqrtResult {
  FieldElement root;
  bool in_extension = false;  // root lives in the quadratic extension level
};

/// Ring embedding F_{3^n} -> F_{3^N}, given by the images of 1, X, ..., X^{n-1}.
struct Embedding {
  const Field* from = nullptr;
  const Field* to = nullptr;
  std::vector<Trits> basis_images;
  // Left inverse on the image: n pivot rows of the image matrix and the inverse of that minor.
  std::vector<int> pivots;
  std::vector<std::vector<std::uint8_t>> pivot_inverse;
};

/// Finite set of levels F_{3^n} with coherent embeddings between every pair n | N.
/// Levels are immutable once built; embeddings are computed on first use and cached.
class FieldTower {
 public:
  /// Levels 1, t, 2t and 2t*d for every requested d. t = 1 is rejected (the curve is elliptic).
  static FieldTower make(int t, const std::set<int>& extra_degrees);

  /// Any degree set; closed under gcd internally.
  explicit FieldTower(const std::set<int>& degrees);
  FieldTower(FieldTower&&) noexcept;
  FieldTower& operator=(FieldTower&&) noexcept;
  ~FieldTower();

  std::vector<int> degrees() const;
  bool has_level(int n) const noexcept { return levels_.count(n) != 0; }
  const Field& level(int n) const;

  FieldElement embed(const FieldElement& x, int target_degree) const;
  FieldElement embed(const FieldElement& x, const Field& target) const { return embed(x, target.degree()); }
  /// Inverse of embed on its image; nullopt when y is not in the subfield.
  std::optional<FieldElement> contract(const FieldElement& y, int sub_degree) const;
  /// Brings a and b into a common level (the smallest level containing both).
  std::pair<FieldElement, FieldElement> unify(const FieldElement& a, const FieldElement& b) const;
  /// Smallest tower level divisible by n.
  std::optional<int> smallest_level_over(int n) const;

  const Embedding& embedding(int n, int big_n) const;

  /// Square root; in the quadratic extension level when x is a non-square.
  /// Of r and -r returns the one whose coefficient vector is lexicographically smaller.
  SqrtResult sqrt(const FieldElement& x) const;

 private:
  std::shared_ptr<const Embedding> build_embedding(int n, int big_n) const;

  std::map<int, std::unique_ptr<Field>> levels_;
  mutable std::unique_ptr<std::mutex> mu_;
  mutable std::map<std::pair<int, int>, std::shared_ptr<const Embedding>> embeddings_;
};

/// b + b^3 + ... + b^(3^(t-1)).
FieldElement trace_p(const FieldElement& b, int t);

/// Least k >= 1 with x^k = 1. Factors 3^k - 1 for the minimal subfield of x.
std::uint64_t mult_order(const FieldElement& x);

/// Every root in F of the polynomial with the given coefficients (low degree first), without multiplicity.
std::vector<FieldElement> roots_in_field(const Field& field, std::vector<FieldElement> coeffs);

/// Solutions of an F_3-linear equation L(x) = rhs on a level.
struct LinearSolution {
  FieldElement particular;
  std::vector<FieldElement> kernel;  // F_3-basis
};

template <class Map>
std::optional<LinearSolution> solve_linear(const Field& field, Map&& map, const FieldElement& rhs);

}  // namespace ff
}  // namespace z3ws

#include "z3ws/detail/linear_solve.hpp"
