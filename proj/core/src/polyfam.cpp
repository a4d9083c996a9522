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


#include "z3ws/polyfam.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "z3ws/factor.hpp"

namespace z3ws::polyfam {
namespace {

using Poly3 = std::vector<std::uint8_t>;

void trim(Poly3& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly3 mul3(const Poly3& a, const Poly3& b) {
  if (a.empty() || b.empty()) return {};
  Poly3 out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = static_cast<std::uint8_t>((out[i + j] + a[i] * b[j]) % 3);
  }
  trim(out);
  return out;
}

Poly3 shift_mul(Poly3 a, int s_pow, int sm1_pow) {
  a.insert(a.begin(), static_cast<std::size_t>(s_pow), 0);
  for (int k = 0; k < sm1_pow; ++k) a = mul3(a, {2, 1});
  return a;
}

int eval_at_one(const Poly3& a) {
  int acc = 0;
  for (auto c : a) acc += c;
  return acc % 3;
}

void require_generic(const FieldElement& beta) {
  if (beta.is_zero() || beta.is_one()) throw std::invalid_argument("beta must not be 0 or 1");
}

struct Mat2 {
  FieldElement a, b, c, d;
};

Mat2 mat_mul(const Mat2& x, const Mat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

// Returns the first component of M^e (x1, x0), where M is the companion matrix of the recursion.
FieldElement advance(std::uint64_t e, const FieldElement& beta, const FieldElement& x1, const FieldElement& x0) {
  const auto& f = beta.field();
  const FieldElement p2 = -(beta * beta * beta);
  const FieldElement bb = beta * (beta - f.one());
  const FieldElement d = bb * bb * bb;
  Mat2 result{f.one(), f.zero(), f.zero(), f.one()};
  Mat2 base{p2, -d, f.one(), f.zero()};
  while (e != 0) {
    if (e & 1U) result = mat_mul(result, base);
    e >>= 1;
    if (e != 0) base = mat_mul(base, base);
  }
  return result.a * x1 + result.b * x0;
}

constexpr std::uint64_t kSequentialCap = 4096;

}  // namespace

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly LaurentPoly::constant(int c) { return from_coeffs({static_cast<std::uint8_t>(((c % 3) + 3) % 3)}); }

LaurentPoly LaurentPoly::s() { return from_coeffs({1}, 1, 0); }

LaurentPoly LaurentPoly::from_coeffs(std::vector<std::uint8_t> coeffs, int s_exp, int sm1_exp) {
  LaurentPoly out;
  for (auto& c : coeffs) c %= 3;
  out.core_ = std::move(coeffs);
  out.s_exp_ = s_exp;
  out.sm1_exp_ = sm1_exp;
  out.normalize();
  return out;
}

void LaurentPoly::normalize() {
  trim(core_);
  if (core_.empty()) {
    s_exp_ = sm1_exp_ = 0;
    return;
  }
  std::size_t low = 0;
  while (core_[low] == 0) ++low;
  if (low != 0) {
    core_.erase(core_.begin(), core_.begin() + static_cast<std::ptrdiff_t>(low));
    s_exp_ += static_cast<int>(low);
  }
  while (core_.size() > 1 && eval_at_one(core_) == 0) {
    // Synthetic division by (s - 1).
    Poly3 g(core_.size() - 1, 0);
    std::uint8_t carry = 0;
    for (std::size_t k = core_.size() - 1; k >= 1; --k) {
      carry = static_cast<std::uint8_t>((core_[k] + carry) % 3);
      g[k - 1] = carry;
    }
    core_ = std::move(g);
    ++sm1_exp_;
  }
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out = *this;
  for (auto& c : out.core_) c = static_cast<std::uint8_t>((3 - c) % 3);
  return out;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const int e = std::min(a.s_exp_, b.s_exp_);
  const int d = std::min(a.sm1_exp_, b.sm1_exp_);
  Poly3 x = shift_mul(a.core_, a.s_exp_ - e, a.sm1_exp_ - d);
  Poly3 y = shift_mul(b.core_, b.s_exp_ - e, b.sm1_exp_ - d);
  if (x.size() < y.size()) x.resize(y.size(), 0);
  for (std::size_t k = 0; k < y.size(); ++k) x[k] = static_cast<std::uint8_t>((x[k] + y[k]) % 3);
  return LaurentPoly::from_coeffs(std::move(x), e, d);
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return LaurentPoly::from_coeffs(mul3(a.core_, b.core_), a.s_exp_ + b.s_exp_, a.sm1_exp_ + b.sm1_exp_);
}

LaurentPoly LaurentPoly::pow(int e) const {
  if (e < 0) {
    if (core_.size() != 1) throw std::domain_error("negative power of a non-monomial Laurent polynomial");
    return from_coeffs({core_[0]}, s_exp_ * e, sm1_exp_ * e);  // c^-1 = c for c in {1, 2}
  }
  LaurentPoly result = constant(1);
  LaurentPoly base = *this;
  while (e != 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return result;
}

LaurentPoly LaurentPoly::divided_by_monomial(int a, int b) const {
  if (is_zero()) return {};
  LaurentPoly out = *this;
  out.s_exp_ -= a;
  out.sm1_exp_ -= b;
  return out;
}

FieldElement LaurentPoly::evaluate(const FieldElement& beta) const {
  const auto& f = beta.field();
  if (is_zero()) return f.zero();
  FieldElement acc = f.zero();
  for (auto it = core_.rbegin(); it != core_.rend(); ++it) acc = acc * beta + f.constant(*it);
  auto power = [&](const FieldElement& x, int e) {
    if (e >= 0) return x.pow(static_cast<u128>(e));
    return x.inverse().pow(static_cast<u128>(-e));
  };
  return acc * power(beta, s_exp_) * power(beta - f.one(), sm1_exp_);
}

std::string LaurentPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  os << "s^" << s_exp_ << "*(s-1)^" << sm1_exp_ << "*(";
  bool first = true;
  for (std::size_t k = core_.size(); k-- > 0;) {
    if (core_[k] == 0) continue;
    if (!first) os << '+';
    os << static_cast<int>(core_[k]) << "s^" << k;
    first = false;
  }
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------
// Families

std::vector<SymbolicTriple> symbolic_families(int n) {
  if (n < 0) throw std::invalid_argument("negative index");
  const LaurentPoly p2 = -LaurentPoly::s().pow(3);
  const LaurentPoly d = LaurentPoly::from_coeffs({1}, 3, 3);  // (s(s-1))^3
  std::vector<SymbolicTriple> out;
  out.push_back({LaurentPoly{}, LaurentPoly::from_coeffs({1}, -1, -1), -LaurentPoly::from_coeffs({1}, -2, 0)});
  out.push_back({LaurentPoly::constant(1), LaurentPoly::s(), LaurentPoly::from_coeffs({2, 2})});
  for (int j = 1; j < n; ++j) {
    const auto& cur = out[static_cast<std::size_t>(j)];
    const auto& prev = out[static_cast<std::size_t>(j - 1)];
    out.push_back({p2 * cur.p - d * prev.p, p2 * cur.q - d * prev.q, p2 * cur.r - d * prev.r});
  }
  out.resize(static_cast<std::size_t>(n) + 1);
  return out;
}

std::vector<FamilyTriple> eval_recursive_upto(int n, const FieldElement& beta) {
  require_generic(beta);
  if (n < 0) throw std::invalid_argument("negative index");
  const auto& f = beta.field();
  const FieldElement bb = beta * (beta - f.one());
  const FieldElement d = bb * bb * bb;
  const FieldElement p2 = -(beta * beta * beta);
  std::vector<FamilyTriple> out;
  out.push_back({0, f.zero(), bb.inverse(), -(beta * beta).inverse()});
  out.push_back({1, f.one(), beta, -(beta + f.one())});
  for (int j = 1; j < n; ++j) {
    const auto& cur = out[static_cast<std::size_t>(j)];
    const auto& prev = out[static_cast<std::size_t>(j - 1)];
    out.push_back({j + 1, p2 * cur.p - d * prev.p, p2 * cur.q - d * prev.q, p2 * cur.r - d * prev.r});
  }
  out.resize(static_cast<std::size_t>(n) + 1);
  return out;
}

FamilyTriple eval_recursive(int i, const FieldElement& beta) { return eval_recursive_upto(i, beta).back(); }

FamilyTriple eval_closed(int i, const FieldElement& beta, const FieldElement& root, const FieldTower& tower) {
  require_generic(beta);
  if (i < 0) throw std::invalid_argument("negative index");
  const auto [s, r] = tower.unify(beta, root);
  if (!(r * r == s)) throw std::invalid_argument("root is not a square root of beta");
  const auto& f = s.field();
  const FieldElement s3 = s * s * s;
  const FieldElement sr = s * r;
  const FieldElement a = (s3 + sr).pow(static_cast<u128>(i));
  const FieldElement b = (s3 - sr).pow(static_cast<u128>(i));
  const FieldElement one = f.one();
  const FieldElement p = (b - a) / sr;
  const FieldElement q = ((r - one) * a - (r + one) * b) / (s * (s - one));
  const FieldElement rr = ((r + one) * a - (r - one) * b) / (s * s);
  auto back = [&](const FieldElement& x) {
    auto c = tower.contract(x, beta.degree());
    if (!c) throw std::logic_error("closed form left the field of beta");
    return *c;
  };
  return {i, back(p), back(q), back(rr)};
}

FamilyTriple eval_closed(int i, const FieldElement& beta, const FieldTower& tower) {
  require_generic(beta);
  return eval_closed(i, beta, tower.sqrt(beta).root, tower);
}

bool identity_check(int i, int j, int l, const FieldElement& beta) {
  if (i < 0 || j < 0 || l < 0) throw std::invalid_argument("negative index");
  const auto t = eval_recursive_upto(i + j + l, beta);
  const FieldElement b3 = beta * beta * beta;
  const FieldElement factor = (b3 * b3 - b3).pow(static_cast<u128>(i));
  auto at = [&](int k) -> const FamilyTriple& { return t[static_cast<std::size_t>(k)]; };
  const bool id1 = at(i + j).p * at(i + l).p - at(i).p * at(i + j + l).p == factor * at(j).p * at(l).p;
  const bool id2 = at(i + j).p * at(i + l).q - at(i).p * at(i + j + l).q == factor * at(j).p * at(l).q;
  const bool id3 = at(i + j).p * at(i + l).r - at(i).p * at(i + j + l).r == factor * at(j).p * at(l).r;
  return id1 && id2 && id3;
}

bool identity_check_symbolic(int i, int j, int l) {
  if (i < 0 || j < 0 || l < 0) throw std::invalid_argument("negative index");
  const auto t = symbolic_families(i + j + l);
  const LaurentPoly factor = LaurentPoly::from_coeffs({1}, 3 * i, 3 * i);
  auto at = [&](int k) -> const SymbolicTriple& { return t[static_cast<std::size_t>(k)]; };
  return at(i + j).p * at(i + l).p - at(i).p * at(i + j + l).p == factor * at(j).p * at(l).p &&
         at(i + j).p * at(i + l).q - at(i).p * at(i + j + l).q == factor * at(j).p * at(l).q &&
         at(i + j).p * at(i + l).r - at(i).p * at(i + j + l).r == factor * at(j).p * at(l).r;
}

bool corollary_check(int i, const FieldElement& beta) {
  if (i < 1) throw std::invalid_argument("corollary needs i >= 1");
  const auto t = eval_recursive_upto(i, beta);
  const auto& f = beta.field();
  const FieldElement bm1 = beta - f.one();
  const auto& cur = t[static_cast<std::size_t>(i)];
  const auto& prev = t[static_cast<std::size_t>(i - 1)];
  return cur.r == prev.r * beta * bm1 * bm1 + cur.p / beta;
}

bool corollary_check_symbolic(int i) {
  if (i < 1) throw std::invalid_argument("corollary needs i >= 1");
  const auto t = symbolic_families(i);
  const auto& cur = t[static_cast<std::size_t>(i)];
  const auto& prev = t[static_cast<std::size_t>(i - 1)];
  return cur.r == prev.r * LaurentPoly::from_coeffs({1}, 1, 2) + cur.p.divided_by_monomial(1, 0);
}

FieldElement p_value(std::uint64_t n, const FieldElement& beta) {
  require_generic(beta);
  const auto& f = beta.field();
  if (n == 0) return f.zero();
  return advance(n - 1, beta, f.one(), f.zero());
}

FieldElement r_value(std::uint64_t n, const FieldElement& beta) {
  require_generic(beta);
  const auto& f = beta.field();
  const FieldElement r0 = -(beta * beta).inverse();
  if (n == 0) return r0;
  return advance(n - 1, beta, -(beta + f.one()), r0);
}

// ---------------------------------------------------------------------------
// Orders

std::uint64_t r_order_from_p_order(std::uint64_t i) {
  switch (i % 3) {
    case 0:
      return i / 3 - 1;
    case 1:
      return (2 * i - 2) / 3;
    default:
      throw std::invalid_argument("P-order is never 2 mod 3");
  }
}

Orders orders(const FieldElement& beta, const FieldElement& root, const FieldTower& tower) {
  require_generic(beta);
  const auto [s, r] = tower.unify(beta, root);
  if (!(r * r == s)) throw std::invalid_argument("root is not a square root of beta");
  const auto& f = r.field();
  const FieldElement gamma = (r + f.one()) / (r - f.one());

  Orders out;
  out.gamma_order = ff::mult_order(gamma);
  const std::uint64_t j = out.gamma_order;
  if (j < 3 || j % 3 == 0) throw std::logic_error("gamma order " + std::to_string(j) + " is impossible");
  out.p_order = j - 1;
  out.r_order = r_order_from_p_order(out.p_order);
  const std::uint64_t i = out.p_order;
  const std::uint64_t k = out.r_order;

  // The recursion is authoritative; gamma only proposes the answer.
  auto fail = [&](const std::string& what) {
    throw std::logic_error("order cross-check failed (" + what + ") for gamma order " + std::to_string(j));
  };
  if (!p_value(i + 1, beta).is_zero()) fail("P_{i+1} != 0");
  for (const auto& [prime, mult] : factor::factorize(j)) {
    (void)mult;
    if (p_value(j / static_cast<std::uint64_t>(prime), beta).is_zero()) fail("P vanishes earlier");
  }
  if (!r_value(k + 1, beta).is_zero()) fail("R_{K+1} != 0");
  if (k >= i) fail("K >= i");
  const std::uint64_t scan = std::min<std::uint64_t>(i + 1, kSequentialCap);
  const auto seq = eval_recursive_upto(static_cast<int>(scan), beta);
  for (std::uint64_t n = 1; n <= std::min(i, scan); ++n) {
    if (seq[n].p.is_zero()) fail("sequential P_n = 0 below i + 1");
  }
  for (std::uint64_t n = 1; n <= std::min(k, scan); ++n) {
    if (seq[n].r.is_zero()) fail("sequential R_n = 0 below K + 1");
  }
  if (i + 1 <= scan && !seq[i + 1].p.is_zero()) fail("sequential P_{i+1} != 0");
  return out;
}

Orders orders(const FieldElement& beta, const FieldTower& tower) {
  require_generic(beta);
  return orders(beta, tower.sqrt(beta).root, tower);
}

std::uint64_t p_order(const FieldElement& beta, const FieldTower& tower) { return orders(beta, tower).p_order; }

std::uint64_t r_order(const FieldElement& beta, const FieldTower& tower) { return orders(beta, tower).r_order; }

}  // namespace z3ws::polyfam
