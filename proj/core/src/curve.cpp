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

#include "z3ws/curve.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "z3ws/factor.hpp"
#include "z3ws/polyfam.hpp"

namespace z3ws::curve {
namespace {

constexpr const char* kKindNames[] = {"infinity",         "beta-zero",           "beta-one",
                                      "rational-general", "nonrational-generic", "nonrational-special"};

std::set<int> all_extra_degrees(int t) {
  if (t < 2) throw std::invalid_argument("t must be >= 2 (t = 1 gives an elliptic curve)");
  std::set<int> out;
  for (int d = 1; 2 * t * d <= ff::kMaxDegree; ++d) out.insert(d);
  return out;
}

std::set<int> with_three(std::set<int> s) {
  s.insert(3);
  return s;
}

FieldElement random_combination(FieldElement base, const std::vector<FieldElement>& kernel, std::mt19937_64& rng) {
  for (const auto& k : kernel) base += k.scaled(static_cast<int>(rng() % 3));
  return base;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

std::string to_string(ClassKind kind) { return kKindNames[static_cast<int>(kind)]; }

std::optional<ClassKind> class_kind_from_string(const std::string& name) {
  for (int k = 0; k < 6; ++k) {
    if (name == kKindNames[k]) return static_cast<ClassKind>(k);
  }
  return std::nullopt;
}

std::string PlaceClass::to_string() const {
  std::ostringstream os;
  os << curve::to_string(kind);
  if (gamma_order != 0) os << "(i=" << i << ",K=" << K << ")";
  return os.str();
}

PlaceKey Place::key() const noexcept {
  if (at_infinity) return {0, 0, 0, 0, 0};
  return {a.degree(), a.raw().p, a.raw().m, b.raw().p, b.raw().m};
}

std::string Place::to_string() const {
  if (at_infinity) return "P_inf";
  std::ostringstream os;
  os << "P(a=" << a.to_string() << ",b=" << b.to_string() << ")";
  return os.str();
}

Curve::Curve(int t) : Curve(t, all_extra_degrees(t)) {}

Curve::Curve(int t, const std::set<int>& extra_degrees)
    : t_(t), q_(static_cast<int>(factor::pow3(t))), tower_(FieldTower::make(t, with_three(extra_degrees))) {}

std::uint64_t Curve::rational_place_count() const noexcept {
  const auto q = static_cast<std::uint64_t>(q_);
  return q * q + 1 + 2 * q * static_cast<std::uint64_t>(genus());
}

bool Curve::on_curve(const FieldElement& a, const FieldElement& b) const {
  const auto [x, y] = tower_.unify(a, b);
  const FieldElement py = p(y);
  return (x.frobenius(t_) + x + py * py).is_zero();
}

Place Curve::infinity() const {
  Place out;
  out.at_infinity = true;
  out.degree = 1;
  out.cls = PlaceClass{};
  return out;
}

Place Curve::place_from_coords(const FieldElement& a_in, const FieldElement& b_in) const {
  const auto [a, b] = tower_.unify(a_in, b_in);
  const FieldElement pb = p(b);
  const FieldElement beta = pb * pb;
  if (!(a.frobenius(t_) + a + beta).is_zero()) throw std::invalid_argument("point is not on the curve");
  return make_place(a, b, beta);
}

Place Curve::make_place(const FieldElement& a_in, const FieldElement& b_in, const FieldElement& beta_in) const {
  const int k = std::lcm(std::lcm(a_in.minimal_degree(), b_in.minimal_degree()), 2 * t_);
  const int level = tower_.smallest_level_over(k).value();
  Place out;
  out.a = tower_.contract(a_in, level).value();
  out.b = tower_.contract(b_in, level).value();
  out.beta = tower_.contract(beta_in, level).value();
  out.degree = k / (2 * t_);
  out.cls = classify_beta(out.beta, p(out.b));
  const bool rational_kind = out.cls.kind != ClassKind::NonRationalGeneric && out.cls.kind != ClassKind::NonRationalSpecial;
  if (rational_kind != out.rational()) {
    throw std::logic_error("beta classification disagrees with the place degree at " + out.to_string());
  }
  return out;
}

PlaceClass Curve::classify(const Place& place) const {
  if (place.at_infinity) return PlaceClass{};
  return classify_beta(place.beta, p(place.b));
}

PlaceClass Curve::classify_beta(const FieldElement& beta, const FieldElement& root) const {
  PlaceClass out;
  if (beta.is_zero()) {
    out.kind = ClassKind::BetaZero;
    return out;
  }
  if (beta.is_one()) {
    out.kind = ClassKind::BetaOne;
    return out;
  }
  const auto key = std::make_tuple(beta.degree(), beta.raw().p, beta.raw().m);
  {
    std::lock_guard lock(cache_mu_);
    auto it = class_cache_.find(key);
    if (it != class_cache_.end()) return it->second;
  }
  const auto ord = polyfam::orders(beta, root, tower_);
  out.gamma_order = ord.gamma_order;
  out.i = ord.p_order;
  out.K = ord.r_order;
  const auto half = static_cast<u128>((q_ - 1) / 2);
  if ((-beta.pow(half)).is_one()) {
    out.kind = ClassKind::RationalGeneral;
  } else if (out.K + 2 <= static_cast<std::uint64_t>(m())) {
    out.kind = ClassKind::NonRationalSpecial;
  } else {
    out.kind = ClassKind::NonRationalGeneric;
  }
  std::lock_guard lock(cache_mu_);
  class_cache_.emplace(key, out);
  return out;
}

std::vector<Place> Curve::enumerate_rational() const {
  const Field& f = base();
  const u128 size = f.size();
  // a^q + a lands in F_q; group the a's by that value.
  std::unordered_map<std::uint64_t, std::vector<FieldElement>> by_trace;
  auto pack = [](const FieldElement& x) { return (x.raw().p << 32) | x.raw().m; };
  for (u128 k = 0; k < size; ++k) {
    const auto a = f.from_index(k);
    by_trace[pack(a.frobenius(t_) + a)].push_back(a);
  }
  std::vector<Place> out;
  out.reserve(rational_place_count());
  out.push_back(infinity());
  for (u128 k = 0; k < size; ++k) {
    const auto b = f.from_index(k);
    const auto pb = p(b);
    const auto beta = pb * pb;
    auto it = by_trace.find(pack(-beta));
    if (it == by_trace.end()) continue;
    const PlaceClass cls = classify_beta(beta, pb);
    for (const auto& a : it->second) {
      Place pl;
      pl.a = a;
      pl.b = b;
      pl.beta = beta;
      pl.degree = 1;
      pl.cls = cls;
      out.push_back(std::move(pl));
    }
  }
  return out;
}

std::vector<HermitianLift> Curve::hermitian_lifts(const Place& place) const {
  if (place.at_infinity) throw std::invalid_argument("P_inf has no Hermitian lift");
  if (place.beta.is_zero()) throw std::invalid_argument("Hermitian lift needs beta != 0");
  const int n = place.b.degree();
  auto artin_schreier = [](const FieldElement& y) { return y.frobenius() - y; };
  std::optional<ff::LinearSolution> sol = ff::solve_linear(place.b.field(), artin_schreier, place.b);
  FieldElement a = place.a, b = place.b, pb = p(place.b);
  if (!sol) {
    const auto level = tower_.smallest_level_over(3 * n);
    if (!level) throw std::out_of_range("Hermitian lift needs a tower level over degree " + std::to_string(3 * n));
    a = tower_.embed(a, *level);
    b = tower_.embed(b, *level);
    pb = tower_.embed(pb, *level);
    sol = ff::solve_linear(b.field(), artin_schreier, b);
    if (!sol) throw std::logic_error("Artin-Schreier equation unsolvable in the cubic extension");
  }
  std::vector<HermitianLift> out;
  const FieldElement one = b.field().one();
  for (const FieldElement& B : {sol->particular, sol->particular + one, sol->particular - one}) {
    HermitianLift h{-a - B * B, B, B.frobenius(t_) - B};
    if (!(h.A.frobenius(t_) + h.A == B.frobenius(t_) * B) || !(h.c == pb)) {
      throw std::logic_error("Hermitian lift invariant failed at " + place.to_string());
    }
    out.push_back(h);
  }
  return out;
}

std::optional<Place> Curve::sample_place(std::uint64_t gamma_order, std::mt19937_64& rng, int max_level) const {
  const std::uint64_t n = gamma_order;
  if (n < 4 || n % 3 == 0) throw std::invalid_argument("gamma order must be >= 4 and prime to 3");
  const auto primes = prime_divisors(n);
  for (int level : tower_.degrees()) {
    if (level % (2 * t_) != 0 || level > max_level) continue;
    if (static_cast<std::uint64_t>((factor::pow3(level) - 1) % n) != 0) continue;
    const Field& f = tower_.level(level);
    const u128 cofactor = (f.size() - 1) / n;
    for (int attempt = 0; attempt < 8; ++attempt) {
      FieldElement gamma;
      do {
        gamma = f.random(rng).pow(cofactor);
      } while (gamma.is_zero() || std::any_of(primes.begin(), primes.end(), [&](std::uint64_t pr) {
                 return gamma.pow(n / pr).is_one();
               }));
      const FieldElement c = (gamma + f.one()) / (gamma - f.one());
      const int t = t_;
      const auto bsol = ff::solve_linear(f, [t](const FieldElement& x) { return x.frobenius(t) - x; }, c);
      if (!bsol) continue;
      // B is free up to F_q; A is solvable for some of those translates only.
      const std::size_t combos = static_cast<std::size_t>(factor::pow3(static_cast<int>(bsol->kernel.size())));
      const std::size_t start = rng() % combos;
      for (std::size_t step = 0; step < combos; ++step) {
        std::size_t idx = (start + step) % combos;
        FieldElement B = bsol->particular;
        for (const auto& k : bsol->kernel) {
          B += k.scaled(static_cast<int>(idx % 3));
          idx /= 3;
        }
        const auto asol = ff::solve_linear(f, [t](const FieldElement& x) { return x.frobenius(t) + x; }, B.frobenius(t_) * B);
        if (!asol) continue;
        const FieldElement A = random_combination(asol->particular, asol->kernel, rng);
        Place pl = place_from_coords(-A - B * B, B * B * B - B);
        if (pl.cls.gamma_order != n) throw std::logic_error("sampled place has the wrong gamma order");
        return pl;
      }
    }
  }
  return std::nullopt;
}

}  // namespace z3ws::curve
