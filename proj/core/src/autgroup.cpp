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

#include "z3ws/autgroup.hpp"

#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

namespace z3ws::autgroup {
namespace {

FieldElement signed_value(const FieldElement& y, int sign) { return sign == 1 ? y : -y; }

}  // namespace

std::string Automorphism::to_string() const {
  return "(x+" + a.to_string() + "," + (sign == 1 ? "+" : "-") + "y+" + b.to_string() + ")";
}

Automorphism compose(const Automorphism& sigma, const Automorphism& tau) {
  return {sigma.a + tau.a, sigma.b + signed_value(tau.b, sigma.sign), sigma.sign * tau.sign};
}

Automorphism inverse(const Automorphism& sigma) {
  // sigma^-1 = (-a, -e*b, e).
  return {-sigma.a, -signed_value(sigma.b, sigma.sign), sigma.sign};
}

AutGroup::AutGroup(const Curve& curve) : curve_(&curve) {
  const auto& f = curve.base();
  const int t = curve.t();
  std::vector<FieldElement> as, bs;
  for (u128 k = 0; k < f.size(); ++k) {
    const auto x = f.from_index(k);
    if ((x.frobenius(t) + x).is_zero()) as.push_back(x);
    if (curve.p(x).is_zero()) bs.push_back(x);
  }
  for (int sign : {1, -1}) {
    for (const auto& b : bs) {
      for (const auto& a : as) elements_.push_back(make(a, b, sign));
    }
  }
  const auto a_basis = ff::solve_linear(f, [t](const FieldElement& x) { return x.frobenius(t) + x; }, f.zero());
  const auto b_basis = ff::solve_linear(f, [&curve](const FieldElement& x) { return curve.p(x); }, f.zero());
  for (const auto& a : a_basis->kernel) generators_.push_back(make(a, f.zero(), 1));
  for (const auto& b : b_basis->kernel) generators_.push_back(make(f.zero(), b, 1));
  generators_.push_back(make(f.zero(), f.zero(), -1));
}

Automorphism AutGroup::make(const FieldElement& a, const FieldElement& b, int sign) const {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  const auto& f = curve_->base();
  const auto aa = curve_->tower().contract(a, f.degree());
  const auto bb = curve_->tower().contract(b, f.degree());
  if (!aa || !bb) throw std::invalid_argument("automorphism parameters must lie in F_{q^2}");
  if (!(aa->frobenius(curve_->t()) + *aa).is_zero()) throw std::invalid_argument("a^q + a != 0");
  if (!curve_->p(*bb).is_zero()) throw std::invalid_argument("p(b) != 0");
  return {*aa, *bb, sign};
}

Automorphism AutGroup::identity() const { return make(base_zero(), base_zero(), 1); }

std::pair<FieldElement, FieldElement> AutGroup::apply_point(const Automorphism& sigma, const FieldElement& x,
                                                            const FieldElement& y) const {
  const auto& tower = curve_->tower();
  const int l = std::lcm(std::lcm(x.degree(), y.degree()), sigma.a.degree());
  const auto level = tower.smallest_level_over(l);
  if (!level) throw std::out_of_range("no tower level of degree divisible by " + std::to_string(l));
  return {tower.embed(x, *level) + tower.embed(sigma.a, *level),
          signed_value(tower.embed(y, *level), sigma.sign) + tower.embed(sigma.b, *level)};
}

Place AutGroup::apply(const Automorphism& sigma, const Place& place) const {
  if (place.at_infinity) return place;
  const auto [x, y] = apply_point(sigma, place.a, place.b);
  if (!curve_->on_curve(x, y)) throw std::logic_error("automorphism moved " + place.to_string() + " off the curve");
  Place out = place;
  out.a = x;
  out.b = y;
  const auto py = curve_->p(y);
  out.beta = py * py;
  out.cls = curve_->classify(out);
  return out;
}

std::vector<Place> AutGroup::orbit(const Place& place) const {
  std::vector<Place> out{place};
  std::set<curve::PlaceKey> seen{place.key()};
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (const auto& g : generators_) {
      Place img = apply(g, out[head]);
      if (seen.insert(img.key()).second) out.push_back(std::move(img));
    }
  }
  return out;
}

std::vector<std::vector<Place>> AutGroup::orbits(const std::vector<Place>& places) const {
  std::vector<std::vector<Place>> out;
  std::set<curve::PlaceKey> covered;
  for (const auto& pl : places) {
    if (covered.count(pl.key())) continue;
    auto orb = orbit(pl);
    for (const auto& o : orb) covered.insert(o.key());
    out.push_back(std::move(orb));
  }
  return out;
}

}  // namespace z3ws::autgroup
