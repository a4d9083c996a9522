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

#include <gtest/gtest.h>

#include <map>
#include <memory>
#include <random>

#include "rr_oracle.hpp"
#include "z3ws/autgroup.hpp"
#include "z3ws/gapsets.hpp"
#include "z3ws/weier.hpp"

namespace z3ws::weier {
namespace {

const Curve& curve_for(int t) {
  static std::map<int, std::unique_ptr<Curve>> cache;
  auto& c = cache[t];
  if (!c) c = std::make_unique<Curve>(t);
  return *c;
}

const testing::RiemannRochOracle& oracle_for(int t) {
  static std::map<int, std::unique_ptr<testing::RiemannRochOracle>> cache;
  auto& o = cache[t];
  if (!o) o = std::make_unique<testing::RiemannRochOracle>(curve_for(t));
  return *o;
}

Place first_of(const Curve& c, ClassKind kind, std::uint64_t i = 0) {
  for (const auto& p : c.enumerate_rational()) {
    if (p.cls.kind == kind && (i == 0 || p.cls.i == i)) return p;
  }
  throw std::runtime_error("no such place");
}

std::set<int> range(int lo, int hi) {
  std::set<int> s;
  for (int n = lo; n <= hi; ++n) s.insert(n);
  return s;
}

std::set<int> unite(std::initializer_list<std::set<int>> parts) {
  std::set<int> s;
  for (const auto& p : parts) s.insert(p.begin(), p.end());
  return s;
}

TEST(SemigroupAt, GoldenSetsQ9) {
  const Curve& c = curve_for(2);
  std::mt19937_64 rng(9);
  EXPECT_EQ(semigroup_at(c, c.infinity()).gaps.gaps(), (std::set<int>{1, 2, 3, 4, 5, 7, 8, 11, 13, 14, 17, 23}));
  EXPECT_EQ(semigroup_at(c, c.infinity()).generators, (std::vector<int>{6, 9, 10}));
  const auto origin = c.place_from_coords(c.base().zero(), c.base().zero());
  EXPECT_EQ(semigroup_at(c, origin).gaps.gaps(), unite({range(1, 7), {11, 12, 13, 15, 21}}));
  const auto b1 = semigroup_at(c, first_of(c, ClassKind::BetaOne));
  EXPECT_EQ(b1.generators, (std::vector<int>{8, 9, 10, 15, 22}));
  EXPECT_EQ(b1.gaps.gaps(), unite({range(1, 7), range(11, 14), {21}}));
  const auto generic = unite({range(1, 7), range(10, 13), {19}});
  EXPECT_EQ(semigroup_at(c, c.sample_place(8, rng).value()).gaps.gaps(), generic);
  EXPECT_EQ(semigroup_at(c, c.sample_place(13, rng).value()).gaps.gaps(), generic);

  auto replaced = [&](int from, int to) {
    auto s = generic;
    s.erase(from);
    s.insert(to);
    return s;
  };
  const auto s61 = semigroup_at(c, c.sample_place(7, rng).value());
  EXPECT_EQ(s61.place.cls.i, 6U);
  EXPECT_EQ(s61.place.cls.K, 1U);
  EXPECT_EQ(s61.gaps.gaps(), replaced(7, 8));
  EXPECT_EQ(s61.replacements, (std::vector<std::pair<int, int>>{{7, 8}}));
  const auto s30 = semigroup_at(c, c.sample_place(4, rng).value());
  EXPECT_EQ(s30.gaps.gaps(), replaced(13, 14));
}

TEST(SemigroupAt, Q27) {
  const Curve& c = curve_for(3);
  const auto inf = semigroup_at(c, c.infinity());
  EXPECT_EQ(inf.generators, (std::vector<int>{18, 27, 28}));
  EXPECT_EQ(inf.gaps.genus(), 117);
  // Class (9, 2): m - K - 2 = 5 < i + 1, so only l = 0 is replaced: 5*27 + 10 -> 146.
  std::mt19937_64 rng(27);
  const auto s = semigroup_at(c, c.sample_place(10, rng).value());
  EXPECT_EQ(s.place.cls.K, 2U);
  EXPECT_EQ(s.replacements, (std::vector<std::pair<int, int>>{{145, 146}}));
  EXPECT_TRUE(s.gaps.contains_gap(146));
  EXPECT_FALSE(s.gaps.contains_gap(145));
  // Class (4, 2): the ladder has two rungs.
  const auto s42 = semigroup_at(c, c.sample_place(5, rng).value());
  EXPECT_EQ(s42.replacements.size(), 2U);
}

TEST(VerifyNongaps, WitnessExamples) {
  const Curve& c9 = curve_for(2);
  auto b1 = semigroup_at(c9, first_of(c9, ClassKind::BetaOne));
  const auto e1 = verify_nongaps(c9, b1);
  const auto it = std::find_if(e1.begin(), e1.end(), [](const CertificateEntry& e) { return e.value == 15; });
  ASSERT_NE(it, e1.end());
  EXPECT_EQ(it->witness, "F_P^-2 * h_1");
  EXPECT_EQ(it->v_at_p, -15);
  EXPECT_LT(it->pole_bound, 0);

  const auto origin = semigroup_at(c9, c9.place_from_coords(c9.base().zero(), c9.base().zero()));
  const auto e0 = verify_nongaps(c9, origin);
  EXPECT_EQ(e0.back().value, 14);
  EXPECT_EQ(e0.back().witness, "F_P^-2 * (x-a)^3");

  const Curve& c27 = curve_for(3);
  const auto r3 = semigroup_at(c27, first_of(c27, ClassKind::RationalGeneral, 3));
  const auto e3 = verify_nongaps(c27, r3);
  EXPECT_EQ(e3.back().value, 100);
  EXPECT_EQ(e3.back().witness, "F_P^-4 * f_3");
  EXPECT_EQ(e3.back().v_at_p, 12 - 4 * 28);

  EXPECT_THROW(verify_gaps(c9, origin), std::invalid_argument);
  EXPECT_THROW(verify_nongaps(c9, semigroup_at(c9, c9.sample_place(8, *std::make_unique<std::mt19937_64>(1)).value())),
               std::invalid_argument);
}

TEST(VerifyNongaps, EveryLiftAtEveryRationalClass) {
  for (int t : {2, 3}) {
    const Curve& c = curve_for(t);
    std::set<std::pair<ClassKind, std::uint64_t>> seen;
    for (const auto& pl : c.enumerate_rational()) {
      if (!seen.insert({pl.cls.kind, pl.cls.i}).second) continue;
      const int lifts = pl.at_infinity || pl.cls.kind == ClassKind::BetaZero ? 1 : 3;
      for (int lift = 0; lift < lifts; ++lift) {
        auto a = semigroup_at(c, pl);
        ASSERT_NO_THROW(certify(c, a, lift)) << pl.to_string();
        EXPECT_TRUE(a.verified());
        EXPECT_EQ(a.certificate.size(), a.generators.size() + 1);
      }
    }
  }
}

TEST(VerifyGaps, Examples) {
  const Curve& c = curve_for(2);
  std::mt19937_64 rng(4);
  const auto generic = semigroup_at(c, c.sample_place(8, rng).value());
  const auto eg = verify_gaps(c, generic);
  ASSERT_EQ(eg.size(), 12U);
  EXPECT_EQ(eg.back().value, 19);
  EXPECT_EQ(eg.back().witness, "F_P^2 * 1");

  const auto special = semigroup_at(c, c.sample_place(7, rng).value());
  const auto es = verify_gaps(c, special);
  const auto it = std::find_if(es.begin(), es.end(), [](const CertificateEntry& e) { return e.value == 8; });
  ASSERT_NE(it, es.end());
  EXPECT_EQ(it->witness, "g_1");
  EXPECT_EQ(it->v_at_p, 7);
  EXPECT_EQ(it->pole_bound, 21);
}

TEST(VerifyGaps, RejectsAWrongGapSet) {
  const Curve& c = curve_for(2);
  std::mt19937_64 rng(5);
  auto a = semigroup_at(c, c.sample_place(8, rng).value());
  // Pretend the place were special (6, 1): gap 8 has no witness at a generic place.
  a.gaps = gapsets::special_gaps(c.q(), 6, 1);
  EXPECT_THROW(verify_gaps(c, a), VerificationError);
}

TEST(Oracle, DimensionIsTheGenus) {
  EXPECT_EQ(oracle_for(2).dimension(), 12U);
  EXPECT_EQ(oracle_for(3).dimension(), 117U);
  EXPECT_EQ(oracle_for(2).gaps_at_infinity(), semigroup_at(curve_for(2), curve_for(2).infinity()).gaps.gaps());
  EXPECT_EQ(oracle_for(3).gaps_at_infinity(), semigroup_at(curve_for(3), curve_for(3).infinity()).gaps.gaps());
}

TEST(Oracle, EveryRationalPlaceQ9) {
  const Curve& c = curve_for(2);
  for (const auto& pl : c.enumerate_rational()) {
    ASSERT_EQ(oracle_for(2).gaps_at(pl), semigroup_at(c, pl).gaps.gaps()) << pl.to_string();
  }
}

TEST(Oracle, SampledPlacesQ9) {
  const Curve& c = curve_for(2);
  std::mt19937_64 rng(12);
  for (std::uint64_t n : default_gamma_orders(c.q())) {
    for (int rep = 0; rep < 3; ++rep) {
      const auto pl = c.sample_place(n, rng).value();
      EXPECT_EQ(oracle_for(2).gaps_at(pl), semigroup_at(c, pl).gaps.gaps()) << pl.cls.to_string();
    }
  }
}

TEST(Oracle, OnePlacePerClassQ27) {
  const Curve& c = curve_for(3);
  std::set<std::pair<ClassKind, std::uint64_t>> seen;
  for (const auto& pl : c.enumerate_rational()) {
    if (pl.at_infinity || !seen.insert({pl.cls.kind, pl.cls.i}).second) continue;
    EXPECT_EQ(oracle_for(3).gaps_at(pl), semigroup_at(c, pl).gaps.gaps()) << pl.cls.to_string();
  }
  std::mt19937_64 rng(13);
  for (std::uint64_t n : {5, 8, 10, 13, 16, 19, 20, 22, 26}) {
    const auto pl = c.sample_place(n, rng).value();
    EXPECT_EQ(oracle_for(3).gaps_at(pl), semigroup_at(c, pl).gaps.gaps()) << pl.cls.to_string();
  }
}

TEST(Census, Q9) {
  const auto rep = full_census(curve_for(2));
  EXPECT_EQ(rep.tag_counts.at(ClassKind::Infinity), 1U);
  EXPECT_EQ(rep.tag_counts.at(ClassKind::BetaZero), 27U);
  EXPECT_EQ(rep.tag_counts.at(ClassKind::BetaOne), 54U);
  EXPECT_EQ(rep.tag_counts.at(ClassKind::RationalGeneral), 216U);
  EXPECT_EQ(rep.rational_p_orders, (std::map<std::uint64_t, std::size_t>{{4, 108}, {9, 108}}));
  EXPECT_TRUE(rep.orbit_consistent);
  EXPECT_EQ(rep.orbits, 7U);
  EXPECT_EQ(rep.failures, 0U) << (rep.failure_messages.empty() ? "" : rep.failure_messages.front());
  EXPECT_TRUE(rep.unrealized_gamma_orders.empty());
  for (const auto& s : rep.classes) EXPECT_EQ(s.certified, s.places) << s.cls.to_string();
}

TEST(Census, Q27) {
  const auto rep = full_census(curve_for(3));
  EXPECT_EQ(rep.rational_p_orders, (std::map<std::uint64_t, std::size_t>{{3, 486}, {6, 1458}, {13, 1458}, {27, 2916}}));
  EXPECT_EQ(rep.tag_counts.at(ClassKind::BetaZero), 243U);
  EXPECT_EQ(rep.tag_counts.at(ClassKind::BetaOne), 486U);
  EXPECT_TRUE(rep.orbit_consistent);
  EXPECT_EQ(rep.failures, 0U) << (rep.failure_messages.empty() ? "" : rep.failure_messages.front());
  for (const auto& s : rep.classes) EXPECT_EQ(s.certified, s.places) << s.cls.to_string();

  // Distinct gap sets: one per rational type (i in {13, 27} gives the beta = 1 set), generic, and each special
  // ladder. Special classes with the same K and ladder length share a gap set.
  std::map<std::string, numsemi::GapSet> by_type;
  for (const auto& s : rep.classes) {
    std::string key;
    switch (s.cls.kind) {
      case ClassKind::RationalGeneral:
        key = s.cls.i == 13 || s.cls.i == 27 ? "beta-one" : "rational-i" + std::to_string(s.cls.i);
        break;
      case ClassKind::NonRationalSpecial:
        key = "special-K" + std::to_string(s.cls.K) + "-rungs" + std::to_string((9 - s.cls.K - 2) / (s.cls.i + 1) + 1);
        break;
      default:
        key = curve::to_string(s.cls.kind);
    }
    auto [it, fresh] = by_type.emplace(key, s.gaps);
    if (!fresh) EXPECT_EQ(it->second, s.gaps) << key;
  }
  for (auto x = by_type.begin(); x != by_type.end(); ++x)
    for (auto y = std::next(x); y != by_type.end(); ++y) EXPECT_NE(x->second, y->second) << x->first << " vs " << y->first;
  EXPECT_GE(by_type.size(), 12U);
}

TEST(Separation, RationalPlaces) {
  for (int t : {2, 3}) {
    const Curve& c = curve_for(t);
    const int q = c.q();
    for (const auto& pl : c.enumerate_rational()) {
      const auto a = semigroup_at(c, pl);
      EXPECT_EQ(a.gaps.contains(2 * q / 3), pl.at_infinity) << pl.to_string();
      if (!pl.at_infinity) EXPECT_EQ(a.gaps.contains_gap(2 * q - 3), pl.beta.is_zero()) << pl.to_string();
    }
  }
}

}  // namespace
}  // namespace z3ws::weier
