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
#include <random>
#include <set>

#include "z3ws/autgroup.hpp"

namespace z3ws::autgroup {
namespace {

using curve::ClassKind;

TEST(AutGroup, OrderIsTwoQSquaredOverThree) {
  const Curve c9(2, {}), c27(3, {});
  EXPECT_EQ(AutGroup(c9).order(), 54U);
  EXPECT_EQ(AutGroup(c27).order(), 486U);
}

TEST(AutGroup, ConstructionRejectsNonElements) {
  const Curve c(2, {});
  const AutGroup g(c);
  const auto& f = c.base();
  EXPECT_THROW(g.make(f.one(), f.zero(), 1), std::invalid_argument);
  EXPECT_THROW(g.make(f.zero(), f.one(), 1), std::invalid_argument);
  EXPECT_THROW(g.make(f.zero(), f.zero(), 0), std::invalid_argument);
}

TEST(AutGroup, GroupAxiomsExhaustiveQ9) {
  const Curve c(2, {});
  const AutGroup g(c);
  const auto& els = g.elements();
  auto contains = [&](const Automorphism& s) { return std::find(els.begin(), els.end(), s) != els.end(); };
  const auto id = g.identity();
  for (const auto& s : els) {
    EXPECT_EQ(compose(s, inverse(s)), id);
    EXPECT_EQ(compose(inverse(s), s), id);
    EXPECT_EQ(compose(s, id), s);
    EXPECT_EQ(compose(id, s), s);
    for (const auto& t : els) {
      const auto st = compose(s, t);
      ASSERT_TRUE(contains(st));
      for (const auto& u : els) ASSERT_EQ(compose(st, u), compose(s, compose(t, u)));
    }
  }
  const auto flip = g.sign_flip();
  EXPECT_TRUE(compose(flip, flip).is_identity());
  // Translations commute.
  for (const auto& s : els) {
    for (const auto& t : els) {
      if (s.sign == 1 && t.sign == 1) EXPECT_EQ(compose(s, t), compose(t, s));
    }
  }
}

TEST(AutGroup, CompositionMatchesActionAndElementsAreDistinct) {
  const Curve c(2);
  const AutGroup g(c);
  std::mt19937_64 rng(5);
  const auto pl = c.sample_place(13, rng).value();
  std::set<curve::PlaceKey> images;
  for (const auto& s : g.elements()) {
    images.insert(g.apply(s, pl).key());
    for (int k = 0; k < 3; ++k) {
      const auto& t = g.elements()[rng() % g.order()];
      EXPECT_EQ(g.apply(compose(s, t), pl), g.apply(s, g.apply(t, pl)));
    }
  }
  EXPECT_EQ(images.size(), g.order());
}

TEST(AutGroup, PreservesCurveOverExtensions) {
  const Curve c(2);
  const AutGroup g(c);
  std::mt19937_64 rng(8);
  int points = 0;
  for (int level : {8, 12, 16, 24}) {
    const auto& f = c.tower().level(level);
    for (int trial = 0; trial < 2000 && points < 50 * (level / 8 + 1); ++trial) {
      const auto b = f.random(rng);
      const auto pb = c.p(b);
      const auto sol = ff::solve_linear(f, [](const FieldElement& x) { return x.frobenius(2) + x; }, -(pb * pb));
      if (!sol) continue;
      ASSERT_TRUE(c.on_curve(sol->particular, b));
      for (int k = 0; k < 5; ++k) {
        const auto& s = g.elements()[rng() % g.order()];
        const auto [x, y] = g.apply_point(s, sol->particular, b);
        ASSERT_TRUE(c.on_curve(x, y));
        const auto py = c.p(y);
        EXPECT_EQ(py * py, c.tower().embed(pb * pb, py.degree()));
      }
      ++points;
    }
  }
  EXPECT_GE(points, 200);
}

TEST(AutGroup, FixedPoints) {
  const Curve c(2, {});
  const AutGroup g(c);
  const auto& f = c.base();
  EXPECT_EQ(g.apply(g.elements()[7], c.infinity()), c.infinity());
  const auto flip = g.sign_flip();
  for (u128 k = 0; k < f.size(); ++k) {
    const auto a = f.from_index(k);
    if (!(a.frobenius(2) + a).is_zero()) continue;
    const auto pl = c.place_from_coords(a, f.zero());
    EXPECT_EQ(g.apply(flip, pl), pl);
  }
}

TEST(AutGroup, OrbitsQ9) {
  const Curve c(2, {});
  const AutGroup g(c);
  const auto places = c.enumerate_rational();
  const auto origin = c.place_from_coords(c.base().zero(), c.base().zero());
  const auto orb = g.orbit(origin);
  std::set<curve::PlaceKey> orbit_keys, beta_zero;
  for (const auto& p : orb) orbit_keys.insert(p.key());
  for (const auto& p : places) {
    if (p.cls.kind == ClassKind::BetaZero) beta_zero.insert(p.key());
  }
  EXPECT_EQ(orbit_keys, beta_zero);
  EXPECT_EQ(g.orbit(c.infinity()).size(), 1U);

  std::multiset<std::size_t> sizes;
  std::size_t total = 0;
  for (const auto& o : g.orbits(places)) {
    sizes.insert(o.size());
    total += o.size();
    for (const auto& p : o) EXPECT_EQ(p.beta, o.front().beta);
  }
  EXPECT_EQ(total, 298U);
  EXPECT_EQ(sizes, (std::multiset<std::size_t>{1, 27, 54, 54, 54, 54, 54}));
}

TEST(AutGroup, OrbitsQ27) {
  const Curve c(3, {});
  const AutGroup g(c);
  const auto orbits = g.orbits(c.enumerate_rational());
  std::map<std::size_t, int> sizes;
  for (const auto& o : orbits) sizes[o.size()]++;
  EXPECT_EQ(sizes, (std::map<std::size_t, int>{{1, 1}, {243, 1}, {486, 14}}));
}

}  // namespace
}  // namespace z3ws::autgroup
