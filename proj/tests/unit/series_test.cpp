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

#include <chrono>
#include <map>
#include <memory>
#include <random>

#include "z3ws/gapsets.hpp"
#include "z3ws/polyfam.hpp"
#include "z3ws/series.hpp"

namespace z3ws::series {
namespace {

using curve::ClassKind;

const Curve& curve_for(int t) {
  static std::map<int, std::unique_ptr<Curve>> cache;
  auto& c = cache[t];
  if (!c) c = std::make_unique<Curve>(t);
  return *c;
}

Place first_rational(const Curve& c, ClassKind kind, std::uint64_t i = 0) {
  for (const auto& p : c.enumerate_rational()) {
    if (p.cls.kind == kind && (i == 0 || p.cls.i == i)) return p;
  }
  throw std::runtime_error("no such rational place");
}

TEST(TruncatedSeries, Arithmetic) {
  const Field f(4);
  const auto one = f.one();
  auto t = TruncatedSeries::monomial(one, 1, 10);
  auto s = TruncatedSeries::constant(one, 10) + t;  // 1 + T
  const auto cube = s.pow(3);                        // 1 + T^3 in characteristic 3
  EXPECT_TRUE(cube.coeff(0).is_one());
  EXPECT_TRUE(cube.coeff(1).is_zero());
  EXPECT_TRUE(cube.coeff(3).is_one());
  EXPECT_EQ(s.frobenius(1).coeff(3), one);
  EXPECT_EQ((t * t).valuation(), 2);
  // Precision of a product of series with positive valuation.
  const auto t5 = TruncatedSeries::monomial(one, 5, 8);
  EXPECT_EQ((t5 * s).prec(), 8);
  EXPECT_EQ((t5 * TruncatedSeries::monomial(one, 2, 6)).prec(), 8);
  EXPECT_TRUE(TruncatedSeries(f, 5).is_zero_to_prec());
  EXPECT_THROW(t.set_coeff(10, one), std::out_of_range);
}

TEST(Expansion, CoordinateSeriesAreExact) {
  for (int t : {2, 3}) {
    const Curve& c = curve_for(t);
    const int q = c.q();
    std::mt19937_64 rng(40 + t);
    std::vector<Place> places{first_rational(c, ClassKind::BetaOne), first_rational(c, ClassKind::RationalGeneral)};
    for (std::uint64_t n : {4, 7, 13}) {
      if (auto p = c.sample_place(n, rng)) places.push_back(*p);
    }
    for (const auto& pl : places) {
      for (int lift = 0; lift < 3; ++lift) {
        const PlaceExpansion pe(c, pl, lift);
        const auto& b = pe.basis();
        EXPECT_LE(b.newton_iterations, 4);
        const auto& xa = b.x_a;
        const auto& yb = b.y_b;
        EXPECT_TRUE(xa.coeff(0).is_zero());
        EXPECT_TRUE(xa.coeff(1).is_one());
        EXPECT_TRUE(xa.coeff(2).is_one());
        EXPECT_TRUE(yb.coeff(1).is_one());
        EXPECT_EQ(yb.coeff(3), -b.beta);
        EXPECT_TRUE(yb.coeff(2).is_zero());
        for (int k = 3; k < q; ++k) EXPECT_TRUE(xa.coeff(k).is_zero()) << k;
        for (int k = 4; k < q; ++k) EXPECT_TRUE(yb.coeff(k).is_zero()) << k;
        EXPECT_TRUE(b.f0.coeff(2).is_one());
        EXPECT_EQ(b.f0.coeff(3), b.beta);
      }
    }
  }
}

TEST(Expansion, RejectsBadInput) {
  const Curve& c = curve_for(2);
  const auto origin = c.place_from_coords(c.base().zero(), c.base().zero());
  EXPECT_THROW(PlaceExpansion(c, origin), std::invalid_argument);
  EXPECT_THROW(PlaceExpansion(c, c.infinity()), std::invalid_argument);
  const auto pl = first_rational(c, ClassKind::BetaOne);
  const auto lift = c.hermitian_lifts(pl)[0];
  EXPECT_THROW(expand_coordinates(c, pl, lift, 5), std::invalid_argument);
  EXPECT_THROW(expand_coordinates(c, pl, lift, kMaxPrecision + 1), std::invalid_argument);
}

TEST(Chains, LowIndexCoefficients) {
  const Curve& c = curve_for(3);
  std::mt19937_64 rng(3);
  const auto pl = c.sample_place(13, rng).value();
  const PlaceExpansion pe(c, pl);
  const auto beta = pe.basis().beta;
  const auto b2 = beta * beta, b3 = b2 * beta, b4 = b3 * beta;
  const auto& f = pe.f();
  for (int k = 0; k < 5; ++k) EXPECT_TRUE(f[1].coeff(k).is_zero());
  EXPECT_EQ(f[1].coeff(5), b3.scaled(2));
  EXPECT_EQ(f[1].coeff(6), b4 - b3 - b2);
  EXPECT_EQ(f[2].coeff(8), b3);
  EXPECT_EQ(f[2].coeff(9), b4 * b3 + b3 * b3 + b3 * b2 + b4);
  EXPECT_EQ(pe.g()[0].coeff(3), -(beta + beta.field().one()));
  EXPECT_TRUE(pe.g()[0].coeff(4).is_one());
}

// Cross-check against the polynomial families. Coefficients at T^q and beyond are not pinned down.
void check_place(const Curve& c, const Place& pl, int lift) {
  const int m = c.m();
  const int q = c.q();
  const PlaceExpansion pe(c, pl, lift);
  const auto beta = pe.basis().beta;
  const auto i = static_cast<int>(pl.cls.i);
  const auto K = static_cast<int>(pl.cls.K);
  const auto fam = polyfam::eval_recursive_upto(std::max(i, K) + 2, beta);
  const auto& f = pe.f();
  ASSERT_EQ(static_cast<int>(f.size()), std::min(i, m - 1) + 1);
  for (int j = 0; j < static_cast<int>(f.size()); ++j) {
    for (int k = 0; k < 3 * j + 2; ++k) ASSERT_TRUE(f[j].coeff(k).is_zero());
    EXPECT_EQ(f[j].coeff(3 * j + 2), fam[j + 1].p) << "f_" << j;
    if (3 * j + 3 < q) EXPECT_EQ(f[j].coeff(3 * j + 3), fam[j + 1].q) << "f_" << j;
    if (j < std::min(i, m)) EXPECT_EQ(f[j].valuation(), 3 * j + 2);
  }
  if (i <= m - 1) EXPECT_EQ(f[i].valuation(), 3 * i + 3);
  const auto& g = pe.g();
  ASSERT_EQ(static_cast<int>(g.size()), std::min(K, m - 2) + 1);
  for (int l = 0; l < static_cast<int>(g.size()); ++l) {
    for (int k = 0; k < 3 * l + 3; ++k) ASSERT_TRUE(g[l].coeff(k).is_zero());
    EXPECT_EQ(g[l].coeff(3 * l + 3), fam[l + 1].r) << "g_" << l;
    if (3 * l + 4 < q) EXPECT_EQ(g[l].coeff(3 * l + 4), fam[l + 1].p) << "g_" << l;
    if (l < std::min(K, m - 1)) EXPECT_EQ(g[l].valuation(), 3 * l + 3);
  }
  if (K <= m - 2) EXPECT_EQ(g[K].valuation(), 3 * K + 4);
}

TEST(Chains, MatchPolynomialFamiliesAtSampledPlaces) {
  struct Case {
    int t;
    std::uint64_t n;
  };
  for (const auto& [t, n] : std::vector<Case>{{2, 4}, {2, 7}, {2, 8}, {2, 13}, {2, 5}, {2, 10},
                                               {3, 5}, {3, 10}, {3, 13}, {3, 16}, {3, 19}, {3, 20}, {3, 4}, {3, 7}}) {
    const Curve& c = curve_for(t);
    std::mt19937_64 rng(1000 + n);
    // At least 50 places per q across the listed orders.
    for (int rep = 0; rep < (t == 2 ? 9 : 7); ++rep) {
      const auto pl = c.sample_place(n, rng).value();
      for (int lift = 0; lift < 3; ++lift) check_place(c, pl, lift);
    }
  }
}

TEST(Chains, RationalPlacesQ27) {
  const Curve& c = curve_for(3);
  for (std::uint64_t i : {3, 6, 13, 27}) {
    const auto pl = first_rational(c, ClassKind::RationalGeneral, i);
    check_place(c, pl, 0);
  }
  // P-order 3 at q = 27: v(f_0..f_3) = (2, 5, 8, 12).
  const PlaceExpansion pe(c, first_rational(c, ClassKind::RationalGeneral, 3));
  std::vector<int> v;
  for (const auto& s : pe.f()) v.push_back(s.valuation());
  EXPECT_EQ(v, (std::vector<int>{2, 5, 8, 12}));
}

TEST(Chains, PastTheTheoremAtQ9) {
  // i = 3 exceeds m - 1 = 2 at q = 9, so the T^q tail reaches f_3 before T^12.
  const Curve& c = curve_for(2);
  std::mt19937_64 rng(2);
  const auto pl = c.sample_place(4, rng).value();
  const PlaceExpansion pe(c, pl);
  const auto f = build_f_chain(pe.basis(), 3, pl.cls.i);
  EXPECT_EQ(f[0].valuation(), 2);
  EXPECT_EQ(f[1].valuation(), 5);
  EXPECT_EQ(f[2].valuation(), 8);
  EXPECT_LT(f[3].valuation(), 12);
  EXPECT_THROW(build_f_chain(pe.basis(), 4, pl.cls.i), std::invalid_argument);
  EXPECT_THROW(build_g_chain(pe.basis(), f, 1, pl.cls.K), std::invalid_argument);
}

TEST(Chains, BetaOne) {
  for (int t : {2, 3}) {
    const Curve& c = curve_for(t);
    const auto pl = first_rational(c, ClassKind::BetaOne);
    for (int lift = 0; lift < 3; ++lift) {
      const PlaceExpansion pe(c, pl, lift);
      const auto& h = pe.h();
      ASSERT_EQ(static_cast<int>(h.size()), c.m());
      for (int j = 0; j < c.m(); ++j) {
        EXPECT_EQ(h[j].valuation(), 3 * j + 2);
        EXPECT_TRUE(h[j].coeff(3 * j + 2).is_one());
        if (3 * j + 3 < c.q()) EXPECT_TRUE(h[j].coeff(3 * j + 3).is_one());
        for (int k = 3 * j + 4; k < c.q(); ++k) EXPECT_TRUE(h[j].coeff(k).is_zero()) << j << " " << k;
      }
    }
    EXPECT_THROW(build_beta1_chain(PlaceExpansion(c, first_rational(c, ClassKind::RationalGeneral)).basis(), 1),
                 std::invalid_argument);
  }
}

TEST(BetaZero, Expansion) {
  for (int t : {2, 3}) {
    const Curve& c = curve_for(t);
    for (const auto& pl : c.enumerate_rational()) {
      if (pl.cls.kind != ClassKind::BetaZero) continue;
      const auto e = expand_beta_zero(c, pl, 2 * c.q() + 1);
      EXPECT_EQ(e.x_minus_a.valuation(), 2);
      EXPECT_EQ(e.x_minus_a.coeff(2), -c.base().one());
      // X^q + X + p(s)^2 = 0 to the working precision.
      TruncatedSeries ps(c.base(), e.y_minus_b.prec());
      for (int r = 0; r < t; ++r) ps = ps + e.y_minus_b.frobenius(r);
      EXPECT_TRUE((e.x_minus_a.frobenius(t) + e.x_minus_a + ps * ps).is_zero_to_prec());
      if (t == 3) break;
    }
  }
}

void check_all_gaps(const Curve& c, const Place& pl, int lift) {
  const PlaceExpansion pe(c, pl, lift);
  const auto gaps = pl.cls.kind == ClassKind::NonRationalGeneric ? gapsets::generic_gaps(c.q())
                                                                  : gapsets::special_gaps(c.q(), pl.cls.i, pl.cls.K);
  ASSERT_EQ(gaps.genus(), c.genus());
  for (int gap : gaps.gaps()) {
    const auto w = pe.gap_witness(gap);
    EXPECT_EQ(w.v_at_p, gap - 1) << pl.cls.to_string() << " gap " << gap << " via " << w.description;
    EXPECT_LE(w.pole_bound, c.canonical_degree()) << pl.cls.to_string() << " gap " << gap << " via " << w.description;
    EXPECT_GE(w.fp_exponent, 0);
  }
}

TEST(GapWitnesses, EveryGapAtSampledPlaces) {
  struct Case {
    int t;
    std::uint64_t n;
  };
  for (const auto& [t, n] : std::vector<Case>{{2, 4}, {2, 7}, {2, 8}, {2, 13}, {2, 14}, {3, 5}, {3, 10}, {3, 13},
                                               {3, 16}, {3, 19}, {3, 20}, {3, 22}, {3, 26}}) {
    const Curve& c = curve_for(t);
    std::mt19937_64 rng(77 + n);
    for (int rep = 0; rep < 3; ++rep) {
      const auto pl = c.sample_place(n, rng);
      ASSERT_TRUE(pl.has_value()) << t << " " << n;
      check_all_gaps(c, *pl, rep);
    }
  }
}

TEST(GapWitnesses, TableEntries) {
  const Curve& c = curve_for(2);
  std::mt19937_64 rng(5);
  const auto generic = c.sample_place(13, rng).value();
  const PlaceExpansion pe(c, generic);
  EXPECT_EQ(pe.gap_witness_generic(0, 1).v_at_p, 0);
  EXPECT_EQ(pe.gap_witness_generic(0, 2).description, "x_a");
  EXPECT_EQ(pe.gap_witness_generic(2, 1).v_at_p, 18);
  EXPECT_EQ(pe.gap_witness(19).description, "F_P^2 * 1");
  EXPECT_THROW(pe.gap_witness_generic(0, 8), std::invalid_argument);
  EXPECT_THROW(pe.gap_witness(8), std::invalid_argument);

  // Class (6, 1): gap 8 comes from g_1 alone with pole bound 7m = 21 <= 22.
  const auto special = c.sample_place(7, rng).value();
  const PlaceExpansion ps(c, special);
  const auto w = ps.gap_witness_special(0, 8);
  EXPECT_EQ(w.description, "g_1");
  EXPECT_EQ(w.v_at_p, 7);
  EXPECT_EQ(w.pole_bound, 21);
  EXPECT_THROW(ps.gap_witness_special(0, 7), std::invalid_argument);
}

TEST(GapWitnesses, LiftIndependence) {
  const Curve& c = curve_for(3);
  std::mt19937_64 rng(6);
  const auto pl = c.sample_place(16, rng).value();
  std::vector<std::vector<int>> vals(3);
  for (int lift = 0; lift < 3; ++lift) {
    const PlaceExpansion pe(c, pl, lift);
    for (const auto& s : pe.f()) vals[lift].push_back(s.valuation());
    for (const auto& s : pe.g()) vals[lift].push_back(s.valuation());
  }
  EXPECT_EQ(vals[0], vals[1]);
  EXPECT_EQ(vals[0], vals[2]);
}

TEST(Timing, PlaceAtQ27UnderAMinute) {
  const Curve& c = curve_for(3);
  std::mt19937_64 rng(8);
  const auto pl = c.sample_place(19, rng).value();
  const auto start = std::chrono::steady_clock::now();
  check_all_gaps(c, pl, 0);
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 60.0);
}

}  // namespace
}  // namespace z3ws::series
