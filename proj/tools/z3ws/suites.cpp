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

#include "suites.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "z3ws/autgroup.hpp"
#include "z3ws/polyfam.hpp"
#include "z3ws/series.hpp"
#include "z3ws/weier.hpp"

namespace z3ws::cli {
namespace {

using curve::ClassKind;
using ff::FieldElement;

FieldElement random_beta(const curve::Curve& curve, std::mt19937_64& rng) {
  for (;;) {
    const auto b = curve.base().random(rng);
    if (!b.is_zero() && !b.is_one()) return b;
  }
}

json valuation_cert(const std::string& name, int got, int want) {
  json c;
  c["function"] = name;
  c["valuation"] = got;
  c["expected"] = want;
  c["ok"] = got == want;
  return c;
}

json entry_json(const weier::CertificateEntry& e) {
  json c;
  c["kind"] = weier::to_string(e.kind);
  c["value"] = e.value;
  c["witness"] = e.witness;
  c["v_at_p"] = e.v_at_p;
  c["pole_bound"] = e.pole_bound;
  c["verified"] = e.verified;
  return c;
}

// Valuation claims at one place and lift; appends certificates, returns the number of mismatches.
int place_valuations(const curve::Curve& curve, const curve::Place& pl, int lift, int prec, json& certs) {
  const int m = curve.m();
  const int q = curve.q();
  const series::PlaceExpansion pe(curve, pl, lift, prec);
  int bad = 0;
  auto add = [&](const std::string& name, int got, int want) {
    auto c = valuation_cert(name, got, want);
    c["lift"] = lift;
    bad += got == want ? 0 : 1;
    certs.push_back(std::move(c));
  };
  if (pl.cls.kind == ClassKind::BetaOne) {
    for (int j = 0; j < m; ++j) add("h_" + std::to_string(j), pe.h()[j].valuation(), 3 * j + 2);
    return bad;
  }
  const int i = static_cast<int>(pl.cls.i);
  const int K = static_cast<int>(pl.cls.K);
  const auto fam = polyfam::eval_recursive_upto(std::max(i, K) + 2, pe.basis().beta);
  for (int j = 0; j < std::min(i, m); ++j) add("f_" + std::to_string(j), pe.f()[j].valuation(), 3 * j + 2);
  if (i <= m - 1) add("f_" + std::to_string(i), pe.f()[i].valuation(), 3 * i + 3);
  for (int l = 0; l < std::min(K, m - 1); ++l) add("g_" + std::to_string(l), pe.g()[l].valuation(), 3 * l + 3);
  if (K <= m - 2) add("g_" + std::to_string(K), pe.g()[K].valuation(), 3 * K + 4);
  // Leading pairs against the polynomial families, below T^q.
  for (std::size_t j = 0; j < pe.f().size(); ++j) {
    const int k = 3 * static_cast<int>(j) + 2;
    bool ok = pe.f()[j].coeff(k) == fam[j + 1].p && (k + 1 >= q || pe.f()[j].coeff(k + 1) == fam[j + 1].q);
    add("f_" + std::to_string(j) + " leading pair = (P, Q)_" + std::to_string(j + 1), ok ? 1 : 0, 1);
  }
  for (std::size_t l = 0; l < pe.g().size(); ++l) {
    const int k = 3 * static_cast<int>(l) + 3;
    bool ok = pe.g()[l].coeff(k) == fam[l + 1].r && (k + 1 >= q || pe.g()[l].coeff(k + 1) == fam[l + 1].p);
    add("g_" + std::to_string(l) + " leading pair = (R, P)_" + std::to_string(l + 1), ok ? 1 : 0, 1);
  }
  return bad;
}

}  // namespace

json check_json(const Check& c) {
  json out;
  out["suite"] = c.suite;
  out["check"] = c.name;
  out["passed"] = c.passed;
  out["detail"] = c.detail;
  out["certificates"] = c.certificates;
  return out;
}

std::vector<Check> run_polyfam(const curve::Curve& curve, const SuiteOptions& opt, LevelLog&) {
  std::vector<Check> out;
  std::mt19937_64 rng(opt.seed);
  {
    Check c{"polyfam", "recursive = closed form, i <= 50", true, "", json::array()};
    int compared = 0;
    for (int s = 0; s < opt.betas; ++s) {
      const auto beta = random_beta(curve, rng);
      const auto rec = polyfam::eval_recursive_upto(50, beta);
      for (int i = 0; i <= 50; ++i) {
        ++compared;
        if (!(polyfam::eval_closed(i, beta, curve.tower()) == rec[i])) {
          c.passed = false;
          c.certificates.push_back({{"beta", beta.to_string()}, {"i", i}});
        }
      }
    }
    c.detail = std::to_string(compared) + " triples at " + std::to_string(opt.betas) + " random beta";
    out.push_back(c);
  }
  {
    Check c{"polyfam", "identities, i, j, l <= 10", true, "", json::array()};
    const int betas = std::max(1, opt.betas / 4);
    for (int s = 0; s < betas; ++s) {
      const auto beta = random_beta(curve, rng);
      for (int i = 0; i <= 10; ++i)
        for (int j = 0; j <= 10; ++j)
          for (int l = 0; l <= 10; ++l) {
            if (!polyfam::identity_check(i, j, l, beta)) {
              c.passed = false;
              c.certificates.push_back({{"beta", beta.to_string()}, {"i", i}, {"j", j}, {"l", l}});
            }
          }
    }
    c.detail = "all 1331 index triples at " + std::to_string(betas) + " random beta";
    out.push_back(c);
  }
  {
    Check c{"polyfam", "corollary R_i = R_{i-1} s (s-1)^2 + P_i / s, symbolic, i <= 12", true, "", json::array()};
    for (int i = 1; i <= 12; ++i) {
      const bool ok = polyfam::corollary_check_symbolic(i);
      c.passed = c.passed && ok;
      c.certificates.push_back({{"i", i}, {"ok", ok}});
    }
    out.push_back(c);
  }
  return out;
}

std::vector<Check> run_valuations(const curve::Curve& curve, const SuiteOptions& opt, LevelLog& log) {
  std::vector<Check> out;
  std::set<std::pair<ClassKind, std::uint64_t>> seen;
  for (const auto& pl : curve.enumerate_rational()) {
    if (pl.at_infinity || pl.cls.kind == ClassKind::BetaZero || !seen.insert({pl.cls.kind, pl.cls.i}).second) continue;
    Check c{"valuations", pl.cls.to_string() + " rational", true, "", json::array()};
    int bad = 0;
    for (int lift = 0; lift < 3; ++lift) bad += place_valuations(curve, pl, lift, opt.prec, c.certificates);
    c.passed = bad == 0;
    c.detail = "place " + place_json(curve, pl, log).dump();
    out.push_back(std::move(c));
  }
  std::mt19937_64 rng(opt.seed);
  for (std::uint64_t n : weier::default_gamma_orders(curve.q())) {
    Check c{"valuations", "gamma order " + std::to_string(n), true, "", json::array()};
    int places = 0, bad = 0;
    for (int s = 0; s < opt.samples; ++s) {
      const auto pl = curve.sample_place(n, rng);
      if (!pl) break;
      ++places;
      c.name = pl->cls.to_string();
      for (int lift = 0; lift < 3; ++lift) bad += place_valuations(curve, *pl, lift, opt.prec, c.certificates);
    }
    if (places == 0) {
      c.detail = "not realizable within the tower";
      c.name = "gamma order " + std::to_string(n);
      c.passed = true;
    } else {
      c.passed = bad == 0;
      c.detail = std::to_string(places) + " sampled places, 3 lifts each";
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Check> run_semigroups(const curve::Curve& curve, const SuiteOptions& opt, LevelLog& log) {
  std::vector<Check> out;
  weier::CensusOptions co;
  co.seed = opt.seed;
  co.samples_per_class = opt.samples;
  co.prec = opt.prec;
  const auto rep = weier::full_census(curve, co);
  {
    Check c{"semigroups", "census", rep.failures == 0, "", json::array()};
    std::ostringstream d;
    for (const auto& [tag, n] : rep.tag_counts) d << curve::to_string(tag) << ":" << n << " ";
    d << "| certificate entries " << rep.certificate_entries << ", failures " << rep.failures;
    c.detail = d.str();
    for (const auto& s : rep.classes) {
      c.certificates.push_back({{"class", s.cls.to_string()},
                                {"places", s.places},
                                {"certified", s.certified},
                                {"genus", s.gaps.genus()},
                                {"gaps", gaps_json(s.gaps)}});
      if (s.certified != s.places || s.gaps.genus() != curve.genus()) c.passed = false;
    }
    for (const auto& msg : rep.failure_messages) c.certificates.push_back({{"failure", msg}});
    out.push_back(std::move(c));
  }
  {
    const std::uint64_t q2 = static_cast<std::uint64_t>(curve.q()) * static_cast<std::uint64_t>(curve.q());
    std::size_t total = 0;
    for (const auto& [tag, n] : rep.tag_counts) {
      if (tag != ClassKind::NonRationalGeneric && tag != ClassKind::NonRationalSpecial) total += n;
    }
    const bool ok = total == curve.rational_place_count() && rep.tag_counts.count(ClassKind::BetaZero) &&
                    rep.tag_counts.at(ClassKind::BetaZero) == q2 / 3 && rep.tag_counts.at(ClassKind::BetaOne) == 2 * q2 / 3;
    out.push_back({"semigroups", "rational place counts", ok,
                   std::to_string(total) + " rational places, " + std::to_string(rep.rational_p_orders.size()) + " P-orders",
                   json::array()});
    auto& c = out.back();
    for (const auto& [i, n] : rep.rational_p_orders) c.certificates.push_back({{"i", i}, {"places", n}});
  }
  out.push_back({"semigroups", "orbit consistency", rep.orbit_consistent, std::to_string(rep.orbits) + " orbits",
                 json::array()});
  {
    // One fully listed certificate per rational class.
    Check c{"semigroups", "class representatives", true, "", json::array()};
    std::set<std::pair<ClassKind, std::uint64_t>> seen;
    for (const auto& pl : curve.enumerate_rational()) {
      if (!seen.insert({pl.cls.kind, pl.cls.i}).second) continue;
      auto a = weier::semigroup_at(curve, pl);
      try {
        weier::certify(curve, a, 0, opt.prec);
      } catch (const std::exception& ex) {
        c.passed = false;
        c.detail += ex.what();
      }
      json entries = json::array();
      for (const auto& e : a.certificate) entries.push_back(entry_json(e));
      c.certificates.push_back({{"place", place_json(curve, pl, log)}, {"entries", entries}});
    }
    out.push_back(std::move(c));
  }
  {
    Check c{"semigroups", "separation: 2q/3 and 2q-3", true, "", json::array()};
    const int q = curve.q();
    std::size_t checked = 0;
    for (const auto& pl : curve.enumerate_rational()) {
      const auto a = weier::semigroup_at(curve, pl);
      ++checked;
      const bool two_m_ok = a.gaps.contains(2 * q / 3) == pl.at_infinity;
      const bool sep_ok = pl.at_infinity || a.gaps.contains_gap(2 * q - 3) == pl.beta.is_zero();
      if (!two_m_ok || !sep_ok) {
        c.passed = false;
        c.certificates.push_back({{"place", place_json(curve, pl, log)}});
      }
    }
    c.detail = std::to_string(checked) + " rational places";
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Check> run_autgroup(const curve::Curve& curve, const SuiteOptions& opt, LevelLog&) {
  std::vector<Check> out;
  const autgroup::AutGroup g(curve);
  const std::uint64_t q = static_cast<std::uint64_t>(curve.q());
  out.push_back({"autgroup", "order 2q^2/3", g.order() == 2 * q * q / 3, std::to_string(g.order()) + " elements",
                 json::array()});
  {
    const auto& els = g.elements();
    std::set<std::string> keys;
    for (const auto& s : els) keys.insert(s.to_string());
    auto contains = [&](const autgroup::Automorphism& s) { return keys.count(s.to_string()) != 0; };
    const auto id = g.identity();
    bool ok = true;
    std::size_t triples = 0;
    std::mt19937_64 rng(opt.seed);
    const bool exhaustive = els.size() <= 64;
    const std::size_t n = els.size();
    const std::size_t budget = exhaustive ? n * n * n : 200000;
    for (std::size_t k = 0; k < budget && ok; ++k) {
      const auto& s = exhaustive ? els[k / (n * n)] : els[rng() % n];
      const auto& t = exhaustive ? els[(k / n) % n] : els[rng() % n];
      const auto& u = exhaustive ? els[k % n] : els[rng() % n];
      ok = compose(compose(s, t), u) == compose(s, compose(t, u)) && contains(compose(s, t)) &&
           compose(s, autgroup::inverse(s)) == id && compose(id, s) == s;
      ++triples;
    }
    out.push_back({"autgroup", "group axioms", ok,
                   std::string(exhaustive ? "exhaustive, " : "sampled, ") + std::to_string(triples) + " triples",
                   json::array()});
  }
  const auto places = curve.enumerate_rational();
  {
    bool ok = true;
    for (const auto& s : g.generators()) {
      for (const auto& pl : places) {
        const auto img = g.apply(s, pl);
        ok = ok && img.rational() && img.cls == pl.cls;
      }
    }
    out.push_back({"autgroup", "generators preserve the curve and the class", ok,
                   std::to_string(g.generators().size()) + " generators on " + std::to_string(places.size()) + " places",
                   json::array()});
  }
  {
    const auto origin = curve.place_from_coords(curve.base().zero(), curve.base().zero());
    const auto orbit = g.orbit(origin);
    std::set<curve::PlaceKey> orbit_keys, beta0;
    for (const auto& p : orbit) orbit_keys.insert(p.key());
    for (const auto& p : places) {
      if (!p.at_infinity && p.beta.is_zero()) beta0.insert(p.key());
    }
    out.push_back({"autgroup", "orbit of P(0,0) = beta-zero places", orbit_keys == beta0,
                   std::to_string(orbit.size()) + " places", json::array()});
  }
  {
    const auto orbits = g.orbits(places);
    std::size_t total = 0;
    std::map<std::size_t, std::size_t> sizes;
    bool ok = true;
    for (const auto& o : orbits) {
      total += o.size();
      ++sizes[o.size()];
      ok = ok && g.order() % o.size() == 0;
      for (const auto& p : o) ok = ok && p.cls == o.front().cls;
    }
    Check c{"autgroup", "orbits partition the rational places", ok && total == places.size(), "", json::array()};
    std::ostringstream d;
    for (const auto& [size, count] : sizes) {
      d << size << "x" << count << " ";
      c.certificates.push_back({{"orbit_size", size}, {"orbits", count}});
    }
    c.detail = d.str();
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace z3ws::cli
