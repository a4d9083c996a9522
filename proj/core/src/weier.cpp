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

#include "z3ws/weier.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "z3ws/autgroup.hpp"
#include "z3ws/gapsets.hpp"
#include "z3ws/series.hpp"

namespace z3ws::weier {
namespace {

using series::Factor;
using series::TrackedFunction;

numsemi::GapSet gaps_of(const std::vector<int>& gens) {
  return numsemi::NumericalSemigroup::from_generators(std::set<int>(gens.begin(), gens.end())).gap_set();
}

void require_genus(const Curve& curve, const numsemi::GapSet& gaps, const std::string& what) {
  if (gaps.genus() != curve.genus()) {
    throw std::logic_error(what + ": " + std::to_string(gaps.genus()) + " gaps, genus is " + std::to_string(curve.genus()));
  }
}

CertificateEntry nongap_entry(int n, const TrackedFunction& w) {
  CertificateEntry e;
  e.kind = EntryKind::NonGap;
  e.value = n;
  e.witness = w.description;
  e.v_at_p = w.v_at_p;
  e.pole_bound = w.pole_bound;
  e.verified = -w.v_at_p == n && w.pole_bound <= 0;
  return e;
}

// Pole orders at P_inf from the Hermitian weights: v(u) = -(q+1), v(v) = -q at Q_inf, ramification 3.
std::vector<CertificateEntry> infinity_witnesses(const Curve& curve) {
  const int q = curve.q();
  const int pole_x = std::max(q + 1, 2 * q) / 3;  // x = -(u + v^2)
  const int pole_y = 3 * q / 3;                   // y = v^3 - v
  std::vector<CertificateEntry> out;
  auto add = [&](int n, std::string name) {
    CertificateEntry e;
    e.value = n;
    e.witness = std::move(name);
    e.v_at_p = -n;
    e.pole_bound = 0;
    e.verified = true;
    out.push_back(e);
  };
  add(pole_x, "x");
  add(pole_y, "y");
  add(q + 1, "F_Q for a rational Q, (F_Q) = (q+1)(Q - P_inf)");
  return out;
}

std::vector<TrackedFunction> rational_witnesses(const Curve& curve, const Place& place, int lift_index, int prec) {
  const int q = curve.q();
  const int m = curve.m();
  if (prec == 0) prec = 2 * q + 1;
  std::vector<TrackedFunction> out;
  if (place.cls.kind == ClassKind::BetaZero) {
    const auto e = series::expand_beta_zero(curve, place, prec);
    const auto one = series::TruncatedSeries::constant(place.b.field().one(), prec);
    const Factor X{"(x-a)", e.x_minus_a, 2 * m};
    const Factor s{"(y-b)", e.y_minus_b, q};
    const Factor X3{"(x-a)^3", e.x_minus_a.pow(3), 6 * m};
    out.push_back(series::make_tracked(curve, true, -1, {X}));
    out.push_back(series::make_tracked(curve, true, -1, {s}));
    out.push_back(series::make_tracked(curve, true, -1, {{"1", one, 0}}));
    out.push_back(series::make_tracked(curve, true, -2, {X3}));
    return out;
  }
  const series::PlaceExpansion pe(curve, place, lift_index, prec);
  const auto one = series::TruncatedSeries::constant(pe.basis().beta.field().one(), pe.prec());
  out.push_back(series::make_tracked(curve, true, -1, {{"y_b", pe.basis().y_b, pe.pole_y_b()}}));
  out.push_back(series::make_tracked(curve, true, -1, {{"1", one, 0}}));
  if (place.cls.kind == ClassKind::BetaOne) {
    for (int j = 0; j < m; ++j) {
      out.push_back(series::make_tracked(curve, true, -(j + 1), {{"h_" + std::to_string(j), pe.h()[j], (j + 1) * q}}));
    }
    return out;
  }
  const int i = static_cast<int>(place.cls.i);
  const int top = i < m - 1 ? i : m - 1;
  for (int j = 0; j <= top; ++j) {
    out.push_back(series::make_tracked(curve, true, -(j + 1), {{"f_" + std::to_string(j), pe.f()[j], pe.pole_f(j)}}));
  }
  return out;
}

void throw_failures(const std::vector<CertificateEntry>& entries, const std::string& where) {
  std::ostringstream msg;
  int bad = 0;
  for (const auto& e : entries) {
    if (e.verified) continue;
    msg << (bad++ ? ", " : "") << e.value << " (" << e.witness << ", v=" << e.v_at_p << ", pole " << e.pole_bound << ")";
  }
  if (bad > 0) throw VerificationError(where + ": unverified " + msg.str());
}

}  // namespace

std::string to_string(EntryKind kind) {
  switch (kind) {
    case EntryKind::NonGap:
      return "nongap";
    case EntryKind::Gap:
      return "gap";
    case EntryKind::GenusCount:
      return "genus-count";
  }
  return "?";
}

bool SemigroupAssignment::verified() const noexcept {
  return !certificate.empty() &&
         std::all_of(certificate.begin(), certificate.end(), [](const CertificateEntry& e) { return e.verified; });
}

std::string theorem_statement(ClassKind tag) {
  switch (tag) {
    case ClassKind::Infinity:
      return "H = <2q/3, q, q+1>";
    case ClassKind::BetaZero:
      return "H = <q-1, q, q+1, 2q-4>";
    case ClassKind::BetaOne:
      return "H = <q, q+1, (q-1)+j(q-2) : 0 <= j < m>";
    case ClassKind::RationalGeneral:
      return "H = <q, q+1, (q-1)+j(q-2) : j < i, (i+1)(q-2)>, or the beta = 1 semigroup for i in {(q-1)/2, q}";
    case ClassKind::NonRationalGeneric:
      return "G = {jq+k : 0 <= j < m, 1 <= k <= q-2-3j}";
    case ClassKind::NonRationalSpecial:
      return "G = generic gaps with (m-K-2-l(i+1))q+3K+4+3l(i+1) -> +1, 0 <= l <= (m-K-2)/(i+1)";
  }
  return "?";
}

SemigroupAssignment semigroup_at(const Curve& curve, const Place& place) {
  const int q = curve.q();
  SemigroupAssignment out;
  out.place = place;
  out.tag = place.cls.kind;
  switch (place.cls.kind) {
    case ClassKind::Infinity:
      out.generators = gapsets::generators_infinity(q);
      out.gaps = gaps_of(out.generators);
      break;
    case ClassKind::BetaZero:
      out.generators = gapsets::generators_beta_zero(q);
      out.gaps = gaps_of(out.generators);
      if (out.gaps != gapsets::interval_gaps_rational(q, 1)) throw std::logic_error("beta = 0 gaps disagree with intervals");
      break;
    case ClassKind::BetaOne:
      out.generators = gapsets::generators_beta_one(q);
      out.gaps = gaps_of(out.generators);
      if (out.gaps != gapsets::interval_gaps_beta_one(q)) throw std::logic_error("beta = 1 gaps disagree with intervals");
      break;
    case ClassKind::RationalGeneral:
      out.generators = gapsets::generators_rational(q, place.cls.i);
      out.gaps = gaps_of(out.generators);
      if (out.gaps != gapsets::interval_gaps_rational(q, place.cls.i)) {
        throw std::logic_error("rational gaps disagree with intervals at i = " + std::to_string(place.cls.i));
      }
      break;
    case ClassKind::NonRationalGeneric:
      out.gaps = gapsets::generic_gaps(q);
      break;
    case ClassKind::NonRationalSpecial: {
      out.gaps = gapsets::special_gaps(q, place.cls.i, place.cls.K);
      out.replacements = gapsets::special_replacements(q, place.cls.i, place.cls.K);
      const auto generic = gapsets::generic_gaps(q);
      std::size_t differ = 0;
      for (int g : generic.gaps()) differ += out.gaps.contains_gap(g) ? 0 : 1;
      const auto ladder = (curve.m() - place.cls.K - 2) / (place.cls.i + 1) + 1;
      if (differ != ladder || out.replacements.size() != ladder) throw std::logic_error("special gap set has the wrong shape");
      break;
    }
  }
  std::sort(out.generators.begin(), out.generators.end());
  require_genus(curve, out.gaps, curve::to_string(out.tag));
  if (!numsemi::is_cofinite_monoid(out.gaps)) throw std::logic_error("complement of the gap set is not a monoid");
  return out;
}

std::vector<CertificateEntry> verify_nongaps(const Curve& curve, const SemigroupAssignment& a, int lift_index, int prec) {
  if (!a.rational()) throw std::invalid_argument("verify_nongaps needs a rational place");
  std::vector<CertificateEntry> pool;
  if (a.place.at_infinity) {
    pool = infinity_witnesses(curve);
  } else {
    for (const auto& w : rational_witnesses(curve, a.place, lift_index, prec)) pool.push_back(nongap_entry(-w.v_at_p, w));
  }
  std::vector<CertificateEntry> out;
  for (int n : a.generators) {
    auto it = std::find_if(pool.begin(), pool.end(), [n](const CertificateEntry& e) { return e.value == n; });
    if (it == pool.end()) {
      CertificateEntry e;
      e.value = n;
      e.witness = "none";
      out.push_back(e);
      continue;
    }
    out.push_back(*it);
  }
  throw_failures(out, "non-gaps at " + a.place.to_string());
  return out;
}

std::vector<CertificateEntry> verify_gaps(const Curve& curve, const SemigroupAssignment& a, int lift_index, int prec) {
  if (a.rational()) throw std::invalid_argument("verify_gaps needs a non-rational place");
  const series::PlaceExpansion pe(curve, a.place, lift_index, prec);
  std::vector<CertificateEntry> out;
  for (int gap : a.gaps.gaps()) {
    CertificateEntry e;
    e.kind = EntryKind::Gap;
    e.value = gap;
    try {
      const auto w = pe.gap_witness(gap);
      e.witness = w.description;
      e.v_at_p = w.v_at_p;
      e.pole_bound = w.pole_bound;
      e.verified = w.v_at_p == gap - 1 && w.pole_bound <= curve.canonical_degree();
    } catch (const std::exception& ex) {
      e.witness = std::string("error: ") + ex.what();
    }
    out.push_back(e);
  }
  throw_failures(out, "gaps at " + a.place.to_string());
  return out;
}

void certify(const Curve& curve, SemigroupAssignment& a, int lift_index, int prec) {
  a.certificate = a.rational() ? verify_nongaps(curve, a, lift_index, prec) : verify_gaps(curve, a, lift_index, prec);
  CertificateEntry count;
  count.kind = EntryKind::GenusCount;
  count.value = a.gaps.genus();
  count.witness = a.rational() ? "certified generators leave exactly g gaps" : "g distinct gaps certified";
  count.verified = a.gaps.genus() == curve.genus();
  a.certificate.push_back(count);
  if (!count.verified) throw VerificationError("gap count differs from the genus at " + a.place.to_string());
}

std::vector<std::uint64_t> default_gamma_orders(int q) {
  std::vector<std::uint64_t> out;
  for (int n = 4; n <= q + 2; ++n) {
    if (n % 3 != 0 && (q + 1) % n != 0) out.push_back(static_cast<std::uint64_t>(n));
  }
  return out;
}

CensusReport full_census(const Curve& curve, const CensusOptions& options) {
  CensusReport rep;
  rep.q = curve.q();
  const auto places = curve.enumerate_rational();
  const autgroup::AutGroup group(curve);
  const auto orbits = group.orbits(places);
  rep.orbits = orbits.size();

  auto record_failure = [&](const std::string& msg) {
    ++rep.failures;
    if (rep.failure_messages.size() < 20) rep.failure_messages.push_back(msg);
  };
  auto run = [&](SemigroupAssignment& a) {
    try {
      certify(curve, a, 0, options.prec);
    } catch (const std::exception& ex) {
      record_failure(ex.what());
    }
    rep.certificate_entries += a.certificate.size();
  };

  std::map<std::tuple<ClassKind, std::uint64_t>, std::size_t> rational_index;
  rep.orbit_consistent = true;
  for (const auto& orbit : orbits) {
    std::optional<numsemi::GapSet> first;
    std::optional<ClassKind> first_tag;
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      const auto& pl = orbit[k];
      auto a = semigroup_at(curve, pl);
      ++rep.tag_counts[a.tag];
      if (a.tag == ClassKind::RationalGeneral) ++rep.rational_p_orders[pl.cls.i];
      const auto key = std::make_tuple(a.tag, a.tag == ClassKind::RationalGeneral ? pl.cls.i : 0);
      auto [it, fresh] = rational_index.emplace(key, rep.classes.size());
      if (fresh) rep.classes.push_back({pl.cls, 0, 0, a.gaps});
      auto& summary = rep.classes[it->second];
      ++summary.places;
      if (options.verify_all_rational || k == 0) {
        run(a);
        if (a.verified()) ++summary.certified;
      }
      if (!first) {
        first = a.gaps;
        first_tag = a.tag;
      } else if (*first != a.gaps || *first_tag != a.tag) {
        rep.orbit_consistent = false;
      }
    }
  }

  std::mt19937_64 rng(options.seed);
  const auto orders = options.gamma_orders.empty() ? default_gamma_orders(curve.q()) : options.gamma_orders;
  for (std::uint64_t n : orders) {
    ClassSummary summary;
    bool any = false;
    for (int s = 0; s < options.samples_per_class; ++s) {
      std::optional<Place> pl;
      try {
        pl = curve.sample_place(n, rng);
      } catch (const std::exception& ex) {
        record_failure("sampling gamma order " + std::to_string(n) + ": " + ex.what());
      }
      if (!pl) break;
      auto a = semigroup_at(curve, *pl);
      if (!any) summary = {pl->cls, 0, 0, a.gaps};
      any = true;
      ++summary.places;
      ++rep.tag_counts[a.tag];
      run(a);
      if (a.verified()) ++summary.certified;
    }
    if (any) {
      rep.classes.push_back(summary);
    } else {
      rep.unrealized_gamma_orders.push_back(n);
    }
  }
  return rep;
}

}  // namespace z3ws::weier
