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

#include "z3ws/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "z3ws/gapsets.hpp"
#include "z3ws/polyfam.hpp"

namespace z3ws::series {

// ---------------------------------------------------------------------------
// TruncatedSeries

TruncatedSeries::TruncatedSeries(const Field& field, int prec) : field_(&field), prec_(prec) {
  if (prec < 0) throw std::invalid_argument("negative precision");
  c_.assign(static_cast<std::size_t>(prec), field.zero());
}

TruncatedSeries TruncatedSeries::monomial(const FieldElement& c, int k, int prec) {
  TruncatedSeries s(c.field(), prec);
  if (k < prec) s.c_[static_cast<std::size_t>(k)] = c;
  return s;
}

int TruncatedSeries::valuation() const noexcept {
  for (int k = 0; k < prec_; ++k) {
    if (!c_[static_cast<std::size_t>(k)].is_zero()) return k;
  }
  return prec_;
}

FieldElement TruncatedSeries::coeff(int k) const {
  if (k < 0) throw std::out_of_range("negative series index");
  if (k >= prec_) return field_->zero();
  return c_[static_cast<std::size_t>(k)];
}

void TruncatedSeries::set_coeff(int k, const FieldElement& c) {
  if (k < 0 || k >= prec_) throw std::out_of_range("series index beyond precision");
  c_[static_cast<std::size_t>(k)] = c;
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries out = *this;
  for (auto& x : out.c_) x = -x;
  return out;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.field_ != b.field_) throw std::invalid_argument("series over different fields");
  TruncatedSeries out(*a.field_, std::min(a.prec_, b.prec_));
  for (int k = 0; k < out.prec_; ++k) {
    out.c_[static_cast<std::size_t>(k)] = a.c_[static_cast<std::size_t>(k)] + b.c_[static_cast<std::size_t>(k)];
  }
  return out;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return a + (-b); }

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.field_ != b.field_) throw std::invalid_argument("series over different fields");
  const int va = a.valuation(), vb = b.valuation();
  const int prec = std::min({va + b.prec_, vb + a.prec_, std::max(a.prec_, b.prec_)});
  TruncatedSeries out(*a.field_, prec);
  for (int i = va; i < a.prec_ && i < prec; ++i) {
    const FieldElement& x = a.c_[static_cast<std::size_t>(i)];
    if (x.is_zero()) continue;
    for (int j = vb; j < b.prec_ && i + j < prec; ++j) {
      const FieldElement& y = b.c_[static_cast<std::size_t>(j)];
      if (y.is_zero()) continue;
      out.c_[static_cast<std::size_t>(i + j)] += x * y;
    }
  }
  // No zero divisors: a known product valuation must be the sum.
  if (va + vb < prec && out.valuation() != va + vb) throw std::logic_error("series product valuation is not additive");
  return out;
}

TruncatedSeries operator*(const FieldElement& c, const TruncatedSeries& a) {
  TruncatedSeries out = a;
  for (auto& x : out.c_) x = c * x;
  return out;
}

TruncatedSeries TruncatedSeries::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative series power");
  TruncatedSeries out = constant(field_->one(), prec_);
  for (int k = 0; k < e; ++k) out = out * *this;
  return out;
}

TruncatedSeries TruncatedSeries::frobenius(int r) const {
  TruncatedSeries out(*field_, prec_);
  const auto step = static_cast<long long>(std::llround(std::pow(3.0, r)));
  for (int k = 0; k < prec_; ++k) {
    const long long idx = k * step;
    if (idx >= prec_) break;
    out.c_[static_cast<std::size_t>(idx)] = c_[static_cast<std::size_t>(k)].frobenius(r);
  }
  return out;
}

TruncatedSeries TruncatedSeries::with_prec(int prec) const {
  if (prec > prec_) throw std::invalid_argument("cannot raise series precision");
  TruncatedSeries out = *this;
  out.prec_ = prec;
  out.c_.resize(static_cast<std::size_t>(prec));
  return out;
}

std::string TruncatedSeries::to_string(int terms) const {
  std::ostringstream os;
  int shown = 0;
  for (int k = 0; k < prec_ && shown < terms; ++k) {
    const auto& x = c_[static_cast<std::size_t>(k)];
    if (x.is_zero()) continue;
    if (shown++ != 0) os << " + ";
    os << x.to_string() << "*T^" << k;
  }
  if (shown == 0) os << "0";
  os << " + O(T^" << prec_ << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Expansions

GeneratorBasis expand_coordinates(const Curve& curve, const Place& place, const curve::HermitianLift& lift, int prec) {
  const int q = curve.q();
  if (prec < q + 1) throw std::invalid_argument("precision must be at least q + 1");
  if (prec > kMaxPrecision) throw std::invalid_argument("precision exceeds the configured maximum");
  if (lift.c.is_zero()) throw std::invalid_argument("p(b) = 0: T is not defined");
  const auto& tower = curve.tower();
  const Field& f = lift.B.field();
  const FieldElement a = tower.embed(place.a, f.degree());
  const FieldElement b = tower.embed(place.b, f.degree());

  GeneratorBasis out;
  out.c = lift.c;
  out.beta = lift.c * lift.c;
  TruncatedSeries v = TruncatedSeries::constant(lift.B, prec);
  v.set_coeff(1, lift.c);
  const TruncatedSeries vq1 = v.frobenius(curve.t()) * v;

  TruncatedSeries u = TruncatedSeries::constant(lift.A, prec);
  const int max_iter = static_cast<int>(std::ceil(std::log(static_cast<double>(prec)) / std::log(3.0))) + 2;
  for (;;) {
    const TruncatedSeries residual = u.frobenius(curve.t()) + u - vq1;
    if (residual.is_zero_to_prec()) break;
    if (out.newton_iterations == max_iter) throw std::runtime_error("Newton lifting did not converge");
    u = u - residual;
    ++out.newton_iterations;
  }
  const TruncatedSeries x = -(u + v * v);
  const TruncatedSeries y = v * v * v - v;
  out.x_a = (-out.beta.inverse()) * (x - TruncatedSeries::constant(a, prec));
  out.y_b = (-out.c.inverse()) * (y - TruncatedSeries::constant(b, prec));
  out.f0 = out.x_a - out.y_b;
  return out;
}

namespace {

void require_generic_beta(const FieldElement& beta) {
  if (beta.is_zero() || beta.is_one()) throw std::invalid_argument("beta must not be 0 or 1");
}

}  // namespace

std::vector<TruncatedSeries> build_f_chain(const GeneratorBasis& basis, int up_to, std::uint64_t p_order) {
  const FieldElement& beta = basis.beta;
  require_generic_beta(beta);
  if (up_to < 0) throw std::invalid_argument("negative chain length");
  if (static_cast<std::uint64_t>(up_to) > p_order) {
    throw std::invalid_argument("f_j is only defined for j <= P-order " + std::to_string(p_order));
  }
  const auto& f = beta.field();
  const auto& xa = basis.x_a;
  const auto& f0 = basis.f0;
  std::vector<TruncatedSeries> out{f0};
  if (up_to >= 1) {
    const auto one = f.one();
    out.push_back(f0 - xa * xa - (beta + one) * (xa * f0) + (beta * beta - beta - one) * (f0 * f0));
  }
  if (up_to >= 2) {
    const auto& f1 = out[1];
    const auto b2 = beta * beta;
    out.push_back((b2 - beta) * (f0 * f1) + (b2 * beta) * (f0 * f0 * xa) + f1 + b2 * (f0 * f0 * f0));
  }
  if (up_to >= 3) {
    const auto fam = polyfam::eval_recursive_upto(up_to, beta);
    const auto bm1 = beta - f.one();
    const auto scale = beta * beta * bm1 * bm1;
    for (int j = 3; j <= up_to; ++j) {
      const auto& pj2 = fam[static_cast<std::size_t>(j - 2)].p;
      if (pj2.is_zero()) throw std::logic_error("P_{j-2}(beta) vanished below the P-order");
      const auto num = (fam[2].p * fam[static_cast<std::size_t>(j - 1)].p) * (f0 * out[static_cast<std::size_t>(j - 1)]) -
                       fam[static_cast<std::size_t>(j)].p * (out[1] * out[static_cast<std::size_t>(j - 2)]);
      out.push_back((scale * pj2).inverse() * num);
    }
  }
  return out;
}

std::vector<TruncatedSeries> build_g_chain(const GeneratorBasis& basis, const std::vector<TruncatedSeries>& f, int up_to,
                                           std::uint64_t r_order) {
  const FieldElement& beta = basis.beta;
  require_generic_beta(beta);
  if (up_to < 0) throw std::invalid_argument("negative chain length");
  if (static_cast<std::uint64_t>(up_to) > r_order) {
    throw std::invalid_argument("g_l is only defined for l <= R-order " + std::to_string(r_order));
  }
  if (static_cast<int>(f.size()) <= up_to) throw std::invalid_argument("f chain too short for the g chain");
  const auto fam = polyfam::eval_recursive_upto(up_to + 1, beta);
  std::vector<TruncatedSeries> out{basis.x_a * basis.x_a - basis.f0};
  for (int l = 1; l <= up_to; ++l) {
    const auto& pl = fam[static_cast<std::size_t>(l)].p;
    if (pl.is_zero()) throw std::logic_error("P_l(beta) vanished below the P-order");
    const auto num = fam[static_cast<std::size_t>(l + 1)].p * (out.back() * basis.f0) -
                     fam[static_cast<std::size_t>(l)].r * f[static_cast<std::size_t>(l)];
    out.push_back((pl * beta).inverse() * num);
  }
  return out;
}

std::vector<TruncatedSeries> build_beta1_chain(const GeneratorBasis& basis, int up_to) {
  if (!basis.beta.is_one()) throw std::invalid_argument("the h chain needs beta = 1");
  if (up_to < 0) throw std::invalid_argument("negative chain length");
  const auto& xa = basis.x_a;
  const auto& yb = basis.y_b;
  std::vector<TruncatedSeries> out{xa - yb};
  if (up_to >= 1) out.push_back(yb - xa + (xa + yb) * (xa + yb));
  const auto factor = yb * yb - xa * xa;
  for (int j = 2; j <= up_to; ++j) {
    out.push_back(factor * out[static_cast<std::size_t>(j - 2)] - out[static_cast<std::size_t>(j - 1)]);
  }
  return out;
}

BetaZeroExpansion expand_beta_zero(const Curve& curve, const Place& place, int prec) {
  if (place.at_infinity || !place.beta.is_zero()) throw std::invalid_argument("expand_beta_zero needs a beta = 0 place");
  if (prec < 2 || prec > kMaxPrecision) throw std::invalid_argument("precision out of range");
  const Field& f = place.b.field();
  BetaZeroExpansion out;
  out.y_minus_b = TruncatedSeries::monomial(f.one(), 1, prec);
  // p(b + s) = p(s) since p is additive and p(b) = 0.
  TruncatedSeries ps(f, prec);
  for (int r = 0; r < curve.t(); ++r) ps = ps + out.y_minus_b.frobenius(r);
  const TruncatedSeries rhs = -(ps * ps);
  TruncatedSeries X(f, prec);
  for (int iter = 0;; ++iter) {
    const TruncatedSeries next = rhs - X.frobenius(curve.t());
    if ((next - X).is_zero_to_prec()) break;
    if (iter > 64) throw std::runtime_error("beta = 0 expansion did not converge");
    X = next;
  }
  out.x_minus_a = X;
  return out;
}

TrackedFunction make_tracked(const Curve& curve, bool rational, int fp_exponent, const std::vector<Factor>& factors) {
  const int q = curve.q();
  TrackedFunction out;
  out.fp_exponent = fp_exponent;
  std::ostringstream desc;
  bool first = true;
  if (fp_exponent != 0) {
    desc << "F_P^" << fp_exponent;
    first = false;
  }
  int pole = fp_exponent * (q + 1);
  const Field* field = nullptr;
  for (const auto& fac : factors) {
    if (!first) desc << " * ";
    desc << fac.name;
    first = false;
    pole += fac.pole_bound;
    if (field == nullptr) {
      out.series = fac.series;
      field = &fac.series.field();
    } else {
      out.series = out.series * fac.series;
    }
  }
  if (first) desc << "1";
  if (field == nullptr) throw std::invalid_argument("make_tracked needs a series factor (use the constant 1)");
  out.series_valuation = out.series.valuation();
  if (out.series.is_zero_to_prec()) throw std::runtime_error("series part of " + desc.str() + " vanishes to its precision");
  out.v_at_p = fp_exponent * (rational ? q + 1 : q) + out.series_valuation;
  out.pole_bound = pole;
  out.description = desc.str();
  return out;
}

// ---------------------------------------------------------------------------
// PlaceExpansion

PlaceExpansion::PlaceExpansion(const Curve& curve, const Place& place, int lift_index, int prec)
    : curve_(&curve), place_(place), prec_(prec == 0 ? 2 * curve.q() + 1 : prec) {
  if (place.at_infinity) throw std::invalid_argument("no local expansion at P_inf");
  if (place.beta.is_zero()) throw std::invalid_argument("beta = 0 places use expand_beta_zero");
  const auto lifts = curve.hermitian_lifts(place);
  if (lift_index < 0 || lift_index >= static_cast<int>(lifts.size())) throw std::out_of_range("lift index");
  basis_ = expand_coordinates(curve, place, lifts[static_cast<std::size_t>(lift_index)], prec_);
  one_ = TruncatedSeries::constant(basis_.beta.field().one(), prec_);
  const int m = curve.m();
  if (place.cls.kind == curve::ClassKind::BetaOne) {
    h_ = build_beta1_chain(basis_, m - 1);
    return;
  }
  const auto i = static_cast<int>(place.cls.i);
  const auto K = static_cast<int>(place.cls.K);
  f_ = build_f_chain(basis_, std::min(i, m - 1), place.cls.i);
  g_ = build_g_chain(basis_, f_, std::min(K, m - 2), place.cls.K);
}

const TruncatedSeries& PlaceExpansion::f_at(int j) const {
  if (j < 0 || j >= static_cast<int>(f_.size())) throw std::out_of_range("f_" + std::to_string(j) + " not available here");
  return f_[static_cast<std::size_t>(j)];
}

const TruncatedSeries& PlaceExpansion::g_at(int l) const {
  if (l < 0 || l >= static_cast<int>(g_.size())) throw std::out_of_range("g_" + std::to_string(l) + " not available here");
  return g_[static_cast<std::size_t>(l)];
}

Factor PlaceExpansion::fac_x() const { return {"x_a", basis_.x_a, pole_x_a()}; }

Factor PlaceExpansion::fac_f(int j, int power) const {
  const auto& s = f_at(j);
  std::string name = "f_" + std::to_string(j);
  if (power != 1) name += "^" + std::to_string(power);
  return {name, power == 1 ? s : s.pow(power), power * pole_f(j)};
}

Factor PlaceExpansion::fac_g(int l) const { return {"g_" + std::to_string(l), g_at(l), pole_g(l)}; }

TrackedFunction PlaceExpansion::tracked(int fp_exponent, const std::vector<Factor>& factors) const {
  if (factors.empty()) return make_tracked(*curve_, place_.rational(), fp_exponent, {{"1", one_, 0}});
  return make_tracked(*curve_, place_.rational(), fp_exponent, factors);
}

TrackedFunction PlaceExpansion::gap_witness_generic(int j, int k) const {
  const int q = curve_->q();
  const int m = curve_->m();
  if (j < 0 || j > m - 1 || k < 1 || k > q - 2 - 3 * j) {
    throw std::invalid_argument("(j, k) = (" + std::to_string(j) + ", " + std::to_string(k) + ") is not a generic gap index");
  }
  if (j == m - 1) return tracked(m - 1, {});
  switch (k) {
    case 1:
      return tracked(j, {});
    case 2:
      return tracked(j, {fac_x()});
    case 3:
      return tracked(j, {{"f_0", basis_.f0, pole_f(0)}});
    default:
      break;
  }
  const int l = k / 3;
  if (k % 3 == 0) return tracked(j, {fac_g(l - 2), {"f_0", basis_.f0, pole_f(0)}});
  if (k % 3 == 1) return tracked(j, {fac_g(l - 1)});
  return tracked(j, {fac_g(l - 1), fac_x()});
}

TrackedFunction PlaceExpansion::gap_witness_special(int j, int k) const {
  if (place_.cls.kind != curve::ClassKind::NonRationalSpecial) throw std::invalid_argument("place is not special");
  const int q = curve_->q();
  const int m = curve_->m();
  const int i = static_cast<int>(place_.cls.i);
  const int K = static_cast<int>(place_.cls.K);
  if (!gapsets::special_gaps(q, place_.cls.i, place_.cls.K).contains_gap(j * q + k) || k < 1 || k > q) {
    throw std::invalid_argument("(j, k) = (" + std::to_string(j) + ", " + std::to_string(k) + ") is not a gap index here");
  }
  if (k <= 3 * K + 3 || j > m - K - 2) return gap_witness_generic(j, k);

  const int cc = (k - 3 * K - 4) / (3 * (i + 1));
  const int dd = (k - 3 * K - 4) / 3;
  const int s = dd - cc * (i + 1);
  const int r = (k - 3 * K - 4) - 3 * dd;
  const Factor f0{"f_0", basis_.f0, pole_f(0)};
  std::vector<Factor> hat;
  if (s > 0) {
    if (cc > 0) hat.push_back(fac_f(i, cc));
    hat.push_back(fac_f(s - 1));
    if (r == 1) hat.push_back(fac_x());
    if (r == 2) hat.push_back(f0);
  } else if (r == 0) {
    if (cc == 0) {
      // k = 3K + 4 below the last replaced row: f_K x_a has valuation 3K + 3 and fits the canonical bound.
      return tracked(j, {fac_f(K), fac_x()});
    }
    if (cc > 1) hat.push_back(fac_f(i, cc - 1));
    hat.push_back(fac_f(i - 1));
    hat.push_back(f0);
    hat.push_back(fac_x());
  } else {
    if (cc > 0) hat.push_back(fac_f(i, cc));
    if (r == 2) hat.push_back(fac_x());
  }
  std::vector<Factor> all{fac_g(K)};
  all.insert(all.end(), hat.begin(), hat.end());
  return tracked(j, all);
}

TrackedFunction PlaceExpansion::gap_witness(int gap) const {
  const int q = curve_->q();
  if (gap < 1) throw std::invalid_argument("gaps are positive");
  const int j = (gap - 1) / q;
  const int k = gap - j * q;
  switch (place_.cls.kind) {
    case curve::ClassKind::NonRationalGeneric:
      return gap_witness_generic(j, k);
    case curve::ClassKind::NonRationalSpecial:
      return gap_witness_special(j, k);
    default:
      throw std::invalid_argument("gap witnesses are built at non-rational places only");
  }
}

}  // namespace z3ws::series
