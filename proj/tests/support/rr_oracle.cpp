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

#include "rr_oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace z3ws::testing {
namespace {

using ff::FieldElement;

// Polynomial in u, v over F_3 reduced by v^(q+1) = u^q + u; coefficients indexed [a][b] with b <= q.
struct BiPoly {
  int q;
  std::vector<std::vector<int>> c;

  BiPoly(int q_, int amax) : q(q_), c(static_cast<std::size_t>(amax + 1), std::vector<int>(static_cast<std::size_t>(q_ + 1), 0)) {}
  int amax() const { return static_cast<int>(c.size()) - 1; }

  BiPoly mul(const BiPoly& o, int amax_out) const {
    BiPoly r(q, amax_out);
    std::map<std::pair<int, int>, int> raw;
    for (int a = 0; a <= amax(); ++a)
      for (int b = 0; b <= q; ++b) {
        if (c[a][b] == 0) continue;
        for (int a2 = 0; a2 <= o.amax(); ++a2)
          for (int b2 = 0; b2 <= q; ++b2) {
            if (o.c[a2][b2] == 0) continue;
            auto& slot = raw[{a + a2, b + b2}];
            slot = (slot + c[a][b] * o.c[a2][b2]) % 3;
          }
      }
    auto add = [&](int a, int b, int v) {
      if (a > amax_out) throw std::logic_error("weight bound exceeded");
      r.c[a][b] = (r.c[a][b] + v) % 3;
    };
    for (const auto& [ab, v] : raw) {
      if (v == 0) continue;
      auto [a, b] = ab;
      if (b <= q) {
        add(a, b, v);
      } else {
        add(a + q, b - q - 1, v);
        add(a + 1, b - q - 1, v);
      }
    }
    return r;
  }
};

// Null space of a dense F_3 matrix given by rows.
std::vector<std::vector<int>> nullspace_f3(std::vector<std::vector<int>> rows, std::size_t ncols) {
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols && r < rows.size(); ++col) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][col] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const int inv = rows[r][col];  // 1 and 2 are self-inverse
    for (auto& x : rows[r]) x = (x * inv) % 3;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      const int f = rows[i][col];
      for (std::size_t j = 0; j < ncols; ++j) rows[i][j] = ((rows[i][j] - f * rows[r][j]) % 3 + 3) % 3;
    }
    pivot_col.push_back(static_cast<int>(col));
    ++r;
  }
  std::vector<bool> is_pivot(ncols, false);
  for (int pc : pivot_col) is_pivot[static_cast<std::size_t>(pc)] = true;
  std::vector<std::vector<int>> out;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<int> v(ncols, 0);
    v[free] = 1;
    for (std::size_t k = 0; k < pivot_col.size(); ++k) v[static_cast<std::size_t>(pivot_col[k])] = (3 - rows[k][free]) % 3;
    out.push_back(std::move(v));
  }
  return out;
}

using Series = std::vector<FieldElement>;

Series mul(const Series& x, const Series& y) {
  const std::size_t n = x.size();
  Series r(n, x[0].field().zero());
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < n; ++j) {
      if (!y[j].is_zero()) r[i + j] += x[i] * y[j];
    }
  }
  return r;
}

}  // namespace

RiemannRochOracle::RiemannRochOracle(const curve::Curve& curve) : curve_(&curve) {
  const int q = curve.q();
  const int bound = 3 * curve.canonical_degree();
  for (int b = 0; b <= q; ++b)
    for (int a = 0; a * (q + 1) + b * q <= bound; ++a) monomials_.push_back({a, b, a * (q + 1) + b * q});
  std::sort(monomials_.begin(), monomials_.end(), [](const Monomial& x, const Monomial& y) { return x.weight < y.weight; });
  int amax = 0;
  std::map<std::pair<int, int>, std::size_t> index;
  for (std::size_t k = 0; k < monomials_.size(); ++k) {
    amax = std::max(amax, monomials_[k].a);
    index[{monomials_[k].a, monomials_[k].b}] = k;
  }

  BiPoly su(q, 1), sv(q, 0), one(q, 0);
  su.c[1][0] = 1;
  su.c[0][1] = 1;
  su.c[0][0] = 2;
  sv.c[0][1] = 1;
  sv.c[0][0] = 1;
  one.c[0][0] = 1;
  std::vector<BiPoly> upow{one}, vpow{one};
  for (int a = 1; a <= amax; ++a) upow.push_back(upow.back().mul(su, amax));
  for (int b = 1; b <= q; ++b) vpow.push_back(vpow.back().mul(sv, amax));

  const std::size_t n = monomials_.size();
  std::vector<std::vector<int>> rows(n, std::vector<int>(n, 0));  // rows: target monomial, cols: source
  for (std::size_t col = 0; col < n; ++col) {
    const auto& mo = monomials_[col];
    const BiPoly img = upow[static_cast<std::size_t>(mo.a)].mul(vpow[static_cast<std::size_t>(mo.b)], amax);
    for (int a = 0; a <= amax; ++a)
      for (int b = 0; b <= q; ++b) {
        if (img.c[a][b] == 0) continue;
        const auto it = index.find({a, b});
        if (it == index.end()) throw std::logic_error("sigma left the weight bound");
        rows[it->second][col] = (rows[it->second][col] + img.c[a][b]) % 3;
      }
    rows[col][col] = (rows[col][col] + 2) % 3;  // minus the identity
  }
  basis_ = nullspace_f3(std::move(rows), n);
}

std::set<int> RiemannRochOracle::gaps_at_infinity() const {
  // Leading weight of an invariant function, divided by the ramification index 3.
  std::vector<std::vector<int>> vecs = basis_;
  std::set<int> weights;
  std::map<std::size_t, std::vector<int>> pivots;  // highest monomial index -> reduced vector
  for (auto v : vecs) {
    for (;;) {
      std::size_t top = v.size();
      for (std::size_t k = v.size(); k-- > 0;) {
        if (v[k] != 0) {
          top = k;
          break;
        }
      }
      if (top == v.size()) break;
      auto it = pivots.find(top);
      if (it == pivots.end()) {
        pivots.emplace(top, v);
        weights.insert(monomials_[top].weight / 3);
        break;
      }
      const int f = (v[top] * it->second[top]) % 3;
      for (std::size_t k = 0; k < v.size(); ++k) v[k] = ((v[k] - f * it->second[k]) % 3 + 3) % 3;
    }
  }
  std::set<int> gaps;
  for (int n = 1; n <= 2 * curve_->genus() - 1; ++n) {
    if (!weights.count(n)) gaps.insert(n);
  }
  return gaps;
}

std::set<int> RiemannRochOracle::gaps_at(const curve::Place& place) const {
  if (place.at_infinity) return gaps_at_infinity();
  const int q = curve_->q();
  // Own lift: B^3 - B = b, A = -a - B^2, in b's level or its cubic extension.
  const auto& tower = curve_->tower();
  std::vector<FieldElement> roots;
  for (int level : {place.b.degree(), 3 * place.b.degree()}) {
    if (!tower.has_level(level)) continue;
    const auto& L = tower.level(level);
    const auto b = tower.embed(place.b, level);
    roots = ff::roots_in_field(L, {-b, -L.one(), L.zero(), L.one()});
    if (!roots.empty()) break;
  }
  if (roots.empty()) throw std::logic_error("no level holds a Hermitian lift");
  const FieldElement B = roots.front();
  const auto& field = B.field();
  const FieldElement A = -tower.embed(place.a, field.degree()) - B * B;
  if (A.frobenius(curve_->t()) + A != B.frobenius(curve_->t()) * B) throw std::logic_error("lift is off the Hermitian curve");
  const std::size_t prec = static_cast<std::size_t>(2 * curve_->genus());

  // v = B + T; w = u - A solves w^q + w = v^(q+1) - B^(q+1).
  Series v(prec, field.zero());
  v[0] = B;
  v[1] = field.one();
  Series vq(prec, field.zero());
  vq[0] = B.frobenius(curve_->t());
  if (static_cast<std::size_t>(q) < prec) vq[static_cast<std::size_t>(q)] = field.one();
  Series rhs = mul(vq, v);
  rhs[0] = field.zero();
  Series w(prec, field.zero());
  for (int iter = 0; iter < 16; ++iter) {
    Series wq(prec, field.zero());
    for (std::size_t k = 0; k * static_cast<std::size_t>(q) < prec; ++k) wq[k * static_cast<std::size_t>(q)] = w[k].frobenius(curve_->t());
    Series next(prec, field.zero());
    for (std::size_t k = 0; k < prec; ++k) next[k] = rhs[k] - wq[k];
    if (next == w) break;
    w = next;
  }
  Series u = w;
  u[0] = A;

  int amax = 0;
  for (const auto& mo : monomials_) amax = std::max(amax, mo.a);
  Series unit(prec, field.zero());
  unit[0] = field.one();
  std::vector<Series> upow{unit}, vpow{unit};
  for (int a = 1; a <= amax; ++a) upow.push_back(mul(upow.back(), u));
  for (int b = 1; b <= q; ++b) vpow.push_back(mul(vpow.back(), v));
  std::vector<Series> mono;
  mono.reserve(monomials_.size());
  for (const auto& mo : monomials_) mono.push_back(mul(upow[static_cast<std::size_t>(mo.a)], vpow[static_cast<std::size_t>(mo.b)]));

  std::map<std::size_t, Series> pivots;
  std::set<int> gaps;
  for (const auto& coeffs : basis_) {
    Series f(prec, field.zero());
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (coeffs[k] == 0) continue;
      for (std::size_t j = 0; j < prec; ++j) f[j] += mono[k][j].scaled(coeffs[k]);
    }
    for (;;) {
      std::size_t lead = 0;
      while (lead < prec && f[lead].is_zero()) ++lead;
      if (lead == prec) throw std::logic_error("precision too small for the oracle");
      auto it = pivots.find(lead);
      if (it == pivots.end()) {
        pivots.emplace(lead, f);
        gaps.insert(static_cast<int>(lead) + 1);
        break;
      }
      const FieldElement s = f[lead] / it->second[lead];
      for (std::size_t j = lead; j < prec; ++j) f[j] -= s * it->second[j];
    }
  }
  return gaps;
}

}  // namespace z3ws::testing
