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

#include "z3ws/ff.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "z3ws/factor.hpp"
#include "z3ws/linalg_f3.hpp"

namespace z3ws::ff {
namespace {

// ---------------------------------------------------------------------------
// Dense polynomials over F_3, used only to pick and test moduli.

using F3Poly = std::vector<std::uint8_t>;

void trim(F3Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

F3Poly poly_mod(F3Poly a, const F3Poly& f) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const std::uint8_t lead_inv = f.back();  // 1 and 2 are self-inverse
  while (a.size() > df) {
    const std::uint8_t c = static_cast<std::uint8_t>((a.back() * lead_inv) % 3);
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) {
      a[shift + i] = static_cast<std::uint8_t>((a[shift + i] + 9 - c * f[i]) % 3);
    }
    trim(a);
  }
  return a;
}

F3Poly poly_gcd(F3Poly a, F3Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    F3Poly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// g(X)^3 = sum g_i X^(3i) over F_3.
F3Poly poly_cube_mod(const F3Poly& g, const F3Poly& f) {
  F3Poly out(g.empty() ? 0 : 3 * (g.size() - 1) + 1, 0);
  for (std::size_t i = 0; i < g.size(); ++i) out[3 * i] = g[i];
  return poly_mod(std::move(out), f);
}

int ctz64(std::uint64_t x) { return std::countr_zero(x); }

int ctz128(u128 x) {
  const auto lo = static_cast<std::uint64_t>(x);
  if (lo != 0) return ctz64(lo);
  return 64 + ctz64(static_cast<std::uint64_t>(x >> 64));
}

// ---------------------------------------------------------------------------
// Polynomials over a level, used for root finding.

using FPoly = std::vector<FieldElement>;

void trim(FPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

int deg(const FPoly& a) { return static_cast<int>(a.size()) - 1; }

FPoly make_monic(FPoly a) {
  trim(a);
  if (a.empty()) return a;
  const FieldElement inv = a.back().inverse();
  for (auto& c : a) c *= inv;
  return a;
}

// Remainder and quotient of a by monic f.
std::pair<FPoly, FPoly> divmod_monic(FPoly a, const FPoly& f) {
  trim(a);
  const int df = deg(f);
  if (deg(a) < df) return {FPoly{}, a};
  FPoly quot(static_cast<std::size_t>(deg(a) - df + 1), f[0].field().zero());
  while (deg(a) >= df) {
    const FieldElement c = a.back();
    const std::size_t shift = static_cast<std::size_t>(deg(a) - df);
    quot[shift] = c;
    for (int i = 0; i <= df; ++i) a[shift + static_cast<std::size_t>(i)] -= c * f[static_cast<std::size_t>(i)];
    trim(a);
  }
  return {quot, a};
}

FPoly mod_monic(FPoly a, const FPoly& f) { return divmod_monic(std::move(a), f).second; }

FPoly mul_mod(const FPoly& a, const FPoly& b, const FPoly& f) {
  if (a.empty() || b.empty()) return {};
  FPoly out(a.size() + b.size() - 1, a[0].field().zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return mod_monic(std::move(out), f);
}

FPoly pow_mod(FPoly base, u128 e, const FPoly& f) {
  FPoly result{base[0].field().one()};
  base = mod_monic(std::move(base), f);
  while (e != 0) {
    if (e & 1U) result = mul_mod(result, base, f);
    e >>= 1;
    if (e != 0) base = mul_mod(base, base, f);
  }
  return result;
}

FPoly cube_mod(const FPoly& g, const FPoly& f) {
  if (g.empty()) return {};
  FPoly out(3 * (g.size() - 1) + 1, g[0].field().zero());
  for (std::size_t i = 0; i < g.size(); ++i) out[3 * i] = g[i].frobenius();
  return mod_monic(std::move(out), f);
}

FPoly poly_gcd(FPoly a, FPoly b) {
  a = make_monic(std::move(a));
  b = make_monic(std::move(b));
  while (!b.empty()) {
    FPoly r = make_monic(mod_monic(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

void split_roots(const Field& field, const FPoly& g, std::vector<FieldElement>& out, std::mt19937_64& rng) {
  if (deg(g) <= 0) return;
  if (deg(g) == 1) {
    out.push_back(-g[0] / g[1]);
    return;
  }
  const u128 half = (field.size() - 1) / 2;
  for (;;) {
    const FieldElement delta = field.random(rng);
    FPoly w = pow_mod(FPoly{delta, field.one()}, half, g);
    if (w.empty()) w.push_back(field.zero());
    w[0] -= field.one();
    FPoly h = poly_gcd(g, w);
    if (deg(h) > 0 && deg(h) < deg(g)) {
      auto [quot, rem] = divmod_monic(g, h);
      split_roots(field, h, out, rng);
      split_roots(field, make_monic(quot), out, rng);
      return;
    }
  }
}

int trits_cmp_lex(Trits a, Trits b, int n) {
  for (int i = 0; i < n; ++i) {
    const int ca = static_cast<int>((a.p >> i) & 1U) | (static_cast<int>((a.m >> i) & 1U) << 1);
    const int cb = static_cast<int>((b.p >> i) & 1U) | (static_cast<int>((b.m >> i) & 1U) << 1);
    if (ca != cb) return ca < cb ? -1 : 1;
  }
  return 0;
}

void check_same_field(const FieldElement& a, const FieldElement& b) {
  if (a.field_ptr() != b.field_ptr()) throw std::invalid_argument("field element operands live in different levels");
}

}  // namespace

// ---------------------------------------------------------------------------
// Moduli

bool is_irreducible_f3(const F3Poly& poly_in) {
  F3Poly f = poly_in;
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t n = f.size() - 1;
  if (n == 1) return true;
  if (f[0] == 0) return false;
  // f is irreducible iff gcd(X^(3^k) - X, f) = 1 for all k <= n/2.
  F3Poly h = {0, 1};
  for (std::size_t k = 1; k <= n / 2; ++k) {
    h = poly_cube_mod(h, f);
    F3Poly d = h;
    d.resize(std::max<std::size_t>(d.size(), 2), 0);
    d[1] = static_cast<std::uint8_t>((d[1] + 2) % 3);
    trim(d);
    if (d.empty()) return false;
    if (poly_gcd(d, f).size() > 1) return false;
  }
  return true;
}

std::vector<std::uint8_t> smallest_irreducible(int n) {
  if (n < 1 || n > kMaxDegree) throw std::out_of_range("smallest_irreducible: degree out of range");
  // Coefficient c_0 is the most significant digit of the enumeration order.
  F3Poly f(static_cast<std::size_t>(n) + 1, 0);
  f[static_cast<std::size_t>(n)] = 1;
  if (n > 1) f[0] = 1;  // every candidate with c_0 = 0 is divisible by X
  for (;;) {
    if (is_irreducible_f3(f)) return f;
    int pos = n - 1;
    while (pos >= 0) {
      auto& c = f[static_cast<std::size_t>(pos)];
      if (c < 2) {
        ++c;
        break;
      }
      c = 0;
      --pos;
    }
    if (pos < 0) throw std::logic_error("smallest_irreducible: exhausted");
  }
}

// ---------------------------------------------------------------------------
// Field

Field::Field(int degree) : Field(degree, smallest_irreducible(degree)) {}

Field::Field(int degree, std::vector<std::uint8_t> modulus) : n_(degree), modulus_(std::move(modulus)) {
  if (n_ < 1 || n_ > kMaxDegree) throw std::out_of_range("field degree out of range");
  if (modulus_.size() != static_cast<std::size_t>(n_) + 1 || modulus_.back() != 1) {
    throw std::invalid_argument("modulus must be monic of the field degree");
  }
  size_ = factor::pow3(n_);
  mask_ = (n_ == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_) - 1);
  init_tables();
}

void Field::init_tables() {
  // X^n = -(f - X^n).
  Trits xn{};
  for (int i = 0; i < n_; ++i) {
    const auto c = modulus_[static_cast<std::size_t>(i)];
    if (c == 2) xn.p |= std::uint64_t{1} << i;  // -2 = 1
    if (c == 1) xn.m |= std::uint64_t{1} << i;
  }
  reduce_table_.clear();
  Trits cur = xn;
  for (int k = 0; k + 1 < n_; ++k) {
    reduce_table_.push_back(cur);
    // cur *= X
    const int top = n_ - 1;
    const int hi_p = static_cast<int>((cur.p >> top) & 1U);
    const int hi_m = static_cast<int>((cur.m >> top) & 1U);
    Trits shifted{(cur.p << 1) & mask_, (cur.m << 1) & mask_};
    if (hi_p) shifted = shifted + xn;
    if (hi_m) shifted = shifted - xn;
    cur = shifted;
  }
  frob_cols_.assign(static_cast<std::size_t>(n_), Trits{});
  const Trits x = gen().raw();
  const Trits x3 = mul(mul(x, x), x);
  Trits acc{1, 0};
  for (int i = 0; i < n_; ++i) {
    frob_cols_[static_cast<std::size_t>(i)] = acc;
    acc = mul(acc, x3);
  }
}

Trits Field::reduce(WideTrits w) const noexcept {
  Trits low{static_cast<std::uint64_t>(w.p) & mask_, static_cast<std::uint64_t>(w.m) & mask_};
  const u128 hp = w.p >> n_;
  const u128 hm = w.m >> n_;
  for (u128 bits = hp; bits != 0; bits &= bits - 1) low = low + reduce_table_[static_cast<std::size_t>(ctz128(bits))];
  for (u128 bits = hm; bits != 0; bits &= bits - 1) low = low - reduce_table_[static_cast<std::size_t>(ctz128(bits))];
  return low;
}

Trits Field::mul(Trits a, Trits b) const noexcept {
  // Iterate over the sparser operand.
  if (std::popcount(a.p | a.m) < std::popcount(b.p | b.m)) std::swap(a, b);
  const WideTrits wa{a.p, a.m};
  WideTrits acc{};
  for (std::uint64_t bits = b.p; bits != 0; bits &= bits - 1) acc = acc + wa.shl(ctz64(bits));
  for (std::uint64_t bits = b.m; bits != 0; bits &= bits - 1) acc = acc - wa.shl(ctz64(bits));
  return reduce(acc);
}

Trits Field::frob(Trits a) const noexcept {
  Trits out{};
  for (std::uint64_t bits = a.p; bits != 0; bits &= bits - 1) out = out + frob_cols_[static_cast<std::size_t>(ctz64(bits))];
  for (std::uint64_t bits = a.m; bits != 0; bits &= bits - 1) out = out - frob_cols_[static_cast<std::size_t>(ctz64(bits))];
  return out;
}

FieldElement Field::constant(int c) const noexcept {
  c = ((c % 3) + 3) % 3;
  if (c == 1) return {this, {1, 0}};
  if (c == 2) return {this, {0, 1}};
  return zero();
}

FieldElement Field::gen() const noexcept {
  if (n_ == 1) return constant(-static_cast<int>(modulus_[0]));
  return {this, {2, 0}};
}

FieldElement Field::from_coeffs(std::span<const int> coeffs) const {
  if (coeffs.size() > static_cast<std::size_t>(n_)) throw std::invalid_argument("too many coefficients for level");
  Trits t{};
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const int c = ((coeffs[i] % 3) + 3) % 3;
    if (c == 1) t.p |= std::uint64_t{1} << i;
    if (c == 2) t.m |= std::uint64_t{1} << i;
  }
  return {this, t};
}

FieldElement Field::from_index(u128 idx) const {
  Trits t{};
  for (int i = 0; i < n_ && idx != 0; ++i) {
    const auto c = static_cast<int>(idx % 3);
    idx /= 3;
    if (c == 1) t.p |= std::uint64_t{1} << i;
    if (c == 2) t.m |= std::uint64_t{1} << i;
  }
  return {this, t};
}

FieldElement Field::random(std::mt19937_64& rng) const {
  Trits t{};
  for (int i = 0; i < n_; ++i) {
    const auto c = rng() % 3;
    if (c == 1) t.p |= std::uint64_t{1} << i;
    if (c == 2) t.m |= std::uint64_t{1} << i;
  }
  return {this, t};
}

// ---------------------------------------------------------------------------
// FieldElement

int FieldElement::degree() const noexcept { return field_->degree(); }

bool FieldElement::is_one() const noexcept { return v_.p == 1 && v_.m == 0; }

std::vector<int> FieldElement::coeffs() const {
  std::vector<int> out(static_cast<std::size_t>(field_->degree()));
  for (int i = 0; i < field_->degree(); ++i) out[static_cast<std::size_t>(i)] = coeff(i);
  return out;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  check_same_field(*this, o);
  v_ = v_ + o.v_;
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  check_same_field(*this, o);
  v_ = v_ - o.v_;
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  check_same_field(*this, o);
  v_ = field_->mul(v_, o.v_);
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) { return *this *= o.inverse(); }

FieldElement FieldElement::scaled(int c) const noexcept {
  c = ((c % 3) + 3) % 3;
  if (c == 0) return field_->zero();
  if (c == 1) return *this;
  return -*this;
}

FieldElement FieldElement::square() const { return {field_, field_->mul(v_, v_)}; }

FieldElement FieldElement::pow(u128 e) const {
  Trits result{1, 0};
  Trits base = v_;
  while (e != 0) {
    if (e & 1U) result = field_->mul(result, base);
    e >>= 1;
    if (e != 0) base = field_->mul(base, base);
  }
  return {field_, result};
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  return pow(field_->size() - 2);
}

FieldElement FieldElement::frobenius(int k) const {
  const int n = field_->degree();
  k = ((k % n) + n) % n;
  Trits t = v_;
  for (int i = 0; i < k; ++i) t = field_->frob(t);
  return {field_, t};
}

int FieldElement::minimal_degree() const {
  const int n = field_->degree();
  for (int k = 1; k <= n; ++k) {
    if (n % k == 0 && frobenius(k) == *this) return k;
  }
  return n;
}

bool FieldElement::lex_less(const FieldElement& o) const noexcept {
  return trits_cmp_lex(v_, o.v_, field_->degree()) < 0;
}

std::string FieldElement::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < field_->degree(); ++i) {
    if (i != 0) os << ',';
    os << coeff(i);
  }
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------
// Root finding

std::vector<FieldElement> roots_in_field(const Field& field, std::vector<FieldElement> coeffs) {
  FPoly f = make_monic(std::move(coeffs));
  std::vector<FieldElement> out;
  if (deg(f) <= 0) return out;
  if (field.size() <= 729) {
    for (u128 k = 0; k < field.size(); ++k) {
      const FieldElement x = field.from_index(k);
      FieldElement acc = field.zero();
      for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
      if (acc.is_zero()) out.push_back(x);
    }
  } else {
    // Split part: gcd(f, X^(3^n) - X).
    FPoly h{field.zero(), field.one()};
    for (int i = 0; i < field.degree(); ++i) h = cube_mod(h, f);
    h.resize(std::max<std::size_t>(h.size(), 2), field.zero());
    h[1] -= field.one();
    FPoly g = poly_gcd(f, h);
    if (g.empty()) g = f;  // f divides X^(3^n) - X
    std::mt19937_64 rng(0x5EEDC0DEULL);
    split_roots(field, g, out, rng);
  }
  std::sort(out.begin(), out.end(), [](const FieldElement& a, const FieldElement& b) { return a.lex_less(b); });
  return out;
}

// ---------------------------------------------------------------------------
// FieldTower

FieldTower FieldTower::make(int t, const std::set<int>& extra_degrees) {
  if (t < 2) throw std::invalid_argument("t must be >= 2 (t = 1 gives an elliptic curve)");
  std::set<int> degrees{1, t, 2 * t};
  for (int d : extra_degrees) {
    if (d < 1) throw std::invalid_argument("extension degrees must be positive");
    if (2 * t * d > kMaxDegree) throw std::out_of_range("requested level exceeds the maximum field degree");
    degrees.insert(2 * t * d);
  }
  return FieldTower(degrees);
}

FieldTower::FieldTower(const std::set<int>& degrees_in) : mu_(std::make_unique<std::mutex>()) {
  std::set<int> degrees = degrees_in;
  degrees.insert(1);
  bool grown = true;
  while (grown) {
    grown = false;
    for (int a : degrees) {
      for (int b : degrees) {
        if (degrees.insert(std::gcd(a, b)).second) grown = true;
      }
      if (grown) break;
    }
  }
  for (int n : degrees) {
    if (n < 1 || n > kMaxDegree) throw std::out_of_range("field degree out of range");
    levels_.emplace(n, std::make_unique<Field>(n));
  }
}

FieldTower::FieldTower(FieldTower&&) noexcept = default;
FieldTower& FieldTower::operator=(FieldTower&&) noexcept = default;
FieldTower::~FieldTower() = default;

std::vector<int> FieldTower::degrees() const {
  std::vector<int> out;
  for (const auto& [n, f] : levels_) out.push_back(n);
  return out;
}

const Field& FieldTower::level(int n) const {
  auto it = levels_.find(n);
  if (it == levels_.end()) throw std::out_of_range("no tower level of degree " + std::to_string(n));
  return *it->second;
}

std::optional<int> FieldTower::smallest_level_over(int n) const {
  for (const auto& [deg_n, f] : levels_) {
    if (deg_n % n == 0) return deg_n;
  }
  return std::nullopt;
}

const Embedding& FieldTower::embedding(int n, int big_n) const {
  {
    std::lock_guard lock(*mu_);
    auto it = embeddings_.find({n, big_n});
    if (it != embeddings_.end()) return *it->second;
  }
  auto built = build_embedding(n, big_n);
  std::lock_guard lock(*mu_);
  auto [it, inserted] = embeddings_.emplace(std::make_pair(n, big_n), std::move(built));
  return *it->second;
}

std::shared_ptr<const Embedding> FieldTower::build_embedding(int n, int big_n) const {
  if (big_n % n != 0) throw std::invalid_argument("embedding requires n | N");
  const Field& small = level(n);
  const Field& big = level(big_n);
  auto emb = std::make_shared<Embedding>();
  emb->from = &small;
  emb->to = &big;

  auto images_for = [&](const FieldElement& root) {
    std::vector<Trits> imgs;
    FieldElement pw = big.one();
    for (int i = 0; i < n; ++i) {
      imgs.push_back(pw.raw());
      pw *= root;
    }
    return imgs;
  };
  auto apply = [&](const std::vector<Trits>& imgs, const FieldElement& y) {
    Trits out{};
    for (int i = 0; i < n; ++i) {
      const int c = y.coeff(i);
      if (c == 1) out = out + imgs[static_cast<std::size_t>(i)];
      if (c == 2) out = out - imgs[static_cast<std::size_t>(i)];
    }
    return big.from_raw(out);
  };

  if (n == big_n) {
    emb->basis_images = images_for(big.gen());
  } else if (n == 1) {
    emb->basis_images = {big.one().raw()};
  } else {
    std::vector<FieldElement> poly;
    for (auto c : small.modulus()) poly.push_back(big.constant(c));
    const auto roots = roots_in_field(big, poly);
    bool found = false;
    for (const auto& r : roots) {
      auto imgs = images_for(r);
      bool ok = true;
      // Coherence with every proper sublevel d of n: emb(n,N) o emb(d,n) = emb(d,N).
      for (const auto& [d, fd] : levels_) {
        if (d == 1 || d >= n || n % d != 0) continue;
        const Embedding& dn = embedding(d, n);
        const Embedding& dN = embedding(d, big_n);
        const FieldElement xd_in_n = small.from_raw(dn.basis_images.size() > 1 ? dn.basis_images[1] : dn.basis_images[0]);
        const FieldElement expected = big.from_raw(dN.basis_images.size() > 1 ? dN.basis_images[1] : dN.basis_images[0]);
        if (!(apply(imgs, xd_in_n) == expected)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        emb->basis_images = std::move(imgs);
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("no coherent embedding found");
  }

  // Left inverse: pick n independent coordinate rows of the N x n image matrix.
  std::vector<linalg::F3Vec> rows(static_cast<std::size_t>(big_n), linalg::F3Vec(static_cast<std::size_t>(n), 0));
  for (int j = 0; j < n; ++j) {
    const FieldElement col = big.from_raw(emb->basis_images[static_cast<std::size_t>(j)]);
    for (int i = 0; i < big_n; ++i) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(col.coeff(i));
  }
  const auto picked = linalg::independent_rows(rows);
  if (picked.size() != static_cast<std::size_t>(n)) throw std::logic_error("embedding is not injective");
  std::vector<linalg::F3Vec> minor;
  for (auto idx : picked) {
    emb->pivots.push_back(static_cast<int>(idx));
    minor.push_back(rows[idx]);
  }
  auto inv = linalg::invert(minor);
  if (!inv) throw std::logic_error("singular embedding minor");
  emb->pivot_inverse = std::move(*inv);
  return emb;
}

FieldElement FieldTower::embed(const FieldElement& x, int target_degree) const {
  const int n = x.degree();
  if (n == target_degree) {
    if (x.field_ptr() != &level(n)) throw std::invalid_argument("element does not belong to this tower");
    return x;
  }
  const Embedding& e = embedding(n, target_degree);
  if (x.field_ptr() != e.from) throw std::invalid_argument("element does not belong to this tower");
  Trits out{};
  for (int i = 0; i < n; ++i) {
    const int c = x.coeff(i);
    if (c == 1) out = out + e.basis_images[static_cast<std::size_t>(i)];
    if (c == 2) out = out - e.basis_images[static_cast<std::size_t>(i)];
  }
  return e.to->from_raw(out);
}

std::optional<FieldElement> FieldTower::contract(const FieldElement& y, int sub_degree) const {
  const int big_n = y.degree();
  if (big_n % sub_degree != 0) return std::nullopt;
  if (sub_degree == big_n) return y;
  const Embedding& e = embedding(sub_degree, big_n);
  std::vector<int> x(static_cast<std::size_t>(sub_degree), 0);
  for (int i = 0; i < sub_degree; ++i) {
    int acc = 0;
    for (int j = 0; j < sub_degree; ++j) {
      acc += e.pivot_inverse[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * y.coeff(e.pivots[static_cast<std::size_t>(j)]);
    }
    x[static_cast<std::size_t>(i)] = acc % 3;
  }
  const FieldElement cand = e.from->from_coeffs(x);
  if (embed(cand, big_n) == y) return cand;
  return std::nullopt;
}

std::pair<FieldElement, FieldElement> FieldTower::unify(const FieldElement& a, const FieldElement& b) const {
  const int l = std::lcm(a.degree(), b.degree());
  const auto target = smallest_level_over(l);
  if (!target) throw std::out_of_range("no common tower level for degrees " + std::to_string(a.degree()) + " and " + std::to_string(b.degree()));
  return {embed(a, *target), embed(b, *target)};
}

SqrtResult FieldTower::sqrt(const FieldElement& x) const {
  if (x.is_zero()) return {x, false};
  const Field& f = x.field();
  const bool is_square = x.pow((f.size() - 1) / 2).is_one();
  SqrtResult res;
  FieldElement xx = x;
  if (!is_square) {
    const int ext = 2 * f.degree();
    if (!has_level(ext)) throw std::out_of_range("sqrt needs the quadratic extension level " + std::to_string(ext));
    xx = embed(x, ext);
    res.in_extension = true;
  }
  const Field& g = xx.field();
  const auto roots = roots_in_field(g, {-xx, g.zero(), g.one()});
  if (roots.size() != 2) throw std::logic_error("square root not found");
  const FieldElement r = roots[0];
  res.root = r.lex_less(-r) ? r : -r;
  return res;
}

// ---------------------------------------------------------------------------

FieldElement trace_p(const FieldElement& b, int t) {
  FieldElement acc = b;
  FieldElement cur = b;
  for (int i = 1; i < t; ++i) {
    cur = cur.frobenius();
    acc += cur;
  }
  return acc;
}

std::uint64_t mult_order(const FieldElement& x) {
  if (x.is_zero()) throw std::domain_error("multiplicative order of zero");
  const int k = x.minimal_degree();
  u128 order = factor::pow3(k) - 1;
  for (const auto& [p, e] : factor::factor_three_power_minus_one(k)) {
    for (int i = 0; i < e; ++i) {
      if (x.pow(order / p).is_one()) {
        order /= p;
      } else {
        break;
      }
    }
  }
  if (order >> 64 != 0) throw std::overflow_error("multiplicative order exceeds 64 bits");
  return static_cast<std::uint64_t>(order);
}

}  // namespace z3ws::ff
