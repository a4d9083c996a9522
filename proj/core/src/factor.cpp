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

#include "z3ws/factor.hpp"

#include <mutex>
#include <numeric>
#include <stdexcept>

namespace z3ws::factor {
namespace {

constexpr u128 kTrialLimit = 1'000'000;

u128 mulmod(u128 a, u128 b, u128 mod) {
  if (mod >> 64 == 0) return (a % mod) * (b % mod) % mod;
  // Double-and-add keeps every intermediate below 2 * mod < 2^128.
  u128 result = 0;
  a %= mod;
  while (b != 0) {
    if (b & 1U) {
      result = (result >= mod - a) ? result - (mod - a) : result + a;
    }
    a = (a >= mod - a) ? a - (mod - a) : a + a;
    b >>= 1;
  }
  return result;
}

u128 powmod(u128 base, u128 e, u128 mod) {
  u128 r = 1 % mod;
  base %= mod;
  while (e != 0) {
    if (e & 1U) r = mulmod(r, base, mod);
    base = mulmod(base, base, mod);
    e >>= 1;
  }
  return r;
}

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 pollard_brent(u128 n) {
  if (n % 2 == 0) return 2;
  for (u128 c = 1;; ++c) {
    u128 y = 2, x = 2, g = 1, q = 1, ys = 2;
    const u128 m = 128;
    u128 r = 1;
    auto f = [&](u128 v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u128 i = 0; i < r; ++i) y = f(y);
      u128 k = 0;
      do {
        ys = y;
        const u128 lim = (m < r - k) ? m : r - k;
        for (u128 i = 0; i < lim; ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = gcd128(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd128(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(u128 n, std::map<u128, int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  const u128 d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

bool is_prime(u128 n) {
  if (n < 2) return false;
  for (u128 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u128 d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are deterministic below 3.3e24; beyond that the test is probabilistic
  // with error below 4^-12.
  for (u128 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u128 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::map<u128, int> factorize(u128 n) {
  if (n == 0) throw std::invalid_argument("factorize: zero");
  std::map<u128, int> out;
  for (u128 p = 2; p <= kTrialLimit && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  factor_into(n, out);
  return out;
}

u128 pow3(int k) {
  if (k < 0 || k > 80) throw std::out_of_range("pow3: exponent out of range");
  u128 r = 1;
  for (int i = 0; i < k; ++i) r *= 3;
  return r;
}

const std::map<u128, int>& factor_three_power_minus_one(int k) {
  static std::mutex mu;
  static std::map<int, std::map<u128, int>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, factorize(pow3(k) - 1)).first;
  return it->second;
}

}  // namespace z3ws::factor
