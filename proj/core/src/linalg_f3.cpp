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

#include "z3ws/linalg_f3.hpp"

#include <stdexcept>

namespace z3ws::linalg {
namespace {

// 1 and 2 are their own inverses mod 3.
inline std::uint8_t inv3(std::uint8_t x) { return x; }

// Reduced row echelon form in place; returns pivot column per pivot row.
std::vector<std::size_t> rref(std::vector<F3Vec>& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const std::uint8_t s = inv3(rows[r][c]);
    for (auto& x : rows[r]) x = static_cast<std::uint8_t>((x * s) % 3);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const std::uint8_t f = rows[i][c];
      for (std::size_t j = 0; j < rows[i].size(); ++j) {
        rows[i][j] = static_cast<std::uint8_t>((rows[i][j] + 3 * 3 - f * rows[r][j]) % 3);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::optional<F3Solution> solve(const std::vector<F3Vec>& columns, const F3Vec& rhs) {
  const std::size_t nvars = columns.size();
  const std::size_t neqs = rhs.size();
  for (const auto& c : columns) {
    if (c.size() != neqs) throw std::invalid_argument("linalg::solve: column length mismatch");
  }
  std::vector<F3Vec> rows(neqs, F3Vec(nvars + 1, 0));
  for (std::size_t i = 0; i < neqs; ++i) {
    for (std::size_t j = 0; j < nvars; ++j) rows[i][j] = columns[j][i];
    rows[i][nvars] = rhs[i];
  }
  const auto pivots = rref(rows, nvars + 1);
  if (!pivots.empty() && pivots.back() == nvars) return std::nullopt;

  F3Solution out;
  out.particular.assign(nvars, 0);
  std::vector<bool> is_pivot(nvars, false);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    is_pivot[pivots[r]] = true;
    out.particular[pivots[r]] = rows[r][nvars];
  }
  for (std::size_t free = 0; free < nvars; ++free) {
    if (is_pivot[free]) continue;
    F3Vec k(nvars, 0);
    k[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      k[pivots[r]] = static_cast<std::uint8_t>((3 - rows[r][free]) % 3);
    }
    out.kernel.push_back(std::move(k));
  }
  return out;
}

std::vector<std::size_t> independent_rows(const std::vector<F3Vec>& rows) {
  std::vector<std::size_t> picked;
  std::vector<F3Vec> basis;  // echelon rows
  std::vector<std::size_t> lead;
  for (std::size_t idx = 0; idx < rows.size(); ++idx) {
    F3Vec v = rows[idx];
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const std::uint8_t f = v[lead[b]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) {
        v[j] = static_cast<std::uint8_t>((v[j] + 9 - f * basis[b][j]) % 3);
      }
    }
    std::size_t c = 0;
    while (c < v.size() && v[c] == 0) ++c;
    if (c == v.size()) continue;
    const std::uint8_t s = inv3(v[c]);
    for (auto& x : v) x = static_cast<std::uint8_t>((x * s) % 3);
    // Keep the echelon basis fully reduced so later eliminations stay single-pass.
    for (auto& b : basis) {
      const std::uint8_t f = b[c];
      if (f == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) b[j] = static_cast<std::uint8_t>((b[j] + 9 - f * v[j]) % 3);
    }
    basis.push_back(std::move(v));
    lead.push_back(c);
    picked.push_back(idx);
  }
  return picked;
}

std::optional<std::vector<F3Vec>> invert(const std::vector<F3Vec>& rows_in) {
  const std::size_t n = rows_in.size();
  std::vector<F3Vec> rows(n, F3Vec(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (rows_in[i].size() != n) throw std::invalid_argument("linalg::invert: not square");
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = rows_in[i][j];
    rows[i][n + i] = 1;
  }
  const auto pivots = rref(rows, n);
  if (pivots.size() != n) return std::nullopt;
  std::vector<F3Vec> inv(n, F3Vec(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = rows[i][n + j];
  }
  return inv;
}

}  // namespace z3ws::linalg
