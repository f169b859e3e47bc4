// Copyright 2026 The pmw Authors.
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

#include "pmw/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pmw::kernels {
namespace {

// Masks per parallel work item in the elemental scan.
constexpr std::uint32_t kChunk = 4096;

template <class T>
void monotone_violations(std::span<const T> f, int n, T tol,
                         std::vector<Violation>& out) {
  const std::uint32_t full = SubsetMask::full(n).bits();
  for (int i = 0; i < n; ++i) {
    std::uint32_t rest = full & ~(std::uint32_t{1} << i);
    if (f[full] - f[rest] < -tol) {
      out.push_back({Violation::Kind::kMonotone, i, -1, SubsetMask(rest),
                     static_cast<double>(f[full]),
                     static_cast<double>(f[rest])});
    }
  }
}

// Submodular elemental inequalities whose base set A lies in [lo, hi).
template <class T>
void submodular_violations(std::span<const T> f, int n, T tol,
                           std::uint32_t lo, std::uint32_t hi,
                           std::vector<Violation>& out) {
  for (std::uint32_t a = lo; a < hi; ++a) {
    for (int i = 0; i < n; ++i) {
      std::uint32_t bi = std::uint32_t{1} << i;
      if (a & bi) continue;
      for (int j = i + 1; j < n; ++j) {
        std::uint32_t bj = std::uint32_t{1} << j;
        if (a & bj) continue;
        T lhs = f[a | bi] + f[a | bj];
        T rhs = f[a | bi | bj] + f[a];
        if (lhs - rhs < -tol) {
          out.push_back({Violation::Kind::kSubmodular, i, j, SubsetMask(a),
                         static_cast<double>(lhs), static_cast<double>(rhs)});
        }
      }
    }
  }
}

double marginal_entropy(const DistributionTable& t, std::uint32_t mask,
                        std::vector<std::size_t>& order) {
  const std::size_t rows = t.probs.size();
  const int n = t.variables;
  auto row = [&](std::size_t r) { return t.values.subspan(r * n, n); };
  auto less = [&](std::size_t x, std::size_t y) {
    auto rx = row(x), ry = row(y);
    for (int v = 0; v < n; ++v) {
      if (!((mask >> v) & 1U)) continue;
      if (rx[v] != ry[v]) return rx[v] < ry[v];
    }
    return false;
  };
  order.resize(rows);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), less);
  double h = 0;
  std::size_t k = 0;
  while (k < rows) {
    double p = 0;
    std::size_t start = k;
    while (k < rows && !less(order[start], order[k])) {
      p += t.probs[order[k]];
      ++k;
    }
    if (p > 0) h -= p * std::log2(p);
  }
  return h;
}

template <class T>
bool realization_fails(std::span<const T> f, int secret,
                       std::span<const std::uint8_t> qualified, T tol,
                       std::uint32_t pm) {
  std::uint32_t a = insert_zero_bit(pm, secret);
  std::uint32_t sa = a | (std::uint32_t{1} << secret);
  T gap = f[sa] - f[a];
  T target = qualified[pm] ? T{0} : f[std::uint32_t{1} << secret];
  T diff = gap - target;
  return diff > tol || diff < -tol;
}

}  // namespace

namespace serial {

template <class T>
std::vector<Violation> elemental_violations(std::span<const T> f, int n,
                                            T tolerance) {
  std::vector<Violation> out;
  monotone_violations(f, n, tolerance, out);
  submodular_violations(f, n, tolerance, 0,
                        static_cast<std::uint32_t>(f.size()), out);
  return out;
}

std::vector<double> marginal_entropies(const DistributionTable& table) {
  std::vector<double> out(std::size_t{1} << table.variables, 0.0);
  std::vector<std::size_t> order;
  for (std::uint32_t m = 1; m < out.size(); ++m) {
    out[m] = marginal_entropy(table, m, order);
  }
  return out;
}

template <class T>
std::optional<std::uint32_t> first_realization_failure(
    std::span<const T> f, int n, int secret,
    std::span<const std::uint8_t> qualified, T tolerance) {
  const std::uint32_t count = std::uint32_t{1} << (n - 1);
  for (std::uint32_t pm = 0; pm < count; ++pm) {
    if (realization_fails(f, secret, qualified, tolerance, pm)) return pm;
  }
  return std::nullopt;
}

template std::vector<Violation> elemental_violations<std::int64_t>(
    std::span<const std::int64_t>, int, std::int64_t);
template std::vector<Violation> elemental_violations<double>(
    std::span<const double>, int, double);
template std::optional<std::uint32_t> first_realization_failure<std::int64_t>(
    std::span<const std::int64_t>, int, int, std::span<const std::uint8_t>,
    std::int64_t);
template std::optional<std::uint32_t> first_realization_failure<double>(
    std::span<const double>, int, int, std::span<const std::uint8_t>, double);

}  // namespace serial

namespace parallel {

template <class T>
std::vector<Violation> elemental_violations(std::span<const T> f, int n,
                                            T tolerance) {
  const auto total = static_cast<std::uint32_t>(f.size());
  const std::int64_t chunks = (total + kChunk - 1) / kChunk;
  std::vector<std::vector<Violation>> parts(chunks);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < chunks; ++c) {
    std::uint32_t lo = static_cast<std::uint32_t>(c) * kChunk;
    std::uint32_t hi = std::min(total, lo + kChunk);
    submodular_violations(f, n, tolerance, lo, hi, parts[c]);
  }
  std::vector<Violation> out;
  monotone_violations(f, n, tolerance, out);
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::vector<double> marginal_entropies(const DistributionTable& table) {
  std::vector<double> out(std::size_t{1} << table.variables, 0.0);
  const auto count = static_cast<std::int64_t>(out.size());
#pragma omp parallel
  {
    std::vector<std::size_t> order;
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t m = 1; m < count; ++m) {
      out[m] = marginal_entropy(table, static_cast<std::uint32_t>(m), order);
    }
  }
  return out;
}

template <class T>
std::optional<std::uint32_t> first_realization_failure(
    std::span<const T> f, int n, int secret,
    std::span<const std::uint8_t> qualified, T tolerance) {
  const std::int64_t count = std::int64_t{1} << (n - 1);
  std::int64_t first = count;
#pragma omp parallel for reduction(min : first)
  for (std::int64_t pm = 0; pm < count; ++pm) {
    if (pm < first &&
        realization_fails(f, secret, qualified, tolerance,
                          static_cast<std::uint32_t>(pm))) {
      first = pm;
    }
  }
  if (first == count) return std::nullopt;
  return static_cast<std::uint32_t>(first);
}

template std::vector<Violation> elemental_violations<std::int64_t>(
    std::span<const std::int64_t>, int, std::int64_t);
template std::vector<Violation> elemental_violations<double>(
    std::span<const double>, int, double);
template std::optional<std::uint32_t> first_realization_failure<std::int64_t>(
    std::span<const std::int64_t>, int, int, std::span<const std::uint8_t>,
    std::int64_t);
template std::optional<std::uint32_t> first_realization_failure<double>(
    std::span<const double>, int, int, std::span<const std::uint8_t>, double);

}  // namespace parallel
}  // namespace pmw::kernels
