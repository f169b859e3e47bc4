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

// Data-parallel scans over the 2^n subsets of a ground set.
//
// Every kernel has a serial reference in kernels::serial and an OpenMP
// version in kernels::parallel. Both produce identical output, in the same
// order, for identical input; the tests hold them to bitwise equality.

#ifndef PMW_KERNELS_HPP_
#define PMW_KERNELS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pmw/core.hpp"

namespace pmw {

// One failed elemental inequality. Monotone: f(M) >= f(M-i), with
// lhs = f(M), rhs = f(M-i) and second == -1. Submodular:
// f(iA) + f(jA) >= f(ijA) + f(A) with lhs/rhs the two sides.
struct Violation {
  enum class Kind { kMonotone, kSubmodular };
  Kind kind;
  int first;
  int second;
  SubsetMask subset;
  double lhs;
  double rhs;
};

// Flattened joint-distribution table: `values` is row-major with
// `variables` entries per row.
struct DistributionTable {
  int variables = 0;
  std::span<const std::int32_t> values;
  std::span<const double> probs;
};

namespace kernels {
namespace serial {

template <class T>
std::vector<Violation> elemental_violations(std::span<const T> f, int n,
                                            T tolerance);

// Base-2 Shannon entropy of every marginal; out[mask], out[0] = 0.
std::vector<double> marginal_entropies(const DistributionTable& table);

// Smallest participant mask breaking the realization dichotomy, if any.
// `qualified` is indexed by participant mask over the n-1 non-secret
// elements, kept in ground-set order.
template <class T>
std::optional<std::uint32_t> first_realization_failure(
    std::span<const T> f, int n, int secret,
    std::span<const std::uint8_t> qualified, T tolerance);

}  // namespace serial

namespace parallel {

template <class T>
std::vector<Violation> elemental_violations(std::span<const T> f, int n,
                                            T tolerance);

std::vector<double> marginal_entropies(const DistributionTable& table);

template <class T>
std::optional<std::uint32_t> first_realization_failure(
    std::span<const T> f, int n, int secret,
    std::span<const std::uint8_t> qualified, T tolerance);

}  // namespace parallel

// Maps a participant mask (ground minus `secret`) back to a ground mask.
constexpr std::uint32_t insert_zero_bit(std::uint32_t m, int secret) {
  std::uint32_t low = m & ((std::uint32_t{1} << secret) - 1);
  std::uint32_t high = (m >> secret) << (secret + 1);
  return low | high;
}

}  // namespace kernels
}  // namespace pmw

#endif  // PMW_KERNELS_HPP_
