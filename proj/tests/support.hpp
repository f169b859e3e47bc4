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

// Seeded generators shared by the test binaries.

#ifndef PMW_TESTS_SUPPORT_HPP_
#define PMW_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pmw/core.hpp"
#include "pmw/entropy.hpp"
#include "pmw/matroid.hpp"
#include "pmw/polymatroid.hpp"
#include "pmw/secret_sharing.hpp"

namespace pmw::testing {

using Rng = std::mt19937_64;

inline GroundSet letters(int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
  return GroundSet(std::move(labels));
}

inline int uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// GF(2) rank of a set of bit vectors.
inline int gf2_rank(std::vector<std::uint32_t> rows) {
  int rank = 0;
  for (int bit = 31; bit >= 0; --bit) {
    auto pivot = std::find_if(rows.begin(), rows.end(),
                              [&](std::uint32_t r) { return (r >> bit) & 1U; });
    if (pivot == rows.end()) continue;
    std::uint32_t p = *pivot;
    rows.erase(pivot);
    for (auto& r : rows) {
      if ((r >> bit) & 1U) r ^= p;
    }
    ++rank;
  }
  return rank;
}

// Each element spans `per_element` random vectors of GF(2)^dim; the rank of
// a set is the dimension of the union. Linear, hence an integer polymatroid.
inline Polymatroid random_linear(Rng& rng, int n, int dim, int max_per_element) {
  std::vector<std::vector<std::uint32_t>> vecs(n);
  for (int i = 0; i < n; ++i) {
    int k = uniform(rng, 0, max_per_element);
    for (int j = 0; j < k; ++j) {
      vecs[i].push_back(static_cast<std::uint32_t>(rng() & ((1ULL << dim) - 1)));
    }
  }
  std::vector<std::int64_t> f(std::size_t{1} << n, 0);
  for (std::uint32_t m = 1; m < f.size(); ++m) {
    std::vector<std::uint32_t> rows;
    for (int i = 0; i < n; ++i) {
      if ((m >> i) & 1U) rows.insert(rows.end(), vecs[i].begin(), vecs[i].end());
    }
    f[m] = gf2_rank(rows);
  }
  return Polymatroid::validate(RankVector::integer(letters(n), std::move(f)));
}

// Binary matroid: one vector per element.
inline Matroid random_binary_matroid(Rng& rng, int n, int dim) {
  std::vector<std::uint32_t> vecs(n);
  for (auto& v : vecs) v = static_cast<std::uint32_t>(rng() & ((1ULL << dim) - 1));
  std::vector<std::int64_t> f(std::size_t{1} << n, 0);
  for (std::uint32_t m = 1; m < f.size(); ++m) {
    std::vector<std::uint32_t> rows;
    for (int i = 0; i < n; ++i) {
      if ((m >> i) & 1U) rows.push_back(vecs[i]);
    }
    f[m] = gf2_rank(rows);
  }
  return Matroid(Polymatroid::validate(RankVector::integer(letters(n), std::move(f))));
}

inline Matroid uniform_matroid(int k, int n) {
  std::vector<std::int64_t> f(std::size_t{1} << n, 0);
  for (std::uint32_t m = 0; m < f.size(); ++m) f[m] = std::min(std::popcount(m), k);
  return Matroid(Polymatroid::validate(RankVector::integer(letters(n), std::move(f))));
}

// Truncation of a matroid to rank k.
inline Matroid truncate(const Matroid& m, std::int64_t k) {
  std::vector<std::int64_t> f(std::size_t{1} << m.size(), 0);
  for (std::uint32_t s = 0; s < f.size(); ++s) f[s] = std::min(m.rank(SubsetMask(s)), k);
  return Matroid(Polymatroid::validate(RankVector::integer(m.ground(), std::move(f))));
}

inline Matroid random_matroid(Rng& rng, int n) {
  switch (uniform(rng, 0, 2)) {
    case 0:
      return random_binary_matroid(rng, n, uniform(rng, 1, n));
    case 1: {
      int k = uniform(rng, 0, n);
      return uniform_matroid(k, n);
    }
    default: {
      Matroid b = random_binary_matroid(rng, n, uniform(rng, 2, n));
      return truncate(b, uniform(rng, 1, std::max<std::int64_t>(1, b.rank(b.ground().full()))));
    }
  }
}

// Non-negative combination of r_A plus a truncation: a float polymatroid
// that generally has private information.
inline Polymatroid random_real_polymatroid(Rng& rng, int n) {
  std::vector<double> f(std::size_t{1} << n, 0.0);
  int terms = uniform(rng, 1, 6);
  for (int t = 0; t < terms; ++t) {
    std::uint32_t a = static_cast<std::uint32_t>(uniform(rng, 1, (1 << n) - 1));
    double c = uniform_real(rng, 0.1, 3.0);
    for (std::uint32_t m = 1; m < f.size(); ++m) {
      if (m & a) f[m] += c;
    }
  }
  // min(g, cap) of a monotone submodular g stays a polymatroid.
  if (uniform(rng, 0, 1) == 1) {
    double cap = f.back() * uniform_real(rng, 0.5, 1.0);
    for (auto& v : f) v = std::min(v, cap);
  }
  return Polymatroid::validate(RankVector::real(letters(n), std::move(f)));
}

inline JointDistribution random_distribution(Rng& rng, int n, int alphabet, int support) {
  std::vector<JointDistribution::Row> rows;
  std::vector<std::vector<std::int32_t>> seen;
  double total = 0;
  for (int r = 0; r < support; ++r) {
    std::vector<std::int32_t> v(n);
    for (auto& x : v) x = uniform(rng, 0, alphabet - 1);
    if (std::find(seen.begin(), seen.end(), v) != seen.end()) continue;
    seen.push_back(v);
    double p = uniform_real(rng, 0.05, 1.0);
    total += p;
    rows.push_back({v, p});
  }
  for (auto& r : rows) r.prob /= total;
  // Absorb rounding so the sum is 1 to machine precision.
  double sum = 0;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) sum += rows[i].prob;
  rows.back().prob = 1.0 - sum;
  return JointDistribution(letters(n), std::move(rows));
}

// Any polymatroid on up to five elements: linear, combination, or entropic.
inline Polymatroid random_polymatroid(Rng& rng, int n) {
  switch (uniform(rng, 0, 2)) {
    case 0:
      return random_linear(rng, n, uniform(rng, 1, 6), 3);
    case 1:
      return random_real_polymatroid(rng, n);
    default:
      return entropy_vector(random_distribution(rng, n, 3, uniform(rng, 1, 12)));
  }
}

// Ground set minus the secret, in order.
inline GroundSet participants_of(const GroundSet& ground, int secret) {
  std::vector<std::string> labels;
  for (int i = 0; i < ground.size(); ++i) {
    if (i != secret) labels.push_back(ground.label(i));
  }
  return GroundSet(std::move(labels));
}

// (k, |P|)-threshold on the given participants.
inline AccessStructure threshold_on(const GroundSet& participants, int k) {
  std::vector<std::uint8_t> q(std::size_t{1} << participants.size());
  for (std::uint32_t m = 0; m < q.size(); ++m) q[m] = std::popcount(m) >= k ? 1 : 0;
  return AccessStructure::from_qualified(participants, std::move(q));
}

}  // namespace pmw::testing

#endif  // PMW_TESTS_SUPPORT_HPP_
