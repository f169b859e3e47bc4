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

// Matroids: circuits, circuit connectivity, and the free expansion of an
// integer polymatroid into a matroid (each element i becomes h(i) parallel
// unit atoms) served as a lazy rank oracle.

#ifndef PMW_MATROID_HPP_
#define PMW_MATROID_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pmw/core.hpp"
#include "pmw/inequalities.hpp"
#include "pmw/polymatroid.hpp"

namespace pmw {

// Largest ground set for full circuit enumeration.
inline constexpr int kMaxCircuitElements = 15;

// Throws Error(kModeMismatch) for float-mode input.
bool is_matroid(const Polymatroid& m);

class Matroid {
 public:
  // Throws Error(kInvalidArgument) unless is_matroid(m).
  explicit Matroid(Polymatroid m);

  const Polymatroid& polymatroid() const { return poly_; }
  const GroundSet& ground() const { return poly_.ground(); }
  int size() const { return poly_.size(); }
  std::int64_t rank(SubsetMask s) const { return poly_.rank().exact(s); }
  bool is_dependent(SubsetMask s) const { return rank(s) < s.size(); }
  // Minimal dependent: dependent, and every one-element deletion independent.
  bool is_circuit(SubsetMask s) const;

 private:
  Polymatroid poly_;
};

// All circuits, ordered by size then mask. Throws Error(kTooLarge) above
// kMaxCircuitElements elements.
std::vector<SubsetMask> circuits(const Matroid& m);

struct CircuitLink {
  bool connected = false;
  std::optional<SubsetMask> circuit;
};

// Smallest circuit through both x and y, if one exists.
CircuitLink circuit_connected(const Matroid& m, int x, int y);

// Per-block atom counts of a subset of an expanded matroid.
using BlockCounts = std::vector<int>;

class ExpandedMatroid {
 public:
  // Integer-mode base with non-negative ranks.
  static ExpandedMatroid expand(const Polymatroid& base);

  // Oracle for the dual matroid over the same atoms.
  ExpandedMatroid dualized() const;

  const Polymatroid& base() const { return base_; }
  bool is_dual() const { return dual_; }
  int blocks() const { return base_.size(); }
  int block_size(int block) const { return sizes_.at(block); }
  int element_count() const { return total_; }

  // Atom labels "<block>_<k>", k = 1..h(block), ordered block by block.
  std::string element_label(int element) const;
  // (block, position within block) of a global atom index.
  std::pair<int, int> locate(int element) const;

  // "a:12,b:3" (atom counts per block) or "a_1,a_2,b_7" (atom names).
  BlockCounts parse_subset(std::string_view text) const;
  BlockCounts counts_of_elements(const std::vector<int>& elements) const;
  BlockCounts block_union(SubsetMask blocks) const;
  BlockCounts all_atoms() const { return sizes_; }

  // Memoized rank. Depends only on per-block counts:
  //   rank(S) = min_{A ⊆ M} h(A) + sum_{i not in A} |S ∩ X_i|
  // and, for the dual, g(E - S) + |S| - g(E).
  std::int64_t rank(const BlockCounts& counts) const;
  std::int64_t rank_of_elements(const std::vector<int>& elements) const;

  // The base-sized polymatroid B -> rank(X(B)).
  Polymatroid block_factor() const;

  std::size_t cache_size() const;

 private:
  struct Cache;

  ExpandedMatroid(Polymatroid base, bool dual);
  std::int64_t primal_rank(const BlockCounts& counts) const;
  void check_counts(const BlockCounts& counts) const;

  Polymatroid base_;
  bool dual_ = false;
  std::vector<int> sizes_;
  std::vector<int> offsets_;
  int total_ = 0;
  std::shared_ptr<Cache> cache_;
};

// MMRV of the block factor, with roles naming blocks. Throws
// Error(kInvalidArgument) when the base has fewer than five blocks.
std::int64_t expanded_mmrv(const ExpandedMatroid& e, const Roles& roles);

}  // namespace pmw

#endif  // PMW_MATROID_HPP_
