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

#include "pmw/matroid.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace pmw {

bool is_matroid(const Polymatroid& m) {
  if (!m.is_integer()) {
    throw Error(ErrorCode::kModeMismatch, "matroids are integer-mode only");
  }
  for (int i = 0; i < m.size(); ++i) {
    std::int64_t r = m.rank().exact(SubsetMask::singleton(i));
    if (r != 0 && r != 1) return false;
  }
  return true;
}

Matroid::Matroid(Polymatroid m) : poly_(std::move(m)) {
  if (!is_matroid(poly_)) {
    throw Error(ErrorCode::kInvalidArgument,
                "singleton ranks must be 0 or 1 for a matroid");
  }
}

bool Matroid::is_circuit(SubsetMask s) const {
  if (s.empty() || !is_dependent(s)) return false;
  bool minimal = true;
  for_each_element(s, [&](int i) { minimal = minimal && !is_dependent(s.without(i)); });
  return minimal;
}

std::vector<SubsetMask> circuits(const Matroid& m) {
  const int n = m.size();
  if (n > kMaxCircuitElements) {
    throw Error(ErrorCode::kTooLarge,
                "circuit enumeration is limited to 15 elements");
  }
  std::vector<std::uint32_t> order(std::size_t{1} << n);
  for (std::uint32_t s = 0; s < order.size(); ++s) order[s] = s;
  std::stable_sort(order.begin(), order.end(), [](std::uint32_t x, std::uint32_t y) {
    return std::popcount(x) < std::popcount(y);
  });
  std::vector<SubsetMask> found;
  for (std::uint32_t bits : order) {
    SubsetMask s(bits);
    if (s.empty()) continue;
    // A set holding a known circuit is dependent but not minimal.
    bool covers = std::any_of(found.begin(), found.end(),
                              [&](SubsetMask c) { return c.is_subset_of(s); });
    if (!covers && m.is_dependent(s)) found.push_back(s);
  }
  return found;
}

CircuitLink circuit_connected(const Matroid& m, int x, int y) {
  const int n = m.size();
  if (x == y || x < 0 || y < 0 || x >= n || y >= n) {
    throw Error(ErrorCode::kInvalidArgument,
                "circuit_connected needs two distinct elements");
  }
  const SubsetMask pair = SubsetMask::singleton(x).with(y);
  const SubsetMask others = m.ground().full() - pair;
  // Grow supersets of {x, y} by size; the first circuit found is smallest.
  for (int extra = 0; extra <= others.size(); ++extra) {
    std::vector<int> pool;
    for_each_element(others, [&](int i) { pool.push_back(i); });
    std::vector<int> pick(extra);
    for (int k = 0; k < extra; ++k) pick[k] = k;
    while (true) {
      SubsetMask s = pair;
      for (int k : pick) s = s.with(pool[k]);
      if (m.is_circuit(s)) return CircuitLink{true, s};
      // Next combination of `extra` items from pool.
      int k = extra - 1;
      while (k >= 0 && pick[k] == static_cast<int>(pool.size()) - extra + k) --k;
      if (k < 0) break;
      ++pick[k];
      for (int j = k + 1; j < extra; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return CircuitLink{};
}

struct ExpandedMatroid::Cache {
  mutable std::shared_mutex mutex;
  std::unordered_map<std::uint64_t, std::int64_t> values;
  std::vector<std::uint64_t> radix;
  bool enabled = true;
};

ExpandedMatroid::ExpandedMatroid(Polymatroid base, bool dual)
    : base_(std::move(base)), dual_(dual), cache_(std::make_shared<Cache>()) {
  if (!base_.is_integer()) {
    throw Error(ErrorCode::kModeMismatch, "expansion needs an integer polymatroid");
  }
  const int n = base_.size();
  std::uint64_t stride = 1;
  for (int i = 0; i < n; ++i) {
    std::int64_t h = base_.rank().exact(SubsetMask::singleton(i));
    if (h < 0 || h > std::numeric_limits<int>::max() / 2) {
      throw Error(ErrorCode::kInvalidArgument, "singleton rank out of range");
    }
    offsets_.push_back(total_);
    sizes_.push_back(static_cast<int>(h));
    total_ += static_cast<int>(h);
    cache_->radix.push_back(stride);
    auto next = static_cast<std::uint64_t>(h + 1);
    if (stride > std::numeric_limits<std::uint64_t>::max() / next) {
      cache_->enabled = false;
    } else {
      stride *= next;
    }
  }
}

ExpandedMatroid ExpandedMatroid::expand(const Polymatroid& base) {
  return ExpandedMatroid(base, false);
}

ExpandedMatroid ExpandedMatroid::dualized() const {
  return ExpandedMatroid(base_, !dual_);
}

std::string ExpandedMatroid::element_label(int element) const {
  auto [block, k] = locate(element);
  return base_.ground().label(block) + "_" + std::to_string(k + 1);
}

std::pair<int, int> ExpandedMatroid::locate(int element) const {
  if (element < 0 || element >= total_) {
    throw Error(ErrorCode::kInvalidArgument, "atom index out of range");
  }
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), element);
  // The last block starting at or before `element`; never an empty one.
  int block = static_cast<int>(it - offsets_.begin()) - 1;
  return {block, element - offsets_[block]};
}

BlockCounts ExpandedMatroid::parse_subset(std::string_view text) const {
  BlockCounts counts(blocks(), 0);
  std::vector<std::vector<bool>> named(blocks());
  std::size_t start = 0;
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) return counts;
  while (true) {
    std::size_t comma = text.find(',', start);
    std::string_view item = trim(text.substr(
        start, comma == std::string_view::npos ? text.size() - start : comma - start));
    std::size_t colon = item.rfind(':');
    std::size_t under = item.rfind('_');
    if (colon != std::string_view::npos) {
      int b = base_.ground().index_of(item.substr(0, colon));
      int c = std::stoi(std::string(item.substr(colon + 1)));
      if (c < 0 || counts[b] + c > sizes_[b]) {
        throw Error(ErrorCode::kInvalidArgument,
                    "block '" + std::string(item.substr(0, colon)) +
                        "' has only " + std::to_string(sizes_[b]) + " atoms");
      }
      counts[b] += c;
    } else if (under != std::string_view::npos) {
      int b = base_.ground().index_of(item.substr(0, under));
      int k = std::stoi(std::string(item.substr(under + 1)));
      if (k < 1 || k > sizes_[b]) {
        throw Error(ErrorCode::kUnknownLabel, "no atom '" + std::string(item) + "'");
      }
      named[b].resize(sizes_[b], false);
      if (named[b][k - 1]) {
        throw Error(ErrorCode::kDuplicateLabel, "atom '" + std::string(item) + "' listed twice");
      }
      named[b][k - 1] = true;
      ++counts[b];
      if (counts[b] > sizes_[b]) {
        throw Error(ErrorCode::kInvalidArgument, "too many atoms in one block");
      }
    } else {
      throw Error(ErrorCode::kInvalidArgument,
                  "expected 'block:count' or 'block_k', got '" + std::string(item) + "'");
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return counts;
}

BlockCounts ExpandedMatroid::counts_of_elements(const std::vector<int>& elements) const {
  BlockCounts counts(blocks(), 0);
  std::vector<bool> seen(total_, false);
  for (int e : elements) {
    auto [block, k] = locate(e);
    if (seen[e]) {
      throw Error(ErrorCode::kDuplicateLabel, "atom listed twice");
    }
    seen[e] = true;
    ++counts[block];
  }
  return counts;
}

BlockCounts ExpandedMatroid::block_union(SubsetMask blocks_mask) const {
  BlockCounts counts(blocks(), 0);
  for_each_element(blocks_mask & base_.ground().full(),
                   [&](int b) { counts[b] = sizes_[b]; });
  return counts;
}

void ExpandedMatroid::check_counts(const BlockCounts& counts) const {
  if (static_cast<int>(counts.size()) != blocks()) {
    throw Error(ErrorCode::kInvalidArgument, "one count per block expected");
  }
  for (int b = 0; b < blocks(); ++b) {
    if (counts[b] < 0 || counts[b] > sizes_[b]) {
      throw Error(ErrorCode::kInvalidArgument, "block count out of range");
    }
  }
}

std::int64_t ExpandedMatroid::primal_rank(const BlockCounts& counts) const {
  const auto f = base_.rank().ints();
  const int n = blocks();
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::uint32_t a = 0; a < f.size(); ++a) {
    std::int64_t v = f[a];
    for (int i = 0; i < n; ++i) {
      if (!((a >> i) & 1U)) v += counts[i];
    }
    best = std::min(best, v);
  }
  return best;
}

std::int64_t ExpandedMatroid::rank(const BlockCounts& counts) const {
  check_counts(counts);
  std::uint64_t key = 0;
  if (cache_->enabled) {
    for (int b = 0; b < blocks(); ++b) key += cache_->radix[b] * counts[b];
    std::shared_lock lock(cache_->mutex);
    auto it = cache_->values.find(key);
    if (it != cache_->values.end()) return it->second;
  }
  std::int64_t value;
  if (!dual_) {
    value = primal_rank(counts);
  } else {
    BlockCounts rest(blocks());
    std::int64_t size = 0;
    for (int b = 0; b < blocks(); ++b) {
      rest[b] = sizes_[b] - counts[b];
      size += counts[b];
    }
    value = primal_rank(rest) + size - base_.rank().exact(base_.ground().full());
  }
  if (cache_->enabled) {
    std::unique_lock lock(cache_->mutex);
    cache_->values.emplace(key, value);
  }
  return value;
}

std::int64_t ExpandedMatroid::rank_of_elements(const std::vector<int>& elements) const {
  return rank(counts_of_elements(elements));
}

Polymatroid ExpandedMatroid::block_factor() const {
  std::vector<std::int64_t> values(std::size_t{1} << blocks());
  for (std::uint32_t m = 1; m < values.size(); ++m) {
    values[m] = rank(block_union(SubsetMask(m)));
  }
  return Polymatroid::validate(RankVector::integer(base_.ground(), std::move(values)));
}

std::size_t ExpandedMatroid::cache_size() const {
  std::shared_lock lock(cache_->mutex);
  return cache_->values.size();
}

std::int64_t expanded_mmrv(const ExpandedMatroid& e, const Roles& roles) {
  if (e.blocks() < 5) {
    throw Error(ErrorCode::kInvalidArgument,
                "MMRV needs at least five blocks, base has " +
                    std::to_string(e.blocks()));
  }
  return mmrv_exact(e.block_factor(), roles);
}

}  // namespace pmw
