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

// Ground sets, subset masks and dense rank vectors.
//
// A RankVector stores one value per subset of its ground set, indexed by
// the subset's bitmask. Slot 0 (the empty set) is always zero. Values are
// either exact 64-bit integers or binary64 reals; the mode never changes
// implicitly.

#ifndef PMW_CORE_HPP_
#define PMW_CORE_HPP_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pmw {

enum class ErrorCode {
  kUnknownLabel,
  kDuplicateLabel,
  kGroundMismatch,
  kInvalidArgument,
  kModeMismatch,
  kNotPolymatroid,
  kResidualTooLarge,
  kTooLarge,
  kLoadError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Largest ground set stored densely (2^20 values).
inline constexpr int kMaxDenseElements = 20;

class SubsetMask {
 public:
  constexpr SubsetMask() = default;
  constexpr explicit SubsetMask(std::uint32_t bits) : bits_(bits) {}

  static constexpr SubsetMask singleton(int i) {
    return SubsetMask(std::uint32_t{1} << i);
  }
  static constexpr SubsetMask full(int n) {
    return SubsetMask(n >= 32 ? ~std::uint32_t{0}
                              : (std::uint32_t{1} << n) - 1);
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int i) const { return (bits_ >> i) & 1U; }
  constexpr bool is_subset_of(SubsetMask other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr SubsetMask with(int i) const {
    return SubsetMask(bits_ | (std::uint32_t{1} << i));
  }
  constexpr SubsetMask without(int i) const {
    return SubsetMask(bits_ & ~(std::uint32_t{1} << i));
  }
  constexpr SubsetMask complement(int n) const {
    return SubsetMask(full(n).bits_ & ~bits_);
  }

  friend constexpr SubsetMask operator|(SubsetMask a, SubsetMask b) {
    return SubsetMask(a.bits_ | b.bits_);
  }
  friend constexpr SubsetMask operator&(SubsetMask a, SubsetMask b) {
    return SubsetMask(a.bits_ & b.bits_);
  }
  // Set difference.
  friend constexpr SubsetMask operator-(SubsetMask a, SubsetMask b) {
    return SubsetMask(a.bits_ & ~b.bits_);
  }
  friend constexpr bool operator==(SubsetMask, SubsetMask) = default;
  friend constexpr auto operator<=>(SubsetMask, SubsetMask) = default;

 private:
  std::uint32_t bits_ = 0;
};

// Calls fn(i) for every element index in the mask, ascending.
template <class Fn>
constexpr void for_each_element(SubsetMask s, Fn&& fn) {
  for (std::uint32_t b = s.bits(); b != 0; b &= b - 1) {
    fn(std::countr_zero(b));
  }
}

class GroundSet {
 public:
  GroundSet() = default;
  // Throws Error(kDuplicateLabel) / Error(kInvalidArgument) on bad labels.
  explicit GroundSet(std::vector<std::string> labels);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_.at(i); }
  std::optional<int> find(std::string_view label) const;
  // Throws Error(kUnknownLabel).
  int index_of(std::string_view label) const;
  SubsetMask full() const { return SubsetMask::full(size()); }

  friend bool operator==(const GroundSet&, const GroundSet&) = default;

 private:
  std::vector<std::string> labels_;
};

// Parses a comma-separated label list ("a,c"); the empty string is the
// empty set. Whitespace around labels is ignored.
SubsetMask subset_parse(const GroundSet& ground, std::string_view key);
SubsetMask subset_parse(const GroundSet& ground,
                        std::span<const std::string> labels);
// Labels joined by "," in ground-set order.
std::string subset_format(const GroundSet& ground, SubsetMask s);

enum class NumericMode { kInteger, kReal };

std::string_view mode_name(NumericMode mode);

class RankVector {
 public:
  using IntValues = std::vector<std::int64_t>;
  using RealValues = std::vector<double>;

  RankVector() = default;

  // `values` has 2^n entries indexed by mask; values[0] must be 0.
  static RankVector integer(GroundSet ground, IntValues values);
  static RankVector real(GroundSet ground, RealValues values);
  static RankVector zeros(GroundSet ground, NumericMode mode);

  const GroundSet& ground() const { return ground_; }
  int size() const { return ground_.size(); }
  NumericMode mode() const {
    return std::holds_alternative<IntValues>(values_) ? NumericMode::kInteger
                                                      : NumericMode::kReal;
  }
  bool is_integer() const { return mode() == NumericMode::kInteger; }
  std::size_t slots() const { return std::size_t{1} << size(); }

  double operator[](SubsetMask s) const;
  // Integer mode only.
  std::int64_t exact(SubsetMask s) const;

  std::span<const std::int64_t> ints() const;
  std::span<const double> reals() const;

  RankVector to_real() const;

  // Dispatches on mode: fn(std::span<const T>) with T the stored type.
  template <class Fn>
  decltype(auto) visit(Fn&& fn) const {
    if (auto* v = std::get_if<IntValues>(&values_)) {
      return fn(std::span<const std::int64_t>(*v));
    }
    return fn(std::span<const double>(std::get<RealValues>(values_)));
  }

  friend bool operator==(const RankVector&, const RankVector&) = default;

 private:
  RankVector(GroundSet ground, std::variant<IntValues, RealValues> values)
      : ground_(std::move(ground)), values_(std::move(values)) {}

  GroundSet ground_;
  std::variant<IntValues, RealValues> values_;
};

// Sum of singleton ranks over s.
double mu(const RankVector& rank, SubsetMask s);
std::int64_t mu_exact(const RankVector& rank, SubsetMask s);

// Largest per-coordinate absolute difference; ground sets must match.
double max_abs_diff(const RankVector& a, const RankVector& b);

}  // namespace pmw

#endif  // PMW_CORE_HPP_
