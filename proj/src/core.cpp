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

#include "pmw/core.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace pmw {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  return s;
}

void check_slots(const GroundSet& ground, std::size_t count) {
  if (ground.size() > kMaxDenseElements) {
    throw Error(ErrorCode::kTooLarge,
                "dense rank vectors support at most 20 elements, got " +
                    std::to_string(ground.size()));
  }
  if (count != (std::size_t{1} << ground.size())) {
    throw Error(ErrorCode::kInvalidArgument,
                "rank vector needs 2^n slots including the empty set");
  }
}

}  // namespace

GroundSet::GroundSet(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  if (labels_.size() > 32) {
    throw Error(ErrorCode::kTooLarge, "ground set larger than 32 elements");
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& l : labels_) {
    if (l.empty() || l.find(',') != std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument,
                  "labels must be non-empty and comma-free: '" + l + "'");
    }
    if (!seen.insert(l).second) {
      throw Error(ErrorCode::kDuplicateLabel, "duplicate label '" + l + "'");
    }
  }
}

std::optional<int> GroundSet::find(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<int>(it - labels_.begin());
}

int GroundSet::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw Error(ErrorCode::kUnknownLabel,
              "unknown label '" + std::string(label) + "'");
}

SubsetMask subset_parse(const GroundSet& ground, std::string_view key) {
  SubsetMask out;
  key = trim(key);
  if (key.empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = key.find(',', start);
    std::string_view item = trim(key.substr(
        start, comma == std::string_view::npos ? key.size() - start
                                               : comma - start));
    int i = ground.index_of(item);
    if (out.contains(i)) {
      throw Error(ErrorCode::kDuplicateLabel,
                  "label '" + std::string(item) + "' listed twice");
    }
    out = out.with(i);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

SubsetMask subset_parse(const GroundSet& ground,
                        std::span<const std::string> labels) {
  SubsetMask out;
  for (const auto& l : labels) {
    int i = ground.index_of(l);
    if (out.contains(i)) {
      throw Error(ErrorCode::kDuplicateLabel,
                  "label '" + l + "' listed twice");
    }
    out = out.with(i);
  }
  return out;
}

std::string subset_format(const GroundSet& ground, SubsetMask s) {
  std::string out;
  for_each_element(s, [&](int i) {
    if (!out.empty()) out += ',';
    out += ground.label(i);
  });
  return out;
}

std::string_view mode_name(NumericMode mode) {
  return mode == NumericMode::kInteger ? "int" : "float";
}

RankVector RankVector::integer(GroundSet ground, IntValues values) {
  check_slots(ground, values.size());
  if (values[0] != 0) {
    throw Error(ErrorCode::kInvalidArgument, "rank of the empty set must be 0");
  }
  return RankVector(std::move(ground), std::move(values));
}

RankVector RankVector::real(GroundSet ground, RealValues values) {
  check_slots(ground, values.size());
  if (values[0] != 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "rank of the empty set must be 0");
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument, "non-finite rank value");
    }
  }
  return RankVector(std::move(ground), std::move(values));
}

RankVector RankVector::zeros(GroundSet ground, NumericMode mode) {
  std::size_t count = std::size_t{1} << ground.size();
  if (mode == NumericMode::kInteger) {
    return integer(std::move(ground), IntValues(count, 0));
  }
  return real(std::move(ground), RealValues(count, 0.0));
}

double RankVector::operator[](SubsetMask s) const {
  return visit([&](auto values) { return static_cast<double>(values[s.bits()]); });
}

std::int64_t RankVector::exact(SubsetMask s) const {
  return ints()[s.bits()];
}

std::span<const std::int64_t> RankVector::ints() const {
  if (auto* v = std::get_if<IntValues>(&values_)) return *v;
  throw Error(ErrorCode::kModeMismatch, "rank vector is not in integer mode");
}

std::span<const double> RankVector::reals() const {
  if (auto* v = std::get_if<RealValues>(&values_)) return *v;
  throw Error(ErrorCode::kModeMismatch, "rank vector is not in float mode");
}

RankVector RankVector::to_real() const {
  RealValues out(slots());
  visit([&](auto values) {
    std::transform(values.begin(), values.end(), out.begin(),
                   [](auto v) { return static_cast<double>(v); });
  });
  return RankVector(ground_, std::move(out));
}

double mu(const RankVector& rank, SubsetMask s) {
  return rank.visit([&](auto values) {
    double sum = 0;
    for_each_element(s, [&](int i) {
      sum += static_cast<double>(values[SubsetMask::singleton(i).bits()]);
    });
    return sum;
  });
}

std::int64_t mu_exact(const RankVector& rank, SubsetMask s) {
  auto values = rank.ints();
  std::int64_t sum = 0;
  for_each_element(s, [&](int i) { sum += values[SubsetMask::singleton(i).bits()]; });
  return sum;
}

double max_abs_diff(const RankVector& a, const RankVector& b) {
  if (!(a.ground() == b.ground())) {
    throw Error(ErrorCode::kGroundMismatch, "ground sets differ");
  }
  double worst = 0;
  for (std::uint32_t m = 0; m < a.slots(); ++m) {
    worst = std::max(worst, std::abs(a[SubsetMask(m)] - b[SubsetMask(m)]));
  }
  return worst;
}

}  // namespace pmw
