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

#include "pmw/entropy.hpp"

#include <cmath>
#include <map>
#include <set>
#include <string>

namespace pmw {
namespace {

using Assignment = std::vector<std::int32_t>;

std::vector<Assignment::value_type> project(const Assignment& values,
                                            const std::vector<int>& index) {
  Assignment out;
  out.reserve(index.size());
  for (int i : index) out.push_back(values[i]);
  return out;
}

// Marginal over `index`, keyed by projected assignment.
std::map<Assignment, double> marginal_table(const JointDistribution& d,
                                            const std::vector<int>& index) {
  std::map<Assignment, double> out;
  for (const auto& row : d.rows()) out[project(row.values, index)] += row.prob;
  return out;
}

Polymatroid wrap_entropies(const JointDistribution& d, std::vector<double> h) {
  // Entropies are sums of O(rows) terms; 1e-9 leaves ample room.
  return Polymatroid::validate(RankVector::real(d.variables(), std::move(h)),
                               kValidateTolerance);
}

}  // namespace

JointDistribution::JointDistribution(GroundSet variables, std::vector<Row> rows)
    : variables_(std::move(variables)), rows_(std::move(rows)) {
  if (variables_.size() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "distribution needs variables");
  }
  if (rows_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "distribution has no rows");
  }
  std::set<Assignment> seen;
  double total = 0;
  for (const auto& row : rows_) {
    if (static_cast<int>(row.values.size()) != variables_.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "assignment length differs from the variable count");
    }
    if (!(row.prob >= 0) || !std::isfinite(row.prob)) {
      throw Error(ErrorCode::kInvalidArgument, "probabilities must be >= 0");
    }
    if (!seen.insert(row.values).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate assignment");
    }
    total += row.prob;
  }
  if (std::abs(total - 1.0) > kProbabilityTolerance) {
    throw Error(ErrorCode::kInvalidArgument,
                "probabilities sum to " + std::to_string(total) + ", not 1");
  }
  for (const auto& row : rows_) {
    flat_values_.insert(flat_values_.end(), row.values.begin(), row.values.end());
    flat_probs_.push_back(row.prob);
  }
}

double JointDistribution::probability(
    std::span<const std::int32_t> assignment) const {
  for (const auto& row : rows_) {
    if (std::equal(row.values.begin(), row.values.end(), assignment.begin(),
                   assignment.end())) {
      return row.prob;
    }
  }
  return 0.0;
}

DistributionTable JointDistribution::table() const {
  return DistributionTable{variables_.size(), flat_values_, flat_probs_};
}

JointDistribution marginal(const JointDistribution& d, SubsetMask subset) {
  if (subset.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "marginal over the empty set");
  }
  if (!subset.is_subset_of(d.variables().full())) {
    throw Error(ErrorCode::kInvalidArgument, "marginal outside the variables");
  }
  std::vector<int> index;
  std::vector<std::string> labels;
  for_each_element(subset, [&](int i) {
    index.push_back(i);
    labels.push_back(d.variables().label(i));
  });
  // First-appearance order of the projected assignments.
  std::vector<JointDistribution::Row> rows;
  std::map<Assignment, std::size_t> where;
  for (const auto& row : d.rows()) {
    Assignment key = project(row.values, index);
    auto [it, fresh] = where.emplace(key, rows.size());
    if (fresh) {
      rows.push_back({std::move(key), row.prob});
    } else {
      rows[it->second].prob += row.prob;
    }
  }
  return JointDistribution(GroundSet(std::move(labels)), std::move(rows));
}

Polymatroid entropy_vector(const JointDistribution& d) {
  return wrap_entropies(d, kernels::parallel::marginal_entropies(d.table()));
}

Polymatroid entropy_vector_serial(const JointDistribution& d) {
  return wrap_entropies(d, kernels::serial::marginal_entropies(d.table()));
}

double joint_entropy(const JointDistribution& d) {
  double h = 0;
  for (const auto& row : d.rows()) {
    if (row.prob > 0) h -= row.prob * std::log2(row.prob);
  }
  return h;
}

JointDistribution conditional_product(const JointDistribution& left,
                                      const JointDistribution& right,
                                      double tolerance) {
  const GroundSet& lv = left.variables();
  const GroundSet& rv = right.variables();
  std::vector<int> left_shared, right_shared, right_only;
  for (int j = 0; j < rv.size(); ++j) {
    if (auto i = lv.find(rv.label(j))) {
      left_shared.push_back(*i);
      right_shared.push_back(j);
    } else {
      right_only.push_back(j);
    }
  }

  auto shared_left = marginal_table(left, left_shared);
  auto shared_right = marginal_table(right, right_shared);
  auto check = [&](const auto& a, const auto& b) {
    for (const auto& [key, p] : a) {
      auto it = b.find(key);
      double q = it == b.end() ? 0.0 : it->second;
      if (std::abs(p - q) > tolerance) {
        throw Error(ErrorCode::kInvalidArgument,
                    "the two distributions disagree on their shared variables");
      }
    }
  };
  check(shared_left, shared_right);
  check(shared_right, shared_left);

  std::vector<std::string> labels = lv.labels();
  for (int j : right_only) labels.push_back(rv.label(j));

  std::vector<JointDistribution::Row> rows;
  for (const auto& lrow : left.rows()) {
    if (lrow.prob <= 0) continue;
    Assignment key = project(lrow.values, left_shared);
    double denom = shared_left.at(key);
    for (const auto& rrow : right.rows()) {
      if (rrow.prob <= 0) continue;
      if (project(rrow.values, right_shared) != key) continue;
      Assignment values = lrow.values;
      for (int j : right_only) values.push_back(rrow.values[j]);
      rows.push_back({std::move(values), lrow.prob * rrow.prob / denom});
    }
  }
  return JointDistribution(GroundSet(std::move(labels)), std::move(rows));
}

Polymatroid product_power(const JointDistribution& d, int copies) {
  if (copies < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one copy");
  }
  std::vector<double> h = kernels::parallel::marginal_entropies(d.table());
  for (double& v : h) v *= copies;
  return Polymatroid::validate(RankVector::real(d.variables(), std::move(h)),
                               kValidateTolerance * copies);
}

}  // namespace pmw
