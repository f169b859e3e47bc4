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

// Finite joint distributions and their entropy vectors (log base 2).

#ifndef PMW_ENTROPY_HPP_
#define PMW_ENTROPY_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "pmw/core.hpp"
#include "pmw/kernels.hpp"
#include "pmw/polymatroid.hpp"

namespace pmw {

// Per-cell tolerance for normalization and marginal agreement.
inline constexpr double kProbabilityTolerance = 1e-9;

class JointDistribution {
 public:
  struct Row {
    std::vector<std::int32_t> values;
    double prob;
  };

  // Rows keep their input order. Throws Error(kInvalidArgument) on a
  // negative probability, an assignment of the wrong length, a repeated
  // assignment, or probabilities not summing to 1 within 1e-9.
  JointDistribution(GroundSet variables, std::vector<Row> rows);

  const GroundSet& variables() const { return variables_; }
  const std::vector<Row>& rows() const { return rows_; }
  // Zero for assignments not listed.
  double probability(std::span<const std::int32_t> assignment) const;
  DistributionTable table() const;

 private:
  GroundSet variables_;
  std::vector<Row> rows_;
  std::vector<std::int32_t> flat_values_;
  std::vector<double> flat_probs_;
};

// Distribution of the variables in `subset` (ground-set order).
JointDistribution marginal(const JointDistribution& d, SubsetMask subset);

// H(xi_A) in bits for every A, as a float-mode polymatroid.
Polymatroid entropy_vector(const JointDistribution& d);
Polymatroid entropy_vector_serial(const JointDistribution& d);

// Joint entropy of all variables.
double joint_entropy(const JointDistribution& d);

// Maximum-entropy coupling of two distributions that agree on their shared
// variables: p(x) = p_left(x_L) * p_right(x_R) / p(x_shared), with 0/0 = 0.
// Output variables are the left ones followed by the right-only ones. The
// shared variables make the two private parts conditionally independent.
JointDistribution conditional_product(const JointDistribution& left,
                                      const JointDistribution& right,
                                      double tolerance = kProbabilityTolerance);

// Entropy vector of `copies` independent copies, by scaling.
Polymatroid product_power(const JointDistribution& d, int copies);

}  // namespace pmw

#endif  // PMW_ENTROPY_HPP_
