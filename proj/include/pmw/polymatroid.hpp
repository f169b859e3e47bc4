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

// Polymatroid algebra on dense rank vectors.
//
// Every operation here returns a validated Polymatroid and preserves the
// numeric mode of its input. Decisions (independence, connectivity) take an
// explicit tolerance which is ignored in integer mode, where all
// comparisons are exact.

#ifndef PMW_POLYMATROID_HPP_
#define PMW_POLYMATROID_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pmw/core.hpp"
#include "pmw/kernels.hpp"

namespace pmw {

inline constexpr double kValidateTolerance = 1e-9;
inline constexpr double kDecisionTolerance = 1e-6;
inline constexpr double kRoundingTolerance = 1e-3;

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks the elemental inequalities: f(M) - f(M-i) >= -tol for every i and
// f(iA) + f(jA) - f(ijA) - f(A) >= -tol for every i < j and A in M-{i,j}.
// Integer vectors are checked exactly.
ValidationReport validate_polymatroid(const RankVector& rank,
                                      double tolerance = kValidateTolerance);
// Same check on the serial reference kernel.
ValidationReport validate_polymatroid_serial(
    const RankVector& rank, double tolerance = kValidateTolerance);

class NotPolymatroid : public Error {
 public:
  explicit NotPolymatroid(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

class Polymatroid {
 public:
  // Throws NotPolymatroid listing every failed elemental inequality.
  static Polymatroid validate(RankVector rank,
                              double tolerance = kValidateTolerance);

  const RankVector& rank() const { return rank_; }
  const GroundSet& ground() const { return rank_.ground(); }
  int size() const { return rank_.size(); }
  bool is_integer() const { return rank_.is_integer(); }
  double operator[](SubsetMask s) const { return rank_[s]; }
  double total() const { return rank_[ground().full()]; }

  friend bool operator==(const Polymatroid&, const Polymatroid&) = default;

 private:
  explicit Polymatroid(RankVector rank) : rank_(std::move(rank)) {}
  RankVector rank_;
};

// f(M) - f(M-i).
double private_info(const Polymatroid& m, int i);
bool is_tight(const Polymatroid& m, double tolerance = kDecisionTolerance);

// f_dual(A) = f(M-A) + mu(A) - f(M).
Polymatroid dual(const Polymatroid& m);

// Removes the private info of element i from every set containing it.
Polymatroid tighten_at(const Polymatroid& m, int i);
Polymatroid tighten(const Polymatroid& m);

struct Connectivity {
  bool connected = true;
  // A bipartition (A, B) with f(A) + f(B) = f(M) when disconnected.
  std::optional<std::pair<SubsetMask, SubsetMask>> witness;
};

Connectivity is_connected(const Polymatroid& m,
                          double tolerance = kDecisionTolerance);

bool is_independent_set(const Polymatroid& m, SubsetMask a,
                        double tolerance = kDecisionTolerance);

// Surjection from a source ground set onto a target ground set.
class FactorMap {
 public:
  // block[i] is the target index of source element i.
  FactorMap(GroundSet source, GroundSet target, std::vector<int> block);
  // Maps every source label to a target label; targets are created in
  // order of first appearance.
  static FactorMap from_labels(
      const GroundSet& source,
      const std::vector<std::pair<std::string, std::string>>& assignment);
  static FactorMap identity(const GroundSet& ground);

  const GroundSet& source() const { return source_; }
  const GroundSet& target() const { return target_; }
  SubsetMask preimage(SubsetMask target_subset) const;

 private:
  GroundSet source_;
  GroundSet target_;
  std::vector<int> block_;
  std::vector<SubsetMask> preimage_;
};

Polymatroid factor(const Polymatroid& m, const FactorMap& map);

// Restriction to the elements of `keep`, in ground-set order.
Polymatroid restriction(const Polymatroid& m, SubsetMask keep);

// Adds new_label (appended last) with rank min{h(A) + alpha, h(aA)} on
// every set aA' it joins. In integer mode alpha must be a whole number.
Polymatroid principal_extension(const Polymatroid& m, int a, double alpha,
                                const std::string& new_label);

// Replaces element a by (label1, label2), placed where a was. Requires
// alpha1 + alpha2 = h(a) and both non-negative; in float mode a weight
// within tolerance below zero counts as zero.
Polymatroid split_atom(const Polymatroid& m, int a, double alpha1,
                       double alpha2, const std::string& label1,
                       const std::string& label2,
                       double tolerance = kDecisionTolerance);

// r_A(I) = 1 if I meets A, else 0. Integer mode.
Polymatroid basis_r(const GroundSet& ground, SubsetMask a);

struct WeightedTerm {
  double coefficient;
  Polymatroid polymatroid;
};

// Pointwise weighted sum in input order; float mode.
RankVector linear_combine(const std::vector<WeightedTerm>& terms);

class ResidualTooLarge : public Error {
 public:
  ResidualTooLarge(SubsetMask worst, double value, double residual);
  SubsetMask worst() const { return worst_; }
  double value() const { return value_; }
  double residual() const { return residual_; }

 private:
  SubsetMask worst_;
  double value_;
  double residual_;
};

// Nearest-integer vector, validated exactly. Throws ResidualTooLarge with
// the subset farthest from an integer when it exceeds residual_tolerance.
Polymatroid round_to_integer(const RankVector& rank,
                             double residual_tolerance = kRoundingTolerance);

}  // namespace pmw

#endif  // PMW_POLYMATROID_HPP_
