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

// Linear information expressions over a rank function, and the
// five-variable MMRV inequality.

#ifndef PMW_INEQUALITIES_HPP_
#define PMW_INEQUALITIES_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pmw/core.hpp"
#include "pmw/polymatroid.hpp"

namespace pmw {

// h(A|C) = h(AC) - h(C) or h(A,B|C) = h(AC) + h(BC) - h(ABC) - h(C),
// scaled by `coefficient`. The argument sets are pairwise disjoint.
struct InfoTerm {
  enum class Kind { kEntropy, kMutual };

  static InfoTerm entropy(SubsetMask a, SubsetMask given = {},
                          double coefficient = 1.0);
  static InfoTerm mutual(SubsetMask a, SubsetMask b, SubsetMask given = {},
                         double coefficient = 1.0);

  Kind kind;
  SubsetMask first;
  SubsetMask second;
  SubsetMask given;
  double coefficient;
};

class InfoExpression {
 public:
  InfoExpression() = default;
  explicit InfoExpression(std::vector<InfoTerm> terms)
      : terms_(std::move(terms)) {}

  InfoExpression& add(InfoTerm term) {
    terms_.push_back(term);
    return *this;
  }
  const std::vector<InfoTerm>& terms() const& { return terms_; }
  // By value on temporaries, so `for (t : make().terms())` is safe.
  std::vector<InfoTerm> terms() && { return std::move(terms_); }
  SubsetMask support() const;

  // Rank-vector coefficients: the expression equals sum_m coeff[m]*f(m).
  std::vector<double> coefficients(int n) const;

 private:
  std::vector<InfoTerm> terms_;
};

// Throws Error(kInvalidArgument) when the expression mentions an element
// outside the ground set.
double eval_expression(const InfoExpression& expr, const Polymatroid& m);
// Exact evaluation; integer-mode polymatroid and whole coefficients only.
std::int64_t eval_expression_exact(const InfoExpression& expr,
                                   const Polymatroid& m);

// Which elements (or element groups) play a, b, c, d, e.
struct Roles {
  SubsetMask a, b, c, d, e;

  // "p,q,r,s,t": five distinct labels in role order.
  static Roles parse(const GroundSet& ground, std::string_view spec);
  // Elements 0..4 of a five-element ground set; throws on other sizes.
  static Roles positional(const GroundSet& ground);
};

//   h(a,b|c) + h(b,c|a) + h(c,a|b) + h(b,c|d) + h(b,c|e) + h(d,e) - h(b,c)
InfoExpression mmrv_expression(const Roles& roles);

// The ten non-negative terms whose sum equals MMRV + 3 h(a,de|bc).
InfoExpression mmrv_certificate(const Roles& roles);

double mmrv(const Polymatroid& m, const Roles& roles);
double mmrv(const Polymatroid& m);
std::int64_t mmrv_exact(const Polymatroid& m, const Roles& roles);

// MMRV + 3 h(a,de|bc) - certificate; zero on every rank function.
double mmrv_identity_residual(const Polymatroid& m, const Roles& roles);
std::int64_t mmrv_identity_residual_exact(const Polymatroid& m,
                                          const Roles& roles);

}  // namespace pmw

#endif  // PMW_INEQUALITIES_HPP_
