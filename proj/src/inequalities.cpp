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

#include "pmw/inequalities.hpp"

#include <cmath>

namespace pmw {
namespace {

void require_disjoint(SubsetMask x, SubsetMask y) {
  if (!(x & y).empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "information term arguments must be disjoint");
  }
}

// Adds the term's signed rank coefficients to `out` via `emit(mask, w)`.
template <class Emit>
void expand(const InfoTerm& t, Emit&& emit) {
  const SubsetMask c = t.given;
  if (t.kind == InfoTerm::Kind::kEntropy) {
    emit(t.first | c, 1);
    emit(c, -1);
  } else {
    emit(t.first | c, 1);
    emit(t.second | c, 1);
    emit(t.first | t.second | c, -1);
    emit(c, -1);
  }
}

void check_support(const InfoExpression& expr, const Polymatroid& m) {
  if (!expr.support().is_subset_of(m.ground().full())) {
    throw Error(ErrorCode::kInvalidArgument,
                "expression mentions elements outside the ground set");
  }
}

void check_roles(const Roles& r) {
  const SubsetMask parts[] = {r.a, r.b, r.c, r.d, r.e};
  SubsetMask seen;
  for (auto p : parts) {
    if (p.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "every MMRV role needs an element");
    }
    require_disjoint(seen, p);
    seen = seen | p;
  }
}

}  // namespace

InfoTerm InfoTerm::entropy(SubsetMask a, SubsetMask given, double coefficient) {
  require_disjoint(a, given);
  return InfoTerm{Kind::kEntropy, a, SubsetMask{}, given, coefficient};
}

InfoTerm InfoTerm::mutual(SubsetMask a, SubsetMask b, SubsetMask given,
                          double coefficient) {
  require_disjoint(a, b);
  require_disjoint(a, given);
  require_disjoint(b, given);
  return InfoTerm{Kind::kMutual, a, b, given, coefficient};
}

SubsetMask InfoExpression::support() const {
  SubsetMask out;
  for (const auto& t : terms_) out = out | t.first | t.second | t.given;
  return out;
}

std::vector<double> InfoExpression::coefficients(int n) const {
  std::vector<double> out(std::size_t{1} << n, 0.0);
  for (const auto& t : terms_) {
    expand(t, [&](SubsetMask s, int sign) { out[s.bits()] += sign * t.coefficient; });
  }
  out[0] = 0;
  return out;
}

double eval_expression(const InfoExpression& expr, const Polymatroid& m) {
  check_support(expr, m);
  bool whole = true;
  for (const auto& t : expr.terms()) whole = whole && std::floor(t.coefficient) == t.coefficient;
  if (m.is_integer() && whole) {
    return static_cast<double>(eval_expression_exact(expr, m));
  }
  double sum = 0;
  for (const auto& t : expr.terms()) {
    double term = 0;
    expand(t, [&](SubsetMask s, int sign) { term += sign * m[s]; });
    sum += t.coefficient * term;
  }
  return sum;
}

std::int64_t eval_expression_exact(const InfoExpression& expr,
                                   const Polymatroid& m) {
  check_support(expr, m);
  const RankVector& r = m.rank();
  std::int64_t sum = 0;
  for (const auto& t : expr.terms()) {
    if (std::floor(t.coefficient) != t.coefficient) {
      throw Error(ErrorCode::kModeMismatch,
                  "exact evaluation needs whole coefficients");
    }
    std::int64_t term = 0;
    expand(t, [&](SubsetMask s, int sign) { term += sign * r.exact(s); });
    sum += static_cast<std::int64_t>(t.coefficient) * term;
  }
  return sum;
}

Roles Roles::parse(const GroundSet& ground, std::string_view spec) {
  std::vector<int> idx;
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t comma = spec.find(',', start);
    std::string_view item = spec.substr(
        start, comma == std::string_view::npos ? spec.size() - start : comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    idx.push_back(ground.index_of(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (idx.size() != 5) {
    throw Error(ErrorCode::kInvalidArgument,
                "MMRV roles need exactly five labels, got " +
                    std::to_string(idx.size()));
  }
  Roles r{SubsetMask::singleton(idx[0]), SubsetMask::singleton(idx[1]),
          SubsetMask::singleton(idx[2]), SubsetMask::singleton(idx[3]),
          SubsetMask::singleton(idx[4])};
  check_roles(r);
  return r;
}

Roles Roles::positional(const GroundSet& ground) {
  if (ground.size() != 5) {
    throw Error(ErrorCode::kInvalidArgument,
                "MMRV needs a five-element ground set, got " +
                    std::to_string(ground.size()));
  }
  return Roles{SubsetMask::singleton(0), SubsetMask::singleton(1),
               SubsetMask::singleton(2), SubsetMask::singleton(3),
               SubsetMask::singleton(4)};
}

InfoExpression mmrv_expression(const Roles& r) {
  check_roles(r);
  InfoExpression e;
  e.add(InfoTerm::mutual(r.a, r.b, r.c))
      .add(InfoTerm::mutual(r.b, r.c, r.a))
      .add(InfoTerm::mutual(r.c, r.a, r.b))
      .add(InfoTerm::mutual(r.b, r.c, r.d))
      .add(InfoTerm::mutual(r.b, r.c, r.e))
      .add(InfoTerm::mutual(r.d, r.e))
      .add(InfoTerm::mutual(r.b, r.c, {}, -1.0));
  return e;
}

InfoExpression mmrv_certificate(const Roles& r) {
  check_roles(r);
  InfoExpression e;
  e.add(InfoTerm::mutual(r.a, r.d, r.b))
      .add(InfoTerm::mutual(r.a, r.d, r.c))
      .add(InfoTerm::mutual(r.a, r.e, r.b))
      .add(InfoTerm::mutual(r.a, r.e, r.c))
      .add(InfoTerm::mutual(r.b, r.c, r.a | r.d))
      .add(InfoTerm::mutual(r.b, r.c, r.a | r.e))
      .add(InfoTerm::mutual(r.a, r.b | r.c, r.d | r.e))
      .add(InfoTerm::mutual(r.d, r.e, r.a))
      .add(InfoTerm::mutual(r.a, r.e, r.b | r.c | r.d))
      .add(InfoTerm::mutual(r.a, r.d, r.b | r.c | r.e));
  return e;
}

namespace {

InfoExpression identity_residual_expression(const Roles& r) {
  InfoExpression e = mmrv_expression(r);
  e.add(InfoTerm::mutual(r.a, r.d | r.e, r.b | r.c, 3.0));
  const InfoExpression certificate = mmrv_certificate(r);
  for (InfoTerm t : certificate.terms()) {
    t.coefficient = -t.coefficient;
    e.add(t);
  }
  return e;
}

}  // namespace

double mmrv(const Polymatroid& m, const Roles& roles) {
  return eval_expression(mmrv_expression(roles), m);
}

double mmrv(const Polymatroid& m) {
  return mmrv(m, Roles::positional(m.ground()));
}

std::int64_t mmrv_exact(const Polymatroid& m, const Roles& roles) {
  return eval_expression_exact(mmrv_expression(roles), m);
}

double mmrv_identity_residual(const Polymatroid& m, const Roles& roles) {
  return eval_expression(identity_residual_expression(roles), m);
}

std::int64_t mmrv_identity_residual_exact(const Polymatroid& m,
                                          const Roles& roles) {
  return eval_expression_exact(identity_residual_expression(roles), m);
}

}  // namespace pmw
