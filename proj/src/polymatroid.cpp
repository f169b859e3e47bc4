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

#include "pmw/polymatroid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <type_traits>

namespace pmw {
namespace {

template <class T>
RankVector make_rank(GroundSet ground, std::vector<T> values) {
  if constexpr (std::is_same_v<T, std::int64_t>) {
    return RankVector::integer(std::move(ground), std::move(values));
  } else {
    return RankVector::real(std::move(ground), std::move(values));
  }
}

// Builds a vector of the same mode as `src` on `ground`; fn(values, mask)
// reads the source values and returns the new value at mask.
template <class Fn>
RankVector build_like(const RankVector& src, GroundSet ground, Fn&& fn) {
  return src.visit([&](auto values) {
    using T = std::remove_cv_t<typename decltype(values)::element_type>;
    std::vector<T> out(std::size_t{1} << ground.size());
    for (std::uint32_t m = 1; m < out.size(); ++m) {
      out[m] = fn(values, m);
    }
    return make_rank<T>(std::move(ground), std::move(out));
  });
}

// Validation slack for vectors computed from an already valid input:
// absolute 1e-9 scaled by the magnitude of the values.
double derived_tolerance(const RankVector& r) {
  double scale = 1.0;
  r.visit([&](auto values) {
    for (auto v : values) scale = std::max(scale, std::abs(static_cast<double>(v)));
  });
  return kValidateTolerance * scale;
}

Polymatroid derived(RankVector r) {
  double tol = derived_tolerance(r);
  return Polymatroid::validate(std::move(r), tol);
}

bool approx_equal(double a, double b, bool exact, double tol) {
  return exact ? a == b : std::abs(a - b) <= tol;
}

std::int64_t as_integer(double v, const char* what) {
  if (std::floor(v) != v || std::abs(v) > 9.0e15) {
    throw Error(ErrorCode::kModeMismatch,
                std::string(what) + " must be a whole number in integer mode");
  }
  return static_cast<std::int64_t>(v);
}

void check_element(const Polymatroid& m, int a) {
  if (a < 0 || a >= m.size()) {
    throw Error(ErrorCode::kInvalidArgument, "element index out of range");
  }
}

std::string describe(const ValidationReport& report) {
  std::ostringstream os;
  os << "not a polymatroid: " << report.violations.size()
     << " elemental inequalities fail";
  if (!report.violations.empty()) {
    const auto& v = report.violations.front();
    os << " (first: "
       << (v.kind == Violation::Kind::kMonotone ? "monotone" : "submodular")
       << " at element " << v.first;
    if (v.second >= 0) os << "," << v.second;
    os << ", base mask " << v.subset.bits() << ", " << v.lhs << " < " << v.rhs
       << ")";
  }
  return os.str();
}

}  // namespace

ValidationReport validate_polymatroid(const RankVector& rank, double tolerance) {
  ValidationReport report;
  if (rank.is_integer()) {
    report.violations = kernels::parallel::elemental_violations<std::int64_t>(
        rank.ints(), rank.size(), 0);
  } else {
    report.violations = kernels::parallel::elemental_violations<double>(
        rank.reals(), rank.size(), tolerance);
  }
  return report;
}

ValidationReport validate_polymatroid_serial(const RankVector& rank,
                                             double tolerance) {
  ValidationReport report;
  if (rank.is_integer()) {
    report.violations = kernels::serial::elemental_violations<std::int64_t>(
        rank.ints(), rank.size(), 0);
  } else {
    report.violations = kernels::serial::elemental_violations<double>(
        rank.reals(), rank.size(), tolerance);
  }
  return report;
}

NotPolymatroid::NotPolymatroid(ValidationReport report)
    : Error(ErrorCode::kNotPolymatroid, describe(report)),
      report_(std::move(report)) {}

Polymatroid Polymatroid::validate(RankVector rank, double tolerance) {
  ValidationReport report = validate_polymatroid(rank, tolerance);
  if (!report.ok()) throw NotPolymatroid(std::move(report));
  return Polymatroid(std::move(rank));
}

double private_info(const Polymatroid& m, int i) {
  check_element(m, i);
  SubsetMask full = m.ground().full();
  return m[full] - m[full.without(i)];
}

bool is_tight(const Polymatroid& m, double tolerance) {
  for (int i = 0; i < m.size(); ++i) {
    if (!approx_equal(private_info(m, i), 0.0, m.is_integer(), tolerance)) {
      return false;
    }
  }
  return true;
}

Polymatroid dual(const Polymatroid& m) {
  const std::uint32_t full = m.ground().full().bits();
  return derived(build_like(m.rank(), m.ground(), [&](auto f, std::uint32_t a) {
    using T = std::remove_cv_t<typename decltype(f)::element_type>;
    T measure = 0;
    for_each_element(SubsetMask(a), [&](int i) { measure += f[std::uint32_t{1} << i]; });
    return f[full & ~a] + measure - f[full];
  }));
}

Polymatroid tighten_at(const Polymatroid& m, int i) {
  check_element(m, i);
  const std::uint32_t full = m.ground().full().bits();
  const std::uint32_t bit = std::uint32_t{1} << i;
  return derived(build_like(m.rank(), m.ground(), [&](auto f, std::uint32_t a) {
    return (a & bit) ? f[a] - (f[full] - f[full & ~bit]) : f[a];
  }));
}

Polymatroid tighten(const Polymatroid& m) {
  const std::uint32_t full = m.ground().full().bits();
  return derived(build_like(m.rank(), m.ground(), [&](auto f, std::uint32_t a) {
    using T = std::remove_cv_t<typename decltype(f)::element_type>;
    T out = f[a];
    for_each_element(SubsetMask(a), [&](int i) {
      out -= f[full] - f[full & ~(std::uint32_t{1} << i)];
    });
    return out;
  }));
}

Connectivity is_connected(const Polymatroid& m, double tolerance) {
  const int n = m.size();
  Connectivity out;
  if (n <= 1) return out;
  const SubsetMask full = m.ground().full();
  const bool exact = m.is_integer();
  // Bipartitions with element 0 on the A side, A a proper subset.
  for (std::uint32_t a = 1; a < full.bits(); a += 2) {
    SubsetMask side(a);
    SubsetMask other = full - side;
    if (approx_equal(m[side] + m[other], m[full], exact, tolerance)) {
      out.connected = false;
      out.witness = std::make_pair(side, other);
      return out;
    }
  }
  return out;
}

bool is_independent_set(const Polymatroid& m, SubsetMask a, double tolerance) {
  if (m.is_integer()) return m.rank().exact(a) == mu_exact(m.rank(), a);
  return std::abs(m[a] - mu(m.rank(), a)) <= tolerance;
}

FactorMap::FactorMap(GroundSet source, GroundSet target, std::vector<int> block)
    : source_(std::move(source)),
      target_(std::move(target)),
      block_(std::move(block)),
      preimage_(target_.size()) {
  if (static_cast<int>(block_.size()) != source_.size()) {
    throw Error(ErrorCode::kGroundMismatch,
                "factor map must assign every source element");
  }
  for (int i = 0; i < source_.size(); ++i) {
    int t = block_[i];
    if (t < 0 || t >= target_.size()) {
      throw Error(ErrorCode::kInvalidArgument, "factor target out of range");
    }
    preimage_[t] = preimage_[t].with(i);
  }
  for (int t = 0; t < target_.size(); ++t) {
    if (preimage_[t].empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "factor map is not surjective: '" + target_.label(t) +
                      "' has no preimage");
    }
  }
}

FactorMap FactorMap::from_labels(
    const GroundSet& source,
    const std::vector<std::pair<std::string, std::string>>& assignment) {
  std::vector<int> block(source.size(), -1);
  std::vector<std::string> targets;
  for (const auto& [from, to] : assignment) {
    int i = source.index_of(from);
    if (block[i] != -1) {
      throw Error(ErrorCode::kDuplicateLabel, "'" + from + "' mapped twice");
    }
    auto it = std::find(targets.begin(), targets.end(), to);
    if (it == targets.end()) {
      targets.push_back(to);
      it = targets.end() - 1;
    }
    block[i] = static_cast<int>(it - targets.begin());
  }
  for (int i = 0; i < source.size(); ++i) {
    if (block[i] == -1) {
      throw Error(ErrorCode::kGroundMismatch,
                  "'" + source.label(i) + "' has no image");
    }
  }
  return FactorMap(source, GroundSet(std::move(targets)), std::move(block));
}

FactorMap FactorMap::identity(const GroundSet& ground) {
  std::vector<int> block(ground.size());
  for (int i = 0; i < ground.size(); ++i) block[i] = i;
  return FactorMap(ground, ground, std::move(block));
}

SubsetMask FactorMap::preimage(SubsetMask target_subset) const {
  SubsetMask out;
  for_each_element(target_subset, [&](int t) { out = out | preimage_[t]; });
  return out;
}

Polymatroid factor(const Polymatroid& m, const FactorMap& map) {
  if (!(map.source() == m.ground())) {
    throw Error(ErrorCode::kGroundMismatch,
                "factor map source differs from the ground set");
  }
  return derived(build_like(m.rank(), map.target(), [&](auto f, std::uint32_t a) {
    return f[map.preimage(SubsetMask(a)).bits()];
  }));
}

Polymatroid restriction(const Polymatroid& m, SubsetMask keep) {
  std::vector<std::string> labels;
  std::vector<int> index;
  for_each_element(keep & m.ground().full(), [&](int i) {
    labels.push_back(m.ground().label(i));
    index.push_back(i);
  });
  return derived(build_like(m.rank(), GroundSet(std::move(labels)),
                            [&](auto f, std::uint32_t a) {
                              std::uint32_t src = 0;
                              for_each_element(SubsetMask(a), [&](int k) {
                                src |= std::uint32_t{1} << index[k];
                              });
                              return f[src];
                            }));
}

Polymatroid principal_extension(const Polymatroid& m, int a, double alpha,
                                const std::string& new_label) {
  check_element(m, a);
  if (alpha < 0) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must be non-negative");
  }
  if (m.ground().find(new_label)) {
    throw Error(ErrorCode::kDuplicateLabel,
                "label '" + new_label + "' already in the ground set");
  }
  const int n = m.size();
  if (n + 1 > kMaxDenseElements) {
    throw Error(ErrorCode::kTooLarge, "extension exceeds dense capacity");
  }
  std::vector<std::string> labels = m.ground().labels();
  labels.push_back(new_label);
  const std::uint32_t old_mask = m.ground().full().bits();
  const std::uint32_t abit = std::uint32_t{1} << a;
  const std::uint32_t newbit = std::uint32_t{1} << n;
  if (m.is_integer()) {
    const std::int64_t step = as_integer(alpha, "alpha");
    return derived(build_like(m.rank(), GroundSet(labels),
                              [&](auto f, std::uint32_t s) {
                                using T = std::remove_cv_t<
                                    typename decltype(f)::element_type>;
                                std::uint32_t base = s & old_mask;
                                if (!(s & newbit)) return f[base];
                                return std::min<T>(f[base] + static_cast<T>(step),
                                                   f[base | abit]);
                              }));
  }
  return derived(build_like(m.rank(), GroundSet(labels),
                            [&](auto f, std::uint32_t s) {
                              using T = std::remove_cv_t<
                                  typename decltype(f)::element_type>;
                              std::uint32_t base = s & old_mask;
                              if (!(s & newbit)) return f[base];
                              return std::min<T>(f[base] + static_cast<T>(alpha),
                                                 f[base | abit]);
                            }));
}

Polymatroid split_atom(const Polymatroid& m, int a, double alpha1,
                       double alpha2, const std::string& label1,
                       const std::string& label2, double tolerance) {
  check_element(m, a);
  const bool exact = m.is_integer();
  // Float ranks may sit a rounding error below zero, e.g. after tighten.
  const double floor = exact ? 0.0 : -tolerance;
  if (alpha1 < floor || alpha2 < floor) {
    throw Error(ErrorCode::kInvalidArgument, "split weights must be non-negative");
  }
  alpha1 = std::max(alpha1, 0.0);
  alpha2 = std::max(alpha2, 0.0);
  const std::uint32_t abit = std::uint32_t{1} << a;
  if (exact) {
    as_integer(alpha1, "alpha1");
    as_integer(alpha2, "alpha2");
  }
  if (!approx_equal(alpha1 + alpha2, m[SubsetMask(abit)], exact, tolerance)) {
    throw Error(ErrorCode::kInvalidArgument,
                "split weights must sum to the rank of the split element");
  }
  if (label1 == label2) {
    throw Error(ErrorCode::kDuplicateLabel, "split labels must differ");
  }
  const int n = m.size();
  if (n + 1 > kMaxDenseElements) {
    throw Error(ErrorCode::kTooLarge, "split exceeds dense capacity");
  }
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) {
    if (i == a) {
      labels.push_back(label1);
      labels.push_back(label2);
    } else {
      labels.push_back(m.ground().label(i));
    }
  }
  // New layout: bits below a unchanged, a1 at a, a2 at a+1, the rest
  // shifted up by one.
  const std::uint32_t low = abit - 1;
  return derived(build_like(m.rank(), GroundSet(labels),
                            [&](auto f, std::uint32_t s) {
                              using T = std::remove_cv_t<
                                  typename decltype(f)::element_type>;
                              std::uint32_t rest =
                                  (s & low) | ((s >> (a + 2)) << (a + 1));
                              bool has1 = (s >> a) & 1U;
                              bool has2 = (s >> (a + 1)) & 1U;
                              if (!has1 && !has2) return f[rest];
                              if (has1 && has2) return f[rest | abit];
                              T w = static_cast<T>(has1 ? alpha1 : alpha2);
                              return std::min<T>(f[rest] + w, f[rest | abit]);
                            }));
}

Polymatroid basis_r(const GroundSet& ground, SubsetMask a) {
  if (a.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "r_A needs a non-empty A");
  }
  if (!a.is_subset_of(ground.full())) {
    throw Error(ErrorCode::kInvalidArgument, "A is not inside the ground set");
  }
  std::vector<std::int64_t> values(std::size_t{1} << ground.size());
  for (std::uint32_t m = 1; m < values.size(); ++m) {
    values[m] = (m & a.bits()) != 0 ? 1 : 0;
  }
  return Polymatroid::validate(RankVector::integer(ground, std::move(values)));
}

RankVector linear_combine(const std::vector<WeightedTerm>& terms) {
  if (terms.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "linear_combine needs a term");
  }
  const GroundSet& ground = terms.front().polymatroid.ground();
  std::vector<double> out(std::size_t{1} << ground.size(), 0.0);
  for (const auto& term : terms) {
    if (!(term.polymatroid.ground() == ground)) {
      throw Error(ErrorCode::kGroundMismatch,
                  "all terms must share one ground set");
    }
    if (term.coefficient < 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "coefficients must be non-negative");
    }
    term.polymatroid.rank().visit([&](auto values) {
      for (std::size_t m = 1; m < out.size(); ++m) {
        out[m] += term.coefficient * static_cast<double>(values[m]);
      }
    });
  }
  return RankVector::real(ground, std::move(out));
}

ResidualTooLarge::ResidualTooLarge(SubsetMask worst, double value,
                                   double residual)
    : Error(ErrorCode::kResidualTooLarge,
            "value " + std::to_string(value) + " at mask " +
                std::to_string(worst.bits()) + " is " +
                std::to_string(residual) + " away from an integer"),
      worst_(worst),
      value_(value),
      residual_(residual) {}

Polymatroid round_to_integer(const RankVector& rank, double residual_tolerance) {
  std::vector<std::int64_t> out(rank.slots());
  SubsetMask worst;
  double worst_residual = -1;
  for (std::uint32_t m = 1; m < out.size(); ++m) {
    double v = rank[SubsetMask(m)];
    double nearest = std::nearbyint(v);
    double residual = std::abs(v - nearest);
    if (residual > worst_residual) {
      worst_residual = residual;
      worst = SubsetMask(m);
    }
    out[m] = static_cast<std::int64_t>(nearest);
  }
  if (worst_residual > residual_tolerance) {
    throw ResidualTooLarge(worst, rank[worst], worst_residual);
  }
  return Polymatroid::validate(RankVector::integer(rank.ground(), std::move(out)));
}

}  // namespace pmw
