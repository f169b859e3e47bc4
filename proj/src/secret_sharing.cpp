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

#include "pmw/secret_sharing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pmw/kernels.hpp"

namespace pmw {
namespace {

void check_participant_count(int n) {
  if (n < 1 || n > kMaxDenseElements) {
    throw Error(ErrorCode::kTooLarge,
                "explicit access structures need 1..20 participants");
  }
}

// Qualified table of `a` re-indexed to the participant order of m - secret,
// plus the map from that order back to a's indices.
struct Alignment {
  std::vector<std::uint8_t> qualified;
  std::vector<int> to_structure;
};

Alignment align(const Polymatroid& m, int secret, const AccessStructure& a) {
  const int n = m.size();
  if (secret < 0 || secret >= n) {
    throw Error(ErrorCode::kInvalidArgument, "secret index out of range");
  }
  if (a.size() != n - 1) {
    throw Error(ErrorCode::kGroundMismatch,
                "ground set must be the participants plus the secret");
  }
  Alignment out;
  for (int i = 0; i < n; ++i) {
    if (i == secret) continue;
    auto j = a.participants().find(m.ground().label(i));
    if (!j) {
      throw Error(ErrorCode::kGroundMismatch,
                  "'" + m.ground().label(i) + "' is not a participant");
    }
    out.to_structure.push_back(*j);
  }
  out.qualified.resize(std::size_t{1} << (n - 1));
  for (std::uint32_t pm = 0; pm < out.qualified.size(); ++pm) {
    SubsetMask s;
    for_each_element(SubsetMask(pm), [&](int k) { s = s.with(out.to_structure[k]); });
    out.qualified[pm] = a.is_qualified(s) ? 1 : 0;
  }
  return out;
}

template <bool kParallel>
RealizationCheck realizes_impl(const Polymatroid& m, int secret,
                               const AccessStructure& a, double tolerance) {
  Alignment al = align(m, secret, a);
  if (m[SubsetMask::singleton(secret)] <= 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "the secret has rank 0 (degenerate secret)");
  }
  std::optional<std::uint32_t> bad;
  if (m.is_integer()) {
    bad = kParallel ? kernels::parallel::first_realization_failure<std::int64_t>(
                          m.rank().ints(), m.size(), secret, al.qualified, 0)
                    : kernels::serial::first_realization_failure<std::int64_t>(
                          m.rank().ints(), m.size(), secret, al.qualified, 0);
  } else {
    bad = kParallel ? kernels::parallel::first_realization_failure<double>(
                          m.rank().reals(), m.size(), secret, al.qualified, tolerance)
                    : kernels::serial::first_realization_failure<double>(
                          m.rank().reals(), m.size(), secret, al.qualified, tolerance);
  }
  RealizationCheck out;
  out.realizes = !bad.has_value();
  if (bad) {
    SubsetMask s;
    for_each_element(SubsetMask(*bad), [&](int k) { s = s.with(al.to_structure[k]); });
    out.counterexample = s;
  }
  return out;
}

}  // namespace

AccessStructure AccessStructure::from_qualified(GroundSet participants,
                                                std::vector<std::uint8_t> qualified) {
  const int n = participants.size();
  check_participant_count(n);
  if (qualified.size() != (std::size_t{1} << n)) {
    throw Error(ErrorCode::kInvalidArgument, "qualified table has the wrong size");
  }
  if (qualified[0]) {
    throw Error(ErrorCode::kInvalidArgument, "the empty set cannot be qualified");
  }
  if (!qualified.back()) {
    throw Error(ErrorCode::kInvalidArgument, "all participants must be qualified");
  }
  for (std::uint32_t m = 0; m < qualified.size(); ++m) {
    if (!qualified[m]) continue;
    for (int i = 0; i < n; ++i) {
      if (!qualified[m | (std::uint32_t{1} << i)]) {
        throw Error(ErrorCode::kInvalidArgument, "family is not upward closed");
      }
    }
  }
  return AccessStructure(std::move(participants), std::move(qualified));
}

AccessStructure AccessStructure::from_minimal(GroundSet participants,
                                              const std::vector<SubsetMask>& minimal) {
  const int n = participants.size();
  check_participant_count(n);
  std::vector<std::uint8_t> q(std::size_t{1} << n, 0);
  for (SubsetMask s : minimal) {
    if (!s.is_subset_of(participants.full())) {
      throw Error(ErrorCode::kInvalidArgument, "qualified set outside participants");
    }
    q[s.bits()] = 1;
  }
  // Upward closure, one element at a time in increasing mask order.
  for (std::uint32_t m = 0; m < q.size(); ++m) {
    if (!q[m]) continue;
    for (int i = 0; i < n; ++i) q[m | (std::uint32_t{1} << i)] = 1;
  }
  return from_qualified(std::move(participants), std::move(q));
}

AccessStructure AccessStructure::threshold(int k, int n) {
  if (k < 1 || k > n) {
    throw Error(ErrorCode::kInvalidArgument, "threshold needs 1 <= k <= n");
  }
  check_participant_count(n);
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back("p" + std::to_string(i));
  std::vector<std::uint8_t> q(std::size_t{1} << n);
  for (std::uint32_t m = 0; m < q.size(); ++m) q[m] = std::popcount(m) >= k;
  return from_qualified(GroundSet(std::move(labels)), std::move(q));
}

std::vector<SubsetMask> AccessStructure::minimal_qualified() const {
  std::vector<SubsetMask> out;
  for (std::uint32_t m = 1; m < qualified_.size(); ++m) {
    if (!qualified_[m]) continue;
    bool minimal = true;
    for_each_element(SubsetMask(m), [&](int i) {
      minimal = minimal && !qualified_[m & ~(std::uint32_t{1} << i)];
    });
    if (minimal) out.push_back(SubsetMask(m));
  }
  return out;
}

AccessStructure dual_structure(const AccessStructure& a) {
  const std::uint32_t full = a.participants().full().bits();
  auto q = a.qualified_table();
  std::vector<std::uint8_t> out(q.size());
  for (std::uint32_t m = 0; m < q.size(); ++m) out[m] = q[full & ~m] ? 0 : 1;
  return AccessStructure::from_qualified(a.participants(), std::move(out));
}

Importance important_participants(const AccessStructure& a) {
  Importance out;
  auto q = a.qualified_table();
  for (std::uint32_t m = 0; m < q.size(); ++m) {
    if (q[m]) continue;
    for (int i = 0; i < a.size(); ++i) {
      std::uint32_t bit = std::uint32_t{1} << i;
      if (!(m & bit) && q[m | bit]) out.important = out.important.with(i);
    }
  }
  out.connected = out.important == a.participants().full();
  return out;
}

AccessStructure port(const Matroid& m, int secret) {
  const int n = m.size();
  if (secret < 0 || secret >= n) {
    throw Error(ErrorCode::kInvalidArgument, "secret index out of range");
  }
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "a port needs at least one participant");
  }
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) {
    if (i != secret) labels.push_back(m.ground().label(i));
  }
  std::vector<std::uint8_t> q(std::size_t{1} << (n - 1));
  const std::uint32_t sbit = std::uint32_t{1} << secret;
  for (std::uint32_t pm = 0; pm < q.size(); ++pm) {
    std::uint32_t a = kernels::insert_zero_bit(pm, secret);
    q[pm] = m.rank(SubsetMask(a | sbit)) == m.rank(SubsetMask(a)) ? 1 : 0;
  }
  if (q[0]) {
    throw Error(ErrorCode::kInvalidArgument, "the secret is a loop");
  }
  if (!q.back()) {
    throw Error(ErrorCode::kInvalidArgument, "the secret is a coloop");
  }
  return AccessStructure::from_qualified(GroundSet(std::move(labels)), std::move(q));
}

RealizationCheck realizes(const Polymatroid& m, int secret,
                          const AccessStructure& a, double tolerance) {
  return realizes_impl<true>(m, secret, a, tolerance);
}

RealizationCheck realizes_serial(const Polymatroid& m, int secret,
                                 const AccessStructure& a, double tolerance) {
  return realizes_impl<false>(m, secret, a, tolerance);
}

double sigma(const Polymatroid& m, int secret) {
  if (secret < 0 || secret >= m.size()) {
    throw Error(ErrorCode::kInvalidArgument, "secret index out of range");
  }
  double fs = m[SubsetMask::singleton(secret)];
  if (fs <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "the secret has rank 0");
  }
  double best = 0;
  for (int i = 0; i < m.size(); ++i) {
    if (i != secret) best = std::max(best, m[SubsetMask::singleton(i)] / fs);
  }
  return best;
}

BoundReport important_bound_check(const Polymatroid& m, const AccessStructure& a,
                                  int secret, double tolerance) {
  Alignment al = align(m, secret, a);
  Importance imp = important_participants(a);
  const double fs = m[SubsetMask::singleton(secret)];
  const double slack = m.is_integer() ? 0.0 : tolerance;
  BoundReport out;
  int k = 0;
  for (int i = 0; i < m.size(); ++i) {
    if (i == secret) continue;
    int participant = al.to_structure[k++];
    if (!imp.important.contains(participant)) continue;
    double margin = m[SubsetMask::singleton(i)] - fs;
    out.margins.push_back({participant, margin});
    out.ok = out.ok && margin >= -slack;
  }
  std::sort(out.margins.begin(), out.margins.end(),
            [](const BoundMargin& x, const BoundMargin& y) { return x.participant < y.participant; });
  return out;
}

std::optional<Matroid> matroid_from_port(const AccessStructure& a,
                                         const std::string& secret_label) {
  const int n = a.size();
  if (n + 1 > kMaxDenseElements) {
    throw Error(ErrorCode::kTooLarge, "structure too large to rebuild densely");
  }
  if (!important_participants(a).connected) {
    throw Error(ErrorCode::kInvalidArgument,
                "rebuilding needs a connected access structure");
  }
  auto q = a.qualified_table();
  const std::uint32_t pfull = a.participants().full().bits();
  // Participant p sits at bit p + 1; bit 0 is the secret.
  std::vector<std::int64_t> f(std::size_t{1} << (n + 1), 0);
  auto rank_of = [&](std::uint32_t participants) -> std::int64_t& {
    return f[participants << 1];
  };

  for (std::uint32_t A = 1; A <= pfull; ++A) {
    std::int64_t step = 0;
    std::uint32_t removed = 0;
    if (q[A]) {
      // Some a with A - a unqualified: increment 1. Otherwise any a in a
      // minimal qualified subset of A: increment 0.
      std::optional<int> drop;
      for_each_element(SubsetMask(A), [&](int i) {
        if (!drop && !q[A & ~(std::uint32_t{1} << i)]) drop = i;
      });
      if (drop) {
        removed = std::uint32_t{1} << *drop;
        step = 1;
      } else {
        std::uint32_t minimal = A;
        bool shrunk = true;
        while (shrunk) {
          shrunk = false;
          for (int i = 0; i < n && !shrunk; ++i) {
            std::uint32_t bit = std::uint32_t{1} << i;
            if ((minimal & bit) && q[minimal & ~bit]) {
              minimal &= ~bit;
              shrunk = true;
            }
          }
        }
        removed = minimal & (~minimal + 1);
        step = 0;
      }
    } else {
      // Unqualified B with AB qualified, |B - A| minimal, then |A ∩ B|
      // maximal; then f(A) - f(A - a) = f(AB) - f(AB - a) for a in A - B.
      std::optional<std::uint32_t> best;
      int best_out = std::numeric_limits<int>::max();
      int best_in = -1;
      for (std::uint32_t B = 0; B <= pfull; ++B) {
        if (q[B] || !q[A | B]) continue;
        int out_count = std::popcount(B & ~A);
        int in_count = std::popcount(B & A);
        if (out_count < best_out || (out_count == best_out && in_count > best_in)) {
          best = B;
          best_out = out_count;
          best_in = in_count;
        }
      }
      if (!best) return std::nullopt;
      std::uint32_t rest = A & ~*best;
      removed = rest & (~rest + 1);
      step = q[(A | *best) & ~removed] ? 0 : 1;
    }
    rank_of(A) = rank_of(A & ~removed) + step;
  }
  for (std::uint32_t A = 0; A <= pfull; ++A) {
    f[(A << 1) | 1U] = rank_of(A) + (q[A] ? 0 : 1);
  }

  std::vector<std::string> labels{secret_label};
  for (const auto& l : a.participants().labels()) labels.push_back(l);
  RankVector rank = RankVector::integer(GroundSet(std::move(labels)), std::move(f));
  if (!validate_polymatroid(rank).ok()) return std::nullopt;
  Polymatroid poly = Polymatroid::validate(std::move(rank));
  if (!is_matroid(poly)) return std::nullopt;
  Matroid out(std::move(poly));
  if (!(port(out, 0) == a)) return std::nullopt;
  return out;
}

PortOracle::PortOracle(ExpandedMatroid matroid, int secret_block)
    : matroid_(std::move(matroid)), secret_block_(secret_block) {
  if (secret_block < 0 || secret_block >= matroid_.blocks() ||
      matroid_.block_size(secret_block) == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "the secret block must exist and hold at least one atom");
  }
}

BlockCounts PortOracle::all_participants() const {
  BlockCounts c = matroid_.all_atoms();
  --c[secret_block_];
  return c;
}

BlockCounts PortOracle::parse_participants(std::string_view text) const {
  const std::string secret =
      matroid_.base().ground().label(secret_block_) + "_1";
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string_view item = text.substr(
        start, comma == std::string_view::npos ? text.size() - start : comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item == secret) {
      throw Error(ErrorCode::kInvalidArgument,
                  "'" + secret + "' is the secret, not a participant");
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  BlockCounts c = matroid_.parse_subset(text);
  check(c);
  return c;
}

void PortOracle::check(const BlockCounts& participants) const {
  BlockCounts all = all_participants();
  if (participants.size() != all.size()) {
    throw Error(ErrorCode::kInvalidArgument, "one count per block expected");
  }
  for (std::size_t b = 0; b < all.size(); ++b) {
    if (participants[b] < 0 || participants[b] > all[b]) {
      throw Error(ErrorCode::kInvalidArgument,
                  "participant count exceeds the atoms available in a block");
    }
  }
}

bool PortOracle::is_qualified(const BlockCounts& participants) const {
  check(participants);
  BlockCounts s = participants;
  if (complemented_) {
    BlockCounts all = all_participants();
    for (std::size_t b = 0; b < s.size(); ++b) s[b] = all[b] - participants[b];
  }
  BlockCounts with_secret = s;
  ++with_secret[secret_block_];
  bool q = matroid_.rank(with_secret) == matroid_.rank(s);
  return complemented_ ? !q : q;
}

PortOracle PortOracle::dual() const {
  PortOracle out = *this;
  out.complemented_ = !complemented_;
  return out;
}

double sigma(const ExpandedMatroid& m, int secret_block) {
  if (secret_block < 0 || secret_block >= m.blocks() || m.block_size(secret_block) == 0) {
    throw Error(ErrorCode::kInvalidArgument, "the secret block holds no atom");
  }
  auto one_atom = [&](int b) {
    BlockCounts c(m.blocks(), 0);
    c[b] = 1;
    return static_cast<double>(m.rank(c));
  };
  double fs = one_atom(secret_block);
  if (fs <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "the secret has rank 0");
  }
  double best = 0;
  for (int b = 0; b < m.blocks(); ++b) {
    // Other atoms of the secret block are participants too.
    int available = m.block_size(b) - (b == secret_block ? 1 : 0);
    if (available > 0) best = std::max(best, one_atom(b) / fs);
  }
  return best;
}

SpotCheck spot_check_realization(const ExpandedMatroid& m, int secret_block,
                                 const PortOracle& structure,
                                 const std::vector<BlockCounts>& spots) {
  BlockCounts secret(m.blocks(), 0);
  secret[secret_block] = 1;
  const std::int64_t fs = m.rank(secret);
  if (fs <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "the secret has rank 0");
  }
  SpotCheck out;
  out.realizes = true;
  for (std::size_t k = 0; k < spots.size(); ++k) {
    BlockCounts with_secret = spots[k];
    ++with_secret.at(secret_block);
    std::int64_t gap = m.rank(with_secret) - m.rank(spots[k]);
    std::int64_t expected = structure.is_qualified(spots[k]) ? 0 : fs;
    if (gap != expected) {
      out.realizes = false;
      out.failing_spot = k;
      break;
    }
  }
  return out;
}

}  // namespace pmw
