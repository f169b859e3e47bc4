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

// Access structures, their duals, and realization by polymatroids.
//
// Two representations exist. AccessStructure stores the qualified family
// explicitly (up to 20 participants) and supports global scans.
// PortOracle answers membership queries for the port of an expanded
// matroid, where participants number in the hundreds and subsets are given
// as per-block counts.

#ifndef PMW_SECRET_SHARING_HPP_
#define PMW_SECRET_SHARING_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pmw/core.hpp"
#include "pmw/matroid.hpp"
#include "pmw/polymatroid.hpp"

namespace pmw {

class AccessStructure {
 public:
  // `qualified[mask]` for every participant mask. Throws
  // Error(kInvalidArgument) unless upward closed with the empty set
  // unqualified and the full set qualified.
  static AccessStructure from_qualified(GroundSet participants,
                                        std::vector<std::uint8_t> qualified);
  // Upward closure of the given sets.
  static AccessStructure from_minimal(GroundSet participants,
                                      const std::vector<SubsetMask>& minimal);
  // (k, n)-threshold on participants p1..pn.
  static AccessStructure threshold(int k, int n);

  const GroundSet& participants() const { return participants_; }
  int size() const { return participants_.size(); }
  bool is_qualified(SubsetMask s) const { return qualified_.at(s.bits()) != 0; }
  std::span<const std::uint8_t> qualified_table() const { return qualified_; }
  // Inclusion-minimal qualified sets, by mask.
  std::vector<SubsetMask> minimal_qualified() const;

  friend bool operator==(const AccessStructure&, const AccessStructure&) = default;

 private:
  AccessStructure(GroundSet participants, std::vector<std::uint8_t> qualified)
      : participants_(std::move(participants)), qualified_(std::move(qualified)) {}

  GroundSet participants_;
  std::vector<std::uint8_t> qualified_;
};

// S is qualified in the dual iff P - S is unqualified.
AccessStructure dual_structure(const AccessStructure& a);

struct Importance {
  SubsetMask important;
  bool connected = false;
};

Importance important_participants(const AccessStructure& a);

// {A ⊆ M - s : f(sA) = f(A)} for a matroid. Throws Error(kInvalidArgument)
// when s is a loop or a coloop (the family is then not an access structure).
AccessStructure port(const Matroid& m, int secret);

struct RealizationCheck {
  bool realizes = false;
  // Participant mask (in the structure's indexing) breaking the dichotomy.
  std::optional<SubsetMask> counterexample;
};

// Checks, for every participant set A, that f(sA) - f(A) is 0 when A is
// qualified and f(s) otherwise. The polymatroid's ground set must be the
// participants plus the secret, in any order. Throws Error(kInvalidArgument)
// when f(s) = 0. Tolerance applies in float mode only.
RealizationCheck realizes(const Polymatroid& m, int secret,
                          const AccessStructure& a,
                          double tolerance = kDecisionTolerance);
RealizationCheck realizes_serial(const Polymatroid& m, int secret,
                                 const AccessStructure& a,
                                 double tolerance = kDecisionTolerance);

// max f(i) / f(s) over participants i.
double sigma(const Polymatroid& m, int secret);

struct BoundMargin {
  int participant;  // index in the structure
  double margin;    // f(i) - f(s)
};

struct BoundReport {
  std::vector<BoundMargin> margins;
  bool ok = true;
};

// f(i) >= f(s) for every important participant i.
BoundReport important_bound_check(const Polymatroid& m,
                                  const AccessStructure& a, int secret,
                                  double tolerance = kDecisionTolerance);

// Rebuilds the unique complexity-one realization of a connected access
// structure from the structure alone, one rank increment at a time. The
// secret gets index 0, participants follow in order. Returns nullopt when
// the rebuilt function is not a matroid realizing the structure, i.e. the
// structure is not a matroid port. Throws for disconnected structures.
std::optional<Matroid> matroid_from_port(const AccessStructure& a,
                                         const std::string& secret_label = "s");

// Port of an expanded matroid at one atom of `secret_block`. Participant
// sets are per-block counts; the secret block offers h(block) - 1 atoms.
class PortOracle {
 public:
  PortOracle(ExpandedMatroid matroid, int secret_block);

  const ExpandedMatroid& matroid() const { return matroid_; }
  int secret_block() const { return secret_block_; }
  bool is_complemented() const { return complemented_; }
  int participant_count() const { return matroid_.element_count() - 1; }
  BlockCounts all_participants() const;

  // Parses "a:12,b:3" or atom names; the secret atom "<block>_1" is not a
  // participant.
  BlockCounts parse_participants(std::string_view text) const;

  bool is_qualified(const BlockCounts& participants) const;

  // The dual structure, answered by complementing queries.
  PortOracle dual() const;

 private:
  void check(const BlockCounts& participants) const;

  ExpandedMatroid matroid_;
  int secret_block_;
  bool complemented_ = false;
};

double sigma(const ExpandedMatroid& m, int secret_block);

struct SpotCheck {
  bool realizes = false;
  // Index into the spot list of the first failing set.
  std::optional<std::size_t> failing_spot;
};

// Realization of `structure` by the port matroid of `m` at `secret_block`,
// checked on the given participant sets only.
SpotCheck spot_check_realization(const ExpandedMatroid& m,
                                        int secret_block,
                                        const PortOracle& structure,
                                        const std::vector<BlockCounts>& spots);

}  // namespace pmw

#endif  // PMW_SECRET_SHARING_HPP_
