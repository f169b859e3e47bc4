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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "pmw/entropy.hpp"
#include "pmw/io.hpp"
#include "pmw/polymatroid.hpp"
#include "support.hpp"

using namespace pmw;

namespace {

Polymatroid ints(const GroundSet& g, std::vector<std::int64_t> f) {
  return Polymatroid::validate(RankVector::integer(g, std::move(f)));
}

Polymatroid middle() {
  return Polymatroid::validate(io::load_rank_vector(PMW_DATA_DIR "/table2_middle.json"));
}

Polymatroid right_column() {
  return Polymatroid::validate(io::load_rank_vector(PMW_DATA_DIR "/table2_tight.json"));
}

Polymatroid table1() {
  return entropy_vector(io::load_distribution(PMW_DATA_DIR "/table1.json"));
}

const GroundSet kAB = testing::letters(2);
const GroundSet kABC = testing::letters(3);

}  // namespace

TEST_CASE("validate accepts modular and rejects superadditive") {
  CHECK(validate_polymatroid(RankVector::integer(kAB, {0, 1, 1, 2})).ok());
  auto bad = validate_polymatroid(RankVector::integer(kAB, {0, 1, 1, 3}));
  REQUIRE(!bad.ok());
  CHECK(bad.violations[0].kind == Violation::Kind::kSubmodular);
  CHECK(bad.violations[0].subset.empty());
  try {
    Polymatroid::validate(RankVector::integer(kAB, {0, 1, 1, 3}));
    FAIL("expected NotPolymatroid");
  } catch (const NotPolymatroid& e) {
    CHECK(e.report().violations.size() == 1);
  }
}

TEST_CASE("entropy vector of the five-variable distribution is a polymatroid") {
  CHECK(validate_polymatroid(table1().rank()).ok());
}

TEST_CASE("dual of U_{2,3} is U_{1,3}") {
  Polymatroid u23 = ints(kABC, {0, 1, 1, 2, 1, 2, 2, 2});
  Polymatroid d = dual(u23);
  CHECK(d.rank() == RankVector::integer(kABC, {0, 1, 1, 1, 1, 1, 1, 1}));
}

TEST_CASE("dual of the tight column keeps singleton values") {
  Polymatroid d = dual(right_column());
  const std::int64_t want[] = {37, 31, 31, 38, 38};
  for (int i = 0; i < 5; ++i) CHECK(d.rank().exact(SubsetMask::singleton(i)) == want[i]);
}

TEST_CASE("double dual of the middle column is its tightening") {
  Polymatroid m = middle();
  CHECK(!is_tight(m));
  CHECK(dual(dual(m)) == right_column());
}

TEST_CASE("tightening the middle column gives the right column") {
  Polymatroid m = middle();
  CHECK(private_info(m, 0) == 155 - 137);
  CHECK(tighten(m) == right_column());
  CHECK(tighten(m).rank().exact(SubsetMask::singleton(0)) == 37);
  CHECK(is_tight(right_column()));
  CHECK(tighten(right_column()) == right_column());
}

TEST_CASE("tightening is idempotent") {
  testing::Rng rng(21);
  for (int t = 0; t < 200; ++t) {
    Polymatroid m = testing::random_polymatroid(rng, testing::uniform(rng, 1, 5));
    Polymatroid once = tighten(m);
    CHECK(max_abs_diff(tighten(once).rank(), once.rank()) <= 1e-9);
    CHECK(is_tight(once));
  }
}

TEST_CASE("tighten_at removes one element's private information") {
  Polymatroid m = middle();
  Polymatroid t = tighten_at(m, 0);
  CHECK(t.rank().exact(SubsetMask::singleton(0)) == 37);
  CHECK(t.rank().exact(SubsetMask::singleton(1)) == 55);
  CHECK(private_info(t, 0) == 0);
}

TEST_CASE("connectivity") {
  CHECK(is_connected(ints(kABC, {0, 1, 1, 2, 1, 2, 2, 2})).connected);
  auto sum = is_connected(ints(kAB, {0, 1, 1, 2}));
  CHECK(!sum.connected);
  REQUIRE(sum.witness.has_value());
  CHECK(sum.witness->first == SubsetMask::singleton(0));
  CHECK(sum.witness->second == SubsetMask::singleton(1));
  CHECK(is_connected(right_column()).connected);
}

TEST_CASE("connectivity agrees with an exhaustive bipartition scan") {
  testing::Rng rng(22);
  for (int t = 0; t < 300; ++t) {
    int n = testing::uniform(rng, 1, 5);
    Polymatroid m = testing::random_polymatroid(rng, n);
    bool split = false;
    for (std::uint32_t a = 1; a + 1 < (1u << n); ++a) {
      SubsetMask x(a);
      SubsetMask y = x.complement(n);
      if (std::abs(m[x] + m[y] - m.total()) <= kDecisionTolerance) split = true;
    }
    CHECK(is_connected(m).connected == !split);
  }
}

TEST_CASE("independent sets") {
  CHECK(is_independent_set(ints(kAB, {0, 1, 1, 2}), SubsetMask::full(2)));
  CHECK(!is_independent_set(ints(kAB, {0, 1, 1, 1}), SubsetMask::full(2)));
  Polymatroid h = table1();
  SubsetMask de = subset_parse(h.ground(), "d,e");
  // Oracle: H(d) + H(e) exceeds H(de) since d and e are never both 1.
  CHECK(h[de] < h[subset_parse(h.ground(), "d")] + h[subset_parse(h.ground(), "e")] - 1e-3);
  CHECK(!is_independent_set(h, de));
}

TEST_CASE("factor") {
  Polymatroid m = middle();
  CHECK(factor(m, FactorMap::identity(m.ground())) == m);

  std::vector<std::pair<std::string, std::string>> all;
  for (const auto& l : m.ground().labels()) all.push_back({l, "x"});
  Polymatroid one = factor(m, FactorMap::from_labels(m.ground(), all));
  CHECK(one.size() == 1);
  CHECK(one.rank().exact(SubsetMask::singleton(0)) == 155);
}

TEST_CASE("principal extension") {
  Polymatroid u12 = ints(kAB, {0, 1, 1, 1});
  Polymatroid loop = principal_extension(u12, 0, 0, "x");
  for (std::uint32_t m = 0; m < 4; ++m) {
    CHECK(loop.rank().exact(SubsetMask(m | 4u)) == loop.rank().exact(SubsetMask(m)));
  }
  Polymatroid dup = principal_extension(u12, 0, 1, "c");
  CHECK(dup.rank() == RankVector::integer(kABC, {0, 1, 1, 1, 1, 1, 1, 1}));
  CHECK(dup.ground().label(2) == "c");
  CHECK_THROWS_AS(principal_extension(u12, 0, 0.5, "x"), Error);
}

TEST_CASE("principal extension of a random polymatroid is a polymatroid") {
  testing::Rng rng(23);
  for (int t = 0; t < 300; ++t) {
    int n = testing::uniform(rng, 1, 4);
    Polymatroid m = testing::random_real_polymatroid(rng, n);
    int a = testing::uniform(rng, 0, n - 1);
    double alpha = testing::uniform_real(rng, 0, 4);
    Polymatroid e = principal_extension(m, a, alpha, "z");
    CHECK(validate_polymatroid(e.rank()).ok());
    CHECK(restriction(e, SubsetMask::full(n)) == m);
  }
}

TEST_CASE("split_atom on one element") {
  Polymatroid a2 = ints(testing::letters(1), {0, 2});
  Polymatroid s = split_atom(a2, 0, 1, 1, "a1", "a2");
  CHECK(s.rank() == RankVector::integer(GroundSet({"a1", "a2"}), {0, 1, 1, 2}));
}

TEST_CASE("split_atom weights and rounding noise") {
  Polymatroid m = Polymatroid::validate(RankVector::real(kAB, {0, -1e-16, 1, 1}));
  Polymatroid s = split_atom(m, 0, -1e-16, 0, "a1", "a2");
  CHECK(std::abs(s[subset_parse(s.ground(), "a1")]) <= 1e-12);
  CHECK_THROWS_AS(split_atom(m, 0, -0.5, 0.5, "a1", "a2"), Error);
  Polymatroid i = ints(testing::letters(1), {0, 2});
  CHECK_THROWS_AS(split_atom(i, 0, -1, 3, "a1", "a2"), Error);
}

TEST_CASE("split_atom follows the four formulas") {
  Polymatroid m = ints(kAB, {0, 2, 1, 2});
  Polymatroid s = split_atom(m, 0, 1, 1, "a1", "a2");
  CHECK(s.ground().labels() == std::vector<std::string>{"a1", "a2", "b"});
  auto r = [&](const char* key) { return s.rank().exact(subset_parse(s.ground(), key)); };
  CHECK(r("a1") == 1);
  CHECK(r("a1,b") == 2);
  CHECK(r("a1,a2") == 2);
  CHECK(r("a1,a2,b") == 2);
  CHECK(r("b") == 1);
  FactorMap back = FactorMap::from_labels(s.ground(), {{"a1", "a"}, {"a2", "a"}, {"b", "b"}});
  CHECK(factor(s, back) == m);
  CHECK_THROWS_AS(split_atom(m, 0, 1, 2, "a1", "a2"), Error);
}

TEST_CASE("r_A basis") {
  GroundSet g = testing::letters(5);
  Polymatroid r = basis_r(g, subset_parse(g, "a,b,c"));
  CHECK(r.rank().exact(subset_parse(g, "d")) == 0);
  CHECK(r.rank().exact(subset_parse(g, "a,d")) == 1);
  Polymatroid ra = basis_r(g, subset_parse(g, "a"));
  for (std::uint32_t m = 0; m < 32; ++m) CHECK(ra.rank().exact(SubsetMask(m)) == (m & 1u));
}

TEST_CASE("the 31 r_A vectors are linearly independent") {
  // Gaussian elimination over the rationals, in doubles on 0/1 data.
  const int n = 31;
  GroundSet g = testing::letters(5);
  std::vector<std::vector<double>> rows;
  for (std::uint32_t a = 1; a < 32; ++a) {
    Polymatroid r = basis_r(g, SubsetMask(a));
    std::vector<double> row;
    for (std::uint32_t m = 1; m < 32; ++m) row.push_back(r[SubsetMask(m)]);
    rows.push_back(row);
  }
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int pivot = -1;
    for (int r = rank; r < n; ++r) {
      if (std::abs(rows[r][col]) > 1e-9) pivot = r;
    }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = 0; r < n; ++r) {
      if (r == rank) continue;
      double k = rows[r][col] / rows[rank][col];
      for (int c = 0; c < n; ++c) rows[r][c] -= k * rows[rank][c];
    }
    ++rank;
  }
  CHECK(rank == 31);
}

TEST_CASE("linear combinations") {
  Polymatroid u12 = ints(kAB, {0, 1, 1, 1});
  CHECK(linear_combine({{1.0, u12}}) == u12.rank().to_real());
  CHECK(linear_combine({{2.0, u12}}) == RankVector::real(kAB, {0, 2, 2, 2}));
  CHECK_THROWS_AS(linear_combine({}), Error);
}

TEST_CASE("rounding") {
  GroundSet g = testing::letters(1);
  Polymatroid r = round_to_integer(RankVector::real(g, {0, 54.9998}));
  CHECK(r.is_integer());
  CHECK(r.rank().exact(SubsetMask::singleton(0)) == 55);
  try {
    round_to_integer(RankVector::real(g, {0, 54.4}));
    FAIL("expected ResidualTooLarge");
  } catch (const ResidualTooLarge& e) {
    CHECK(e.worst() == SubsetMask::singleton(0));
    CHECK(std::abs(e.residual() - 0.4) < 1e-9);
  }
}

TEST_CASE("the published combination rounds to the middle column") {
  Polymatroid h = table1();
  io::Json coeffs = io::read_json(PMW_DATA_DIR "/coefficients.json");
  std::vector<WeightedTerm> terms{{coeffs["scale"].get<double>(), h}};
  int count = 0;
  for (const auto& group : coeffs["terms"]) {
    for (const auto& set : group["sets"]) {
      terms.push_back({group["coefficient"].get<double>(),
                       basis_r(h.ground(), subset_parse(h.ground(), set.get<std::string>()))});
      ++count;
    }
  }
  CHECK(count == 23);
  RankVector c = linear_combine(terms);
  RankVector want = middle().rank();
  for (std::uint32_t m = 1; m < 32; ++m) {
    CHECK(std::abs(c[SubsetMask(m)] - static_cast<double>(want.exact(SubsetMask(m)))) < 1e-3);
  }
  CHECK(round_to_integer(c) == middle());
}
