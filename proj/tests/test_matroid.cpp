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
#include <algorithm>
#include <functional>
#include <limits>
#include <set>

#include "doctest.h"
#include "pmw/inequalities.hpp"
#include "pmw/io.hpp"
#include "pmw/matroid.hpp"
#include "support.hpp"

using namespace pmw;

namespace {

Polymatroid ints(const GroundSet& g, std::vector<std::int64_t> f) {
  return Polymatroid::validate(RankVector::integer(g, std::move(f)));
}

Polymatroid right_column() {
  return Polymatroid::validate(io::load_rank_vector(PMW_DATA_DIR "/table2_tight.json"));
}

std::set<std::uint32_t> masks(const std::vector<SubsetMask>& v) {
  std::set<std::uint32_t> out;
  for (auto s : v) out.insert(s.bits());
  return out;
}

// Dense expansion by repeated split_atom; block[i] is the base element
// that dense element i came from.
struct Dense {
  Polymatroid poly;
  std::vector<int> block;
};

Dense split_in_order(const Polymatroid& base, const std::vector<int>& order) {
  Dense d{base, {}};
  for (int i = 0; i < base.size(); ++i) d.block.push_back(i);
  int fresh = 0;
  for (int b : order) {
    // The one element of block b still carrying rank above 1.
    int at = -1;
    for (int i = 0; i < d.poly.size(); ++i) {
      if (d.block[i] == b && d.poly.rank().exact(SubsetMask::singleton(i)) > 1) at = i;
    }
    REQUIRE(at >= 0);
    std::int64_t h = d.poly.rank().exact(SubsetMask::singleton(at));
    d.poly = split_atom(d.poly, at, 1, static_cast<double>(h - 1),
                        "u" + std::to_string(fresh), "v" + std::to_string(fresh));
    ++fresh;
    d.block.insert(d.block.begin() + at + 1, b);
  }
  return d;
}

// Every integer polymatroid on n elements with singleton ranks at most cap.
std::vector<Polymatroid> all_small(int n, int cap) {
  std::vector<Polymatroid> out;
  const std::size_t slots = std::size_t{1} << n;
  std::vector<std::int64_t> f(slots, 0);
  std::function<void(std::size_t)> fill = [&](std::size_t m) {
    if (m == slots) {
      RankVector r = RankVector::integer(testing::letters(n), f);
      if (validate_polymatroid(r).ok()) out.push_back(Polymatroid::validate(r));
      return;
    }
    // Monotone along single-element steps prunes most candidates early.
    // Monotone from below, subadditive over a singleton from above.
    std::int64_t lo = 0;
    std::int64_t hi = std::popcount(m) == 1 ? cap : std::numeric_limits<std::int64_t>::max();
    for (int i = 0; i < n; ++i) {
      const std::size_t bit = std::size_t{1} << i;
      if ((m & bit) && m != bit) {
        lo = std::max(lo, f[m - bit]);
        hi = std::min(hi, f[m - bit] + f[bit]);
      }
    }
    for (std::int64_t v = lo; v <= hi; ++v) {
      f[m] = v;
      fill(m + 1);
    }
  };
  fill(1);
  return out;
}

}  // namespace

TEST_CASE("is_matroid") {
  GroundSet abc = testing::letters(3);
  CHECK(is_matroid(ints(abc, {0, 1, 1, 2, 1, 2, 2, 2})));
  CHECK(!is_matroid(ints(testing::letters(2), {0, 2, 1, 2})));
  CHECK(!is_matroid(right_column()));
  CHECK_THROWS_AS(is_matroid(Polymatroid::validate(RankVector::real(testing::letters(1), {0, 1}))),
                  Error);
}

TEST_CASE("circuits") {
  CHECK(masks(circuits(testing::uniform_matroid(1, 3))) ==
        std::set<std::uint32_t>{0b011, 0b101, 0b110});
  CHECK(masks(circuits(testing::uniform_matroid(2, 3))) == std::set<std::uint32_t>{0b111});
  CHECK(circuits(testing::uniform_matroid(3, 3)).empty());
}

TEST_CASE("circuits match a brute-force minimality scan") {
  testing::Rng rng(31);
  for (int t = 0; t < 100; ++t) {
    Matroid m = testing::random_matroid(rng, testing::uniform(rng, 1, 7));
    std::set<std::uint32_t> want;
    for (std::uint32_t s = 1; s < (1u << m.size()); ++s) {
      if (m.is_circuit(SubsetMask(s))) want.insert(s);
    }
    CHECK(masks(circuits(m)) == want);
  }
}

TEST_CASE("circuit connectivity") {
  auto link = circuit_connected(testing::uniform_matroid(2, 3), 0, 2);
  CHECK(link.connected);
  CHECK(link.circuit == SubsetMask::full(3));

  // Direct sum of two U_{1,2}: {a,b} and {c,d}.
  GroundSet g = testing::letters(4);
  std::vector<std::int64_t> f(16);
  for (std::uint32_t s = 0; s < 16; ++s) f[s] = ((s & 3u) ? 1 : 0) + ((s & 12u) ? 1 : 0);
  Matroid sum(ints(g, f));
  CHECK(circuit_connected(sum, 0, 1).connected);
  CHECK(!circuit_connected(sum, 0, 2).connected);
  CHECK_THROWS_AS(circuit_connected(sum, 1, 1), Error);
}

TEST_CASE("circuit connectivity is an equivalence with one class iff connected") {
  testing::Rng rng(32);
  int connected_seen = 0;
  int disconnected_seen = 0;
  for (int t = 0; t < 400; ++t) {
    Matroid m = testing::random_matroid(rng, testing::uniform(rng, 1, 8));
    const int n = m.size();
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
    for (int x = 0; x < n; ++x) {
      rel[x][x] = true;
      for (int y = 0; y < n; ++y) {
        if (x != y) rel[x][y] = circuit_connected(m, x, y).connected;
      }
    }
    bool equivalence = true;
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        if (rel[x][y] != rel[y][x]) equivalence = false;
        for (int z = 0; z < n; ++z) {
          if (rel[x][y] && rel[y][z] && !rel[x][z]) equivalence = false;
        }
      }
    }
    CHECK(equivalence);
    std::set<int> classes;
    for (int x = 0; x < n; ++x) {
      int rep = x;
      for (int y = 0; y < x; ++y) {
        if (rel[x][y]) rep = std::min(rep, y);
      }
      classes.insert(rep);
    }
    bool connected = is_connected(m.polymatroid()).connected;
    CHECK((classes.size() == 1) == connected);
    (connected ? connected_seen : disconnected_seen)++;
  }
  CHECK(connected_seen > 20);
  CHECK(disconnected_seen > 20);
}

TEST_CASE("expansion of small polymatroids") {
  ExpandedMatroid two = ExpandedMatroid::expand(ints(testing::letters(1), {0, 2}));
  CHECK(two.element_count() == 2);
  CHECK(two.rank({0}) == 0);
  CHECK(two.rank({1}) == 1);
  CHECK(two.rank({2}) == 2);

  ExpandedMatroid e = ExpandedMatroid::expand(ints(testing::letters(2), {0, 2, 1, 2}));
  CHECK(e.element_count() == 3);
  CHECK(e.rank({2, 1}) == 2);
  CHECK(e.rank({1, 1}) == 2);
  CHECK(e.rank_of_elements({0, 1, 2}) == 2);
  CHECK(e.element_label(0) == "a_1");
  CHECK(e.element_label(2) == "b_1");
  CHECK(e.locate(1) == std::pair<int, int>{0, 1});
}

TEST_CASE("subset parsing on an expansion") {
  ExpandedMatroid e = ExpandedMatroid::expand(right_column());
  CHECK(e.parse_subset("a:12,b:3") == BlockCounts{12, 3, 0, 0, 0});
  CHECK(e.parse_subset("a_1,a_5,e_38") == BlockCounts{2, 0, 0, 0, 1});
  CHECK(e.parse_subset("") == BlockCounts{0, 0, 0, 0, 0});
  CHECK_THROWS_AS(e.parse_subset("a:38"), Error);
  CHECK_THROWS_AS(e.parse_subset("a_38"), Error);
  CHECK_THROWS_AS(e.parse_subset("a_1,a_1"), Error);
  CHECK_THROWS_AS(e.parse_subset("z:1"), Error);
  CHECK_THROWS_AS(e.rank({1, 2, 3}), Error);
}

TEST_CASE("the 175-atom expansion") {
  Polymatroid n = right_column();
  ExpandedMatroid e = ExpandedMatroid::expand(n);
  CHECK(e.element_count() == 175);
  CHECK(e.rank(e.all_atoms()) == 89);
  CHECK(e.rank(BlockCounts(5, 0)) == 0);
  for (std::uint32_t b = 1; b < 32; ++b) {
    CHECK(e.rank(e.block_union(SubsetMask(b))) == n.rank().exact(SubsetMask(b)));
  }
  CHECK(e.block_factor() == n);
  CHECK(expanded_mmrv(e, Roles::positional(n.ground())) == mmrv_exact(n, Roles::positional(n.ground())));
}

TEST_CASE("the dualized 175-atom expansion factors onto the dual") {
  Polymatroid n = right_column();
  ExpandedMatroid d = ExpandedMatroid::expand(n).dualized();
  CHECK(d.is_dual());
  Polymatroid nd = dual(n);
  for (std::uint32_t b = 1; b < 32; ++b) {
    CHECK(d.rank(d.block_union(SubsetMask(b))) == nd.rank().exact(SubsetMask(b)));
  }
  CHECK(expanded_mmrv(d, Roles::positional(n.ground())) == -1);
  CHECK(!d.dualized().is_dual());
}

TEST_CASE("MMRV on an expansion needs five blocks") {
  ExpandedMatroid e = ExpandedMatroid::expand(testing::uniform_matroid(2, 3).polymatroid());
  CHECK_THROWS_AS(expanded_mmrv(e, Roles{}), Error);
}

TEST_CASE("expanding the dual equals dualizing the expansion for tight polymatroids") {
  testing::Rng rng(33);
  for (int t = 0; t < 100; ++t) {
    int n = testing::uniform(rng, 1, 4);
    Polymatroid m = tighten(testing::random_linear(rng, n, 4, 2));
    ExpandedMatroid x = ExpandedMatroid::expand(dual(m));
    ExpandedMatroid y = ExpandedMatroid::expand(m).dualized();
    REQUIRE(x.element_count() == y.element_count());
    // Walk every count vector.
    BlockCounts c(n, 0);
    while (true) {
      CHECK(x.rank(c) == y.rank(c));
      int b = 0;
      while (b < n && c[b] == x.block_size(b)) c[b++] = 0;
      if (b == n) break;
      ++c[b];
    }
  }
}

TEST_CASE("min formula equals iterated splitting, every order, |M| <= 3, ranks <= 3") {
  std::size_t checked = 0;
  for (int n = 1; n <= 3; ++n) {
    for (const Polymatroid& base : all_small(n, 3)) {
      std::vector<int> steps;
      for (int i = 0; i < n; ++i) {
        for (std::int64_t k = 1; k < base.rank().exact(SubsetMask::singleton(i)); ++k) {
          steps.push_back(i);
        }
      }
      ExpandedMatroid e = ExpandedMatroid::expand(base);
      std::sort(steps.begin(), steps.end());
      do {
        Dense d = split_in_order(base, steps);
        REQUIRE(is_matroid(d.poly));
        // Rank-0 blocks have no atoms; their dense element is a loop.
        for (std::uint32_t s = 0; s < (1u << d.poly.size()); ++s) {
          BlockCounts counts(n, 0);
          for (int i = 0; i < d.poly.size(); ++i) {
            if (((s >> i) & 1U) && e.block_size(d.block[i]) > 0) {
              ++counts[d.block[i]];
            }
          }
          CHECK(e.rank(counts) == d.poly.rank().exact(SubsetMask(s)));
          // The same set named atom by atom.
          std::vector<int> elements;
          int offset = 0;
          for (int b = 0; b < n; ++b) {
            for (int k = 0; k < counts[b]; ++k) elements.push_back(offset + k);
            offset += e.block_size(b);
          }
          CHECK(e.rank_of_elements(elements) == e.rank(counts));
        }
        ++checked;
      } while (std::next_permutation(steps.begin(), steps.end()));
    }
  }
  MESSAGE("split orders checked: " << checked);
  CHECK(checked > 1000);
}
