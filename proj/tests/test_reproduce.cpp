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
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "pmw/reproduce.hpp"

using namespace pmw;
namespace fs = std::filesystem;

namespace {

// A copy of the fixtures that a test may corrupt.
fs::path copy_fixtures(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("pmw_reproduce_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  for (const auto& f : fs::directory_iterator(PMW_DATA_DIR)) {
    fs::copy_file(f.path(), dir / f.path().filename());
  }
  return dir;
}

void check_invariant(const ReproductionReport& r) {
  for (const auto& s : r.steps) {
    if (s.pass) {
      CHECK(std::isfinite(s.computed));
      CHECK(std::abs(s.computed - s.expected) <= s.tolerance);
    }
  }
}

}  // namespace

TEST_CASE("all ten steps pass on the bundled fixtures") {
  ReproductionReport r = reproduce(PMW_DATA_DIR);
  REQUIRE(r.steps.size() == 10);
  for (const auto& s : r.steps) {
    INFO("step " << s.number << ": " << s.name << " " << s.note);
    CHECK(s.pass);
  }
  CHECK(r.ok());
  check_invariant(r);
  CHECK(r.steps[9].note.find("51") != std::string::npos);
}

TEST_CASE("a single step") {
  ReproductionReport r = reproduce(PMW_DATA_DIR, 6);
  REQUIRE(r.steps.size() == 1);
  CHECK(r.steps[0].number == 6);
  CHECK(r.steps[0].computed == -1);
  CHECK(r.ok());
  CHECK_THROWS_AS(reproduce(PMW_DATA_DIR, 0), Error);
  CHECK_THROWS_AS(reproduce(PMW_DATA_DIR, 11), Error);
}

TEST_CASE("a corrupted distribution fails step 1 and every step still reports") {
  fs::path dir = copy_fixtures("corrupt");
  io::Json t = io::read_json(dir / "table1.json");
  t["rows"][0]["prob"] = 0.5;
  io::write_json(dir / "table1.json", t);
  ReproductionReport r = reproduce(dir);
  REQUIRE(r.steps.size() == 10);
  CHECK(!r.steps[0].pass);
  CHECK(!r.steps[0].note.empty());
  CHECK(!r.ok());
  check_invariant(r);
}

TEST_CASE("a wrong expected column fails only the steps that read it") {
  fs::path dir = copy_fixtures("wrong_tight");
  io::Json t = io::read_json(dir / "table2_tight.json");
  t["ranks"]["a"] = 36;
  io::write_json(dir / "table2_tight.json", t);
  ReproductionReport r = reproduce(dir);
  REQUIRE(r.steps.size() == 10);
  for (const auto& s : r.steps) {
    bool reads_tight = s.number == 5 || s.number == 8;
    CHECK(s.pass == !reads_tight);
  }
  CHECK(r.steps[4].note.find("first mismatch a") != std::string::npos);
  check_invariant(r);
}

TEST_CASE("a missing fixture is reported, not thrown") {
  fs::path dir = copy_fixtures("missing");
  fs::remove(dir / "coefficients.json");
  ReproductionReport r = reproduce(dir);
  REQUIRE(r.steps.size() == 10);
  CHECK(r.steps[0].pass);
  CHECK(!r.steps[3].pass);
  CHECK(std::isnan(r.steps[3].computed));
}

TEST_CASE("reports serialize deterministically") {
  auto a = io::dump(report_to_json(reproduce(PMW_DATA_DIR)));
  auto b = io::dump(report_to_json(reproduce(PMW_DATA_DIR)));
  CHECK(a == b);
  CHECK(report_to_table(reproduce(PMW_DATA_DIR)).find("all steps passed") != std::string::npos);
}
