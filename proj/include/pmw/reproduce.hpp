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

// End-to-end rebuild of the five-variable counterexample from the bundled
// fixtures: the distribution, the rounding combination, and the three
// published columns of expected ranks.

#ifndef PMW_REPRODUCE_HPP_
#define PMW_REPRODUCE_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pmw/io.hpp"

namespace pmw {

inline constexpr int kReproductionSteps = 10;

struct ReproductionStep {
  int number = 0;
  std::string name;
  double expected = 0;
  std::string provenance;
  // NaN when the step could not compute its value.
  double computed = 0;
  double tolerance = 0;
  bool pass = false;
  std::string note;
};

struct ReproductionReport {
  std::vector<ReproductionStep> steps;
  bool ok() const;
};

// Runs every step, or only `only_step` (1-based). A failing step never
// stops the others; steps whose inputs could not be built fail with a note.
// Throws Error(kInvalidArgument) for a step number out of range.
ReproductionReport reproduce(const std::filesystem::path& data_dir,
                             std::optional<int> only_step = std::nullopt);

io::Json report_to_json(const ReproductionReport& report);
std::string report_to_table(const ReproductionReport& report);

}  // namespace pmw

#endif  // PMW_REPRODUCE_HPP_
