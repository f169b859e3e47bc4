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

// JSON file formats.
//
//   rank vector:   {"ground": [...], "mode": "int"|"float",
//                   "ranks": {"a": 1, "a,b": 2, ...}}   (all 2^n - 1 keys)
//   distribution:  {"variables": [...],
//                   "rows": [{"values": [0, 1, ...], "prob": 0.25}, ...]}
//   access:        {"participants": [...], "minimal_qualified": [[...], ...]}
//   port:          {"port": {"matroid_file": path, "secret": label}} or
//                  {"port": {"expanded": path, "secret": block, "dual": bool}}
//
// Relative paths inside a port file resolve against the file's directory.
// Writers emit keys in a fixed order so output is byte-stable.

#ifndef PMW_IO_HPP_
#define PMW_IO_HPP_

#include <filesystem>
#include <string>
#include <variant>

#include "json.hpp"
#include "pmw/core.hpp"
#include "pmw/entropy.hpp"
#include "pmw/polymatroid.hpp"
#include "pmw/secret_sharing.hpp"

namespace pmw::io {

using Json = nlohmann::ordered_json;

Json rank_to_json(const RankVector& rank);
// Throws Error(kLoadError) on a missing subset key, an unknown label, or a
// non-integer value in int mode.
RankVector rank_from_json(const Json& j);

Json distribution_to_json(const JointDistribution& d);
JointDistribution distribution_from_json(const Json& j);

Json access_to_json(const AccessStructure& a);
AccessStructure access_from_json(const Json& j);

Json violations_to_json(const GroundSet& ground, const ValidationReport& report);

// Explicit structure, or oracle for ports of expanded matroids.
using LoadedStructure = std::variant<AccessStructure, PortOracle>;
LoadedStructure load_structure(const std::filesystem::path& path);

Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);
std::string dump(const Json& j);

RankVector load_rank_vector(const std::filesystem::path& path);
JointDistribution load_distribution(const std::filesystem::path& path);

}  // namespace pmw::io

#endif  // PMW_IO_HPP_
