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

#include "pmw/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pmw/matroid.hpp"

namespace pmw::io {
namespace {

[[noreturn]] void fail(const std::string& what) {
  throw Error(ErrorCode::kLoadError, what);
}

// Subsets by cardinality, then by mask.
std::vector<std::uint32_t> display_order(int n) {
  std::vector<std::uint32_t> order;
  for (std::uint32_t m = 1; m < (std::uint32_t{1} << n); ++m) order.push_back(m);
  std::stable_sort(order.begin(), order.end(), [](std::uint32_t a, std::uint32_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  return order;
}

GroundSet labels_from(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) {
    fail(std::string("missing array '") + key + "'");
  }
  std::vector<std::string> labels;
  for (const auto& l : j[key]) {
    if (!l.is_string()) fail(std::string("'") + key + "' must list strings");
    labels.push_back(l.get<std::string>());
  }
  return GroundSet(std::move(labels));
}

SubsetMask subset_from(const GroundSet& ground, const Json& list) {
  if (!list.is_array()) fail("subset must be a list of labels");
  std::vector<std::string> labels;
  for (const auto& l : list) labels.push_back(l.get<std::string>());
  return subset_parse(ground, labels);
}

Json subset_to(const GroundSet& ground, SubsetMask s) {
  Json out = Json::array();
  for_each_element(s, [&](int i) { out.push_back(ground.label(i)); });
  return out;
}

}  // namespace

Json rank_to_json(const RankVector& rank) {
  Json j;
  j["ground"] = rank.ground().labels();
  j["mode"] = std::string(mode_name(rank.mode()));
  Json ranks = Json::object();
  for (std::uint32_t m : display_order(rank.size())) {
    std::string key = subset_format(rank.ground(), SubsetMask(m));
    if (rank.is_integer()) {
      ranks[key] = rank.exact(SubsetMask(m));
    } else {
      ranks[key] = rank[SubsetMask(m)];
    }
  }
  j["ranks"] = std::move(ranks);
  return j;
}

RankVector rank_from_json(const Json& j) {
  GroundSet ground = labels_from(j, "ground");
  if (ground.size() > kMaxDenseElements) fail("ground set larger than 20 elements");
  std::string mode = j.value("mode", "");
  if (mode != "int" && mode != "float") fail("mode must be \"int\" or \"float\"");
  if (!j.contains("ranks") || !j["ranks"].is_object()) fail("missing object 'ranks'");
  const std::size_t slots = std::size_t{1} << ground.size();
  std::vector<double> reals(slots, 0.0);
  std::vector<std::int64_t> ints(slots, 0);
  std::vector<bool> seen(slots, false);
  for (const auto& [key, value] : j["ranks"].items()) {
    SubsetMask s;
    try {
      s = subset_parse(ground, key);
    } catch (const Error& e) {
      fail("bad subset key '" + key + "': " + e.what());
    }
    if (s.empty()) fail("the empty set has no key");
    if (seen[s.bits()]) fail("subset '" + key + "' given twice");
    if (!value.is_number()) fail("rank of '" + key + "' is not a number");
    seen[s.bits()] = true;
    if (mode == "int") {
      if (value.is_number_float()) {
        double v = value.get<double>();
        if (std::floor(v) != v) fail("rank of '" + key + "' is not an integer");
        ints[s.bits()] = static_cast<std::int64_t>(v);
      } else {
        ints[s.bits()] = value.get<std::int64_t>();
      }
    } else {
      reals[s.bits()] = value.get<double>();
    }
  }
  for (std::uint32_t m = 1; m < slots; ++m) {
    if (!seen[m]) fail("missing subset '" + subset_format(ground, SubsetMask(m)) + "'");
  }
  if (mode == "int") return RankVector::integer(std::move(ground), std::move(ints));
  return RankVector::real(std::move(ground), std::move(reals));
}

Json distribution_to_json(const JointDistribution& d) {
  Json j;
  j["variables"] = d.variables().labels();
  Json rows = Json::array();
  for (const auto& row : d.rows()) {
    Json r;
    r["values"] = row.values;
    r["prob"] = row.prob;
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j;
}

JointDistribution distribution_from_json(const Json& j) {
  GroundSet vars = labels_from(j, "variables");
  if (!j.contains("rows") || !j["rows"].is_array()) fail("missing array 'rows'");
  std::vector<JointDistribution::Row> rows;
  for (const auto& r : j["rows"]) {
    if (!r.contains("values") || !r.contains("prob")) {
      fail("every row needs 'values' and 'prob'");
    }
    rows.push_back({r["values"].get<std::vector<std::int32_t>>(), r["prob"].get<double>()});
  }
  try {
    return JointDistribution(std::move(vars), std::move(rows));
  } catch (const Error& e) {
    fail(e.what());
  }
}

Json access_to_json(const AccessStructure& a) {
  Json j;
  j["participants"] = a.participants().labels();
  Json minimal = Json::array();
  for (SubsetMask s : a.minimal_qualified()) {
    minimal.push_back(subset_to(a.participants(), s));
  }
  j["minimal_qualified"] = std::move(minimal);
  return j;
}

AccessStructure access_from_json(const Json& j) {
  GroundSet participants = labels_from(j, "participants");
  if (!j.contains("minimal_qualified") || !j["minimal_qualified"].is_array()) {
    fail("missing array 'minimal_qualified'");
  }
  std::vector<SubsetMask> minimal;
  for (const auto& s : j["minimal_qualified"]) {
    minimal.push_back(subset_from(participants, s));
  }
  return AccessStructure::from_minimal(std::move(participants), minimal);
}

Json violations_to_json(const GroundSet& ground, const ValidationReport& report) {
  Json out = Json::array();
  for (const auto& v : report.violations) {
    Json j;
    j["kind"] = v.kind == Violation::Kind::kMonotone ? "monotone" : "submodular";
    Json elements = Json::array();
    elements.push_back(ground.label(v.first));
    if (v.second >= 0) elements.push_back(ground.label(v.second));
    j["elements"] = std::move(elements);
    j["subset"] = subset_to(ground, v.subset);
    j["lhs"] = v.lhs;
    j["rhs"] = v.rhs;
    out.push_back(std::move(j));
  }
  return out;
}

LoadedStructure load_structure(const std::filesystem::path& path) {
  Json j = read_json(path);
  if (!j.contains("port")) return access_from_json(j);
  const Json& p = j["port"];
  if (!p.contains("secret") || !p["secret"].is_string()) fail("port needs a 'secret'");
  const std::string secret = p["secret"].get<std::string>();
  auto resolve = [&](const std::string& file) {
    std::filesystem::path f(file);
    return f.is_absolute() ? f : path.parent_path() / f;
  };
  if (p.contains("matroid_file")) {
    Polymatroid poly = Polymatroid::validate(
        load_rank_vector(resolve(p["matroid_file"].get<std::string>())));
    Matroid m(std::move(poly));
    return port(m, m.ground().index_of(secret));
  }
  if (p.contains("expanded")) {
    Polymatroid base = Polymatroid::validate(
        load_rank_vector(resolve(p["expanded"].get<std::string>())));
    ExpandedMatroid e = ExpandedMatroid::expand(base);
    if (p.value("dual", false)) e = e.dualized();
    // Secret names a block, optionally as its first atom "<block>_1".
    std::string block = secret;
    if (block.size() > 2 && block.substr(block.size() - 2) == "_1" &&
        !base.ground().find(block)) {
      block.resize(block.size() - 2);
    }
    return PortOracle(std::move(e), base.ground().index_of(block));
  }
  fail("port needs 'matroid_file' or 'expanded'");
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) fail("cannot write '" + path.string() + "'");
  out << dump(j);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

RankVector load_rank_vector(const std::filesystem::path& path) {
  return rank_from_json(read_json(path));
}

JointDistribution load_distribution(const std::filesystem::path& path) {
  return distribution_from_json(read_json(path));
}

}  // namespace pmw::io
