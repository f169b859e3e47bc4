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

// pmw: command-line front end.
//
// Exit codes: 0 success or "true", 1 mathematical failure (not a
// polymatroid, inequality violated, "false"), 2 usage or input error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "pmw/core.hpp"
#include "pmw/entropy.hpp"
#include "pmw/inequalities.hpp"
#include "pmw/io.hpp"
#include "pmw/matroid.hpp"
#include "pmw/polymatroid.hpp"
#include "pmw/reproduce.hpp"
#include "pmw/secret_sharing.hpp"

#ifndef PMW_DATA_DIR
#define PMW_DATA_DIR "data"
#endif

namespace {

using pmw::io::Json;

constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kUsage = 2;

struct Common {
  std::string in;
  std::string out;
  std::string format = "json";
  double tolerance = -1;  // negative: library default
};

double tol_or(const Common& c, double fallback) {
  return c.tolerance < 0 ? fallback : c.tolerance;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.7g", v);
  return buf;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw pmw::Error(pmw::ErrorCode::kLoadError, "cannot write '" + c.out + "'");
  f << text;
}

std::string rank_table(const pmw::RankVector& r) {
  std::ostringstream out;
  Json j = pmw::io::rank_to_json(r);
  for (const auto& [key, value] : j["ranks"].items()) {
    out << key << "\t" << (r.is_integer() ? value.dump() : fmt(value.get<double>())) << "\n";
  }
  return out.str();
}

void emit_rank(const Common& c, const pmw::RankVector& r) {
  emit(c, c.format == "table" ? rank_table(r) : pmw::io::dump(pmw::io::rank_to_json(r)));
}

pmw::Polymatroid load_poly(const Common& c) {
  return pmw::Polymatroid::validate(pmw::io::load_rank_vector(c.in),
                                    tol_or(c, pmw::kValidateTolerance));
}

pmw::Roles roles_for(const pmw::GroundSet& g, const std::string& spec) {
  return spec.empty() ? pmw::Roles::positional(g) : pmw::Roles::parse(g, spec);
}

std::string subset_list(const pmw::GroundSet& g, pmw::SubsetMask s) {
  return pmw::subset_format(g, s);
}

void add_common(CLI::App* sub, Common& c, bool needs_in = true) {
  auto* opt = sub->add_option("--in", c.in, "input file");
  if (needs_in) opt->required();
  sub->add_option("--out", c.out, "output file (default stdout)");
  sub->add_option("--format", c.format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));
  sub->add_option("--tolerance", c.tolerance, "comparison tolerance (float mode)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polymatroid and matroid workbench"};
  app.require_subcommand(1);
  Common c;
  int code = kOk;

  auto* validate = app.add_subcommand("validate", "check the polymatroid axioms");
  add_common(validate, c);
  validate->callback([&] {
    auto rank = pmw::io::load_rank_vector(c.in);
    auto report = pmw::validate_polymatroid(rank, tol_or(c, pmw::kValidateTolerance));
    if (c.format == "table") {
      std::ostringstream out;
      out << (report.ok() ? "polymatroid" : "not a polymatroid") << "\n";
      for (const auto& v : report.violations) {
        out << (v.kind == pmw::Violation::Kind::kMonotone ? "monotone" : "submodular") << "\t"
            << rank.ground().label(v.first)
            << (v.second >= 0 ? "," + rank.ground().label(v.second) : "") << "\t{"
            << subset_list(rank.ground(), v.subset) << "}\t" << fmt(v.lhs) << " < "
            << fmt(v.rhs) << "\n";
      }
      emit(c, out.str());
    } else {
      Json j;
      j["polymatroid"] = report.ok();
      j["violations"] = pmw::io::violations_to_json(rank.ground(), report);
      emit(c, pmw::io::dump(j));
    }
    code = report.ok() ? kOk : kFalse;
  });

  auto* dual = app.add_subcommand("dual", "dual polymatroid");
  add_common(dual, c);
  dual->callback([&] { emit_rank(c, pmw::dual(load_poly(c)).rank()); });

  auto* tighten = app.add_subcommand("tighten", "remove private information");
  add_common(tighten, c);
  tighten->callback([&] { emit_rank(c, pmw::tighten(load_poly(c)).rank()); });

  auto* entropy = app.add_subcommand("entropy", "entropy vector of a distribution (bits)");
  add_common(entropy, c);
  entropy->callback([&] {
    emit_rank(c, pmw::entropy_vector(pmw::io::load_distribution(c.in)).rank());
  });

  std::string roles;
  auto* mmrv = app.add_subcommand("mmrv", "evaluate the MMRV inequality");
  add_common(mmrv, c);
  mmrv->add_option("--roles", roles, "labels for a,b,c,d,e (default: ground order)");
  mmrv->callback([&] {
    auto m = load_poly(c);
    auto r = roles_for(m.ground(), roles);
    bool exact = m.is_integer();
    double value = exact ? static_cast<double>(pmw::mmrv_exact(m, r)) : pmw::mmrv(m, r);
    bool violated = value < -tol_or(c, pmw::kDecisionTolerance);
    if (c.format == "table") {
      emit(c, (exact ? std::to_string(static_cast<std::int64_t>(value)) : fmt(value)) + "\n");
    } else {
      Json j;
      if (exact) {
        j["mmrv"] = static_cast<std::int64_t>(value);
      } else {
        j["mmrv"] = value;
      }
      j["violated"] = violated;
      emit(c, pmw::io::dump(j));
    }
    code = violated ? kFalse : kOk;
  });

  std::string element, label, labels;
  double alpha = 0, alpha1 = 0, alpha2 = 0;
  auto* split = app.add_subcommand("split", "split one element in two");
  add_common(split, c);
  split->add_option("--element", element)->required();
  split->add_option("--alpha1", alpha1)->required();
  split->add_option("--alpha2", alpha2)->required();
  split->add_option("--labels", labels, "two new labels, comma separated")->required();
  split->callback([&] {
    auto m = load_poly(c);
    auto comma = labels.find(',');
    if (comma == std::string::npos) {
      throw CLI::ValidationError("--labels", "expected two labels 'x,y'");
    }
    emit_rank(c, pmw::split_atom(m, m.ground().index_of(element), alpha1, alpha2,
                                 labels.substr(0, comma), labels.substr(comma + 1),
                                 tol_or(c, pmw::kDecisionTolerance))
                     .rank());
  });

  auto* extend = app.add_subcommand("extend", "principal extension");
  add_common(extend, c);
  extend->add_option("--element", element)->required();
  extend->add_option("--alpha", alpha)->required();
  extend->add_option("--label", label)->required();
  extend->callback([&] {
    auto m = load_poly(c);
    emit_rank(c, pmw::principal_extension(m, m.ground().index_of(element), alpha, label).rank());
  });

  bool dualize = false;
  std::string query;
  auto* expand = app.add_subcommand("expand", "Helgason expansion into a matroid");
  add_common(expand, c);
  expand->add_flag("--dual", dualize, "use the dual of the expansion");
  expand->add_option("--query", query, "atom set, e.g. 'a:12,b:3' or 'a_1,b_2'");
  expand->add_option("--roles", roles, "block labels for a,b,c,d,e");
  expand->callback([&] {
    auto e = pmw::ExpandedMatroid::expand(load_poly(c));
    if (dualize) e = e.dualized();
    Json j;
    j["atoms"] = e.element_count();
    j["dual"] = e.is_dual();
    Json blocks = Json::object();
    for (int b = 0; b < e.blocks(); ++b) blocks[e.base().ground().label(b)] = e.block_size(b);
    j["blocks"] = std::move(blocks);
    if (!query.empty()) j["rank"] = e.rank(e.parse_subset(query));
    if (!roles.empty() || e.blocks() == 5) {
      j["block_mmrv"] = pmw::expanded_mmrv(e, roles_for(e.base().ground(), roles));
    }
    if (c.format == "table") {
      std::ostringstream out;
      for (const auto& [k, v] : j.items()) out << k << "\t" << v.dump() << "\n";
      emit(c, out.str());
    } else {
      emit(c, pmw::io::dump(j));
    }
  });

  auto* circuits = app.add_subcommand("circuits", "circuits of a matroid");
  add_common(circuits, c);
  circuits->callback([&] {
    pmw::Matroid m(load_poly(c));
    auto found = pmw::circuits(m);
    if (c.format == "table") {
      std::ostringstream out;
      for (auto s : found) out << subset_list(m.ground(), s) << "\n";
      emit(c, out.str());
    } else {
      Json list = Json::array();
      for (auto s : found) {
        Json one = Json::array();
        pmw::for_each_element(s, [&](int i) { one.push_back(m.ground().label(i)); });
        list.push_back(std::move(one));
      }
      Json j;
      j["circuits"] = std::move(list);
      emit(c, pmw::io::dump(j));
    }
  });

  std::string secret;
  auto* port = app.add_subcommand("port", "access structure of a matroid port");
  add_common(port, c);
  port->add_option("--secret", secret)->required();
  port->callback([&] {
    pmw::Matroid m(load_poly(c));
    emit(c, pmw::io::dump(pmw::io::access_to_json(pmw::port(m, m.ground().index_of(secret)))));
  });

  auto* access_dual = app.add_subcommand("access-dual", "dual access structure");
  add_common(access_dual, c);
  access_dual->callback([&] {
    auto loaded = pmw::io::load_structure(c.in);
    auto* a = std::get_if<pmw::AccessStructure>(&loaded);
    if (a == nullptr) {
      throw CLI::ValidationError("--in", "dual of an expanded port cannot be listed");
    }
    emit(c, pmw::io::dump(pmw::io::access_to_json(pmw::dual_structure(*a))));
  });

  std::string access;
  auto* realizes = app.add_subcommand("realizes", "does the polymatroid realize a structure");
  add_common(realizes, c);
  realizes->add_option("--secret", secret)->required();
  realizes->add_option("--access", access, "access-structure file")->required();
  realizes->callback([&] {
    auto m = load_poly(c);
    auto loaded = pmw::io::load_structure(access);
    auto* a = std::get_if<pmw::AccessStructure>(&loaded);
    if (a == nullptr) {
      throw CLI::ValidationError("--access", "an explicit access structure is required");
    }
    auto check = pmw::realizes(m, m.ground().index_of(secret), *a,
                               tol_or(c, pmw::kDecisionTolerance));
    Json j;
    j["realizes"] = check.realizes;
    if (check.counterexample) {
      Json one = Json::array();
      pmw::for_each_element(*check.counterexample,
                            [&](int i) { one.push_back(a->participants().label(i)); });
      j["counterexample"] = std::move(one);
    }
    emit(c, c.format == "table" ? std::string(check.realizes ? "true\n" : "false\n")
                                : pmw::io::dump(j));
    code = check.realizes ? kOk : kFalse;
  });

  auto* sigma = app.add_subcommand("sigma", "max f(i)/f(s) over participants");
  add_common(sigma, c);
  sigma->add_option("--secret", secret)->required();
  sigma->callback([&] {
    auto m = load_poly(c);
    double v = pmw::sigma(m, m.ground().index_of(secret));
    Json j;
    j["sigma"] = v;
    emit(c, c.format == "table" ? fmt(v) + "\n" : pmw::io::dump(j));
  });

  std::optional<int> step;
  std::string data = PMW_DATA_DIR;
  auto* reproduce = app.add_subcommand("reproduce", "rebuild the five-variable counterexample");
  add_common(reproduce, c, false);
  reproduce->add_option("--step", step, "run a single step (1-10)");
  reproduce->add_option("--data", data, "fixture directory");
  reproduce->callback([&] {
    auto report = pmw::reproduce(data, step);
    emit(c, c.format == "table" ? pmw::report_to_table(report)
                                : pmw::io::dump(pmw::report_to_json(report)));
    code = report.ok() ? kOk : kFalse;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  } catch (const pmw::NotPolymatroid& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFalse;
  } catch (const pmw::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return code;
}
