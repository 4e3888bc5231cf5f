// Copyright 2026 The qstar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <thread>

#include "qstar/cm.hpp"
#include "qstar/fixtures.hpp"
#include "qstar/report.hpp"

using namespace qstar;

namespace {

const std::filesystem::path kData = QSTAR_TEST_DATA_DIR;

const std::map<long, PipelineResult>& all_levels() {
  static const std::map<long, PipelineResult> results = [] {
    std::map<long, PipelineResult> out;
    PipelineOptions opt;
    opt.jobs = std::max(1u, std::thread::hardware_concurrency());
    opt.allow_large = true;
    for (const TableRow& row : table1()) out.emplace(row.level, run_pipeline(load_dataset(dataset_path(row.level, kData)), opt));
    return out;
  }();
  return results;
}

const PointReport* find_point(const PipelineResult& r, const CurvePoint& p) {
  for (const PointReport& pr : r.reports) {
    if (pr.point == p) return &pr;
  }
  return nullptr;
}

// Differences between a computed point and its printed row; empty when
// they agree.
std::string compare(const ResultRow& row, const PointReport& pr) {
  std::string out;
  bool all_cm = true;
  std::set<long> ds;
  for (const FactorReport& f : pr.factors) {
    all_cm = all_cm && f.cm_discriminant.has_value();
    if (f.cm_discriminant) ds.insert(*f.cm_discriminant);
  }
  if (all_cm != row.cm) out += "cm flag; ";
  if (row.cm && ds != std::set<long>(row.discriminants.begin(), row.discriminants.end())) out += "discriminants; ";
  for (const JValue& j : row.j) {
    if (j.rational) {
      const bool found = std::any_of(pr.factors.begin(), pr.factors.end(),
                                     [&](const FactorReport& f) { return f.root == j.rational; });
      if (!found) out += "j " + j.text + "; ";
    }
    if (!j.field.empty()) {
      const bool found = std::any_of(pr.factors.begin(), pr.factors.end(), [&](const FactorReport& f) {
        return !f.generators.empty() && same_multiquadratic_field(f.generators, j.field);
      });
      if (!found) out += "field " + j.text + "; ";
    }
  }
  return out;
}

}  // namespace

TEST_CASE("height-100 search reproduces the tabulated point sets") {
  for (const TableRow& row : table1()) {
    std::set<std::string> expected{"inf+", "inf-"}, got;
    for (const CurvePoint& p : row.points_on_curve()) expected.insert(p.to_string());
    const SexticCurve& c = row.translation() ? derive_equation(load_dataset(dataset_path(row.level, kData))) : row.curve;
    for (const CurvePoint& p : search_points(c, 100, 4)) got.insert(p.to_string());
    if (row.translation()) {
      std::set<std::string> shifted{"inf+", "inf-"};
      for (const CurvePoint& p : row.points_on_curve()) {
        shifted.insert(CurvePoint::affine(p.x - *row.translation(), p.y).to_string());
      }
      expected = shifted;
    }
    CHECK_MESSAGE(got == expected, "level " << row.level);
  }
}

TEST_CASE("every level reproduces its result table up to flagged misprints") {
  const auto& results = all_levels();
  std::set<std::pair<long, std::string>> covered;
  for (const ResultRow& row : result_rows()) {
    const PipelineResult& r = results.at(row.level);
    const PointReport* pr = find_point(r, row.point);
    if (!pr) {
      CHECK_MESSAGE(!row.anomaly.empty(), "level " << row.level << " point " << row.point.to_string());
      continue;
    }
    covered.insert({row.level, row.point.to_string()});
    const std::string diff = compare(row, *pr);
    if (row.anomaly.empty()) {
      CHECK_MESSAGE(diff.empty(), "level " << row.level << " point " << row.point.to_string() << ": " << diff);
    } else {
      MESSAGE("flagged row, level " << row.level << " point " << row.point.to_string() << ": "
                                    << (diff.empty() ? "agrees" : diff) << " | " << row.anomaly);
    }
  }
  // Computed points without a printed row.
  std::set<std::pair<long, std::string>> extra;
  for (const auto& [level, r] : results) {
    for (const PointReport& pr : r.reports) {
      if (!covered.count({level, pr.point.to_string()})) extra.insert({level, pr.point.to_string()});
    }
  }
  const std::set<std::pair<long, std::string>> known_extra = {{186, "-1,3"}, {357, "2,14"}, {357, "2,-14"}};
  CHECK(extra == known_extra);
}

TEST_CASE("CM discriminants found by the pipeline have one class per genus") {
  for (const auto& [level, r] : all_levels()) {
    for (const PointReport& pr : r.reports) {
      for (const FactorReport& f : pr.factors) {
        if (!f.cm_discriminant) continue;
        CHECK_MESSAGE(one_class_per_genus(*f.cm_discriminant), "level " << level << " D " << *f.cm_discriminant);
        CHECK(class_number(*f.cm_discriminant) == f.factor.degree());
      }
    }
  }
}
