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

#include "qstar/fixtures.hpp"

#include <algorithm>
#include <cstdlib>
#include <json.hpp>
#include <string_view>

#include "qstar/errors.hpp"

namespace qstar {

namespace embedded {
extern const std::string_view kTable1Json;
extern const std::string_view kResultsJson;
}  // namespace embedded

namespace {

using nlohmann::json;

std::vector<TableRow> load_table1() {
  const json doc = json::parse(embedded::kTable1Json);
  std::vector<TableRow> rows;
  for (const json& r : doc.at("levels")) {
    std::array<Rational, 6> a;
    for (size_t i = 0; i < 6; ++i) a[i] = parse_rational(r.at("a").at(i).get<std::string>());
    TableRow row{r.at("level").get<long>(), SexticCurve(a), {}, r.at("points_complete").get<bool>(), {}};
    for (const json& p : r.at("points")) row.points.push_back(CurvePoint::parse(p.get<std::string>()));
    for (const json& an : r.at("anomalies")) {
      Anomaly anomaly;
      anomaly.kind = an.at("kind").get<std::string>();
      anomaly.point = an.value("point", "");
      anomaly.translation = an.value("translation", 0L);
      anomaly.note = an.value("note", "");
      row.anomalies.push_back(std::move(anomaly));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ResultRow> load_results() {
  const json doc = json::parse(embedded::kResultsJson);
  std::vector<ResultRow> rows;
  for (const json& r : doc.at("rows")) {
    ResultRow row{r.at("level").get<long>(), CurvePoint::parse(r.at("point").get<std::string>()),
                  r.at("cm").get<bool>(), r.at("D").get<std::vector<long>>(), {}, r.value("anomaly", "")};
    for (const json& j : r.at("j")) {
      JValue v;
      v.text = j.at("text").get<std::string>();
      if (j.contains("rational")) v.rational = parse_rational(j.at("rational").get<std::string>());
      if (j.contains("field")) {
        for (const json& d : j.at("field")) v.field.push_back(Integer(d.get<long>()));
      }
      row.j.push_back(std::move(v));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<CurvePoint> TableRow::points_on_curve() const {
  std::vector<CurvePoint> out;
  for (const CurvePoint& p : points) {
    if (curve.contains(p.x, p.y)) out.push_back(p);
  }
  return out;
}

std::optional<long> TableRow::translation() const {
  for (const Anomaly& a : anomalies) {
    if (a.kind == "translated_model") return a.translation;
  }
  return std::nullopt;
}

const std::vector<TableRow>& table1() {
  static const std::vector<TableRow> rows = load_table1();
  return rows;
}

const TableRow& table1_row(long level) {
  const auto& rows = table1();
  auto it = std::find_if(rows.begin(), rows.end(), [&](const TableRow& r) { return r.level == level; });
  if (it == rows.end()) throw InputError("no genus-2 table row for level " + std::to_string(level));
  return *it;
}

const std::vector<ResultRow>& result_rows() {
  static const std::vector<ResultRow> rows = load_results();
  return rows;
}

std::vector<ResultRow> result_rows_for(long level) {
  std::vector<ResultRow> out;
  for (const ResultRow& r : result_rows()) {
    if (r.level == level) out.push_back(r);
  }
  return out;
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("QSTAR_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return QSTAR_DEFAULT_DATA_DIR;
}

std::filesystem::path dataset_path(long level, const std::filesystem::path& data_dir) {
  return data_dir / "datasets" / ("level_" + std::to_string(level) + ".json");
}

}  // namespace qstar
