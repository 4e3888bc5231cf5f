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

#ifndef QSTAR_FIXTURES_HPP
#define QSTAR_FIXTURES_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qstar/arith.hpp"
#include "qstar/hyperelliptic.hpp"

namespace qstar {

/// Known irregularity in a printed table row, carried verbatim.
struct Anomaly {
  std::string kind;  // "not_on_curve", "translated_model", "sign_omitted", ...
  std::string point;
  long translation = 0;
  std::string note;
};

/// One level of the bundled equation table.
struct TableRow {
  long level;
  SexticCurve curve;
  std::vector<CurvePoint> points;  // affine points as printed
  bool points_complete;
  std::vector<Anomaly> anomalies;

  // Printed points that lie on the printed curve.
  std::vector<CurvePoint> points_on_curve() const;
  std::optional<long> translation() const;
};

struct JValue {
  std::string text;
  std::optional<Rational> rational;
  std::vector<Integer> field;  // radicands for Q(sqrt(d1), ...)
};

/// One row of the bundled point/CM result tables.
struct ResultRow {
  long level;
  CurvePoint point;
  bool cm;
  std::vector<long> discriminants;
  std::vector<JValue> j;
  std::string anomaly;  // empty when the row is printed consistently
};

const std::vector<TableRow>& table1();
// InputError for a level without a row.
const TableRow& table1_row(long level);
const std::vector<ResultRow>& result_rows();
std::vector<ResultRow> result_rows_for(long level);

// $QSTAR_DATA_DIR if set, else the source-tree data directory.
std::filesystem::path default_data_dir();
std::filesystem::path dataset_path(long level, const std::filesystem::path& data_dir);

}  // namespace qstar

#endif  // QSTAR_FIXTURES_HPP
