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

#ifndef QSTAR_REPORT_HPP
#define QSTAR_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "qstar/algnum.hpp"
#include "qstar/hyperelliptic.hpp"
#include "qstar/jpipeline.hpp"
#include "qstar/modular.hpp"

namespace qstar {

/// What is known about the field generated by a root of one factor.
struct FactorReport {
  enum class Field { Rational, Quadratic, Multiquadratic, Opaque };

  IntPolynomial factor;  // primitive, positive leading coefficient
  unsigned multiplicity = 1;
  Field field = Field::Opaque;
  std::optional<Rational> root;           // Field::Rational
  std::vector<QuadraticSurd> surds;       // Field::Quadratic, conjugate pair
  std::vector<Integer> generators;        // Quadratic and Multiquadratic
  std::optional<MultiQuadElement> element;  // Field::Multiquadratic
  std::optional<long> cm_discriminant;
};

struct PointReport {
  long level = 0;
  CurvePoint point;
  RationalPolynomial j_polynomial;  // in z
  std::vector<FactorReport> factors;
  double seconds = 0;
};

std::string field_kind_name(FactorReport::Field f);

// Field identification and CM detection for one irreducible factor.
FactorReport describe_factor(const FactorPower& f);
PointReport point_report(const LevelContext& ctx, const std::vector<FExpression>& js, const CurvePoint& p);

// Levels with sigma(N) above this need PipelineOptions::allow_large.
inline constexpr long kSigmaBudget = 600;

struct PipelineOptions {
  long height = 100;
  std::vector<CurvePoint> points;  // empty: search up to `height`
  unsigned jobs = 1;
  bool allow_large = false;
};

struct PipelineResult {
  long level = 0;
  SexticCurve curve;
  std::vector<PointReport> reports;  // search order, cusp inf+ excluded
};

// Derives the curve from the dataset, expresses J_1..J_m and reports every
// requested point. PrecisionError (naming the needed precision) when the
// dataset is too short or sigma(N) exceeds the budget without allow_large;
// DomainError when the cusp inf+ is requested.
PipelineResult run_pipeline(const ModularDataset& data, const PipelineOptions& options);

// Decimal strings throughout; timings only when include_timing is set.
std::string pipeline_to_json(const PipelineResult& result, bool include_timing);

}  // namespace qstar

#endif  // QSTAR_REPORT_HPP
