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

#include <atomic>
#include <chrono>
#include <exception>
#include <thread>

#include <json.hpp>

#include "qstar/cm.hpp"
#include "qstar/errors.hpp"
#include "qstar/report.hpp"

namespace qstar {

std::string field_kind_name(FactorReport::Field f) {
  switch (f) {
    case FactorReport::Field::Rational: return "rational";
    case FactorReport::Field::Quadratic: return "quadratic";
    case FactorReport::Field::Multiquadratic: return "multiquadratic";
    case FactorReport::Field::Opaque: return "opaque";
  }
  return "opaque";
}

FactorReport describe_factor(const FactorPower& f) {
  FactorReport r;
  r.factor = f.factor;
  r.multiplicity = f.multiplicity;
  const IntPolynomial& g = f.factor;
  if (g.degree() == 1) {
    r.field = FactorReport::Field::Rational;
    Rational root(-g.coeffs()[0], g.coeffs()[1]);
    root.canonicalize();
    r.root = root;
  } else if (g.degree() == 2) {
    auto [plus, minus] = quadratic_surd_roots(g);
    r.field = FactorReport::Field::Quadratic;
    r.generators = {plus.d};
    r.surds = {plus, minus};
  } else if (auto theta = identify_multiquadratic(g)) {
    r.field = FactorReport::Field::Multiquadratic;
    r.generators = theta->generators();
    r.element = std::move(theta);
  }
  // CM j-invariants are algebraic integers.
  if (g.leading() == 1) r.cm_discriminant = identify_cm(g);
  return r;
}

PointReport point_report(const LevelContext& ctx, const std::vector<FExpression>& js, const CurvePoint& p) {
  const auto start = std::chrono::steady_clock::now();
  PointReport r;
  r.level = ctx.level;
  r.point = p;
  r.j_polynomial = j_polynomial_at_point(ctx, js, p);
  for (const FactorPower& f : factor_rational(r.j_polynomial)) r.factors.push_back(describe_factor(f));
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

PipelineResult run_pipeline(const ModularDataset& data, const PipelineOptions& options) {
  const long sigma = divisor_sum(data.level);
  if (data.precision < required_precision(data.level)) {
    throw PrecisionError("level " + std::to_string(data.level) + " needs dataset precision " +
                         std::to_string(required_precision(data.level)) + ", have " +
                         std::to_string(data.precision));
  }
  if (sigma > kSigmaBudget && !options.allow_large) {
    throw PrecisionError("level " + std::to_string(data.level) + " has sigma(N) = " + std::to_string(sigma) +
                         " above the budget " + std::to_string(kSigmaBudget) + "; rerun with --allow-large");
  }
  for (const CurvePoint& p : options.points) {
    if (p.kind == CurvePoint::Kind::InfinityPlus) throw DomainError("inf+ is the cusp where f3, f4, f5 have their poles");
  }
  PipelineResult out{data.level, derive_equation(data), {}};
  const LevelContext ctx(out.curve, data);
  const std::vector<FExpression> js = express_all(ctx);

  std::vector<CurvePoint> points = options.points;
  if (points.empty()) {
    for (const CurvePoint& p : search_points(out.curve, options.height, options.jobs)) {
      if (p.kind != CurvePoint::Kind::InfinityPlus) points.push_back(p);
    }
  }
  out.reports.resize(points.size());
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (size_t i = next++; i < points.size(); i = next++) {
      try {
        out.reports[i] = point_report(ctx, js, points[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(points.size())));
  std::vector<std::thread> threads;
  for (unsigned t = 1; t < jobs; ++t) threads.emplace_back(worker);
  worker();
  for (std::thread& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

namespace {

nlohmann::ordered_json coefficients_json(const std::vector<Rational>& ascending) {
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (const Rational& c : ascending) a.push_back(to_string(c));
  return a;
}

nlohmann::ordered_json factor_json(const FactorReport& f) {
  nlohmann::ordered_json j;
  j["polynomial"] = to_string(f.factor, "z");
  std::vector<Rational> coeffs(f.factor.coeffs().begin(), f.factor.coeffs().end());
  j["coefficients"] = coefficients_json(coeffs);
  j["degree"] = std::to_string(f.factor.degree());
  j["multiplicity"] = std::to_string(f.multiplicity);
  nlohmann::ordered_json field;
  field["kind"] = field_kind_name(f.field);
  if (f.root) field["value"] = to_string(*f.root);
  if (!f.surds.empty()) {
    field["values"] = nlohmann::ordered_json::array();
    for (const QuadraticSurd& s : f.surds) field["values"].push_back(s.to_string());
  }
  if (!f.generators.empty()) {
    field["generators"] = nlohmann::ordered_json::array();
    for (const Integer& d : f.generators) field["generators"].push_back(to_string(d));
    field["name"] = field_name(f.generators);
  }
  if (f.element) field["primitive_element"] = f.element->to_string();
  j["field"] = field;
  j["cm"] = f.cm_discriminant ? nlohmann::ordered_json(std::to_string(*f.cm_discriminant)) : nlohmann::ordered_json();
  return j;
}

}  // namespace

std::string pipeline_to_json(const PipelineResult& result, bool include_timing) {
  nlohmann::ordered_json j;
  j["level"] = std::to_string(result.level);
  j["equation"] = result.curve.equation();
  j["points"] = nlohmann::ordered_json::array();
  for (const PointReport& r : result.reports) {
    nlohmann::ordered_json p;
    p["point"] = r.point.to_string();
    p["j_polynomial"] = to_string(r.j_polynomial, "z");
    p["j_coefficients"] = coefficients_json(r.j_polynomial.coeffs());
    p["factors"] = nlohmann::ordered_json::array();
    for (const FactorReport& f : r.factors) p["factors"].push_back(factor_json(f));
    if (include_timing) p["seconds"] = std::to_string(r.seconds);
    j["points"].push_back(p);
  }
  return j.dump(2);
}

}  // namespace qstar
