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

#include "qstar/modular.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace qstar {

namespace {

using nlohmann::json;

Integer json_integer(const json& v) {
  if (v.is_string()) return parse_integer(v.get<std::string>());
  if (v.is_number_integer()) return Integer(v.get<long>());
  throw InputError("expected an integer (preferably as a decimal string)");
}

std::vector<Integer> json_integers(const json& arr, const char* field) {
  if (!arr.is_array()) throw InputError(std::string("dataset field \"") + field + "\" must be an array");
  std::vector<Integer> out;
  out.reserve(arr.size());
  for (const json& v : arr) out.push_back(json_integer(v));
  return out;
}

}  // namespace

LaurentSeries ModularDataset::h1_series() const { return LaurentSeries::from_integers(1, h1); }

LaurentSeries ModularDataset::h2_series() const { return LaurentSeries::from_integers(2, h2); }

ModularDataset ModularDataset::truncated(long new_precision) const {
  if (new_precision >= precision) return *this;
  if (new_precision < 3) throw PrecisionError("dataset precision must be at least 3");
  ModularDataset out = *this;
  out.precision = new_precision;
  out.h1.resize(static_cast<size_t>(new_precision - 1));
  out.h2.resize(static_cast<size_t>(new_precision - 2));
  return out;
}

void ModularDataset::check() const {
  if (level < 1) throw InputError("dataset level must be positive");
  if (!is_squarefree(Integer(level))) throw InputError("dataset level " + std::to_string(level) + " is not square-free");
  if (precision < 3) throw InputError("dataset precision must be at least 3");
  if (h1.size() != static_cast<size_t>(precision - 1)) {
    throw InputError("h1 must list coefficients of q^1 .. q^" + std::to_string(precision - 1));
  }
  if (h2.size() != static_cast<size_t>(precision - 2)) {
    throw InputError("h2 must list coefficients of q^2 .. q^" + std::to_string(precision - 1));
  }
  if (h1[0] != 1 || h1[1] != 0) throw InputError("h1 must start q + 0*q^2");
  if (h2[0] != 1) throw InputError("h2 must start q^2");
}

ModularDataset parse_dataset(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed dataset JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("dataset must be a JSON object");
  for (const char* key : {"format", "level", "precision", "h1", "h2"}) {
    if (!doc.contains(key)) throw InputError(std::string("dataset lacks \"") + key + "\"");
  }
  if (json_integer(doc["format"]) != 1) throw InputError("unsupported dataset format");
  ModularDataset data;
  const Integer level = json_integer(doc["level"]);
  const Integer precision = json_integer(doc["precision"]);
  if (!level.fits_slong_p() || !precision.fits_slong_p()) throw InputError("level or precision out of range");
  data.level = level.get_si();
  data.precision = precision.get_si();
  data.h1 = json_integers(doc["h1"], "h1");
  data.h2 = json_integers(doc["h2"], "h2");
  data.check();
  return data;
}

ModularDataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read dataset " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_dataset(buf.str());
}

std::string dataset_to_json(const ModularDataset& data) {
  json doc;
  doc["format"] = 1;
  doc["level"] = data.level;
  doc["precision"] = data.precision;
  json h1 = json::array(), h2 = json::array();
  for (const Integer& c : data.h1) h1.push_back(to_string(c));
  for (const Integer& c : data.h2) h2.push_back(to_string(c));
  doc["h1"] = std::move(h1);
  doc["h2"] = std::move(h2);
  return doc.dump();
}

ModularDataset echelonize(const LaurentSeries& g1, const LaurentSeries& g2, long level) {
  if (g1.valuation() < 1 || g2.valuation() < 1) {
    throw DomainError("echelonize needs series with positive valuation");
  }
  const long precision = std::min(g1.precision(), g2.precision());
  if (precision < 3) throw PrecisionError("echelonize needs coefficients up to q^2");
  const auto width = static_cast<size_t>(precision - 1);
  std::array<std::vector<Rational>, 2> rows;
  for (long k = 1; k < precision; ++k) {
    rows[0].push_back(g1.coefficient(k));
    rows[1].push_back(g2.coefficient(k));
  }

  // Gauss-Jordan on the 2 x width matrix.
  size_t pivot_row = 0;
  std::vector<size_t> pivots;
  for (size_t col = 0; col < width && pivot_row < 2; ++col) {
    size_t r = pivot_row;
    while (r < 2 && rows[r][col] == 0) ++r;
    if (r == 2) continue;
    std::swap(rows[pivot_row], rows[r]);
    const Rational inv = 1 / rows[pivot_row][col];
    for (Rational& c : rows[pivot_row]) c *= inv;
    const size_t other = 1 - pivot_row;
    const Rational f = rows[other][col];
    if (f != 0) {
      for (size_t j = 0; j < width; ++j) rows[other][j] -= f * rows[pivot_row][j];
    }
    pivots.push_back(col);
    ++pivot_row;
  }
  if (pivots.size() < 2) throw DomainError("echelonize: the two series are linearly dependent");
  if (pivots[0] != 0 || pivots[1] != 1) {
    throw DomainError("echelonize: the span has no basis of the form q + O(q^3), q^2 + O(q^3)");
  }

  ModularDataset out;
  out.level = level;
  out.precision = precision;
  for (size_t j = 0; j < width; ++j) {
    for (size_t r = 0; r < 2; ++r) {
      if (rows[r][j].get_den() != 1) {
        throw ValidationError("echelonize: normalized basis has a non-integral coefficient at q^" +
                              std::to_string(j + 1));
      }
    }
    out.h1.push_back(rows[0][j].get_num());
    if (j >= 1) out.h2.push_back(rows[1][j].get_num());
  }
  return out;
}

std::pair<LaurentSeries, LaurentSeries> coordinate_series(const ModularDataset& data) {
  if (data.precision < 10) {
    throw PrecisionError("coordinate series need dataset precision >= 10, got " + std::to_string(data.precision));
  }
  const LaurentSeries inv_h2 = invert(data.h2_series());
  LaurentSeries x = mul(data.h1_series(), inv_h2);
  LaurentSeries y = -mul(q_derivative(x), inv_h2);
  return {std::move(x), std::move(y)};
}

DerivedEquation derive_equation_detailed(const ModularDataset& data) {
  if (data.precision < kMinDerivePrecision) {
    throw PrecisionError("derive_equation needs dataset precision >= " + std::to_string(kMinDerivePrecision) +
                         ", got " + std::to_string(data.precision));
  }
  auto [x, y] = coordinate_series(data);

  std::array<LaurentSeries, 7> xpow;
  xpow[0] = LaurentSeries::constant(1, x.precision() - x.valuation());
  for (size_t i = 1; i <= 6; ++i) xpow[i] = mul(xpow[i - 1], x);

  LaurentSeries residual = mul(y, y) - xpow[6];
  DerivedEquation out;
  if (!residual.is_zero() && residual.valuation() < -5) {
    throw ValidationError("inconsistent dataset: y^2 - x^6 has a pole of order " +
                          std::to_string(-residual.valuation()));
  }
  for (int i = 5; i >= 0; --i) {
    const Rational c = residual.coefficient(-i);
    out.a[static_cast<size_t>(i)] = c;
    if (c != 0) residual = residual - xpow[static_cast<size_t>(i)] * c;
  }
  if (!residual.is_zero()) {
    throw ValidationError("inconsistent dataset: y^2 - f(x) has nonzero coefficient " +
                          to_string(residual.leading_coefficient()) + " at q^" +
                          std::to_string(residual.valuation()));
  }
  out.verified_terms = residual.precision() - 1;
  out.extra_verified = std::max(0L, out.verified_terms - (kMinDerivePrecision - 9));
  for (const Rational& a : out.a) {
    if (a.get_den() != 1) {
      std::string text;
      for (int i = 0; i < 6; ++i) text += (i ? ", " : "") + to_string(out.a[static_cast<size_t>(i)]);
      throw NonIntegralEquationError("derived sextic has non-integral coefficients (a0..a5 = " + text + ")", out.a);
    }
  }
  return out;
}

SexticCurve derive_equation(const ModularDataset& data) {
  return SexticCurve(derive_equation_detailed(data).a);
}

bool ValidationReport::matches() const {
  if (!derived) return false;
  for (bool m : match) {
    if (!m) return false;
  }
  return true;
}

ValidationReport validate_dataset(const ModularDataset& data, const SexticCurve& expected) {
  ValidationReport report;
  report.level = data.level;
  report.precision = data.precision;
  report.expected_a = expected.coefficients();
  try {
    DerivedEquation d = derive_equation_detailed(data);
    report.derived = true;
    report.derived_a = d.a;
    report.extra_verified = d.extra_verified;
    report.low_margin = d.extra_verified < kLowMarginThreshold;
  } catch (const Error& e) {
    report.failure = e.what();
    return report;
  }
  for (size_t i = 0; i < 6; ++i) report.match[i] = report.derived_a[i] == report.expected_a[i];
  if (!report.matches()) {
    // expected(x + t) has x^5 coefficient a5 + 6t.
    Rational t = (report.derived_a[5] - report.expected_a[5]) / 6;
    if (t != 0 && t.get_den() == 1 && t.get_num().fits_slong_p()) {
      RationalPolynomial shifted = taylor_shift(expected.polynomial(), t);
      std::vector<Rational> derived(report.derived_a.begin(), report.derived_a.end());
      derived.emplace_back(1);
      if (shifted == RationalPolynomial(derived)) report.translation = t.get_num().get_si();
    }
  }
  return report;
}

}  // namespace qstar
