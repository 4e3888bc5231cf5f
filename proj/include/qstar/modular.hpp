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

#ifndef QSTAR_MODULAR_HPP
#define QSTAR_MODULAR_HPP

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qstar/arith.hpp"
#include "qstar/errors.hpp"
#include "qstar/hyperelliptic.hpp"
#include "qstar/series.hpp"

namespace qstar {

/// Normalized cusp-form pair h1 = q + 0 q^2 + ..., h2 = q^2 + ..., known up
/// to q^(precision-1).
struct ModularDataset {
  long level = 0;
  long precision = 0;
  std::vector<Integer> h1;  // q^1 .. q^(precision-1)
  std::vector<Integer> h2;  // q^2 .. q^(precision-1)

  LaurentSeries h1_series() const;
  LaurentSeries h2_series() const;
  ModularDataset truncated(long new_precision) const;
  // Throws InputError when the shape or normalization is wrong.
  void check() const;
};

ModularDataset parse_dataset(std::string_view json_text);
ModularDataset load_dataset(const std::filesystem::path& path);
std::string dataset_to_json(const ModularDataset& data);

// The normalized basis of span(g1, g2). Throws DomainError for dependent
// inputs or a span without the two pivots, ValidationError if the result
// is not integral.
ModularDataset echelonize(const LaurentSeries& g1, const LaurentSeries& g2, long level);

// x = h1/h2 = 1/q + ..., y = -q (dx/dq) / h2 = 1/q^3 + ...
std::pair<LaurentSeries, LaurentSeries> coordinate_series(const ModularDataset& data);

inline constexpr long kMinDerivePrecision = 16;

struct DerivedEquation {
  std::array<Rational, 6> a;  // a0 .. a5
  long verified_terms = 0;    // positive exponents of y^2 - f(x) checked to vanish
  long extra_verified = 0;    // beyond the minimum the precision floor guarantees
};

// Thrown when y^2 - f(x) vanishes but some a_i is not an integer.
class NonIntegralEquationError : public ValidationError {
 public:
  NonIntegralEquationError(const std::string& what, std::array<Rational, 6> a)
      : ValidationError(what), a_(std::move(a)) {}
  const std::array<Rational, 6>& coefficients() const { return a_; }

 private:
  std::array<Rational, 6> a_;
};

// Greedy matching of y^2 - x^6 against x^5, ..., 1. Throws PrecisionError
// below kMinDerivePrecision, ValidationError when the residual does not
// vanish, NonIntegralEquationError for non-integral coefficients.
DerivedEquation derive_equation_detailed(const ModularDataset& data);
SexticCurve derive_equation(const ModularDataset& data);

struct ValidationReport {
  long level = 0;
  long precision = 0;
  bool derived = false;
  std::string failure;  // why derivation failed, if it did
  std::array<Rational, 6> derived_a;
  std::array<Rational, 6> expected_a;
  std::array<bool, 6> match{};
  long extra_verified = 0;
  bool low_margin = false;
  // Set when the derived model equals expected(x + t) for an integer t != 0.
  std::optional<long> translation;

  bool matches() const;
};

inline constexpr long kLowMarginThreshold = 10;

ValidationReport validate_dataset(const ModularDataset& data, const SexticCurve& expected);

}  // namespace qstar

#endif  // QSTAR_MODULAR_HPP
