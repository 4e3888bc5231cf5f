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

#ifndef QSTAR_JPIPELINE_HPP
#define QSTAR_JPIPELINE_HPP

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "qstar/hyperelliptic.hpp"
#include "qstar/modular.hpp"
#include "qstar/polynomial.hpp"
#include "qstar/series.hpp"

namespace qstar {

/// constant + sum over monomials of coefficient * monomial.
struct FExpression {
  Rational constant;
  std::map<Monomial, Rational> terms;  // keyed by pole order

  Rational coefficient(const Monomial& m) const;
  long pole_order() const;
};

// {"constant": "...", "terms": [{"k": 21, "gen": "f4", "coeff": "1"}, ...]},
// terms listed from the highest pole order down.
std::string fexpression_to_json(const FExpression& e);
FExpression parse_fexpression(std::string_view json_text);

struct FSeries {
  LaurentSeries f3;
  LaurentSeries f4;
  LaurentSeries f5;
};

// Substitutes the x, y series into f3, f4, f5 and checks f_i = q^-i + ...
// Throws ValidationError when the curve does not belong to the dataset.
FSeries f_series(const SexticCurve& curve, const ModularDataset& data);

// Pole orders 3k, 3k+4, 3k+5 reached by products of f3, f4, f5, each known
// at least to q^(precision-1) for pole orders up to max_order. Safe to share
// across threads.
class MonomialCache {
 public:
  MonomialCache(FSeries f, long precision, long max_order);
  const LaurentSeries& get(const Monomial& m);
  LaurentSeries materialize(const FExpression& e);
  long precision() const { return precision_; }
  const FSeries& generators() const { return f_; }

 private:
  const LaurentSeries& f3_power(long k);  // caller holds the lock
  long power_precision(long k) const;

  FSeries f_;
  long precision_;
  long max_order_;
  std::mutex mutex_;
  std::map<long, LaurentSeries> f3_powers_;
  std::map<long, LaurentSeries> by_order_;
};

std::vector<long> divisors(long n);
long divisor_sum(long n);
// Dataset precision the J-expansion needs: sigma(N) + 12.
long required_precision(long level);

struct LevelContext {
  long level = 0;
  std::vector<long> divisors;
  long m = 0;
  long sigma = 0;
  SexticCurve curve;
  ModularDataset dataset;
  FGenerators gens;
  // Precision to which every monomial up to pole order sigma is known.
  long working_precision = 0;
  std::shared_ptr<MonomialCache> cache;

  // Throws PrecisionError when the dataset is shorter than
  // required_precision(level).
  LevelContext(const SexticCurve& curve, const ModularDataset& data);
};

// J_1 .. J_m, truncated at the working precision.
std::vector<LaurentSeries> symmetric_j_series(const LevelContext& ctx);
LaurentSeries symmetric_j_series(const LevelContext& ctx, int i);

inline constexpr long kMinVerifiedTerms = 8;

// Greedy pole-order reduction. DomainError on a residual pole of order 1
// or 2, ValidationError on a nonzero tail, PrecisionError when fewer than
// kMinVerifiedTerms positive coefficients remain to check.
FExpression express_in_basis(const LaurentSeries& f, MonomialCache& cache);
std::vector<FExpression> express_all(const LevelContext& ctx);

Rational evaluate_expression(const FExpression& e, const std::array<Rational, 3>& fvals);

// z^m + sum_i (-1)^i J_i(p) z^(m-i). DomainError at inf+, InputError for
// points off the curve.
RationalPolynomial j_polynomial_at_point(const LevelContext& ctx, const std::vector<FExpression>& js,
                                         const CurvePoint& p);

}  // namespace qstar

#endif  // QSTAR_JPIPELINE_HPP
