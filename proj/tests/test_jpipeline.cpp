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

#include "qstar/algnum.hpp"
#include "qstar/errors.hpp"
#include "qstar/fixtures.hpp"
#include "qstar/jpipeline.hpp"
#include "qstar/modular.hpp"

using namespace qstar;

namespace {

const std::filesystem::path kData = QSTAR_TEST_DATA_DIR;

struct Level67 {
  ModularDataset data = load_dataset(dataset_path(67, kData));
  LevelContext ctx{derive_equation(data), data};
  std::vector<FExpression> js = express_all(ctx);
};

const Level67& level67() {
  static const Level67 l;
  return l;
}

Monomial f3k(long k) { return {Monomial::Gen::F3, k}; }
Monomial f4k(long k) { return {Monomial::Gen::F4, k}; }
Monomial f5k(long k) { return {Monomial::Gen::F5, k}; }

bool has_root(const RationalPolynomial& p, const Rational& r) { return p.evaluate(r) == 0; }

}  // namespace

TEST_CASE("divisor helpers") {
  CHECK(divisors(390) == std::vector<long>{1, 2, 3, 5, 6, 10, 13, 15, 26, 30, 39, 65, 78, 130, 195, 390});
  CHECK(divisor_sum(67) == 68);
  CHECK(divisor_sum(390) == 1008);
  CHECK(required_precision(67) == 80);
}

TEST_CASE("level 67 expressions") {
  const auto& l = level67();
  REQUIRE(l.js.size() == 2);
  const FExpression& j1 = l.js[0];
  const FExpression& j2 = l.js[1];
  CHECK(j1.pole_order() == 67);
  CHECK(j2.pole_order() == 68);
  CHECK(j1.coefficient(f4k(21)) == 1);
  CHECK(j1.coefficient(f3k(22)) == -23);
  CHECK(j1.constant == -65536);
  CHECK(j2.coefficient(f5k(21)) == 1);
  CHECK(j2.coefficient(f4k(21)) == 720);
  CHECK(j2.coefficient(f3k(22)) == 179980);
  CHECK(j2.constant == 1073741824);
}

TEST_CASE("expressions reconstruct the symmetric functions") {
  for (long level : {67L, 73L, 85L, 93L}) {
    const ModularDataset data = load_dataset(dataset_path(level, kData));
    const LevelContext ctx(derive_equation(data), data);
    const auto series = symmetric_j_series(ctx);
    const auto js = express_all(ctx);
    REQUIRE(series.size() == js.size());
    for (size_t i = 0; i < js.size(); ++i) {
      const LaurentSeries back = ctx.cache->materialize(js[i]);
      const long p = std::min(back.precision(), series[i].precision());
      CHECK(p >= kMinVerifiedTerms);
      CHECK((back.truncated(p) - series[i].truncated(p)).is_zero());
    }
  }
}

TEST_CASE("Vieta consistency of the symmetric functions") {
  const auto& l = level67();
  const long prec = 20;
  // prod over d | 67 of (z - j(dz)), coefficients as series, lowest z power first.
  std::vector<LaurentSeries> prod{LaurentSeries::constant(1, prec)};
  const LaurentSeries j = j_expansion(prec + 70);
  for (long d : l.ctx.divisors) {
    const LaurentSeries jd = rescale_exponent(j, d).truncated(prec);
    std::vector<LaurentSeries> next(prod.size() + 1, LaurentSeries::zero(prec));
    for (size_t k = 0; k < prod.size(); ++k) {
      next[k + 1] = next[k + 1] + prod[k];
      next[k] = next[k] - mul(prod[k], jd, prec);
    }
    prod = next;
  }
  const auto series = symmetric_j_series(l.ctx);
  const size_t m = series.size();
  for (size_t i = 1; i <= m; ++i) {
    const LaurentSeries expected = (i % 2 ? Rational(-1) : Rational(1)) * series[i - 1];
    CHECK((prod[m - i] - expected.truncated(prec)).truncated(prec).is_zero());
  }
}

TEST_CASE("j-values at the level 67 points") {
  const auto& l = level67();
  auto at = [&](const CurvePoint& p) { return j_polynomial_at_point(l.ctx, l.js, p); };
  const Integer c255 = ipow(Integer(255), 3);
  CHECK(at(CurvePoint::infinity_minus()) == RationalPolynomial({Rational(32768) * 32768, 65536, 1}));
  CHECK(has_root(at(CurvePoint::affine(-1, 7)), Rational(c255)));
  CHECK(has_root(at(CurvePoint::affine(-1, -7)), Rational(-ipow(Integer(5280), 3))));
  CHECK(has_root(at(CurvePoint::affine(0, 3)), Rational(-3 * ipow(Integer(160), 3))));
  CHECK(has_root(at(CurvePoint::affine(0, -3)), Rational(0)));
  CHECK(has_root(at(CurvePoint::affine(1, 1)), Rational(8000)));
  CHECK(has_root(at(CurvePoint::affine(1, -1)), Rational(-3375)));
  CHECK(has_root(at(CurvePoint::affine(2, 1)), Rational(-ipow(Integer(960), 3))));
  CHECK(has_root(at(CurvePoint::affine(2, -1)), Rational(54000)));
  CHECK_THROWS_AS(at(CurvePoint::infinity_plus()), DomainError);
  CHECK_THROWS_AS(at(CurvePoint::affine(5, 5)), InputError);
}

TEST_CASE("j-polynomials are monic with rational coefficients at fixture points") {
  for (long level : {67L, 85L, 107L, 161L}) {
    const ModularDataset data = load_dataset(dataset_path(level, kData));
    const LevelContext ctx(derive_equation(data), data);
    const auto js = express_all(ctx);
    for (const CurvePoint& p : table1_row(level).points_on_curve()) {
      const RationalPolynomial g = j_polynomial_at_point(ctx, js, p);
      CHECK(g.degree() == ctx.m);
      CHECK(g.is_monic());
    }
  }
}

TEST_CASE("point polynomials are stable under extending the dataset") {
  for (long level : {67L, 85L}) {
    const ModularDataset full = load_dataset(dataset_path(level, kData));
    const ModularDataset shortest = full.truncated(required_precision(level));
    const LevelContext a(derive_equation(full), full), b(derive_equation(shortest), shortest);
    const auto ja = express_all(a), jb = express_all(b);
    for (const CurvePoint& p : table1_row(level).points_on_curve()) {
      CHECK(j_polynomial_at_point(a, ja, p) == j_polynomial_at_point(b, jb, p));
    }
    CHECK_THROWS_AS(LevelContext(derive_equation(full), full.truncated(required_precision(level) - 1)),
                    PrecisionError);
  }
}

TEST_CASE("FExpression JSON round trip") {
  const auto& l = level67();
  for (const auto& e : l.js) {
    const FExpression back = parse_fexpression(fexpression_to_json(e));
    CHECK(back.constant == e.constant);
    CHECK(back.terms == e.terms);
  }
  CHECK_THROWS_AS(parse_fexpression("[1,2"), InputError);
}
