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

#include <random>

#include "qstar/errors.hpp"
#include "qstar/series.hpp"

using namespace qstar;

namespace {

LaurentSeries random_series(std::mt19937_64& rng, long valuation, long length) {
  std::uniform_int_distribution<long> num(-50, 50), den(1, 6);
  std::vector<Rational> c(static_cast<size_t>(length));
  for (auto& x : c) x = Rational(num(rng), den(rng));
  c[0] = Rational(num(rng) | 1, den(rng));  // nonzero leading term
  for (auto& x : c) x.canonicalize();
  return LaurentSeries(valuation, c);
}

bool agree(const LaurentSeries& a, const LaurentSeries& b) {
  const long p = std::min(a.precision(), b.precision());
  return (a.truncated(p) - b.truncated(p)).is_zero();
}

}  // namespace

TEST_CASE("ring axioms to precision") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 40; ++i) {
    const auto a = random_series(rng, -3, 25), b = random_series(rng, 0, 30), c = random_series(rng, 2, 20);
    CHECK(agree((a + b) + c, a + (b + c)));
    CHECK(agree((a * b) * c, a * (b * c)));
    CHECK(agree(a * (b + c), a * b + a * c));
    CHECK(agree(a * b, b * a));
  }
}

TEST_CASE("precision bookkeeping") {
  const LaurentSeries a(-2, {1, 2, 3, 4});  // precision 2
  const LaurentSeries b(1, {5, 6, 7});      // precision 4
  CHECK(a.precision() == 2);
  CHECK((a + b).precision() == 2);
  CHECK((a * b).precision() == 2);
  CHECK_THROWS_AS(a.coefficient(2), DomainError);
  CHECK(a.coefficient(-3) == 0);
}

TEST_CASE("invert is a two-sided inverse") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    const auto a = random_series(rng, -2, 30);
    const auto inv = invert(a);
    const auto one = LaurentSeries::constant(1, 28);
    CHECK(inv.valuation() == 2);
    CHECK(agree(a * inv, one));
    CHECK(agree(inv * a, one));
  }
  CHECK_THROWS_AS(invert(LaurentSeries::zero(5)), DomainError);
}

TEST_CASE("q-derivative satisfies Leibniz") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    const auto a = random_series(rng, -1, 20), b = random_series(rng, 1, 25);
    CHECK(agree(q_derivative(a * b), q_derivative(a) * b + a * q_derivative(b)));
  }
}

TEST_CASE("power agrees with repeated multiplication") {
  std::mt19937_64 rng(9);
  const auto a = random_series(rng, -1, 12);
  LaurentSeries acc = LaurentSeries::constant(1, 100);
  for (int k = 1; k <= 7; ++k) {
    acc = acc * a;
    CHECK(agree(power(a, static_cast<unsigned long>(k)), acc));
  }
}

TEST_CASE("Kronecker product matches schoolbook") {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<long> dist(-1000000000L, 1000000000L);
  for (size_t n : {1u, 5u, 40u, 300u}) {
    std::vector<Integer> a(n), b(n + 3);
    for (auto& x : a) x = Integer(std::to_string(dist(rng))) * Integer(std::to_string(dist(rng)));
    for (auto& x : b) x = dist(rng);
    for (size_t keep : {n, 2 * n + 2}) {
      CHECK(detail::multiply_kronecker(a, b, keep) == detail::multiply_schoolbook(a, b, keep));
    }
  }
}

TEST_CASE("j expansion") {
  const long n = 60;
  const LaurentSeries j = j_expansion(n);
  CHECK(j.valuation() == -1);
  CHECK(j.precision() == n);
  CHECK(j.coefficient(-1) == 1);
  CHECK(j.coefficient(0) == 744);
  CHECK(j.coefficient(1) == 196884);
  CHECK(j.coefficient(2) == 21493760);
  CHECK(j.coefficient(3) == 864299970);
  CHECK(j.coefficient(4) == Integer("20245856256"));
  for (long k = 1; k < n; ++k) {
    CHECK(is_integral(j.coefficient(k)));
    CHECK(j.coefficient(k) > 0);
  }

  // Independent oracle: E4^3 / (q prod (1-q^k)^24), with the product
  // expanded factor by factor.
  std::vector<Integer> e4(n + 1, 0), delta(n + 1, 0);
  e4[0] = 1;
  for (long m = 1; m <= n; ++m) {
    Integer s = 0;
    for (long d = 1; d <= m; ++d)
      if (m % d == 0) s += Integer(d) * d * d;
    e4[m] = 240 * s;
  }
  delta[0] = 1;
  for (long k = 1; k <= n; ++k) {
    for (int r = 0; r < 24; ++r) {
      for (long m = n; m >= k; --m) delta[m] -= delta[m - k];
    }
  }
  const auto E4 = LaurentSeries::from_integers(0, e4);
  const auto D = LaurentSeries::from_integers(1, delta);
  CHECK(agree(j, E4 * E4 * E4 * invert(D)));
}

TEST_CASE("rescaled j has the expected leading term") {
  const LaurentSeries j = j_expansion(30);
  for (long d : {1, 2, 3, 67, 390}) {
    const LaurentSeries jd = rescale_exponent(j, d);
    CHECK(jd.valuation() == -d);
    CHECK(jd.leading_coefficient() == 1);
    CHECK(jd.coefficient(0) == 744);
  }
  CHECK_THROWS_AS(rescale_exponent(j, 0), DomainError);
}
