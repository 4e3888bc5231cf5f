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
#include <random>

#include "qstar/algnum.hpp"
#include "qstar/bigfloat.hpp"
#include "qstar/errors.hpp"

using namespace qstar;

namespace {

IntPolynomial ip(std::vector<long> descending) {
  std::vector<Integer> c(descending.begin(), descending.end());
  return IntPolynomial::from_descending(std::move(c));
}

// Eisenstein at p, hence irreducible; primitive with positive leading
// coefficient.
IntPolynomial random_eisenstein(std::mt19937_64& rng, int degree) {
  static const long primes[] = {2, 3, 5};
  const long p = primes[rng() % 3];
  std::uniform_int_distribution<long> small(-4, 4), lead(1, 3);
  std::vector<Integer> c(static_cast<size_t>(degree) + 1);
  long l;
  do l = lead(rng); while (l % p == 0);
  c[static_cast<size_t>(degree)] = l;
  for (int i = 1; i < degree; ++i) c[static_cast<size_t>(i)] = p * small(rng);
  long c0;
  do c0 = p * small(rng); while (c0 == 0 || c0 % (p * p) == 0);
  c[0] = c0;
  return primitive_part(IntPolynomial(std::move(c)));
}

IntPolynomial random_linear(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> a(1, 9), b(-30, 30);
  return primitive_part(ip({a(rng), b(rng)}));
}

MultiQuadElement horner(const IntPolynomial& g, const MultiQuadElement& theta) {
  MultiQuadElement acc = MultiQuadElement::rational(theta.generators(), 0);
  for (size_t i = g.coeffs().size(); i-- > 0;) {
    acc = acc * theta + MultiQuadElement::rational(theta.generators(), Rational(g.coeffs()[i]));
  }
  return acc;
}

bool has_rational_root(const IntPolynomial& f) {
  auto divisors = [](Integer n) {
    n = abs(n);
    std::vector<Integer> d;
    for (Integer k = 1; k * k <= n; ++k) {
      if (n % k == 0) {
        d.push_back(k);
        d.push_back(n / k);
      }
    }
    return d;
  };
  if (f.coeff(0) == 0) return true;
  for (const Integer& p : divisors(f.coeff(0))) {
    for (const Integer& q : divisors(f.leading())) {
      for (int s : {1, -1}) {
        if (f.evaluate(Rational(s * p, q)) == 0) return true;
      }
    }
  }
  return false;
}

}  // namespace

TEST_CASE("factorization round trip on random products of irreducibles") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<IntPolynomial> parts;
    int total = 0;
    const int target = 2 + static_cast<int>(rng() % 11);
    while (total < target) {
      const int d = std::min(target - total, 1 + static_cast<int>(rng() % 4));
      parts.push_back(d == 1 ? random_linear(rng) : random_eisenstein(rng, d));
      total += d;
    }
    IntPolynomial prod = ip({1});
    for (const auto& p : parts) prod = prod * p;
    const Integer scale = 1 + static_cast<long>(rng() % 5);
    const auto factors = factor_rational(prod * scale);

    IntPolynomial back = ip({1});
    std::vector<IntPolynomial> expanded;
    for (const auto& f : factors) {
      CHECK(f.factor.leading() > 0);
      CHECK(content(f.factor) == 1);
      for (unsigned k = 0; k < f.multiplicity; ++k) {
        back = back * f.factor;
        expanded.push_back(f.factor);
      }
    }
    CHECK(back == prod);
    std::sort(parts.begin(), parts.end());
    std::sort(expanded.begin(), expanded.end());
    CHECK(expanded == parts);
  }
}

TEST_CASE("factors of generic products have no rational roots") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<long> c(-20, 20);
  for (int trial = 0; trial < 60; ++trial) {
    IntPolynomial prod = ip({1});
    for (int k = 0; k < 3; ++k) prod = prod * ip({1, c(rng), c(rng), c(rng) | 1});
    for (const auto& f : factor_rational(prod)) {
      if (f.factor.degree() >= 2) CHECK_FALSE(has_rational_root(f.factor));
    }
  }
}

TEST_CASE("known factorizations") {
  auto f = factor_rational(ip({1, 65536, 1073741824}));
  REQUIRE(f.size() == 1);
  CHECK(f[0].factor == ip({1, 32768}));
  CHECK(f[0].multiplicity == 2);
  CHECK(factor_rational(ip({1, 0, 0, 0, -1})).size() == 3);
  CHECK(factor_rational(ip({1, 0, -10, 0, 1})).size() == 1);
  // Swinnerton-Dyer polynomial for sqrt(2), sqrt(3), sqrt(5): irreducible
  // but splits modulo every prime.
  const IntPolynomial sd = ip({1, 0, -40, 0, 352, 0, -960, 0, 576});
  f = factor_rational(sd);
  REQUIRE(f.size() == 1);
  CHECK(f[0].factor == sd);
  CHECK(factor_rational(RationalPolynomial({Rational(-1, 4), 0, Rational(1, 2)}))[0].factor == ip({2, 0, -1}));
}

TEST_CASE("squarefree decomposition") {
  const IntPolynomial a = ip({1, 1}), b = ip({1, 0, 2}), c = ip({3, -1});
  const IntPolynomial p = a * b * b * c * c * c;
  IntPolynomial back = ip({1});
  for (const auto& f : squarefree_decomposition(p)) {
    for (unsigned k = 0; k < f.multiplicity; ++k) back = back * f.factor;
  }
  CHECK(back == p);
}

TEST_CASE("quadratic surds") {
  const IntPolynomial q = ip({1, 117964800, -134217728000});
  const auto [r1, r2] = quadratic_surd_roots(q);
  CHECK(r1 == QuadraticSurd{-58982400, 26378240, 5});
  CHECK(r2 == QuadraticSurd{-58982400, -26378240, 5});
  CHECK(r1.to_string() == "-58982400 + 26378240*sqrt(5)");
  CHECK(quadratic_surd_roots(ip({1, 0, 1})).first.to_string() == "sqrt(-1)");
  CHECK_THROWS_AS(quadratic_surd_roots(ip({1, 0, -4})), DomainError);

  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> c(-500, 500);
  for (int t = 0; t < 200; ++t) {
    const IntPolynomial g = ip({1 + (c(rng) & 7), c(rng), c(rng)});
    const Integer disc = g.coeff(1) * g.coeff(1) - 4 * g.coeff(2) * g.coeff(0);
    if (is_square(disc)) continue;
    for (const QuadraticSurd& s : {quadratic_surd_roots(g).first, quadratic_surd_roots(g).second}) {
      const MultiQuadElement theta({s.d}, {s.a, s.b});
      CHECK(horner(g, theta) == MultiQuadElement::rational({s.d}, 0));
    }
  }
}

TEST_CASE("multiquadratic arithmetic") {
  const std::vector<Integer> gens{2, 3};
  const MultiQuadElement r2(gens, {0, 1, 0, 0}), r3(gens, {0, 0, 1, 0});
  CHECK(r2 * r2 == MultiQuadElement::rational(gens, 2));
  CHECK((r2 * r3).coords() == std::vector<Rational>{0, 0, 0, 1});
  CHECK((r2 * r3) * (r2 * r3) == MultiQuadElement::rational(gens, 6));
  const MultiQuadElement x(gens, {Rational(1, 3), 1, 0, Rational(-7, 2)});
  CHECK(x.to_string() == "1/3 + sqrt(2) - 7/2*sqrt(2)*sqrt(3)");
  for (unsigned m = 0; m < 4; ++m) {
    CHECK((x * r3).conjugate(m) == x.conjugate(m) * r3.conjugate(m));
  }
  CHECK_THROWS_AS(MultiQuadElement({4}, {0, 1}), DomainError);
  CHECK(field_name({17, -95}) == "Q(sqrt(17),sqrt(-95))");
  CHECK(same_multiquadratic_field({3, 5}, {15, 3}));
  CHECK_FALSE(same_multiquadratic_field({3, 5}, {3, 7}));
}

TEST_CASE("biquadratic subfields by resolvent and by numerics agree") {
  auto v = v4_quartic_subfields(ip({1, 0, -10, 0, 1}));
  REQUIRE(v);
  CHECK(*v == std::make_pair(Integer(2), Integer(3)));
  CHECK_FALSE(v4_quartic_subfields(ip({1, 0, 0, 1, 1})));
  CHECK_FALSE(v4_quartic_subfields(ip({1, 0, 0, 0, -2})));  // Galois group D4

  std::mt19937_64 rng(31);
  const long ds[] = {-1, 2, 3, -5, 6, 7, -11, 13, 17, -95, 41};
  std::uniform_int_distribution<long> c(-6, 6);
  for (int t = 0; t < 60; ++t) {
    const Integer d1 = ds[rng() % 11], d2 = ds[rng() % 11];
    if (d1 == d2 || !is_squarefree(d1 * d2) || squarefree_kernel(Integer(d1 * d2)) == 1) continue;
    const MultiQuadElement theta({d1, d2}, {c(rng), c(rng) | 1, c(rng) | 1, c(rng)});
    const IntPolynomial g = primitive_part(conjugate_product(theta));
    if (factor_rational(g).size() != 1) continue;
    const auto resolvent = v4_quartic_subfields(g);
    const auto numeric = identify_multiquadratic(g);
    REQUIRE(resolvent);
    REQUIRE(numeric);
    CHECK(same_multiquadratic_field({resolvent->first, resolvent->second}, {d1, d2}));
    CHECK(same_multiquadratic_field(numeric->generators(), {d1, d2}));
    const Integer third = squarefree_kernel(Integer(resolvent->first * resolvent->second));
    CHECK(same_multiquadratic_field({resolvent->first, resolvent->second, third}, {d1, d2}));
  }
}

TEST_CASE("identify_multiquadratic") {
  SUBCASE("sqrt(17) + sqrt(-95)") {
    const MultiQuadElement t({17, -95}, {0, 1, 1, 0});
    const IntPolynomial g = primitive_part(conjugate_product(t));
    const auto e = identify_multiquadratic(g);
    REQUIRE(e);
    CHECK(same_multiquadratic_field(e->generators(), {17, -95}));
    CHECK(horner(g, *e) == MultiQuadElement::rational(e->generators(), 0));
  }
  SUBCASE("non-multiquadratic fields") {
    CHECK_FALSE(identify_multiquadratic(ip({1, 0, 0, 1, 1})));
    CHECK_FALSE(identify_multiquadratic(ip({1, 0, 0, 0, -2})));
    CHECK_FALSE(identify_multiquadratic(ip({1, 0, 0, -2})));
  }
  SUBCASE("rational and quadratic inputs") {
    const auto e = identify_multiquadratic(ip({2, -3}));
    REQUIRE(e);
    CHECK(e->is_rational());
    CHECK(e->coords()[0] == Rational(3, 2));
    const auto q = identify_multiquadratic(ip({1, 0, -12}));
    REQUIRE(q);
    CHECK(q->generators() == std::vector<Integer>{3});
  }
  SUBCASE("constructed elements of degree 8 and 16") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> c(-9, 9);
    for (const std::vector<Integer>& gens :
         {std::vector<Integer>{-1, 2, 5}, std::vector<Integer>{3, -7, 11}, std::vector<Integer>{3, 5, 7, 11}}) {
      std::vector<Rational> coords(size_t{1} << gens.size());
      for (auto& x : coords) x = Rational(c(rng), 1 + (rng() % 3));
      for (size_t i = 0; i < gens.size(); ++i) coords[size_t{1} << i] = 1 + (rng() % 5);
      const MultiQuadElement theta(gens, coords);
      const IntPolynomial g = primitive_part(conjugate_product(theta));
      REQUIRE(factor_rational(g).size() == 1);
      const auto e = identify_multiquadratic(g);
      REQUIRE(e);
      CHECK(same_multiquadratic_field(e->generators(), gens));
      CHECK(primitive_part(conjugate_product(*e)) == g);
      CHECK(horner(g, *e) == MultiQuadElement::rational(e->generators(), 0));
    }
  }
}

TEST_CASE("numeric roots") {
  const IntPolynomial g = ip({1, 0, -10, 0, 1});
  const auto roots = polynomial_roots(g, 200);
  REQUIRE(roots.size() == 4);
  for (const auto& r : roots) {
    CHECK(abs(r.im).to_double() < 1e-50);
  }
  CHECK(std::abs(roots[3].re.to_double() - (std::sqrt(2.0) + std::sqrt(3.0))) < 1e-12);
  CHECK_THROWS_AS(polynomial_roots(ip({1, 1, 0}), 64), DomainError);
}
