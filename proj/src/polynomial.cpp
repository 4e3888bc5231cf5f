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

#include "qstar/polynomial.hpp"

#include "qstar/errors.hpp"

namespace qstar {

RationalPolynomial to_rational(const IntPolynomial& p) {
  std::vector<Rational> c(p.coeffs().begin(), p.coeffs().end());
  return RationalPolynomial(std::move(c));
}

Integer content(const IntPolynomial& p) {
  Integer g = 0;
  for (const Integer& x : p.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

IntPolynomial primitive_part(const IntPolynomial& p) {
  if (p.is_zero()) return p;
  Integer g = content(p);
  if (p.leading() < 0) g = -g;
  std::vector<Integer> c = p.coeffs();
  for (Integer& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return IntPolynomial(std::move(c));
}

IntPolynomial primitive_part(const RationalPolynomial& p) {
  Integer den = 1;
  for (const Rational& x : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> c;
  c.reserve(p.coeffs().size());
  for (const Rational& x : p.coeffs()) c.push_back(x.get_num() * (den / x.get_den()));
  return primitive_part(IntPolynomial(std::move(c)));
}

std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& a,
                                                         const RationalPolynomial& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rational> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {RationalPolynomial(), a};
  std::vector<Rational> q(static_cast<size_t>(a.degree() - db + 1));
  const Rational& lead = b.leading();
  for (int i = a.degree(); i >= db; --i) {
    Rational f = r[static_cast<size_t>(i)] / lead;
    q[static_cast<size_t>(i - db)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<size_t>(i - db + j)] -= f * b.coeffs()[static_cast<size_t>(j)];
  }
  r.resize(static_cast<size_t>(db));
  return {RationalPolynomial(std::move(q)), RationalPolynomial(std::move(r))};
}

RationalPolynomial gcd(const RationalPolynomial& a, const RationalPolynomial& b) {
  RationalPolynomial x = a, y = b;
  while (!y.is_zero()) {
    RationalPolynomial r = divmod(x, y).second;
    // Keep the coefficient sizes in check between steps.
    if (!r.is_zero()) r = to_rational(primitive_part(r));
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  return x * Rational(1 / x.leading());
}

Rational resultant(const RationalPolynomial& a, const RationalPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  if (a.degree() < b.degree()) {
    Rational r = resultant(b, a);
    return (a.degree() * b.degree()) % 2 == 0 ? r : Rational(-r);
  }
  const int m = a.degree(), n = b.degree();
  if (n == 0) return rpow(b.leading(), static_cast<unsigned long>(m));
  RationalPolynomial r = divmod(a, b).second;
  if (r.is_zero()) return 0;
  const int k = r.degree();
  Rational out = rpow(b.leading(), static_cast<unsigned long>(m - k)) * resultant(b, r);
  return (m * n) % 2 == 0 ? out : Rational(-out);
}

Rational discriminant(const RationalPolynomial& p) {
  const int n = p.degree();
  if (n < 1) throw DomainError("discriminant needs degree >= 1");
  if (n == 1) return 1;
  Rational r = resultant(p, derivative(p)) / p.leading();
  return ((n * (n - 1) / 2) % 2 == 0) ? r : Rational(-r);
}

Integer discriminant(const IntPolynomial& p) {
  Rational d = discriminant(to_rational(p));
  if (d.get_den() != 1) throw DomainError("non-integral discriminant of an integer polynomial");
  return d.get_num();
}

IntPolynomial exact_quotient(const IntPolynomial& a, const IntPolynomial& b) {
  auto [q, r] = divmod(to_rational(a), to_rational(b));
  if (!r.is_zero()) throw DomainError("polynomial does not divide exactly");
  std::vector<Integer> c;
  for (const Rational& x : q.coeffs()) {
    if (x.get_den() != 1) throw DomainError("polynomial quotient is not integral");
    c.push_back(x.get_num());
  }
  return IntPolynomial(std::move(c));
}

RationalPolynomial taylor_shift(const RationalPolynomial& p, const Rational& shift) {
  // Horner in the basis (x + shift).
  RationalPolynomial linear(std::vector<Rational>{shift, 1});
  RationalPolynomial acc;
  for (size_t i = p.coeffs().size(); i-- > 0;) {
    acc = acc * linear + RationalPolynomial(std::vector<Rational>{p.coeffs()[i]});
  }
  return acc;
}

}  // namespace qstar
