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

#ifndef QSTAR_POLYNOMIAL_HPP
#define QSTAR_POLYNOMIAL_HPP

#include <string>
#include <utility>
#include <vector>

#include "qstar/arith.hpp"

namespace qstar {

/// Dense univariate polynomial, coefficients in ascending order with no
/// trailing zeros. T is Integer or Rational.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> ascending) : c_(std::move(ascending)) { trim(); }
  static Polynomial from_descending(std::vector<T> descending) {
    return Polynomial(std::vector<T>(descending.rbegin(), descending.rend()));
  }
  static Polynomial monomial(const T& coeff, size_t degree) {
    std::vector<T> c(degree + 1);
    c[degree] = coeff;
    return Polynomial(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(size_t i) const { return i < c_.size() ? c_[i] : T(0); }
  const T& leading() const { return c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  template <class V>
  V evaluate(const V& x) const {
    V acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + V(c_[i]);
    return acc;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<T> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<T> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
      for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Polynomial& a, const T& s) {
    std::vector<T> c = a.c_;
    for (T& x : c) x *= s;
    return Polynomial(std::move(c));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }
  // By degree, then coefficients from the top down.
  friend bool operator<(const Polynomial& a, const Polynomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (size_t i = a.c_.size(); i-- > 0;) {
      if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    }
    return false;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<T> c_;
};

using IntPolynomial = Polynomial<Integer>;
using RationalPolynomial = Polynomial<Rational>;

RationalPolynomial to_rational(const IntPolynomial& p);
// Clears denominators and divides by the content; the leading coefficient
// of the result is positive.
IntPolynomial primitive_part(const RationalPolynomial& p);
IntPolynomial primitive_part(const IntPolynomial& p);
Integer content(const IntPolynomial& p);

template <class T>
Polynomial<T> derivative(const Polynomial<T>& p) {
  std::vector<T> c;
  for (size_t i = 1; i < p.coeffs().size(); ++i) c.push_back(p.coeffs()[i] * static_cast<long>(i));
  return Polynomial<T>(std::move(c));
}

// Euclidean division over Q; throws DomainError on a zero divisor.
std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& a,
                                                         const RationalPolynomial& b);
// Monic gcd over Q (zero if both inputs are zero).
RationalPolynomial gcd(const RationalPolynomial& a, const RationalPolynomial& b);
Rational resultant(const RationalPolynomial& a, const RationalPolynomial& b);
// disc(p) = (-1)^(n(n-1)/2) res(p, p') / lc(p).
Rational discriminant(const RationalPolynomial& p);
Integer discriminant(const IntPolynomial& p);
// Exact quotient a / b over Z; throws DomainError if b does not divide a.
IntPolynomial exact_quotient(const IntPolynomial& a, const IntPolynomial& b);
// Substitutes x -> x + shift.
RationalPolynomial taylor_shift(const RationalPolynomial& p, const Rational& shift);

// "x^2 - 3*x + 1", highest degree first.
template <class T>
std::string to_string(const Polynomial<T>& p, const std::string& var = "x") {
  if (p.is_zero()) return "0";
  std::string out;
  for (size_t i = p.coeffs().size(); i-- > 0;) {
    const T& c = p.coeffs()[i];
    if (c == 0) continue;
    T mag = c < 0 ? T(-c) : c;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    const bool unit = mag == 1;
    if (!unit || i == 0) out += qstar::to_string(mag);
    if (i > 0) {
      if (!unit) out += "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

}  // namespace qstar

#endif  // QSTAR_POLYNOMIAL_HPP
