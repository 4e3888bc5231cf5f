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

#ifndef QSTAR_HYPERELLIPTIC_HPP
#define QSTAR_HYPERELLIPTIC_HPP

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "qstar/arith.hpp"
#include "qstar/polynomial.hpp"

namespace qstar {

/// y^2 = x^6 + a5 x^5 + ... + a0 with a squarefree right-hand side.
class SexticCurve {
 public:
  // a[i] is the coefficient of x^i. Throws DomainError if the sextic has a
  // repeated root.
  explicit SexticCurve(const std::array<Rational, 6>& a);

  const std::array<Rational, 6>& coefficients() const { return a_; }
  const Rational& a(int i) const { return a_[static_cast<size_t>(i)]; }
  RationalPolynomial polynomial() const;
  Rational evaluate(const Rational& x) const;
  bool contains(const Rational& x, const Rational& y) const;
  std::string equation() const;

  friend bool operator==(const SexticCurve& l, const SexticCurve& r) { return l.a_ == r.a_; }

 private:
  std::array<Rational, 6> a_;
};

/// Rational point of the smooth model: affine, or one of the two points
/// over x = infinity. InfinityPlus has (y/x^3)(P) = +1.
struct CurvePoint {
  enum class Kind { Affine, InfinityPlus, InfinityMinus };
  Kind kind = Kind::Affine;
  Rational x;
  Rational y;

  static CurvePoint affine(const Rational& x, const Rational& y) { return {Kind::Affine, x, y}; }
  static CurvePoint infinity_plus() { return {Kind::InfinityPlus, 0, 0}; }
  static CurvePoint infinity_minus() { return {Kind::InfinityMinus, 0, 0}; }
  bool is_affine() const { return kind == Kind::Affine; }

  // "x,y" with exact fractions, or "inf+" / "inf-".
  std::string to_string() const;
  // Accepts the to_string forms, optionally wrapped in parentheses.
  static CurvePoint parse(std::string_view text);

  friend bool operator==(const CurvePoint& a, const CurvePoint& b) {
    return a.kind == b.kind && a.x == b.x && a.y == b.y;
  }
};

CurvePoint involution(const CurvePoint& p);

/// px(x) + py(x) * y.
struct XYExpr {
  RationalPolynomial px;
  RationalPolynomial py;

  Rational evaluate(const Rational& x, const Rational& y) const;
  XYExpr conjugate() const;  // y -> -y
  friend XYExpr operator-(const XYExpr& a, const XYExpr& b) { return {a.px - b.px, a.py - b.py}; }
  friend bool operator==(const XYExpr& a, const XYExpr& b) { return a.px == b.px && a.py == b.py; }
};

// e * (e o w) reduced with y^2 = f(x); a polynomial in x.
RationalPolynomial norm(const XYExpr& e, const SexticCurve& curve);

/// Functions with a pole of order 3, 4, 5 at InfinityPlus and a zero at
/// InfinityMinus; f4 = x f3 + k4, f5 = x f4 + k5.
struct FGenerators {
  XYExpr f3;
  XYExpr f4;
  XYExpr f5;
  Rational k4;
  Rational k5;
};

FGenerators rr_generators(const SexticCurve& curve);

// (f3, f4, f5) at p; (0, 0, 0) at InfinityMinus, DomainError at the pole.
std::array<Rational, 3> evaluate_f(const FGenerators& gens, const CurvePoint& p);

/// f3^k (gen F3), f4 f3^k or f5 f3^k.
struct Monomial {
  enum class Gen { F3, F4, F5 };
  Gen gen = Gen::F3;
  long k = 0;

  long pole_order() const;
  std::string gen_name() const;  // "f3", "f4", "f5"
  std::string to_string() const;
  static Gen parse_gen(std::string_view name);

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.gen == b.gen && a.k == b.k; }
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.pole_order() < b.pole_order(); }
};

// The monomial with pole order exactly n at InfinityPlus; DomainError for n < 3.
Monomial monomial_for_order(long n);
Rational evaluate_monomial(const Monomial& m, const std::array<Rational, 3>& f);

// All points with x = u/v in lowest terms, max(|u|, v) <= height, plus both
// points at infinity. Sorted by (v, u), +y before -y, infinities last.
std::vector<CurvePoint> search_points(const SexticCurve& curve, long height, unsigned jobs = 1);

}  // namespace qstar

#endif  // QSTAR_HYPERELLIPTIC_HPP
