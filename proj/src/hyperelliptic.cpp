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

#include "qstar/hyperelliptic.hpp"

#include "qstar/errors.hpp"

namespace qstar {

SexticCurve::SexticCurve(const std::array<Rational, 6>& a) : a_(a) {
  if (discriminant(polynomial()) == 0) {
    throw DomainError("sextic " + equation() + " has a repeated root");
  }
}

RationalPolynomial SexticCurve::polynomial() const {
  std::vector<Rational> c(a_.begin(), a_.end());
  c.emplace_back(1);
  return RationalPolynomial(std::move(c));
}

Rational SexticCurve::evaluate(const Rational& x) const { return polynomial().evaluate(x); }

bool SexticCurve::contains(const Rational& x, const Rational& y) const {
  return y * y == evaluate(x);
}

std::string SexticCurve::equation() const { return "y^2 = " + to_string(polynomial()); }

std::string CurvePoint::to_string() const {
  switch (kind) {
    case Kind::InfinityPlus:
      return "inf+";
    case Kind::InfinityMinus:
      return "inf-";
    case Kind::Affine:
      break;
  }
  return qstar::to_string(x) + "," + qstar::to_string(y);
}

CurvePoint CurvePoint::parse(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '(')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == ')')) text.remove_suffix(1);
  if (text == "inf+" || text == "inf") return infinity_plus();
  if (text == "inf-" || text == "inf'") return infinity_minus();
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) {
    throw InputError("point must be \"x,y\", \"inf+\" or \"inf-\": " + std::string(text));
  }
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  return affine(parse_rational(trim(text.substr(0, comma))), parse_rational(trim(text.substr(comma + 1))));
}

CurvePoint involution(const CurvePoint& p) {
  switch (p.kind) {
    case CurvePoint::Kind::InfinityPlus:
      return CurvePoint::infinity_minus();
    case CurvePoint::Kind::InfinityMinus:
      return CurvePoint::infinity_plus();
    case CurvePoint::Kind::Affine:
      break;
  }
  return CurvePoint::affine(p.x, -p.y);
}

Rational XYExpr::evaluate(const Rational& x, const Rational& y) const {
  return px.evaluate(x) + py.evaluate(x) * y;
}

XYExpr XYExpr::conjugate() const { return {px, py * Rational(-1)}; }

RationalPolynomial norm(const XYExpr& e, const SexticCurve& curve) {
  return e.px * e.px - e.py * e.py * curve.polynomial();
}

FGenerators rr_generators(const SexticCurve& curve) {
  const Rational& a1 = curve.a(1);
  const Rational& a2 = curve.a(2);
  const Rational& a3 = curve.a(3);
  const Rational& a4 = curve.a(4);
  const Rational& a5 = curve.a(5);

  FGenerators g;
  Rational c0 = (8 * a3 - 4 * a4 * a5 + a5 * a5 * a5) / 32;
  Rational c1 = (4 * a4 - a5 * a5) / 16;
  Rational c2 = a5 / 4;
  g.f3.px = RationalPolynomial(std::vector<Rational>{c0, c1, c2, Rational(1, 2)});
  g.f3.py = RationalPolynomial(std::vector<Rational>{Rational(1, 2)});

  g.k4 = (64 * a2 - 16 * a4 * a4 - 32 * a3 * a5 + 24 * a4 * a5 * a5 - 5 * rpow(a5, 4)) / 256;
  g.k5 = (128 * a1 - 64 * a3 * a4 - 64 * a2 * a5 + 48 * a4 * a4 * a5 + 48 * a3 * a5 * a5 -
          40 * a4 * rpow(a5, 3) + 7 * rpow(a5, 5)) /
         512;

  const RationalPolynomial x(std::vector<Rational>{0, 1});
  auto times_x_plus = [&](const XYExpr& f, const Rational& k) {
    return XYExpr{f.px * x + RationalPolynomial(std::vector<Rational>{k}), f.py * x};
  };
  g.f4 = times_x_plus(g.f3, g.k4);
  g.f5 = times_x_plus(g.f4, g.k5);
  return g;
}

std::array<Rational, 3> evaluate_f(const FGenerators& gens, const CurvePoint& p) {
  switch (p.kind) {
    case CurvePoint::Kind::InfinityPlus:
      throw DomainError("f3, f4, f5 have their pole at inf+");
    case CurvePoint::Kind::InfinityMinus:
      return {Rational(0), Rational(0), Rational(0)};
    case CurvePoint::Kind::Affine:
      break;
  }
  return {gens.f3.evaluate(p.x, p.y), gens.f4.evaluate(p.x, p.y), gens.f5.evaluate(p.x, p.y)};
}

long Monomial::pole_order() const {
  switch (gen) {
    case Gen::F3:
      return 3 * k;
    case Gen::F4:
      return 3 * k + 4;
    case Gen::F5:
      return 3 * k + 5;
  }
  return 0;
}

std::string Monomial::gen_name() const {
  switch (gen) {
    case Gen::F3:
      return "f3";
    case Gen::F4:
      return "f4";
    case Gen::F5:
      return "f5";
  }
  return "";
}

std::string Monomial::to_string() const {
  std::string power = k == 0 ? "" : (k == 1 ? "f3" : "f3^" + std::to_string(k));
  if (gen == Gen::F3) return power.empty() ? "1" : power;
  return power.empty() ? gen_name() : gen_name() + "*" + power;
}

Monomial::Gen Monomial::parse_gen(std::string_view name) {
  if (name == "f3") return Gen::F3;
  if (name == "f4") return Gen::F4;
  if (name == "f5") return Gen::F5;
  throw InputError("unknown generator \"" + std::string(name) + "\"");
}

Monomial monomial_for_order(long n) {
  if (n < 3) {
    throw DomainError("no monomial has pole order " + std::to_string(n) +
                      " (orders 1 and 2 are gaps, orders below 1 are constants)");
  }
  switch (n % 3) {
    case 0:
      return {Monomial::Gen::F3, n / 3};
    case 1:
      return {Monomial::Gen::F4, (n - 4) / 3};
    default:
      return {Monomial::Gen::F5, (n - 5) / 3};
  }
}

Rational evaluate_monomial(const Monomial& m, const std::array<Rational, 3>& f) {
  Rational v = rpow(f[0], static_cast<unsigned long>(m.k));
  if (m.gen == Monomial::Gen::F4) v *= f[1];
  if (m.gen == Monomial::Gen::F5) v *= f[2];
  return v;
}

}  // namespace qstar
