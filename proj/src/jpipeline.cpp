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

#include "qstar/jpipeline.hpp"

#include <json.hpp>

#include "qstar/errors.hpp"

namespace qstar {

namespace {

using nlohmann::json;

LaurentSeries apply(const XYExpr& e, const std::vector<LaurentSeries>& xpow, const LaurentSeries& y) {
  LaurentSeries acc = LaurentSeries::zero(kNoPrecisionCap / 4);
  auto add_poly = [&](const RationalPolynomial& p, const LaurentSeries* factor) {
    for (size_t i = 0; i < p.coeffs().size(); ++i) {
      if (p.coeffs()[i] == 0) continue;
      LaurentSeries term = xpow[i] * p.coeffs()[i];
      if (factor != nullptr) term = mul(term, *factor);
      acc = acc + term;
    }
  };
  add_poly(e.px, nullptr);
  add_poly(e.py, &y);
  return acc;
}

}  // namespace

Rational FExpression::coefficient(const Monomial& m) const {
  auto it = terms.find(m);
  return it == terms.end() ? Rational(0) : it->second;
}

long FExpression::pole_order() const { return terms.empty() ? 0 : terms.rbegin()->first.pole_order(); }

std::string fexpression_to_json(const FExpression& e) {
  json doc;
  doc["constant"] = to_string(e.constant);
  json terms = json::array();
  for (auto it = e.terms.rbegin(); it != e.terms.rend(); ++it) {
    terms.push_back({{"k", it->first.k}, {"gen", it->first.gen_name()}, {"coeff", to_string(it->second)}});
  }
  doc["terms"] = std::move(terms);
  return doc.dump();
}

FExpression parse_fexpression(std::string_view json_text) {
  FExpression e;
  try {
    const json doc = json::parse(json_text);
    e.constant = parse_rational(doc.at("constant").get<std::string>());
    for (const json& t : doc.at("terms")) {
      Monomial m{Monomial::parse_gen(t.at("gen").get<std::string>()), t.at("k").get<long>()};
      if (m.k < 0 || m.pole_order() < 3) throw InputError("monomial " + m.to_string() + " has no pole of order >= 3");
      Rational c = parse_rational(t.at("coeff").get<std::string>());
      if (c == 0) throw InputError("zero coefficient for " + m.to_string());
      if (!e.terms.emplace(m, c).second) throw InputError("duplicate monomial " + m.to_string());
    }
  } catch (const json::exception& ex) {
    throw InputError(std::string("malformed expression JSON: ") + ex.what());
  }
  return e;
}

FSeries f_series(const SexticCurve& curve, const ModularDataset& data) {
  if (data.precision < kMinDerivePrecision) {
    throw PrecisionError("f-series need dataset precision >= " + std::to_string(kMinDerivePrecision));
  }
  auto [x, y] = coordinate_series(data);
  std::vector<LaurentSeries> xpow{LaurentSeries::constant(1, x.precision() - x.valuation())};
  for (int i = 1; i <= 5; ++i) xpow.push_back(mul(xpow.back(), x));
  const FGenerators g = rr_generators(curve);
  FSeries out{apply(g.f3, xpow, y), apply(g.f4, xpow, y), apply(g.f5, xpow, y)};
  const std::array<const LaurentSeries*, 3> fs{&out.f3, &out.f4, &out.f5};
  for (int i = 0; i < 3; ++i) {
    const LaurentSeries& f = *fs[static_cast<size_t>(i)];
    if (f.is_zero() || f.valuation() != -(i + 3) || f.leading_coefficient() != 1) {
      throw ValidationError("f" + std::to_string(i + 3) + " is not q^-" + std::to_string(i + 3) +
                            " + ...: the curve does not match the level-" + std::to_string(data.level) +
                            " dataset");
    }
  }
  return out;
}

MonomialCache::MonomialCache(FSeries f, long precision, long max_order)
    : f_(std::move(f)), precision_(precision), max_order_(max_order) {
  f3_powers_.emplace(1, f_.f3.truncated(power_precision(1)));
}

// f3^k is kept to the precision the later powers up to max_order still need;
// each further factor of f3 costs three terms.
long MonomialCache::power_precision(long k) const {
  return precision_ + std::max(0L, max_order_ - 3 * k);
}

const LaurentSeries& MonomialCache::f3_power(long k) {
  auto it = f3_powers_.find(k);
  if (it != f3_powers_.end()) return it->second;
  // Grow from the largest power below k.
  auto below = f3_powers_.lower_bound(k);
  --below;
  long have = below->first;
  while (have < k) {
    LaurentSeries next = mul(f3_powers_.at(have), f_.f3, power_precision(have + 1));
    ++have;
    f3_powers_.emplace(have, std::move(next));
  }
  return f3_powers_.at(k);
}

const LaurentSeries& MonomialCache::get(const Monomial& m) {
  std::lock_guard<std::mutex> lock(mutex_);
  const long order = m.pole_order();
  if (auto it = by_order_.find(order); it != by_order_.end()) return it->second;
  LaurentSeries s;
  if (m.gen == Monomial::Gen::F3) {
    if (m.k < 1) throw DomainError("monomial f3^0 is the constant 1");
    return f3_power(m.k);
  }
  const LaurentSeries& g = m.gen == Monomial::Gen::F4 ? f_.f4 : f_.f5;
  s = m.k == 0 ? g.truncated(precision_) : mul(g, f3_power(m.k), precision_);
  return by_order_.emplace(order, std::move(s)).first->second;
}

LaurentSeries MonomialCache::materialize(const FExpression& e) {
  LaurentSeries acc = LaurentSeries::constant(e.constant, precision_);
  for (const auto& [m, c] : e.terms) acc = acc + get(m) * c;
  return acc;
}

std::vector<long> divisors(long n) {
  if (n < 1) throw DomainError("divisors of a non-positive integer");
  std::vector<long> small, large;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d * d != n) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

long divisor_sum(long n) {
  long s = 0;
  for (long d : divisors(n)) s += d;
  return s;
}

long required_precision(long level) { return divisor_sum(level) + 12; }

LevelContext::LevelContext(const SexticCurve& c, const ModularDataset& data)
    : level(data.level), curve(c), dataset(data), gens(rr_generators(c)) {
  divisors = qstar::divisors(level);
  m = static_cast<long>(divisors.size());
  sigma = divisor_sum(level);
  const long needed = required_precision(level);
  if (data.precision < needed) {
    throw PrecisionError("level " + std::to_string(level) + " needs dataset precision >= " +
                         std::to_string(needed) + " (sigma = " + std::to_string(sigma) + "), got " +
                         std::to_string(data.precision));
  }
  // Monomials of pole order n are known to q^(P - 3 - n); the worst is n = sigma.
  working_precision = data.precision - 2 - sigma;
  cache = std::make_shared<MonomialCache>(f_series(curve, dataset), working_precision, sigma);
}

std::vector<LaurentSeries> symmetric_j_series(const LevelContext& ctx) {
  const long target = ctx.working_precision;
  const LaurentSeries j = j_expansion(ctx.sigma + target);
  long remaining = ctx.sigma;
  std::vector<LaurentSeries> e;  // e[i] = J_(i+1) over the divisors seen so far
  for (long d : ctx.divisors) {
    remaining -= d;
    const long cap = target + remaining;
    const long jprec = (target + ctx.sigma + d - 1) / d;
    LaurentSeries s = rescale_exponent(j.truncated(jprec), d).truncated(target + ctx.sigma);
    for (size_t i = e.size(); i-- > 0;) {
      LaurentSeries prod = mul(e[i], s, cap);
      if (i + 1 == e.size()) {
        e.push_back(prod);
      } else {
        e[i + 1] = (e[i + 1] + prod).truncated(cap);
      }
    }
    if (e.empty()) {
      e.push_back(s.truncated(cap));
    } else {
      e[0] = (e[0] + s).truncated(cap);
    }
  }
  for (LaurentSeries& s : e) s = s.truncated(target);
  return e;
}

LaurentSeries symmetric_j_series(const LevelContext& ctx, int i) {
  if (i < 1 || i > ctx.m) throw DomainError("J_i needs 1 <= i <= m");
  return symmetric_j_series(ctx)[static_cast<size_t>(i - 1)];
}

FExpression express_in_basis(const LaurentSeries& f, MonomialCache& cache) {
  LaurentSeries residual = f.truncated(cache.precision());
  FExpression out;
  while (!residual.is_zero() && residual.valuation() < 0) {
    const long n = -residual.valuation();
    if (n < 3) {
      throw DomainError("residual has a pole of order " + std::to_string(n) +
                        ", which no function regular away from the cusp can have");
    }
    const Monomial m = monomial_for_order(n);
    const Rational c = residual.leading_coefficient();
    residual = residual - cache.get(m) * c;
    out.terms.emplace(m, c);
  }
  if (residual.precision() <= 0) throw PrecisionError("no coefficient left to read the constant from");
  out.constant = residual.coefficient(0);
  if (out.constant != 0) residual = residual - LaurentSeries::constant(out.constant, residual.precision());
  if (!residual.is_zero()) {
    throw ValidationError("nonzero residual " + to_string(residual.leading_coefficient()) + " at q^" +
                          std::to_string(residual.valuation()) + " after reduction");
  }
  if (residual.precision() - 1 < kMinVerifiedTerms) {
    throw PrecisionError("only " + std::to_string(residual.precision() - 1) +
                         " positive coefficients verified; need " + std::to_string(kMinVerifiedTerms));
  }
  return out;
}

std::vector<FExpression> express_all(const LevelContext& ctx) {
  std::vector<FExpression> out;
  for (const LaurentSeries& j : symmetric_j_series(ctx)) out.push_back(express_in_basis(j, *ctx.cache));
  return out;
}

Rational evaluate_expression(const FExpression& e, const std::array<Rational, 3>& fvals) {
  Rational acc = e.constant;
  for (const auto& [m, c] : e.terms) acc += c * evaluate_monomial(m, fvals);
  return acc;
}

RationalPolynomial j_polynomial_at_point(const LevelContext& ctx, const std::vector<FExpression>& js,
                                         const CurvePoint& p) {
  if (p.kind == CurvePoint::Kind::InfinityPlus) {
    throw DomainError("the j-polynomial is not defined at the cusp inf+");
  }
  if (p.is_affine() && !ctx.curve.contains(p.x, p.y)) {
    throw InputError("point " + p.to_string() + " is not on " + ctx.curve.equation());
  }
  if (static_cast<long>(js.size()) != ctx.m) throw DomainError("expected one expression per J_i");
  const auto fvals = evaluate_f(ctx.gens, p);
  std::vector<Rational> c(static_cast<size_t>(ctx.m + 1));
  c[static_cast<size_t>(ctx.m)] = 1;
  for (long i = 1; i <= ctx.m; ++i) {
    Rational v = evaluate_expression(js[static_cast<size_t>(i - 1)], fvals);
    c[static_cast<size_t>(ctx.m - i)] = (i % 2 == 0) ? v : Rational(-v);
  }
  return RationalPolynomial(std::move(c));
}

}  // namespace qstar
