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

#include "qstar/series.hpp"

#include <algorithm>

#include "qstar/errors.hpp"

namespace qstar {

namespace detail {

std::vector<Integer> multiply_schoolbook(const std::vector<Integer>& a,
                                         const std::vector<Integer>& b, size_t keep) {
  if (a.empty() || b.empty()) return std::vector<Integer>(keep);
  keep = std::min(keep, a.size() + b.size() - 1);
  std::vector<Integer> out(keep);
  for (size_t i = 0; i < a.size() && i < keep; ++i) {
    if (a[i] == 0) continue;
    const size_t stop = std::min(b.size(), keep - i);
    for (size_t j = 0; j < stop; ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return out;
}

namespace {

constexpr size_t kLimbBytes = 8;

size_t max_bits(const std::vector<Integer>& v) {
  size_t bits = 0;
  for (const Integer& x : v) bits = std::max(bits, bit_length(x));
  return bits;
}

// Evaluates sum v_i 2^(64 L i) as one signed integer.
Integer pack(const std::vector<Integer>& v, size_t limbs) {
  std::vector<uint64_t> pos(v.size() * limbs, 0), neg(v.size() * limbs, 0);
  bool any_neg = false;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    uint64_t* slot = (v[i] > 0 ? pos.data() : neg.data()) + i * limbs;
    any_neg = any_neg || v[i] < 0;
    mpz_export(slot, nullptr, -1, kLimbBytes, 0, 0, v[i].get_mpz_t());
  }
  Integer p, n;
  mpz_import(p.get_mpz_t(), pos.size(), -1, kLimbBytes, 0, 0, pos.data());
  if (any_neg) {
    mpz_import(n.get_mpz_t(), neg.size(), -1, kLimbBytes, 0, 0, neg.data());
    p -= n;
  }
  return p;
}

}  // namespace

std::vector<Integer> multiply_kronecker(const std::vector<Integer>& a_in,
                                        const std::vector<Integer>& b_in, size_t keep) {
  if (a_in.empty() || b_in.empty()) return std::vector<Integer>(keep);
  keep = std::min(keep, a_in.size() + b_in.size() - 1);
  std::vector<Integer> a(a_in.begin(), a_in.begin() + static_cast<long>(std::min(keep, a_in.size())));
  std::vector<Integer> b(b_in.begin(), b_in.begin() + static_cast<long>(std::min(keep, b_in.size())));

  // Every output coefficient is below 2^(slot_bits - 1) in absolute value.
  const size_t terms = std::min(a.size(), b.size());
  const size_t slot_bits = max_bits(a) + max_bits(b) + bit_length(Integer(terms)) + 2;
  const size_t limbs = (slot_bits + 63) / 64;
  const size_t bits = limbs * 64;

  Integer product = pack(a, limbs) * pack(b, limbs);

  // Shift every digit into [0, 2^bits) by adding 2^(bits-1) per slot, then
  // read the slots off directly.
  std::vector<uint64_t> offset(keep * limbs, 0);
  for (size_t k = 0; k < keep; ++k) offset[k * limbs + limbs - 1] = uint64_t{1} << 63;
  Integer shifted;
  mpz_import(shifted.get_mpz_t(), offset.size(), -1, kLimbBytes, 0, 0, offset.data());
  shifted += product;
  mpz_fdiv_r_2exp(shifted.get_mpz_t(), shifted.get_mpz_t(), keep * bits);

  std::vector<uint64_t> words(keep * limbs, 0);
  mpz_export(words.data(), nullptr, -1, kLimbBytes, 0, 0, shifted.get_mpz_t());
  Integer half;
  mpz_setbit(half.get_mpz_t(), bits - 1);
  std::vector<Integer> out(keep);
  for (size_t k = 0; k < keep; ++k) {
    mpz_import(out[k].get_mpz_t(), limbs, -1, kLimbBytes, 0, 0, words.data() + k * limbs);
    out[k] -= half;
  }
  return out;
}

}  // namespace detail

namespace {

constexpr size_t kKroneckerThreshold = 24;

std::vector<Integer> multiply(const std::vector<Integer>& a, const std::vector<Integer>& b,
                              size_t keep) {
  if (std::min(a.size(), b.size()) < kKroneckerThreshold) {
    return detail::multiply_schoolbook(a, b, keep);
  }
  return detail::multiply_kronecker(a, b, keep);
}

// Dense coefficient vector over a shared denominator; no precision tracking.
struct ScaledVector {
  std::vector<Integer> num;
  Integer den = 1;

  void reduce() {
    if (den == 1) return;
    Integer g = den;
    for (const Integer& x : num) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      if (g == 1) return;
    }
    for (Integer& x : num) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
  }
};

ScaledVector mul_trunc(const ScaledVector& x, const ScaledVector& y, size_t keep) {
  ScaledVector out{multiply(x.num, y.num, keep), x.den * y.den};
  out.num.resize(keep);
  out.reduce();
  return out;
}

ScaledVector head(const ScaledVector& x, size_t n) {
  ScaledVector out{std::vector<Integer>(x.num.begin(), x.num.begin() + static_cast<long>(std::min(n, x.num.size()))), x.den};
  return out;
}

// Inverse of a power series with nonzero constant term, to n terms.
ScaledVector invert_unit(const ScaledVector& a, size_t n) {
  if (a.num.empty() || a.num[0] == 0) throw DomainError("series inverse needs a nonzero leading term");
  ScaledVector b{{a.den}, a.num[0]};
  if (b.den < 0) {
    b.den = -b.den;
    b.num[0] = -b.num[0];
  }
  b.reduce();
  size_t known = 1;
  while (known < n) {
    const size_t target = std::min(2 * known, n);
    ScaledVector e = mul_trunc(head(a, target), b, target);
    // r = 2 - e
    for (Integer& c : e.num) c = -c;
    e.num[0] += 2 * e.den;
    b = mul_trunc(b, e, target);
    known = target;
  }
  return b;
}

}  // namespace

LaurentSeries::LaurentSeries(long valuation, const std::vector<Rational>& coeffs) : valuation_(valuation) {
  Integer den = 1;
  for (const Rational& c : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  numerators_.reserve(coeffs.size());
  for (const Rational& c : coeffs) numerators_.push_back(c.get_num() * (den / c.get_den()));
  denominator_ = den;
  normalize();
}

LaurentSeries LaurentSeries::from_integers(long valuation, std::vector<Integer> numerators,
                                           Integer denominator) {
  if (denominator == 0) throw DomainError("series denominator is zero");
  LaurentSeries s;
  s.valuation_ = valuation;
  s.numerators_ = std::move(numerators);
  s.denominator_ = std::move(denominator);
  if (s.denominator_ < 0) {
    s.denominator_ = -s.denominator_;
    for (Integer& x : s.numerators_) x = -x;
  }
  s.normalize();
  return s;
}

LaurentSeries LaurentSeries::zero(long precision) {
  LaurentSeries s;
  s.valuation_ = precision;
  return s;
}

LaurentSeries LaurentSeries::constant(const Rational& c, long precision) {
  return monomial(c, 0, precision);
}

LaurentSeries LaurentSeries::monomial(const Rational& c, long exponent, long precision) {
  if (precision <= exponent) return zero(precision);
  std::vector<Rational> coeffs(static_cast<size_t>(precision - exponent));
  coeffs[0] = c;
  return LaurentSeries(exponent, coeffs);
}

void LaurentSeries::normalize() {
  size_t lead = 0;
  while (lead < numerators_.size() && numerators_[lead] == 0) ++lead;
  if (lead > 0) {
    numerators_.erase(numerators_.begin(), numerators_.begin() + static_cast<long>(lead));
    valuation_ += static_cast<long>(lead);
  }
  if (numerators_.empty()) {
    denominator_ = 1;
    return;
  }
  if (denominator_ == 1) return;
  Integer g = denominator_;
  for (const Integer& x : numerators_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  for (Integer& x : numerators_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  mpz_divexact(denominator_.get_mpz_t(), denominator_.get_mpz_t(), g.get_mpz_t());
}

Rational LaurentSeries::coefficient(long exponent) const {
  if (exponent >= precision()) {
    throw DomainError("coefficient of q^" + std::to_string(exponent) +
                      " is beyond the series precision " + std::to_string(precision()));
  }
  if (exponent < valuation_) return 0;
  Rational r(numerators_[static_cast<size_t>(exponent - valuation_)], denominator_);
  r.canonicalize();
  return r;
}

Rational LaurentSeries::leading_coefficient() const {
  if (is_zero()) throw DomainError("leading coefficient of a zero series");
  return coefficient(valuation_);
}

std::vector<Rational> LaurentSeries::coefficients() const {
  std::vector<Rational> out;
  out.reserve(numerators_.size());
  for (const Integer& x : numerators_) {
    Rational r(x, denominator_);
    r.canonicalize();
    out.push_back(r);
  }
  return out;
}

LaurentSeries LaurentSeries::truncated(long precision) const {
  if (precision >= this->precision()) return *this;
  if (precision <= valuation_) return zero(precision);
  LaurentSeries s;
  s.valuation_ = valuation_;
  s.numerators_.assign(numerators_.begin(), numerators_.begin() + (precision - valuation_));
  s.denominator_ = denominator_;
  s.normalize();
  return s;
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries s = *this;
  for (Integer& x : s.numerators_) x = -x;
  return s;
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
  const long v = std::min(a.valuation_, b.valuation_);
  const long p = std::min(a.precision(), b.precision());
  if (v >= p) return LaurentSeries::zero(p);
  Integer den;
  mpz_lcm(den.get_mpz_t(), a.denominator_.get_mpz_t(), b.denominator_.get_mpz_t());
  const Integer sa = den / a.denominator_;
  const Integer sb = den / b.denominator_;
  std::vector<Integer> out(static_cast<size_t>(p - v));
  for (long k = v; k < p; ++k) {
    Integer& dst = out[static_cast<size_t>(k - v)];
    if (k >= a.valuation_) mpz_addmul(dst.get_mpz_t(), a.numerators_[static_cast<size_t>(k - a.valuation_)].get_mpz_t(), sa.get_mpz_t());
    if (k >= b.valuation_) mpz_addmul(dst.get_mpz_t(), b.numerators_[static_cast<size_t>(k - b.valuation_)].get_mpz_t(), sb.get_mpz_t());
  }
  return LaurentSeries::from_integers(v, std::move(out), den);
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) { return mul(a, b); }

LaurentSeries operator*(const LaurentSeries& a, const Rational& c) {
  std::vector<Integer> out = a.numerators_;
  for (Integer& x : out) x *= c.get_num();
  if (c == 0) return LaurentSeries::zero(a.precision());
  return LaurentSeries::from_integers(a.valuation_, std::move(out), Integer(a.denominator_ * c.get_den()));
}

bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
  return a.valuation_ == b.valuation_ && a.denominator_ == b.denominator_ &&
         a.numerators_ == b.numerators_;
}

LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b, long cap) {
  const long v = a.valuation() + b.valuation();
  long p = std::min(a.precision() + b.valuation(), b.precision() + a.valuation());
  p = std::min(p, cap);
  if (v >= p) return LaurentSeries::zero(p);
  const auto keep = static_cast<size_t>(p - v);
  std::vector<Integer> out = multiply(a.numerators(), b.numerators(), keep);
  out.resize(keep);
  return LaurentSeries::from_integers(v, std::move(out), Integer(a.denominator() * b.denominator()));
}

LaurentSeries power(const LaurentSeries& a, unsigned long exponent, long cap) {
  if (exponent == 0) {
    long p = a.is_zero() ? 0 : a.precision() - a.valuation();
    return LaurentSeries::constant(1, std::min(p, cap));
  }
  if (exponent == 1) return a.truncated(cap);
  // a^e = a^(e - h) * a^h; each factor only needs what survives the cap.
  const unsigned long h = exponent / 2;
  const long v = a.valuation();
  auto sub_cap = [&](unsigned long other) {
    if (cap == kNoPrecisionCap) return cap;
    return cap - static_cast<long>(other) * v;
  };
  LaurentSeries half = power(a, h, sub_cap(exponent - h));
  LaurentSeries rest = (exponent - h == h) ? half : mul(half, a, sub_cap(h));
  return mul(half, rest, cap);
}

LaurentSeries invert(const LaurentSeries& a) {
  if (a.is_zero()) throw DomainError("cannot invert a zero series");
  ScaledVector unit{a.numerators(), a.denominator()};
  ScaledVector inv = invert_unit(unit, a.size());
  return LaurentSeries::from_integers(-a.valuation(), std::move(inv.num), std::move(inv.den));
}

LaurentSeries q_derivative(const LaurentSeries& a) {
  std::vector<Integer> out = a.numerators();
  for (size_t i = 0; i < out.size(); ++i) out[i] *= a.valuation() + static_cast<long>(i);
  if (a.is_zero()) return a;
  return LaurentSeries::from_integers(a.valuation(), std::move(out), a.denominator());
}

LaurentSeries rescale_exponent(const LaurentSeries& a, long d) {
  if (d < 1) throw DomainError("rescale_exponent needs a positive factor");
  if (a.is_zero()) return LaurentSeries::zero(a.precision() * d);
  std::vector<Integer> out(a.size() * static_cast<size_t>(d));
  for (size_t i = 0; i < a.size(); ++i) out[i * static_cast<size_t>(d)] = a.numerators()[i];
  return LaurentSeries::from_integers(a.valuation() * d, std::move(out), a.denominator());
}

LaurentSeries j_expansion(long precision) {
  if (precision < 0) throw DomainError("j_expansion needs a nonnegative precision");
  const auto n = static_cast<size_t>(precision + 1);  // exponents -1 .. precision-1

  std::vector<Integer> sigma3(n, 0);
  for (size_t d = 1; d < n; ++d) {
    const Integer cube = Integer(static_cast<unsigned long>(d)) * d * d;
    for (size_t m = d; m < n; m += d) sigma3[m] += cube;
  }
  ScaledVector e4{std::vector<Integer>(n), 1};
  e4.num[0] = 1;
  for (size_t k = 1; k < n; ++k) e4.num[k] = 240 * sigma3[k];

  // prod (1 - q^k) = sum_k (-1)^k q^(k(3k-1)/2) over all integers k.
  ScaledVector eta{std::vector<Integer>(n, 0), 1};
  eta.num[0] = 1;
  for (long k = 1;; ++k) {
    const long e1 = k * (3 * k - 1) / 2;
    const long e2 = k * (3 * k + 1) / 2;
    if (e1 >= static_cast<long>(n)) break;
    const int sign = (k % 2 == 0) ? 1 : -1;
    eta.num[static_cast<size_t>(e1)] += sign;
    if (e2 < static_cast<long>(n)) eta.num[static_cast<size_t>(e2)] += sign;
  }
  ScaledVector eta2 = mul_trunc(eta, eta, n);
  ScaledVector eta4 = mul_trunc(eta2, eta2, n);
  ScaledVector eta8 = mul_trunc(eta4, eta4, n);
  ScaledVector eta16 = mul_trunc(eta8, eta8, n);
  ScaledVector eta24 = mul_trunc(eta16, eta8, n);

  ScaledVector e4cubed = mul_trunc(mul_trunc(e4, e4, n), e4, n);
  ScaledVector j = mul_trunc(e4cubed, invert_unit(eta24, n), n);
  return LaurentSeries::from_integers(-1, std::move(j.num), std::move(j.den));
}

}  // namespace qstar
