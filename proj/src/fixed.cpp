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

#include "qstar/fixed.hpp"

#include <cmath>

#include "qstar/errors.hpp"

namespace qstar {

namespace {

Integer pow2(unsigned long k) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
  return r;
}

// Round x / 2^k to nearest, ties away from zero. Sets `exact` when no bits
// were discarded.
Integer round_shift(const Integer& x, unsigned long k, bool& exact) {
  if (k == 0) {
    exact = true;
    return x;
  }
  Integer mag = abs(x);
  exact = mpz_scan1(mag.get_mpz_t(), 0) >= k || mag == 0;
  Integer half = pow2(k - 1);
  Integer q = (mag + half) >> k;
  return x < 0 ? Integer(-q) : q;
}

Integer ceil_shift(const Integer& e, unsigned long k) {
  if (k == 0) return e;
  Integer q = (e + pow2(k) - 1) >> k;
  return q;
}

Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Round a / n to nearest, ties away from zero, n != 0.
Integer round_div(const Integer& a, const Integer& n, bool& exact) {
  Integer an = abs(n);
  exact = mpz_divisible_p(a.get_mpz_t(), an.get_mpz_t()) != 0;
  Integer q = (2 * abs(a) + an) / (2 * an);
  bool negative = (a < 0) != (n < 0);
  return negative ? Integer(-q) : q;
}

Integer newton_isqrt(const Integer& n) {
  if (n == 0) return 0;
  Integer x = pow2((bit_length(n) + 1) / 2);
  for (;;) {
    Integer y = (x + n / x) >> 1;
    if (y >= x) return x;
    x = y;
  }
}

void align(FixedReal& a, FixedReal& b) {
  if (a.scale_bits() < b.scale_bits()) a = a.with_scale(b.scale_bits());
  if (b.scale_bits() < a.scale_bits()) b = b.with_scale(a.scale_bits());
}

}  // namespace

FixedReal::FixedReal(Integer mantissa, unsigned scale_bits, Integer error_ulps)
    : mantissa_(std::move(mantissa)), scale_bits_(scale_bits), error_ulps_(std::move(error_ulps)) {
  if (scale_bits_ == 0) throw InputError("FixedReal needs a positive scale");
  if (error_ulps_ < 0) throw InputError("negative error bound");
}

FixedReal FixedReal::from_integer(const Integer& value, unsigned scale_bits) {
  return FixedReal(Integer(value << scale_bits), scale_bits, 0);
}

FixedReal FixedReal::from_rational(const Rational& value, unsigned scale_bits) {
  bool exact = false;
  Integer m = round_div(Integer(value.get_num() << scale_bits), value.get_den(), exact);
  return FixedReal(std::move(m), scale_bits, exact ? 0 : 1);
}

Integer FixedReal::magnitude_bound() const { return abs(mantissa_) + error_ulps_; }

FixedReal FixedReal::with_scale(unsigned scale_bits) const {
  if (scale_bits >= scale_bits_) {
    unsigned d = scale_bits - scale_bits_;
    return FixedReal(Integer(mantissa_ << d), scale_bits, Integer(error_ulps_ << d));
  }
  unsigned d = scale_bits_ - scale_bits;
  bool exact = false;
  Integer m = round_shift(mantissa_, d, exact);
  Integer e = ceil_shift(error_ulps_, d) + (exact ? 0 : 1);
  return FixedReal(std::move(m), scale_bits, std::move(e));
}

FixedReal FixedReal::with_error(Integer error_ulps) const {
  return FixedReal(mantissa_, scale_bits_, std::move(error_ulps));
}

FixedReal FixedReal::operator-() const { return FixedReal(-mantissa_, scale_bits_, error_ulps_); }

FixedReal operator+(const FixedReal& a, const FixedReal& b) {
  FixedReal x = a, y = b;
  align(x, y);
  return FixedReal(x.mantissa_ + y.mantissa_, x.scale_bits_, x.error_ulps_ + y.error_ulps_);
}

FixedReal operator-(const FixedReal& a, const FixedReal& b) { return a + (-b); }

FixedReal operator*(const FixedReal& a, const FixedReal& b) {
  FixedReal x = a, y = b;
  align(x, y);
  const unsigned s = x.scale_bits_;
  bool exact = false;
  Integer m = round_shift(Integer(x.mantissa_ * y.mantissa_), s, exact);
  Integer spread = abs(x.mantissa_) * y.error_ulps_ + abs(y.mantissa_) * x.error_ulps_ +
                   x.error_ulps_ * y.error_ulps_;
  Integer e = ceil_shift(spread, s) + (exact ? 0 : 1);
  return FixedReal(std::move(m), s, std::move(e));
}

FixedReal operator*(const FixedReal& a, const Integer& n) {
  return FixedReal(a.mantissa_ * n, a.scale_bits_, a.error_ulps_ * abs(n));
}

FixedReal operator/(const FixedReal& a, const Integer& n) {
  if (n == 0) throw DomainError("FixedReal division by zero");
  bool exact = false;
  Integer m = round_div(a.mantissa_, n, exact);
  Integer e = ceil_div(a.error_ulps_, abs(n)) + (exact ? 0 : 1);
  return FixedReal(std::move(m), a.scale_bits_, std::move(e));
}

FixedReal FixedReal::shifted(long k) const {
  if (k >= 0) {
    return FixedReal(Integer(mantissa_ << k), scale_bits_, Integer(error_ulps_ << k));
  }
  auto d = static_cast<unsigned long>(-k);
  bool exact = false;
  Integer m = round_shift(mantissa_, d, exact);
  Integer e = ceil_shift(error_ulps_, d) + (exact ? 0 : 1);
  return FixedReal(std::move(m), scale_bits_, std::move(e));
}

Integer FixedReal::nearest_integer() const {
  bool exact = false;
  return round_shift(mantissa_, scale_bits_, exact);
}

bool FixedReal::rounds_certainly() const {
  Integer n = nearest_integer();
  Integer distance = abs(mantissa_ - (n << scale_bits_));
  return distance + error_ulps_ < pow2(scale_bits_ - 1);
}

double FixedReal::to_double() const {
  long exp = 0;
  double d = mpz_get_d_2exp(&exp, mantissa_.get_mpz_t());
  return std::ldexp(d, static_cast<int>(exp - static_cast<long>(scale_bits_)));
}

std::string FixedReal::to_decimal(int digits) const {
  bool exact = false;
  Integer scaled = round_shift(Integer(mantissa_ * ipow(10, static_cast<unsigned long>(digits))),
                               scale_bits_, exact);
  std::string body = Integer(abs(scaled)).get_str(10);
  if (body.size() <= static_cast<size_t>(digits)) {
    body.insert(0, static_cast<size_t>(digits) + 1 - body.size(), '0');
  }
  body.insert(body.size() - static_cast<size_t>(digits), ".");
  return (scaled < 0 ? "-" : "") + body;
}

FixedComplex FixedComplex::from_integer(const Integer& value, unsigned scale_bits) {
  return {FixedReal::from_integer(value, scale_bits), FixedReal::from_integer(0, scale_bits)};
}

FixedComplex FixedComplex::with_scale(unsigned scale_bits) const {
  return {re.with_scale(scale_bits), im.with_scale(scale_bits)};
}

FixedComplex operator+(const FixedComplex& a, const FixedComplex& b) {
  return {a.re + b.re, a.im + b.im};
}

FixedComplex operator-(const FixedComplex& a, const FixedComplex& b) {
  return {a.re - b.re, a.im - b.im};
}

FixedComplex operator*(const FixedComplex& a, const FixedComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

FixedComplex operator*(const FixedComplex& a, const Integer& n) { return {a.re * n, a.im * n}; }

FixedComplex operator/(const FixedComplex& a, const Integer& n) { return {a.re / n, a.im / n}; }

namespace {

unsigned guard_bits(unsigned scale_bits) {
  return 16 + static_cast<unsigned>(bit_length(Integer(scale_bits))) * 2;
}

// 2^w * atan(1/n) (alternating) or 2^w * atanh(1/n), truncated. The error is
// at most 3 per series term.
Integer arctan_series(unsigned long n, unsigned w, bool hyperbolic, unsigned long& terms) {
  Integer n2 = Integer(n) * n;
  Integer power = pow2(w) / n;
  Integer sum = power;
  terms = 1;
  for (unsigned long k = 1;; ++k) {
    power /= n2;
    if (power == 0) break;
    Integer term = power / (2 * k + 1);
    if (!hyperbolic && k % 2 == 1) {
      sum -= term;
    } else {
      sum += term;
    }
    ++terms;
  }
  return sum;
}

FixedReal finish_constant(const Integer& value, unsigned w, unsigned scale_bits) {
  // The working error is far below 2^(w - scale_bits - 2), so rounding to
  // the target scale leaves at most 1 ulp.
  bool exact = false;
  Integer m = round_shift(value, w - scale_bits, exact);
  return FixedReal(std::move(m), scale_bits, 1);
}

}  // namespace

FixedReal pi(unsigned scale_bits) {
  if (scale_bits < 8) throw InputError("pi needs at least 8 bits of scale");
  const unsigned w = scale_bits + guard_bits(scale_bits) + 8;
  unsigned long t5 = 0, t239 = 0;
  Integer a5 = arctan_series(5, w, false, t5);
  Integer a239 = arctan_series(239, w, false, t239);
  // Error <= 16*3*t5 + 4*3*t239 < 2^(w - scale_bits - 2) by choice of guard.
  return finish_constant(Integer(16 * a5 - 4 * a239), w, scale_bits);
}

FixedReal ln2(unsigned scale_bits) {
  if (scale_bits < 8) throw InputError("ln2 needs at least 8 bits of scale");
  const unsigned w = scale_bits + guard_bits(scale_bits) + 8;
  unsigned long terms = 0;
  Integer t = arctan_series(3, w, true, terms);
  return finish_constant(Integer(2 * t), w, scale_bits);
}

FixedComplex exp_complex(const FixedComplex& z) {
  const unsigned s = z.scale_bits();
  if (z.im.scale_bits() != s) throw InputError("exp_complex: mismatched component scales");
  if (z.re.is_exact_zero() && z.im.is_exact_zero()) return FixedComplex::from_integer(1, s);

  const unsigned w = s + 64 + guard_bits(s);
  FixedReal re = z.re.with_scale(w);
  FixedReal im = z.im.with_scale(w);

  FixedReal log2 = ln2(w);
  Integer k = round_nearest(Rational(re.mantissa(), log2.mantissa()));
  if (!k.fits_slong_p()) throw PrecisionError("exp_complex: exponent out of range");
  FixedReal r = re - log2 * k;

  FixedReal two_pi = pi(w) * Integer(2);
  Integer turns = round_nearest(Rational(im.mantissa(), two_pi.mantissa()));
  FixedReal theta = im - two_pi * turns;

  constexpr long kHalvings = 8;
  FixedComplex u = FixedComplex(r, theta).shifted(-kHalvings);

  FixedComplex sum = FixedComplex::from_integer(1, w);
  FixedComplex term = sum;
  for (unsigned long n = 1;; ++n) {
    term = (term * u) / Integer(n);
    sum = sum + term;
    if (abs(term.re.mantissa()) + abs(term.im.mantissa()) <= 1) break;
  }
  // |u| < 1/64, so the omitted tail is at most |term| / 32 per component.
  Integer tail = ((term.re.magnitude_bound() + term.im.magnitude_bound()) >> 5) + 1;
  sum.re = sum.re.with_error(sum.re.error_ulps() + tail);
  sum.im = sum.im.with_error(sum.im.error_ulps() + tail);

  for (long i = 0; i < kHalvings; ++i) sum = sum * sum;
  sum = sum.shifted(k.get_si());

  FixedComplex out = sum.with_scale(s);
  Integer limit = pow2(s / 2);
  if (out.re.error_ulps() > limit || out.im.error_ulps() > limit) {
    throw PrecisionError("exp_complex: error bound exceeds half the working scale");
  }
  return out;
}

FixedReal sqrt_fixed(const FixedReal& x) {
  const unsigned s = x.scale_bits();
  const Integer& m = x.mantissa();
  const Integer& e = x.error_ulps();
  if (m + e < 0) throw DomainError("sqrt_fixed: negative argument");

  Integer low = m - e;  // lower end of the input interval, in ulps
  Integer base = m < 0 ? Integer(0) : m;
  // 2 sqrt(base 2^s), then round half away from zero.
  Integer twice = newton_isqrt(Integer(base << (s + 2)));
  Integer root = (twice + 1) >> 1;

  // Rounding leaves <= 1/2 ulp; the floor inside adds < 1/2 more.
  Integer err = 1;
  Integer spread = m < 0 ? Integer(e - m) : e;
  if (spread > 0) {
    Integer via_sqrt = newton_isqrt(Integer(spread << s)) + 1;
    if (low > 0) {
      // |sqrt(x + d) - sqrt(x)| <= d / (2 sqrt(x_low)), in ulps.
      Integer denom = 2 * newton_isqrt(Integer(low << s));
      Integer via_derivative = denom > 0 ? ceil_div(Integer(spread << s), denom) : via_sqrt;
      err += std::min(via_sqrt, via_derivative);
    } else {
      err += via_sqrt;
    }
  }
  if (spread == 0 && twice % 2 == 0 && root * root == (base << s)) err = 0;
  return FixedReal(std::move(root), s, std::move(err));
}

}  // namespace qstar
