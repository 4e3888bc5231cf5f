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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qstar/bigfloat.hpp"
#include "qstar/errors.hpp"

namespace qstar {

namespace {

mpfr_prec_t wider(const BigReal& a, const BigReal& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

Integer BigReal::round() const {
  Integer out;
  mpfr_get_z(out.get_mpz_t(), v_, MPFR_RNDNA);
  return out;
}

BigReal operator+(const BigReal& a, const BigReal& b) {
  BigReal r(wider(a, b));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator-(const BigReal& a, const BigReal& b) {
  BigReal r(wider(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator*(const BigReal& a, const BigReal& b) {
  BigReal r(wider(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator/(const BigReal& a, const BigReal& b) {
  BigReal r(wider(a, b));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator-(const BigReal& a) {
  BigReal r(a.precision());
  mpfr_neg(r.v_, a.v_, MPFR_RNDN);
  return r;
}

BigReal abs(const BigReal& x) {
  BigReal r(x.precision());
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}

BigReal sqrt(const BigReal& x) {
  BigReal r(x.precision());
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  const BigReal n = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

BigReal abs(const BigComplex& z) {
  BigReal r(z.precision());
  mpfr_hypot(r.get(), z.re.get(), z.im.get(), MPFR_RNDN);
  return r;
}

BigComplex sqrt(const BigComplex& z) {
  const mpfr_prec_t prec = z.precision();
  if (z.re.is_zero() && z.im.is_zero()) return BigComplex(prec);
  const BigReal two(2L, prec);
  const BigReal m = abs(z);
  // sqrt((|z| + re)/2) + i sign(im) sqrt((|z| - re)/2)
  BigReal u = sqrt((m + z.re) / two);
  BigReal v = sqrt((m - z.re) / two);
  if (z.im.sign() < 0) v = -v;
  return {std::move(u), std::move(v)};
}

BigComplex sqrt_of_integer(const Integer& d, mpfr_prec_t prec) {
  BigReal mag = sqrt(BigReal(Integer(abs(d)), prec));
  if (d < 0) return {BigReal(prec), std::move(mag)};
  return {std::move(mag), BigReal(prec)};
}

std::vector<BigComplex> polynomial_roots(const IntPolynomial& p, mpfr_prec_t bits) {
  const int n = p.degree();
  if (n < 1) throw DomainError("polynomial_roots needs degree >= 1");
  const mpfr_prec_t prec = bits + 64;
  std::vector<BigReal> coef;
  for (const Integer& c : p.coeffs()) coef.emplace_back(c, prec);

  // Starting points from the Newton polygon of log2 |a_i| (upper hull).
  std::vector<double> lg(static_cast<size_t>(n + 1));
  for (int i = 0; i <= n; ++i) {
    const Integer& c = p.coeffs()[static_cast<size_t>(i)];
    if (c == 0) {
      lg[static_cast<size_t>(i)] = -1e300;
    } else {
      long e = 0;
      const double m = mpz_get_d_2exp(&e, c.get_mpz_t());
      lg[static_cast<size_t>(i)] = std::log2(std::fabs(m)) + static_cast<double>(e);
    }
  }
  std::vector<int> hull;
  for (int i = 0; i <= n; ++i) {
    if (lg[static_cast<size_t>(i)] < -1e299) continue;
    while (hull.size() >= 2) {
      const int a = hull[hull.size() - 2], b = hull.back();
      const double cross = (lg[static_cast<size_t>(b)] - lg[static_cast<size_t>(a)]) * (i - a) -
                           (lg[static_cast<size_t>(i)] - lg[static_cast<size_t>(a)]) * (b - a);
      if (cross <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(i);
  }
  std::vector<BigComplex> z;
  for (size_t h = 0; h + 1 < hull.size(); ++h) {
    const int a = hull[h], b = hull[h + 1];
    const double log_r = (lg[static_cast<size_t>(a)] - lg[static_cast<size_t>(b)]) / (b - a);
    for (int k = 0; k < b - a; ++k) {
      const double angle = 2 * std::numbers::pi * k / (b - a) + 2 * std::numbers::pi * (static_cast<double>(h) + 1) / n + 0.4;
      BigReal radius(prec);
      mpfr_set_d(radius.get(), 1.0, MPFR_RNDN);
      mpfr_mul_2si(radius.get(), radius.get(), static_cast<long>(std::floor(log_r)), MPFR_RNDN);
      const double frac = std::exp2(log_r - std::floor(log_r));
      BigReal c(prec), s(prec);
      mpfr_set_d(c.get(), frac * std::cos(angle), MPFR_RNDN);
      mpfr_set_d(s.get(), frac * std::sin(angle), MPFR_RNDN);
      z.push_back({radius * c, radius * s});
    }
  }
  if (p.coeffs()[0] == 0) throw DomainError("polynomial_roots: zero root not supported");

  // Aberth iteration.
  const long target = -static_cast<long>(bits) - 8;
  std::vector<bool> done(static_cast<size_t>(n), false);
  const int max_iterations = 200 + 4 * static_cast<int>(bits);
  for (int it = 0; it < max_iterations; ++it) {
    bool all_done = true;
    for (int i = 0; i < n; ++i) {
      if (done[static_cast<size_t>(i)]) continue;
      BigComplex& zi = z[static_cast<size_t>(i)];
      BigComplex val(prec), der(prec);
      for (int k = n; k >= 0; --k) {
        der = der * zi + val;
        val = val * zi + BigComplex(coef[static_cast<size_t>(k)], BigReal(prec));
      }
      if (val.re.is_zero() && val.im.is_zero()) {
        done[static_cast<size_t>(i)] = true;
        continue;
      }
      const BigComplex ratio = val / der;
      BigComplex sum(prec);
      for (int j = 0; j < n; ++j) {
        if (j != i) sum = sum + BigComplex(BigReal(1L, prec), BigReal(prec)) / (zi - z[static_cast<size_t>(j)]);
      }
      const BigComplex one(BigReal(1L, prec), BigReal(prec));
      const BigComplex step = ratio / (one - ratio * sum);
      zi = zi - step;
      const long rel = abs(step).exponent() - std::max(abs(zi).exponent(), -(1L << 39));
      if (rel < target) done[static_cast<size_t>(i)] = true;
      else all_done = false;
    }
    if (all_done) {
      std::sort(z.begin(), z.end(), [](const BigComplex& a, const BigComplex& b) {
        const int c = mpfr_cmp(a.re.get(), b.re.get());
        if (c != 0) return c < 0;
        return mpfr_cmp(a.im.get(), b.im.get()) < 0;
      });
      return z;
    }
  }
  throw PrecisionError("polynomial root iteration did not converge");
}

}  // namespace qstar
