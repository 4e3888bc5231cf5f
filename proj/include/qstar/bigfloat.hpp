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

#ifndef QSTAR_BIGFLOAT_HPP
#define QSTAR_BIGFLOAT_HPP

#include <mpfr.h>

#include <vector>

#include "qstar/arith.hpp"
#include "qstar/polynomial.hpp"

namespace qstar {

/// Owning wrapper over an mpfr_t. Results of binary operations carry the
/// larger of the two operand precisions; rounding is to nearest.
class BigReal {
 public:
  explicit BigReal(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec), mpfr_set_zero(v_, 1); }
  BigReal(const Integer& n, mpfr_prec_t prec) { mpfr_init2(v_, prec), mpfr_set_z(v_, n.get_mpz_t(), MPFR_RNDN); }
  BigReal(long n, mpfr_prec_t prec) { mpfr_init2(v_, prec), mpfr_set_si(v_, n, MPFR_RNDN); }
  BigReal(const BigReal& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)), mpfr_set(v_, o.v_, MPFR_RNDN); }
  BigReal& operator=(const BigReal& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  ~BigReal() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  // Base-2 exponent e with 2^(e-1) <= |x| < 2^e; very negative for zero.
  long exponent() const { return is_zero() ? -(1L << 40) : static_cast<long>(mpfr_get_exp(v_)); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  Integer round() const;

  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  friend BigReal operator/(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a);
  friend bool operator<(const BigReal& a, const BigReal& b) { return mpfr_less_p(a.v_, b.v_) != 0; }

 private:
  mpfr_t v_;
};

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);  // x >= 0

struct BigComplex {
  BigReal re;
  BigReal im;

  explicit BigComplex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
  BigComplex(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {}

  mpfr_prec_t precision() const { return re.precision(); }
  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re + b.re, a.im + b.im}; }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re - b.re, a.im - b.im}; }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
};

BigReal abs(const BigComplex& z);
// Principal square root.
BigComplex sqrt(const BigComplex& z);
BigComplex sqrt_of_integer(const Integer& d, mpfr_prec_t prec);

// All complex roots of a squarefree polynomial with about `bits` bits of
// relative accuracy, sorted by real part and then imaginary part.
// Throws PrecisionError when the iteration fails to converge.
std::vector<BigComplex> polynomial_roots(const IntPolynomial& p, mpfr_prec_t bits);

}  // namespace qstar

#endif  // QSTAR_BIGFLOAT_HPP
