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

#ifndef QSTAR_FIXED_HPP
#define QSTAR_FIXED_HPP

#include "qstar/arith.hpp"

namespace qstar {

/// Scaled-integer real number: value = mantissa * 2^-scale_bits, known to
/// within error_ulps units of 2^-scale_bits.
///
/// Rounding is to nearest, ties away from zero. Error propagation:
///   a + b : err_a + err_b (+1 when the scales had to be aligned by rounding)
///   a * b : ceil((|A| err_b + |B| err_a + err_a err_b) / 2^s) + 1
///           where A, B are mantissas; the +1 is dropped when the product
///           needed no rounding.
///   a / n : ceil(err_a / |n|) + 1 for a nonzero integer n.
/// Every rule is monotone in the input errors.
class FixedReal {
 public:
  FixedReal() = default;
  FixedReal(Integer mantissa, unsigned scale_bits, Integer error_ulps = 0);

  static FixedReal from_integer(const Integer& value, unsigned scale_bits);
  static FixedReal from_rational(const Rational& value, unsigned scale_bits);

  const Integer& mantissa() const { return mantissa_; }
  unsigned scale_bits() const { return scale_bits_; }
  const Integer& error_ulps() const { return error_ulps_; }

  // |value| upper bound in ulps: |mantissa| + error.
  Integer magnitude_bound() const;
  bool is_exact_zero() const { return mantissa_ == 0 && error_ulps_ == 0; }

  // Rescale; increasing the scale is exact, decreasing rounds.
  FixedReal with_scale(unsigned scale_bits) const;
  FixedReal with_error(Integer error_ulps) const;

  FixedReal operator-() const;
  friend FixedReal operator+(const FixedReal& a, const FixedReal& b);
  friend FixedReal operator-(const FixedReal& a, const FixedReal& b);
  friend FixedReal operator*(const FixedReal& a, const FixedReal& b);
  friend FixedReal operator*(const FixedReal& a, const Integer& n);
  friend FixedReal operator/(const FixedReal& a, const Integer& n);

  // Multiply by 2^k (k may be negative).
  FixedReal shifted(long k) const;

  // Nearest integer to the mantissa value and whether that integer is
  // certain, i.e. the whole error interval lies strictly inside
  // (n - 1/2, n + 1/2).
  Integer nearest_integer() const;
  bool rounds_certainly() const;

  double to_double() const;
  std::string to_decimal(int digits) const;

 private:
  Integer mantissa_ = 0;
  unsigned scale_bits_ = 1;
  Integer error_ulps_ = 0;
};

struct FixedComplex {
  FixedReal re;
  FixedReal im;

  FixedComplex() = default;
  FixedComplex(FixedReal r, FixedReal i) : re(std::move(r)), im(std::move(i)) {}
  static FixedComplex from_integer(const Integer& value, unsigned scale_bits);

  unsigned scale_bits() const { return re.scale_bits(); }
  FixedComplex with_scale(unsigned scale_bits) const;

  friend FixedComplex operator+(const FixedComplex& a, const FixedComplex& b);
  friend FixedComplex operator-(const FixedComplex& a, const FixedComplex& b);
  friend FixedComplex operator*(const FixedComplex& a, const FixedComplex& b);
  friend FixedComplex operator*(const FixedComplex& a, const Integer& n);
  friend FixedComplex operator/(const FixedComplex& a, const Integer& n);
  FixedComplex operator-() const { return {-re, -im}; }
  FixedComplex shifted(long k) const { return {re.shifted(k), im.shifted(k)}; }
};

// Machin: pi = 16 atan(1/5) - 4 atan(1/239). Error <= 1 ulp.
FixedReal pi(unsigned scale_bits);
// ln 2 = 2 atanh(1/3). Error <= 1 ulp.
FixedReal ln2(unsigned scale_bits);

// e^z by argument reduction (k ln 2 off the real part, multiples of 2 pi off
// the imaginary part), halving, Taylor series and repeated squaring.
// Throws PrecisionError when the resulting error exceeds 2^(scale/2) ulps.
FixedComplex exp_complex(const FixedComplex& z);

// Integer Newton iteration; throws DomainError when x is certainly negative.
FixedReal sqrt_fixed(const FixedReal& x);

}  // namespace qstar

#endif  // QSTAR_FIXED_HPP
