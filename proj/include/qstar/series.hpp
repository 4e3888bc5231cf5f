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

#ifndef QSTAR_SERIES_HPP
#define QSTAR_SERIES_HPP

#include <climits>
#include <vector>

#include "qstar/arith.hpp"

namespace qstar {

/// Truncated Laurent series sum_{k >= valuation} c_k q^k, exact over Q.
///
/// Coefficients are held as integer numerators over one shared positive
/// denominator, kept in lowest terms. Coefficients at exponents >= precision
/// are unknown. A zero series has valuation == precision and no stored terms.
class LaurentSeries {
 public:
  LaurentSeries() = default;
  // Stores coeffs for exponents valuation .. valuation + size - 1; the
  // precision is valuation + size. Leading zeros are stripped.
  LaurentSeries(long valuation, const std::vector<Rational>& coeffs);
  static LaurentSeries from_integers(long valuation, std::vector<Integer> numerators,
                                     Integer denominator = 1);
  static LaurentSeries zero(long precision);
  static LaurentSeries constant(const Rational& c, long precision);
  static LaurentSeries monomial(const Rational& c, long exponent, long precision);

  long valuation() const { return valuation_; }
  long precision() const { return valuation_ + static_cast<long>(numerators_.size()); }
  size_t size() const { return numerators_.size(); }
  bool is_zero() const { return numerators_.empty(); }

  // Throws DomainError for exponents at or beyond the precision.
  Rational coefficient(long exponent) const;
  Rational leading_coefficient() const;
  std::vector<Rational> coefficients() const;
  const std::vector<Integer>& numerators() const { return numerators_; }
  const Integer& denominator() const { return denominator_; }
  bool has_integer_coefficients() const { return denominator_ == 1; }

  // Drops everything at exponents >= precision (no-op if already shorter).
  LaurentSeries truncated(long precision) const;

  LaurentSeries operator-() const;
  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(const LaurentSeries& a, const Rational& c);
  friend LaurentSeries operator*(const Rational& c, const LaurentSeries& a) { return a * c; }
  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b);

 private:
  void normalize();

  long valuation_ = 0;
  std::vector<Integer> numerators_;
  Integer denominator_ = 1;
};

inline constexpr long kNoPrecisionCap = LONG_MAX;

// Product truncated at min(prec_a + val_b, prec_b + val_a, cap).
LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b, long cap = kNoPrecisionCap);
LaurentSeries power(const LaurentSeries& a, unsigned long exponent, long cap = kNoPrecisionCap);
// Inverse with valuation -val(a) and the same number of known terms.
LaurentSeries invert(const LaurentSeries& a);
// q d/dq: c_k -> k c_k.
LaurentSeries q_derivative(const LaurentSeries& a);
// q -> q^d.
LaurentSeries rescale_exponent(const LaurentSeries& a, long d);
// j = E4^3 / Delta = 1/q + 744 + 196884 q + ..., known up to q^(precision-1).
LaurentSeries j_expansion(long precision);

namespace detail {
// Full products of integer coefficient vectors; both routes are exposed so
// tests can check them against each other.
std::vector<Integer> multiply_schoolbook(const std::vector<Integer>& a,
                                         const std::vector<Integer>& b, size_t keep);
std::vector<Integer> multiply_kronecker(const std::vector<Integer>& a,
                                        const std::vector<Integer>& b, size_t keep);
}  // namespace detail

}  // namespace qstar

#endif  // QSTAR_SERIES_HPP
