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

#ifndef QSTAR_CM_HPP
#define QSTAR_CM_HPP

#include <optional>
#include <vector>

#include "qstar/polynomial.hpp"

namespace qstar {

/// Binary quadratic form a x^2 + b x y + c y^2.
struct QuadForm {
  long a;
  long b;
  long c;

  long discriminant() const { return b * b - 4 * a * c; }
  // |b| <= a <= c, and b >= 0 when |b| = a or a = c.
  bool is_reduced() const;
  friend bool operator==(const QuadForm&, const QuadForm&) = default;
};

// Reduced primitive forms of discriminant D, sorted by (a, b). Throws
// InputError unless D < 0 and D = 0, 1 mod 4.
std::vector<QuadForm> reduced_forms(long D);
long class_number(long D);

// Values of the assigned genus characters on the class of f (each +1 or -1).
std::vector<int> genus_characters(long D, const QuadForm& f);
// Whether every genus of discriminant D holds exactly one class.
bool one_class_per_genus(long D);

struct ClassPolynomial {
  long discriminant = 0;
  IntPolynomial poly;
  bool certified = false;  // every coefficient's error interval avoided a half-integer
  unsigned scale_bits = 0;
};

// 128 + ceil(1.2 pi sqrt|D| h / ln 2).
unsigned default_class_polynomial_scale(long D);
// QSTAR_PRECISION_CAP when set, else 1 << 22.
unsigned class_polynomial_precision_cap();

// One evaluation at a fixed scale; `certified` reports the outcome.
ClassPolynomial class_polynomial_at(long D, unsigned scale_bits);
// Doubles the scale from `scale_bits` (default: the starting estimate) until
// certified; PrecisionError past the cap.
ClassPolynomial class_polynomial(long D, unsigned scale_bits = 0);

// The discriminant whose class polynomial is g, searching |D| up to four
// times the estimate (log |j| / pi)^2 from the largest root. The smallest |D|
// wins; every match is appended to `all_matches` when given.
std::optional<long> identify_cm(const IntPolynomial& g, std::vector<long>* all_matches = nullptr);

}  // namespace qstar

#endif  // QSTAR_CM_HPP
