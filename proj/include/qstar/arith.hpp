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

#ifndef QSTAR_ARITH_HPP
#define QSTAR_ARITH_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qstar {

// Exact arithmetic is GMP-backed. mpq_class keeps values canonical
// (coprime numerator/denominator, positive denominator) after every
// operation; never bind these expression templates to `auto`.
using Integer = mpz_class;
using Rational = mpq_class;

Integer parse_integer(std::string_view text);
// Accepts "a", "-a", "a/b" with b != 0.
Rational parse_rational(std::string_view text);
std::string to_string(const Integer& value);
std::string to_string(const Rational& value);

bool is_square(const Integer& n);
Integer isqrt(const Integer& n);  // floor(sqrt(n)), n >= 0
Integer ipow(const Integer& base, unsigned long exponent);
Rational rpow(const Rational& base, unsigned long exponent);
bool is_integral(const Rational& value);
size_t bit_length(const Integer& n);
Integer round_nearest(const Rational& value);  // ties away from zero

struct PrimePower {
  Integer prime;
  unsigned exponent;
};

// Trial division followed by Pollard-Brent rho. `complete` is false when a
// composite cofactor survived the work budget; it is then reported with
// exponent 1 as `unfactored`.
struct Factorization {
  int sign = 1;
  std::vector<PrimePower> factors;  // sorted by prime
  Integer unfactored = 1;
  bool complete = true;
};
Factorization factor_integer(const Integer& n);

// Squarefree kernel with sign: n = kernel * e^2 with kernel squarefree.
// Throws PrecisionError when n cannot be factored far enough to decide.
Integer squarefree_kernel(const Integer& n);
// Kernel of the rational r = num/den (same square class as num*den).
Integer squarefree_kernel(const Rational& r);
bool is_squarefree(const Integer& n);

}  // namespace qstar

#endif  // QSTAR_ARITH_HPP
