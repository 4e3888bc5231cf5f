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

#ifndef QSTAR_ALGNUM_HPP
#define QSTAR_ALGNUM_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qstar/arith.hpp"
#include "qstar/polynomial.hpp"

namespace qstar {

struct FactorPower {
  IntPolynomial factor;  // primitive, positive leading coefficient
  unsigned multiplicity;
};

// Irreducible factors over Q with multiplicities, sorted by degree and then
// by coefficients from the top down. The product equals p up to a constant.
std::vector<FactorPower> factor_rational(const IntPolynomial& p);
std::vector<FactorPower> factor_rational(const RationalPolynomial& p);
// Yun's algorithm; squarefree, pairwise coprime parts with multiplicities.
std::vector<FactorPower> squarefree_decomposition(const IntPolynomial& p);

/// a + b sqrt(d), d squarefree and not 0 or 1.
struct QuadraticSurd {
  Rational a;
  Rational b;
  Integer d;

  std::string to_string() const;  // "a + b*sqrt(d)"
  friend bool operator==(const QuadraticSurd& x, const QuadraticSurd& y) {
    return x.a == y.a && x.b == y.b && x.d == y.d;
  }
};

// Roots (-B +- e sqrt(d)) / 2A of an irreducible quadratic, the one with
// positive b first. DomainError when the discriminant is a square.
std::pair<QuadraticSurd, QuadraticSurd> quadratic_surd_roots(const IntPolynomial& q);

// For an irreducible quartic with Galois group V4, the two smallest of its
// three quadratic subfield radicands ordered by (|d|, positive first).
std::optional<std::pair<Integer, Integer>> v4_quartic_subfields(const IntPolynomial& q);

/// Element of Q(sqrt(d_1), ..., sqrt(d_k)): sum over subsets S of
/// coords[S] * prod_{i in S} sqrt(d_i), with S encoded as a bit mask.
class MultiQuadElement {
 public:
  MultiQuadElement(std::vector<Integer> generators, std::vector<Rational> coords);
  static MultiQuadElement rational(const std::vector<Integer>& generators, const Rational& value);

  const std::vector<Integer>& generators() const { return gens_; }
  const std::vector<Rational>& coords() const { return coords_; }
  bool is_rational() const;

  // Flips the sign of sqrt(d_i) for every i in the mask.
  MultiQuadElement conjugate(unsigned mask) const;
  friend MultiQuadElement operator+(const MultiQuadElement& a, const MultiQuadElement& b);
  friend MultiQuadElement operator-(const MultiQuadElement& a, const MultiQuadElement& b);
  friend MultiQuadElement operator*(const MultiQuadElement& a, const MultiQuadElement& b);
  friend bool operator==(const MultiQuadElement& a, const MultiQuadElement& b) {
    return a.gens_ == b.gens_ && a.coords_ == b.coords_;
  }

  std::string to_string() const;

 private:
  std::vector<Integer> gens_;
  std::vector<Rational> coords_;
};

// prod over all 2^k sign flips of (x - theta^sigma), expanded exactly.
// DomainError if a coefficient is not rational.
RationalPolynomial conjugate_product(const MultiQuadElement& theta);

// When the roots of g are the 2^k conjugates of an element of a
// multiquadratic field, that element, certified by conjugate_product.
std::optional<MultiQuadElement> identify_multiquadratic(const IntPolynomial& g);

// "Q(sqrt(d1),sqrt(d2))".
std::string field_name(const std::vector<Integer>& generators);
// Whether two radicand lists generate the same multiquadratic field.
bool same_multiquadratic_field(const std::vector<Integer>& a, const std::vector<Integer>& b);

}  // namespace qstar

#endif  // QSTAR_ALGNUM_HPP
