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
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>

#include "qstar/algnum.hpp"
#include "qstar/bigfloat.hpp"
#include "qstar/errors.hpp"

namespace qstar {

namespace {

// Orders radicands by |d|, positive before negative.
bool radicand_less(const Integer& a, const Integer& b) {
  const int c = cmp(abs(a), abs(b));
  if (c != 0) return c < 0;
  return a > b;
}

std::string coefficient_term(const Rational& c, const std::string& radical, bool first) {
  std::string out;
  const bool negative = c < 0;
  const Rational m = abs(c);
  if (first) out += negative ? "-" : "";
  else out += negative ? " - " : " + ";
  if (radical.empty()) return out + qstar::to_string(m);
  if (m != 1) out += qstar::to_string(m) + "*";
  return out + radical;
}

}  // namespace

// ---- quadratic surds ----

std::string QuadraticSurd::to_string() const {
  const std::string radical = "sqrt(" + qstar::to_string(d) + ")";
  if (a == 0) return coefficient_term(b, radical, true);
  return coefficient_term(a, "", true) + coefficient_term(b, radical, false);
}

std::pair<QuadraticSurd, QuadraticSurd> quadratic_surd_roots(const IntPolynomial& q) {
  if (q.degree() != 2) throw DomainError("quadratic_surd_roots needs a quadratic");
  const Integer& A = q.coeffs()[2];
  const Integer& B = q.coeffs()[1];
  const Integer& C = q.coeffs()[0];
  const Integer disc = B * B - 4 * A * C;
  if (disc >= 0 && is_square(disc)) throw DomainError("quadratic has rational roots: " + to_string(q));
  const Integer d = squarefree_kernel(disc);
  const Integer e = isqrt(Integer(disc / d));
  Rational a(-B, 2 * A);
  Rational b(e, 2 * abs(A));
  a.canonicalize();
  b.canonicalize();
  return {QuadraticSurd{a, b, d}, QuadraticSurd{a, -b, d}};
}

// ---- V4 quartics ----

std::optional<std::pair<Integer, Integer>> v4_quartic_subfields(const IntPolynomial& q) {
  if (q.degree() != 4) throw DomainError("v4_quartic_subfields needs a quartic");
  const Rational lc(q.leading());
  const Rational a = Rational(q.coeffs()[3]) / lc;
  const Rational b = Rational(q.coeffs()[2]) / lc;
  const Rational c = Rational(q.coeffs()[1]) / lc;
  const Rational d = Rational(q.coeffs()[0]) / lc;
  // Resolvent cubic with roots r1 r2 + r3 r4 and its conjugates.
  const RationalPolynomial resolvent = RationalPolynomial::from_descending(
      {Rational(1), -b, a * c - 4 * d, -(a * a * d - 4 * b * d + c * c)});
  std::vector<Rational> roots;
  for (const FactorPower& f : factor_rational(resolvent)) {
    if (f.factor.degree() != 1) return std::nullopt;
    for (unsigned i = 0; i < f.multiplicity; ++i) roots.emplace_back(-f.factor.coeffs()[0], f.factor.coeffs()[1]);
  }
  if (roots.size() != 3) return std::nullopt;
  std::vector<Integer> kernels;
  for (Rational& theta : roots) {
    theta.canonicalize();
    // (r1 + r2 - r3 - r4)^2, or (r1 r2 - r3 r4)^2 when the first vanishes.
    Rational radicand = a * a - 4 * b + 4 * theta;
    if (radicand == 0) radicand = theta * theta - 4 * d;
    if (radicand == 0) return std::nullopt;
    const Integer k = squarefree_kernel(radicand);
    if (k == 1) return std::nullopt;
    kernels.push_back(k);
  }
  std::sort(kernels.begin(), kernels.end(), radicand_less);
  if (squarefree_kernel(Integer(kernels[0] * kernels[1])) != kernels[2]) return std::nullopt;
  return std::make_pair(kernels[0], kernels[1]);
}

// ---- multiquadratic elements ----

MultiQuadElement::MultiQuadElement(std::vector<Integer> generators, std::vector<Rational> coords)
    : gens_(std::move(generators)), coords_(std::move(coords)) {
  if (gens_.size() > 16 || coords_.size() != (size_t{1} << gens_.size())) {
    throw DomainError("multiquadratic element needs 2^k coordinates");
  }
  for (const Integer& d : gens_) {
    if (d == 0 || d == 1 || !is_squarefree(d)) throw DomainError("radicand must be squarefree and not 0 or 1: " + qstar::to_string(d));
  }
}

MultiQuadElement MultiQuadElement::rational(const std::vector<Integer>& generators, const Rational& value) {
  std::vector<Rational> c(size_t{1} << generators.size());
  c[0] = value;
  return MultiQuadElement(generators, std::move(c));
}

bool MultiQuadElement::is_rational() const {
  return std::all_of(coords_.begin() + 1, coords_.end(), [](const Rational& c) { return c == 0; });
}

MultiQuadElement MultiQuadElement::conjugate(unsigned mask) const {
  MultiQuadElement out = *this;
  for (size_t s = 0; s < coords_.size(); ++s) {
    if (std::popcount(static_cast<unsigned>(s) & mask) % 2 == 1) out.coords_[s] = -coords_[s];
  }
  return out;
}

namespace {

void require_same_field(const MultiQuadElement& a, const MultiQuadElement& b) {
  if (a.generators() != b.generators()) throw DomainError("multiquadratic elements over different generators");
}

}  // namespace

MultiQuadElement operator+(const MultiQuadElement& a, const MultiQuadElement& b) {
  require_same_field(a, b);
  MultiQuadElement out = a;
  for (size_t s = 0; s < out.coords_.size(); ++s) out.coords_[s] += b.coords_[s];
  return out;
}

MultiQuadElement operator-(const MultiQuadElement& a, const MultiQuadElement& b) {
  require_same_field(a, b);
  MultiQuadElement out = a;
  for (size_t s = 0; s < out.coords_.size(); ++s) out.coords_[s] -= b.coords_[s];
  return out;
}

MultiQuadElement operator*(const MultiQuadElement& a, const MultiQuadElement& b) {
  require_same_field(a, b);
  const size_t n = a.coords_.size();
  // prod_{i in S & T} d_i for every overlap mask.
  std::vector<Integer> overlap(n, Integer(1));
  for (size_t s = 1; s < n; ++s) {
    const unsigned low = static_cast<unsigned>(std::countr_zero(s));
    overlap[s] = overlap[s & (s - 1)] * a.gens_[low];
  }
  std::vector<Rational> c(n);
  for (size_t s = 0; s < n; ++s) {
    if (a.coords_[s] == 0) continue;
    for (size_t t = 0; t < n; ++t) {
      if (b.coords_[t] == 0) continue;
      c[s ^ t] += a.coords_[s] * b.coords_[t] * overlap[s & t];
    }
  }
  return MultiQuadElement(a.gens_, std::move(c));
}

std::string MultiQuadElement::to_string() const {
  std::string out;
  for (size_t s = 0; s < coords_.size(); ++s) {
    if (coords_[s] == 0) continue;
    std::string radical;
    for (size_t i = 0; i < gens_.size(); ++i) {
      if (s >> i & 1) radical += (radical.empty() ? "" : "*") + ("sqrt(" + qstar::to_string(gens_[i]) + ")");
    }
    out += coefficient_term(coords_[s], radical, out.empty());
  }
  return out.empty() ? "0" : out;
}

RationalPolynomial conjugate_product(const MultiQuadElement& theta) {
  const std::vector<Integer>& gens = theta.generators();
  const MultiQuadElement one = MultiQuadElement::rational(gens, 1);
  // Coefficients in ascending order.
  std::vector<MultiQuadElement> poly{one};
  const unsigned count = 1u << gens.size();
  for (unsigned mask = 0; mask < count; ++mask) {
    const MultiQuadElement root = theta.conjugate(mask);
    std::vector<MultiQuadElement> next(poly.size() + 1, MultiQuadElement::rational(gens, 0));
    for (size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] = next[i + 1] + poly[i];
      next[i] = next[i] - poly[i] * root;
    }
    poly = std::move(next);
  }
  std::vector<Rational> out;
  for (const MultiQuadElement& c : poly) {
    if (!c.is_rational()) throw DomainError("conjugate product has an irrational coefficient");
    out.push_back(c.coords()[0]);
  }
  return RationalPolynomial(std::move(out));
}

// ---- numeric identification ----

namespace {

constexpr mpfr_prec_t kMaxIdentifyBits = 4096;
constexpr int kPowerSums = 4;

struct Character {
  uint32_t mask;  // bit j set when the character is -1 on root j
  Integer d;
};

// Multiquadratic identification at one numeric precision. g_int is monic
// with algebraic-integer roots.
std::optional<MultiQuadElement> identify_at(const IntPolynomial& g_int, const Integer& scale,
                                            const RationalPolynomial& target, mpfr_prec_t bits) {
  const int n = g_int.degree();
  const int k = std::countr_zero(static_cast<unsigned>(n));
  const std::vector<BigComplex> roots = polynomial_roots(g_int, bits);
  const mpfr_prec_t prec = roots[0].precision();

  std::vector<std::vector<BigComplex>> powers(static_cast<size_t>(n), std::vector<BigComplex>());
  for (int j = 0; j < n; ++j) {
    BigComplex acc = roots[static_cast<size_t>(j)];
    for (int m = 1; m <= kPowerSums; ++m) {
      powers[static_cast<size_t>(j)].push_back(acc);
      acc = acc * roots[static_cast<size_t>(j)];
    }
  }
  // 2^abs_exp[m-1] bounds sum_j |r_j|^m. A signed sum of these powers is
  // off by at most that bound times 2^-bits per unit of m, so its square is
  // within 2^(2 abs_exp - bits + 8) of the true value.
  std::vector<long> abs_exp;
  for (int m = 1; m <= kPowerSums; ++m) {
    BigReal total(prec);
    for (int j = 0; j < n; ++j) total = total + abs(powers[static_cast<size_t>(j)][static_cast<size_t>(m - 1)]);
    abs_exp.push_back(total.exponent());
  }
  auto near_integer = [&](const BigComplex& z, long sum_exp, Integer& out) {
    const long tolerance_exp = 2 * std::max(sum_exp, 0L) - static_cast<long>(bits) + 8;
    if (tolerance_exp > -3) return false;  // not enough precision to decide
    out = z.re.round();
    const BigReal err = abs(z - BigComplex(BigReal(out, prec), BigReal(prec)));
    return err.is_zero() || err.exponent() <= tolerance_exp;
  };

  std::vector<Character> chars;
  const uint32_t full = (n == 32) ? 0xffffffffu : ((1u << n) - 1);
  // Subsets of roots 1..n-1 of size n/2 - 1; together with root 0 they form
  // the +1 half of a candidate character.
  std::vector<int> idx(static_cast<size_t>(n / 2 - 1));
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i) + 1;
  for (;;) {
    uint32_t plus = 1;
    for (int i : idx) plus |= 1u << i;
    const uint32_t minus = full & ~plus;
    // gcd of the nonzero squared power sums; same square class as each.
    Integer shared = 0, first = 0;
    bool ok = true;
    // A character's power sums are integer multiples of sqrt(d) for every m;
    // a few of them weed out sign patterns that only look like one.
    for (int m = 1; m <= kPowerSums && ok; ++m) {
      BigComplex s(prec);
      for (int j = 0; j < n; ++j) {
        const BigComplex& v = powers[static_cast<size_t>(j)][static_cast<size_t>(m - 1)];
        s = (plus >> j & 1) ? s + v : s - v;
      }
      Integer sq;
      if (!near_integer(s * s, abs_exp[static_cast<size_t>(m - 1)], sq)) {
        ok = false;
      } else if (sq != 0) {
        if (first == 0) first = sq;
        else if (!is_square(Integer(first * sq))) ok = false;
        mpz_gcd(shared.get_mpz_t(), shared.get_mpz_t(), sq.get_mpz_t());
      }
    }
    if (ok && first != 0 && !is_square(first)) chars.push_back({minus, first < 0 ? Integer(-shared) : shared});
    // Next combination.
    size_t pos = idx.size();
    while (pos > 0 && idx[pos - 1] == n - static_cast<int>(idx.size()) + static_cast<int>(pos) - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (size_t i = pos; i < idx.size(); ++i) idx[i] = idx[i - 1] + 1;
  }
  if (static_cast<int>(chars.size()) != n - 1) return std::nullopt;
  for (Character& c : chars) c.d = squarefree_kernel(c.d);
  std::map<uint32_t, Integer> by_mask;
  for (const Character& c : chars) by_mask[c.mask] = c.d;
  for (const Character& a : chars) {
    for (const Character& b : chars) {
      if (a.mask == b.mask) continue;
      auto it = by_mask.find(a.mask ^ b.mask);
      if (it == by_mask.end() || it->second != squarefree_kernel(Integer(a.d * b.d))) return std::nullopt;
    }
  }
  std::sort(chars.begin(), chars.end(), [](const Character& a, const Character& b) {
    if (a.d != b.d) return radicand_less(a.d, b.d);
    return a.mask < b.mask;
  });
  // Greedy F2-independent generators.
  std::vector<Character> gens;
  std::vector<uint32_t> span{0};
  for (const Character& c : chars) {
    if (std::find(span.begin(), span.end(), c.mask) != span.end()) continue;
    gens.push_back(c);
    const size_t size = span.size();
    for (size_t i = 0; i < size; ++i) span.push_back(span[i] ^ c.mask);
    if (static_cast<int>(gens.size()) == k) break;
  }
  if (static_cast<int>(gens.size()) != k) return std::nullopt;

  std::vector<Integer> radicands;
  for (const Character& c : gens) radicands.push_back(c.d);
  std::vector<BigComplex> sqrt_gen;
  for (const Integer& d : radicands) sqrt_gen.push_back(sqrt_of_integer(d, prec));

  const size_t count = size_t{1} << k;
  std::vector<Rational> coords(count);
  for (size_t s = 0; s < count; ++s) {
    Integer d_s = 1;
    BigComplex root_s(BigReal(1L, prec), BigReal(prec));
    for (int i = 0; i < k; ++i) {
      if (s >> i & 1) {
        d_s *= radicands[static_cast<size_t>(i)];
        root_s = root_s * sqrt_gen[static_cast<size_t>(i)];
      }
    }
    BigComplex t(prec);
    for (int j = 0; j < n; ++j) {
      int flips = 0;
      for (int i = 0; i < k; ++i) {
        if ((s >> i & 1) && (gens[static_cast<size_t>(i)].mask >> j & 1)) ++flips;
      }
      t = (flips % 2 == 0) ? t + roots[static_cast<size_t>(j)] : t - roots[static_cast<size_t>(j)];
    }
    Integer norm;
    if (!near_integer(t * t, abs_exp[0], norm)) return std::nullopt;
    // t = n c_s sqrt(d_s), so n^2 c_s^2 = norm / d_s.
    Rational ratio(norm, d_s);
    ratio.canonicalize();
    if (ratio < 0 || !is_square(ratio.get_num()) || !is_square(ratio.get_den())) return std::nullopt;
    Rational c(isqrt(ratio.get_num()), isqrt(ratio.get_den()) * n);
    c.canonicalize();
    if ((t / root_s).re.sign() < 0) c = -c;
    coords[s] = c / Rational(scale);
  }
  MultiQuadElement theta(radicands, std::move(coords));
  if (conjugate_product(theta) != target) return std::nullopt;
  return theta;
}

}  // namespace

std::optional<MultiQuadElement> identify_multiquadratic(const IntPolynomial& g_in) {
  const IntPolynomial g = primitive_part(g_in);
  const int n = g.degree();
  if (n < 1 || n > 16 || std::popcount(static_cast<unsigned>(n)) != 1) return std::nullopt;
  const Integer lc = g.leading();
  std::vector<Rational> monic_coeffs;
  for (const Integer& c : g.coeffs()) monic_coeffs.emplace_back(c, lc);
  for (Rational& c : monic_coeffs) c.canonicalize();
  const RationalPolynomial target(monic_coeffs);
  if (n == 1) return MultiQuadElement({}, {-monic_coeffs[0]});
  if (n == 2) {
    const Integer disc = g.coeffs()[1] * g.coeffs()[1] - 4 * g.coeffs()[2] * g.coeffs()[0];
    if (disc >= 0 && is_square(disc)) return std::nullopt;
    const QuadraticSurd r = quadratic_surd_roots(g).first;
    MultiQuadElement theta({r.d}, {r.a, r.b});
    if (conjugate_product(theta) != target) return std::nullopt;
    return theta;
  }
  // lc^(n-1) g(x / lc) is monic with integer coefficients; its roots are lc
  // times those of g.
  std::vector<Integer> scaled(static_cast<size_t>(n + 1));
  scaled[static_cast<size_t>(n)] = 1;
  for (int i = n - 1; i >= 0; --i) scaled[static_cast<size_t>(i)] = g.coeffs()[static_cast<size_t>(i)] * ipow(lc, static_cast<unsigned long>(n - 1 - i));
  const IntPolynomial g_int(std::move(scaled));

  // Fujiwara's bound 2 max |a_(n-i)|^(1/i) on the roots; squared power sums
  // up to kPowerSums need that many times its bit size on top.
  long root_bits = 0;
  for (int i = 1; i <= n; ++i) {
    const long b = static_cast<long>(bit_length(g_int.coeffs()[static_cast<size_t>(n - i)]));
    root_bits = std::max(root_bits, (b + i - 1) / i + 1);
  }
  for (mpfr_prec_t bits = 256; bits <= kMaxIdentifyBits; bits *= 2) {
    const mpfr_prec_t working = bits + static_cast<mpfr_prec_t>(2 * kPowerSums * root_bits);
    try {
      if (auto theta = identify_at(g_int, lc, target, working)) return theta;
    } catch (const PrecisionError&) {
    }
  }
  return std::nullopt;
}

// ---- field names ----

std::string field_name(const std::vector<Integer>& generators) {
  std::string out = "Q(";
  for (size_t i = 0; i < generators.size(); ++i) {
    if (i) out += ",";
    out += "sqrt(" + qstar::to_string(generators[i]) + ")";
  }
  return out + ")";
}

namespace {

std::set<Integer> square_classes(const std::vector<Integer>& gens) {
  std::set<Integer> out;
  const size_t count = size_t{1} << gens.size();
  for (size_t s = 0; s < count; ++s) {
    Integer p = 1;
    for (size_t i = 0; i < gens.size(); ++i) {
      if (s >> i & 1) p *= gens[i];
    }
    out.insert(squarefree_kernel(p));
  }
  return out;
}

}  // namespace

bool same_multiquadratic_field(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  return square_classes(a) == square_classes(b);
}

}  // namespace qstar
