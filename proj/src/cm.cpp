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
#include <complex>
#include <cstdlib>
#include <mutex>
#include <numbers>
#include <numeric>

#include "qstar/bigfloat.hpp"
#include "qstar/cm.hpp"
#include "qstar/errors.hpp"
#include "qstar/fixed.hpp"
#include "qstar/series.hpp"

namespace qstar {

namespace {

void check_discriminant(long D) {
  const long r = ((D % 4) + 4) % 4;
  if (D >= 0 || (r != 0 && r != 1)) {
    throw InputError("discriminant must be negative and 0 or 1 mod 4, got " + std::to_string(D));
  }
  if (D < -(1L << 40)) throw InputError("discriminant too large: " + std::to_string(D));
}

// Shared j coefficients 1/q + 744 + ...; grown on demand.
std::vector<Integer> j_coefficients(long terms) {
  static std::mutex mutex;
  static std::vector<Integer> cache;
  std::lock_guard lock(mutex);
  if (static_cast<long>(cache.size()) < terms + 1) {
    const LaurentSeries j = j_expansion(std::max(terms, 2 * static_cast<long>(cache.size())));
    cache = j.numerators();
  }
  return std::vector<Integer>(cache.begin(), cache.begin() + terms + 1);
}

// Smallest K such that the j tail beyond q^K stays below 2^-(bits+1) when
// Im tau >= y >= sqrt(3)/2. Uses c_n <= exp(4 pi sqrt n); past n = 6 the
// terms shrink by a factor of at least 17, so twice the first omitted term
// bounds the tail.
long tail_terms(double y, unsigned bits) {
  const double target = -(static_cast<double>(bits) + 2) * std::numbers::ln2;
  for (long k = 6;; ++k) {
    const double n = static_cast<double>(k + 1);
    if (4 * std::numbers::pi * std::sqrt(n) - 2 * std::numbers::pi * y * n < target) return k;
  }
}

}  // namespace

bool QuadForm::is_reduced() const {
  if (std::labs(b) > a || a > c) return false;
  if ((std::labs(b) == a || a == c) && b < 0) return false;
  return true;
}

std::vector<QuadForm> reduced_forms(long D) {
  check_discriminant(D);
  std::vector<QuadForm> out;
  const long n = -D;
  for (long a = 1; 3 * a * a <= n; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      if (((b - D) & 1) != 0) continue;
      const long num = b * b - D;
      if (num % (4 * a) != 0) continue;
      const long c = num / (4 * a);
      const QuadForm f{a, b, c};
      if (!f.is_reduced()) continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      out.push_back(f);
    }
  }
  std::sort(out.begin(), out.end(), [](const QuadForm& x, const QuadForm& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  return out;
}

long class_number(long D) { return static_cast<long>(reduced_forms(D).size()); }

std::vector<int> genus_characters(long D, const QuadForm& f) {
  check_discriminant(D);
  // An odd value of f prime to D.
  Integer m = 0;
  for (long s = 1; m == 0; ++s) {
    if (s > 1000) throw DomainError("no value of the form prime to 2D found");
    for (long x = -s; x <= s && m == 0; ++x) {
      for (long y = 0; y <= s && m == 0; ++y) {
        if (std::max(std::labs(x), y) != s || std::gcd(std::labs(x), y) != 1) continue;
        const Integer v = Integer(f.a) * x * x + Integer(f.b) * x * y + Integer(f.c) * y * y;
        Integer g;
        const Integer twice_d = Integer(2) * D;
        mpz_gcd(g.get_mpz_t(), v.get_mpz_t(), twice_d.get_mpz_t());
        if (g == 1) m = v;
      }
    }
  }
  std::vector<int> chars;
  for (const PrimePower& pp : factor_integer(Integer(D)).factors) {
    if (pp.prime == 2) continue;
    chars.push_back(mpz_legendre(m.get_mpz_t(), pp.prime.get_mpz_t()));
  }
  if (D % 4 == 0) {
    const long n = -D / 4;
    Integer r8;
    mpz_fdiv_r_ui(r8.get_mpz_t(), m.get_mpz_t(), 8);
    const long mod8 = r8.get_si();
    const int delta = (mod8 % 4 == 1) ? 1 : -1;
    const int epsilon = (mod8 == 1 || mod8 == 7) ? 1 : -1;
    switch (n % 8) {
      case 1: case 5: case 4: chars.push_back(delta); break;
      case 2: chars.push_back(delta * epsilon); break;
      case 6: chars.push_back(epsilon); break;
      case 0: chars.push_back(delta); chars.push_back(epsilon); break;
      default: break;  // n = 3 mod 4
    }
  }
  return chars;
}

bool one_class_per_genus(long D) {
  const std::vector<QuadForm> forms = reduced_forms(D);
  std::vector<std::vector<int>> seen;
  for (const QuadForm& f : forms) {
    std::vector<int> v = genus_characters(D, f);
    if (std::find(seen.begin(), seen.end(), v) != seen.end()) return false;
    seen.push_back(std::move(v));
  }
  return true;
}

unsigned default_class_polynomial_scale(long D) {
  const double h = static_cast<double>(class_number(D));
  return 128 + static_cast<unsigned>(std::ceil(1.2 * std::numbers::pi * std::sqrt(static_cast<double>(-D)) * h / std::numbers::ln2));
}

unsigned class_polynomial_precision_cap() {
  if (const char* env = std::getenv("QSTAR_PRECISION_CAP")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v >= 64 && v <= (1UL << 30)) return static_cast<unsigned>(v);
    throw InputError(std::string("QSTAR_PRECISION_CAP must be an integer in [64, 2^30], got ") + env);
  }
  return 1u << 22;
}

ClassPolynomial class_polynomial_at(long D, unsigned scale_bits) {
  const std::vector<QuadForm> forms = reduced_forms(D);
  ClassPolynomial out;
  out.discriminant = D;
  out.scale_bits = scale_bits;
  const unsigned w = std::max(scale_bits, 64u) + 32;

  long max_terms = 0;
  std::vector<long> terms;
  for (const QuadForm& f : forms) {
    // Im tau = sqrt|D| / 2a, shaded down against rounding.
    const double y = std::sqrt(static_cast<double>(-D)) / (2.0 * static_cast<double>(f.a)) * (1 - 1e-9);
    terms.push_back(tail_terms(y, w));
    max_terms = std::max(max_terms, terms.back());
  }
  const std::vector<Integer> c = j_coefficients(max_terms + 1);  // c[0] is the 1/q coefficient

  const FixedReal pi_w = pi(w);
  const FixedReal root_d = sqrt_fixed(FixedReal::from_integer(Integer(-D), w));
  const FixedReal pi_root_d = pi_w * root_d;

  std::vector<FixedComplex> poly{FixedComplex::from_integer(1, w)};
  try {
    for (size_t idx = 0; idx < forms.size(); ++idx) {
      const QuadForm& f = forms[idx];
      // 2 pi i tau = (-pi sqrt|D| - i pi b) / a
      const FixedComplex z(-(pi_root_d / Integer(f.a)), -((pi_w * Integer(f.b)) / Integer(f.a)));
      const FixedComplex q = exp_complex(z);
      const FixedComplex q_inv = exp_complex(-z);
      const long k = terms[idx];
      FixedComplex acc = FixedComplex::from_integer(c[static_cast<size_t>(k + 1)], w);
      for (long n = k - 1; n >= 0; --n) acc = acc * q + FixedComplex::from_integer(c[static_cast<size_t>(n + 1)], w);
      FixedComplex j = q_inv + acc;
      j = FixedComplex(j.re.with_error(j.re.error_ulps() + 1), j.im.with_error(j.im.error_ulps() + 1));

      std::vector<FixedComplex> next(poly.size() + 1, FixedComplex::from_integer(0, w));
      for (size_t i = 0; i < poly.size(); ++i) {
        next[i + 1] = next[i + 1] + poly[i];
        next[i] = next[i] - poly[i] * j;
      }
      poly = std::move(next);
    }
  } catch (const PrecisionError&) {
    out.certified = false;
    return out;
  }
  const Integer half = Integer(1) << (w - 1);
  bool certified = true;
  std::vector<Integer> coeffs;
  for (const FixedComplex& z : poly) {
    if (!z.re.rounds_certainly() || z.im.magnitude_bound() >= half) certified = false;
    coeffs.push_back(z.re.nearest_integer());
  }
  out.poly = IntPolynomial(std::move(coeffs));
  out.certified = certified;
  return out;
}

ClassPolynomial class_polynomial(long D, unsigned scale_bits) {
  check_discriminant(D);
  const unsigned cap = class_polynomial_precision_cap();
  unsigned bits = scale_bits == 0 ? default_class_polynomial_scale(D) : scale_bits;
  for (;;) {
    if (bits > cap) {
      throw PrecisionError("class polynomial for D = " + std::to_string(D) + " needs more than " +
                           std::to_string(cap) + " bits (QSTAR_PRECISION_CAP)");
    }
    ClassPolynomial h = class_polynomial_at(D, bits);
    if (h.certified) return h;
    bits *= 2;
  }
}

namespace {

// Double-precision j at the principal form's tau, as a prefilter.
std::complex<long double> principal_j(long D, const std::vector<Integer>& c) {
  const long double q_abs = std::exp(-std::numbers::pi_v<long double> * std::sqrt(static_cast<long double>(-D)));
  const long double q = (D % 2 != 0) ? -q_abs : q_abs;
  long double acc = 0;
  for (size_t n = c.size(); n-- > 1;) acc = acc * q + static_cast<long double>(mpz_get_d(c[n].get_mpz_t()));
  return {1 / q + acc, 0};
}

}  // namespace

std::optional<long> identify_cm(const IntPolynomial& g, std::vector<long>* all_matches) {
  const int n = g.degree();
  if (n < 1 || n > 16 || g.leading() != 1) return std::nullopt;
  std::vector<std::complex<long double>> roots;
  long double max_abs = 0;
  if (g.coeffs()[0] == 0) {
    roots.emplace_back(0, 0);
  }
  {
    std::vector<Integer> stripped = g.coeffs();
    while (!stripped.empty() && stripped.front() == 0) stripped.erase(stripped.begin());
    IntPolynomial h(std::move(stripped));
    if (h.degree() >= 1) {
      for (const BigComplex& z : polynomial_roots(h, 96)) {
        roots.emplace_back(static_cast<long double>(z.re.to_double()), static_cast<long double>(z.im.to_double()));
        max_abs = std::max(max_abs, static_cast<long double>(abs(z).to_double()));
      }
    }
  }
  const long double log_max = max_abs > 1 ? std::log(max_abs) : 0;
  const long double estimate = (log_max / std::numbers::pi_v<long double>) * (log_max / std::numbers::pi_v<long double>);
  const long limit = static_cast<long>(4 * estimate) + 64;
  const std::vector<Integer> c = j_coefficients(24);

  std::vector<long> matches;
  for (long absd = 3; absd <= limit; ++absd) {
    const long D = -absd;
    const long r = ((D % 4) + 4) % 4;
    if (r != 0 && r != 1) continue;
    const std::complex<long double> j0 = principal_j(D, c);
    const long double tol = 1e-6L + 1e-9L * std::abs(j0);
    bool near = false;
    for (const auto& z : roots) {
      if (std::abs(z - j0) <= tol) near = true;
    }
    if (!near || class_number(D) != n) continue;
    if (class_polynomial(D).poly == g) matches.push_back(D);
  }
  if (all_matches) all_matches->insert(all_matches->end(), matches.begin(), matches.end());
  if (matches.empty()) return std::nullopt;
  return matches.front();
}

}  // namespace qstar
