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

#include "qstar/arith.hpp"

#include <algorithm>
#include <map>

#include "qstar/errors.hpp"

namespace qstar {

Integer parse_integer(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.front() == ' ' || s.front() == '+')) {
    s.erase(s.begin());
  }
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw InputError("empty integer literal");
  size_t start = s[0] == '-' ? 1 : 0;
  if (start == s.size() ||
      !std::all_of(s.begin() + static_cast<long>(start), s.end(),
                   [](char c) { return c >= '0' && c <= '9'; })) {
    throw InputError("malformed integer literal '" + s + "'");
  }
  return Integer(s, 10);
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Integer& value) { return value.get_str(10); }

std::string to_string(const Rational& value) { return value.get_str(10); }

bool is_square(const Integer& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

Integer isqrt(const Integer& n) {
  if (n < 0) throw DomainError("isqrt of a negative integer");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

Integer ipow(const Integer& base, unsigned long exponent) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

Rational rpow(const Rational& base, unsigned long exponent) {
  Rational r(ipow(base.get_num(), exponent), ipow(base.get_den(), exponent));
  return r;  // already canonical: powers of coprime integers stay coprime
}

bool is_integral(const Rational& value) { return value.get_den() == 1; }

size_t bit_length(const Integer& n) {
  return n == 0 ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2);
}

Integer round_nearest(const Rational& value) {
  Integer num = abs(value.get_num());
  const Integer& den = value.get_den();
  Integer q = (2 * num + den) / (2 * den);
  return value < 0 ? Integer(-q) : q;
}

namespace {

constexpr unsigned long kTrialBound = 1UL << 16;

const std::vector<unsigned long>& small_primes() {
  static const std::vector<unsigned long> primes = [] {
    std::vector<bool> sieve(kTrialBound + 1, true);
    std::vector<unsigned long> out;
    for (unsigned long i = 2; i <= kTrialBound; ++i) {
      if (!sieve[i]) continue;
      out.push_back(i);
      for (unsigned long j = i * i; j <= kTrialBound; j += i) sieve[j] = false;
    }
    return out;
  }();
  return primes;
}

bool probably_prime(const Integer& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

// Brent's variant of Pollard rho; returns a nontrivial factor or 0.
Integer pollard_brent(const Integer& n, unsigned long c, unsigned long budget) {
  Integer y = 2, x, q = 1, g = 1, ys, tmp;
  const unsigned long m = 128;
  unsigned long r = 1, iterations = 0;
  auto step = [&](Integer& v) {
    v = v * v + c;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  };
  do {
    x = y;
    for (unsigned long i = 0; i < r; ++i) step(y);
    unsigned long k = 0;
    do {
      ys = y;
      for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
        step(y);
        tmp = abs(x - y);
        q = q * tmp;
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
      iterations += m;
    } while (k < r && g == 1);
    r *= 2;
    if (iterations > budget) return 0;
  } while (g == 1);
  if (g == n) {
    do {
      step(ys);
      tmp = abs(x - ys);
      mpz_gcd(g.get_mpz_t(), tmp.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g == n ? Integer(0) : g;
}

void split_composite(const Integer& n, std::map<Integer, unsigned>& primes,
                     std::vector<Integer>& stuck) {
  if (n == 1) return;
  if (probably_prime(n)) {
    ++primes[n];
    return;
  }
  if (is_square(n)) {
    Integer r = isqrt(n);
    split_composite(r, primes, stuck);
    split_composite(r, primes, stuck);
    return;
  }
  for (unsigned long c = 1; c <= 3; ++c) {
    Integer f = pollard_brent(n, c, 1UL << 22);
    if (f != 0) {
      split_composite(f, primes, stuck);
      split_composite(Integer(n / f), primes, stuck);
      return;
    }
  }
  stuck.push_back(n);
}

}  // namespace

Factorization factor_integer(const Integer& n) {
  Factorization out;
  if (n == 0) throw DomainError("cannot factor zero");
  out.sign = n < 0 ? -1 : 1;
  Integer rest = abs(n);
  std::map<Integer, unsigned> primes;
  for (unsigned long p : small_primes()) {
    if (rest == 1) break;
    if (Integer(p) * p > rest) break;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++primes[Integer(p)];
    }
  }
  std::vector<Integer> stuck;
  split_composite(rest, primes, stuck);
  for (auto& [p, e] : primes) out.factors.push_back({p, e});
  for (const Integer& s : stuck) out.unfactored *= s;
  out.complete = stuck.empty();
  return out;
}

Integer squarefree_kernel(const Integer& n) {
  if (n == 0) throw DomainError("squarefree kernel of zero");
  Factorization f = factor_integer(n);
  Integer kernel = f.sign;
  for (const auto& pp : f.factors) {
    if (pp.exponent % 2 == 1) kernel *= pp.prime;
  }
  if (!f.complete) {
    // A leftover composite might hide a square factor; gcd against the
    // found primes cannot help, so only a perfect power check remains.
    if (!is_square(f.unfactored)) {
      throw PrecisionError("cannot decide the square class of " + to_string(n) +
                           ": composite cofactor " + to_string(f.unfactored));
    }
  }
  return kernel;
}

Integer squarefree_kernel(const Rational& r) {
  return squarefree_kernel(Integer(r.get_num() * r.get_den()));
}

bool is_squarefree(const Integer& n) {
  if (n == 0) return false;
  Factorization f = factor_integer(n);
  if (!f.complete) {
    throw PrecisionError("cannot decide squarefreeness of " + to_string(n));
  }
  return std::all_of(f.factors.begin(), f.factors.end(),
                     [](const PrimePower& pp) { return pp.exponent == 1; });
}

}  // namespace qstar
