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
#include <cstdint>
#include <random>

#include "qstar/algnum.hpp"
#include "qstar/errors.hpp"

namespace qstar {

namespace {

// ---- polynomials over F_p, p small ----

using u64 = uint64_t;
using ModPoly = std::vector<u64>;  // ascending, no trailing zeros

void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const ModPoly& a) { return static_cast<int>(a.size()) - 1; }

u64 powmod_u(u64 b, u64 e, u64 p) {
  u64 r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

u64 inv_u(u64 a, u64 p) { return powmod_u(a, p - 2, p); }

ModPoly reduce(const IntPolynomial& f, u64 p) {
  ModPoly out;
  for (const Integer& c : f.coeffs()) out.push_back(mpz_fdiv_ui(c.get_mpz_t(), p));
  trim(out);
  return out;
}

ModPoly sub(const ModPoly& a, const ModPoly& b, u64 p) {
  ModPoly c(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < c.size(); ++i) {
    u64 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
    c[i] = (x + p - y) % p;
  }
  trim(c);
  return c;
}

ModPoly mul(const ModPoly& a, const ModPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  ModPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  trim(c);
  return c;
}

std::pair<ModPoly, ModPoly> divmod(const ModPoly& a, const ModPoly& b, u64 p) {
  if (b.empty()) throw DomainError("division by zero polynomial mod p");
  ModPoly r = a;
  if (deg(a) < deg(b)) return {{}, r};
  ModPoly q(static_cast<size_t>(deg(a) - deg(b) + 1), 0);
  const u64 inv = inv_u(b.back(), p);
  for (int i = deg(a); i >= deg(b); --i) {
    const u64 f = r[static_cast<size_t>(i)] * inv % p;
    q[static_cast<size_t>(i - deg(b))] = f;
    if (f == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      u64& t = r[static_cast<size_t>(i - deg(b)) + j];
      t = (t + p - f * b[j] % p) % p;
    }
  }
  trim(q);
  trim(r);
  return {q, r};
}

ModPoly monic(const ModPoly& a, u64 p) {
  if (a.empty()) return a;
  const u64 inv = inv_u(a.back(), p);
  ModPoly out = a;
  for (u64& c : out) c = c * inv % p;
  return out;
}

ModPoly gcd(ModPoly a, ModPoly b, u64 p) {
  while (!b.empty()) {
    ModPoly r = divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

// s, t with s a + t b = 1, deg s < deg b, deg t < deg a; a, b coprime.
std::pair<ModPoly, ModPoly> bezout(const ModPoly& a, const ModPoly& b, u64 p) {
  ModPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1, p);
    ModPoly s2 = sub(s0, mul(q, s1, p), p);
    ModPoly t2 = sub(t0, mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (deg(r0) != 0) throw DomainError("bezout: inputs are not coprime mod p");
  const u64 inv = inv_u(r0[0], p);
  for (u64& c : s0) c = c * inv % p;
  for (u64& c : t0) c = c * inv % p;
  return {s0, t0};
}

ModPoly powmod(const ModPoly& base, const Integer& e, const ModPoly& f, u64 p) {
  ModPoly result{1};
  ModPoly b = divmod(base, f, p).second;
  for (size_t i = bit_length(e); i-- > 0;) {
    result = divmod(mul(result, result, p), f, p).second;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = divmod(mul(result, b, p), f, p).second;
  }
  return result;
}

void equal_degree(const ModPoly& f, int d, u64 p, std::mt19937_64& rng, std::vector<ModPoly>& out) {
  const int n = deg(f);
  if (n == d) {
    out.push_back(f);
    return;
  }
  const Integer e = (ipow(Integer(static_cast<unsigned long>(p)), static_cast<unsigned long>(d)) - 1) / 2;
  for (;;) {
    ModPoly a(static_cast<size_t>(n));
    for (u64& c : a) c = rng() % p;
    trim(a);
    if (deg(a) < 1) continue;
    ModPoly g = gcd(a, f, p);
    if (deg(g) <= 0) {
      ModPoly b = powmod(a, e, f, p);
      b = sub(b, ModPoly{1}, p);
      g = gcd(b, f, p);
    }
    if (deg(g) > 0 && deg(g) < n) {
      equal_degree(g, d, p, rng, out);
      equal_degree(monic(divmod(f, g, p).first, p), d, p, rng, out);
      return;
    }
  }
}

// Monic irreducible factors of a monic squarefree f.
std::vector<ModPoly> factor_mod_p(ModPoly f, u64 p) {
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::vector<ModPoly> out;
  const ModPoly x{0, 1};
  ModPoly h = x;
  for (int d = 1; 2 * d <= deg(f); ++d) {
    h = powmod(h, Integer(static_cast<unsigned long>(p)), f, p);
    ModPoly g = gcd(sub(h, x, p), f, p);
    if (deg(g) > 0) {
      equal_degree(g, d, p, rng, out);
      f = monic(divmod(f, g, p).first, p);
      h = divmod(h, f, p).second;
    }
  }
  if (deg(f) > 0) out.push_back(f);
  return out;
}

// ---- polynomials over Z / m ----

using ZPoly = std::vector<Integer>;

void trim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

void reduce(ZPoly& a, const Integer& m) {
  for (Integer& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  trim(a);
}

ZPoly lift_coeffs(const ModPoly& a) {
  ZPoly out;
  for (u64 c : a) out.emplace_back(static_cast<unsigned long>(c));
  return out;
}

ZPoly zadd(const ZPoly& a, const ZPoly& b, const Integer& m) {
  ZPoly c(std::max(a.size(), b.size()));
  for (size_t i = 0; i < c.size(); ++i) {
    if (i < a.size()) c[i] += a[i];
    if (i < b.size()) c[i] += b[i];
  }
  reduce(c, m);
  return c;
}

ZPoly zsub(const ZPoly& a, const ZPoly& b, const Integer& m) {
  ZPoly c(std::max(a.size(), b.size()));
  for (size_t i = 0; i < c.size(); ++i) {
    if (i < a.size()) c[i] += a[i];
    if (i < b.size()) c[i] -= b[i];
  }
  reduce(c, m);
  return c;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b, const Integer& m) {
  if (a.empty() || b.empty()) return {};
  ZPoly c(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j) mpz_addmul(c[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  reduce(c, m);
  return c;
}

// Division by a monic polynomial modulo m.
std::pair<ZPoly, ZPoly> zdivmod(const ZPoly& a, const ZPoly& h, const Integer& m) {
  ZPoly r = a;
  const int dh = static_cast<int>(h.size()) - 1;
  const int da = static_cast<int>(a.size()) - 1;
  if (da < dh) return {{}, r};
  ZPoly q(static_cast<size_t>(da - dh + 1));
  for (int i = da; i >= dh; --i) {
    Integer f = r[static_cast<size_t>(i)];
    mpz_fdiv_r(f.get_mpz_t(), f.get_mpz_t(), m.get_mpz_t());
    q[static_cast<size_t>(i - dh)] = f;
    if (f == 0) continue;
    for (size_t j = 0; j < h.size(); ++j) mpz_submul(r[static_cast<size_t>(i - dh) + j].get_mpz_t(), f.get_mpz_t(), h[j].get_mpz_t());
  }
  reduce(q, m);
  reduce(r, m);
  return {q, r};
}

struct LiftState {
  ZPoly g, h, s, t;
};

// One quadratic Hensel step (von zur Gathen - Gerhard, Algorithm 15.10):
// from f = g h, s g + t h = 1 mod m to the same relations mod m^2.
LiftState hensel_step(const ZPoly& f, const LiftState& in, const Integer& m2) {
  const ZPoly e = zsub(f, zmul(in.g, in.h, m2), m2);
  auto [q, r] = zdivmod(zmul(in.s, e, m2), in.h, m2);
  LiftState out;
  out.g = zadd(zadd(in.g, zmul(in.t, e, m2), m2), zmul(q, in.g, m2), m2);
  out.h = zadd(in.h, r, m2);
  ZPoly b = zsub(zadd(zmul(in.s, out.g, m2), zmul(in.t, out.h, m2), m2), ZPoly{1}, m2);
  auto [c, d] = zdivmod(zmul(in.s, b, m2), out.h, m2);
  out.s = zsub(in.s, d, m2);
  out.t = zsub(zsub(in.t, zmul(in.t, b, m2), m2), zmul(c, out.g, m2), m2);
  return out;
}

// Lifts the monic factorization of f (lc(f) times the product of the
// factors, mod p) to monic factors mod `modulus`, a power p^(2^j).
void lift_tree(const ZPoly& f, const std::vector<ModPoly>& factors, u64 p, const Integer& modulus,
               std::vector<ZPoly>& out) {
  if (factors.size() == 1) {
    // f = lc * F with F monic.
    Integer inv;
    Integer lc = f.back();
    if (mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), modulus.get_mpz_t()) == 0) {
      throw DomainError("leading coefficient not invertible during lifting");
    }
    ZPoly monic_f = f;
    for (Integer& c : monic_f) c *= inv;
    reduce(monic_f, modulus);
    out.push_back(std::move(monic_f));
    return;
  }
  const size_t half = factors.size() / 2;
  std::vector<ModPoly> left(factors.begin(), factors.begin() + static_cast<long>(half));
  std::vector<ModPoly> right(factors.begin() + static_cast<long>(half), factors.end());
  ModPoly g0{mpz_fdiv_ui(f.back().get_mpz_t(), p)};
  for (const ModPoly& a : left) g0 = mul(g0, a, p);
  ModPoly h0{1};
  for (const ModPoly& a : right) h0 = mul(h0, a, p);
  auto [s0, t0] = bezout(g0, h0, p);

  LiftState st{lift_coeffs(g0), lift_coeffs(h0), lift_coeffs(s0), lift_coeffs(t0)};
  Integer m(static_cast<unsigned long>(p));
  while (m < modulus) {
    Integer m2 = m * m;
    ZPoly fm = f;
    reduce(fm, m2);
    st = hensel_step(fm, st, m2);
    m = m2;
  }
  lift_tree(st.g, left, p, modulus, out);
  lift_tree(st.h, right, p, modulus, out);
}

IntPolynomial symmetric(const ZPoly& a, const Integer& m) {
  const Integer half = m / 2;
  std::vector<Integer> c = a;
  for (Integer& x : c) {
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    if (x > half) x -= m;
  }
  return IntPolynomial(std::move(c));
}

bool divides(const IntPolynomial& g, const IntPolynomial& f, IntPolynomial& quotient) {
  auto [q, r] = divmod(to_rational(f), to_rational(g));
  if (!r.is_zero()) return false;
  std::vector<Integer> c;
  for (const Rational& x : q.coeffs()) {
    if (x.get_den() != 1) return false;
    c.push_back(x.get_num());
  }
  quotient = IntPolynomial(std::move(c));
  return true;
}

u64 choose_prime(const IntPolynomial& f) {
  const Integer bad = f.leading() * discriminant(f);
  for (u64 p = 17;; p += 2) {
    if (!mpz_probab_prime_p(Integer(static_cast<unsigned long>(p)).get_mpz_t(), 30)) continue;
    if (!mpz_divisible_ui_p(bad.get_mpz_t(), p)) return p;
  }
}

// f primitive, squarefree, positive leading coefficient, degree >= 1.
std::vector<IntPolynomial> factor_squarefree(IntPolynomial f) {
  if (f.degree() <= 1) return {f};
  const u64 p = choose_prime(f);
  std::vector<ModPoly> modular = factor_mod_p(monic(reduce(f, p), p), p);
  if (modular.size() == 1) return {f};

  // Any factor of lc * f has coefficients below |lc| 2^n ||f||_2.
  Integer norm2 = 0;
  for (const Integer& c : f.coeffs()) norm2 += c * c;
  const Integer bound = abs(f.leading()) * (Integer(1) << f.degree()) * (isqrt(norm2) + 1);
  Integer modulus(static_cast<unsigned long>(p));
  while (modulus <= 2 * bound) modulus *= modulus;

  std::vector<ZPoly> lifted;
  lift_tree(ZPoly(f.coeffs()), modular, p, modulus, lifted);

  std::vector<IntPolynomial> found;
  size_t size = 1;
  while (2 * size <= lifted.size()) {
    bool progress = false;
    const size_t r = lifted.size();
    std::vector<size_t> idx(size);
    for (size_t i = 0; i < size; ++i) idx[i] = i;
    const Integer lc = f.leading();
    const Integer target_const = lc * f.coeffs()[0];
    for (;;) {
      // lc * prod of the chosen constant terms, as a cheap first filter.
      Integer c0 = lc;
      for (size_t i : idx) c0 = (c0 * (lifted[i].empty() ? Integer(0) : lifted[i][0])) % modulus;
      if (c0 < 0) c0 += modulus;
      if (c0 > modulus / 2) c0 -= modulus;
      bool plausible = c0 == 0 ? target_const == 0 : (target_const % c0 == 0);
      if (plausible) {
        ZPoly prod{lc};
        for (size_t i : idx) prod = zmul(prod, lifted[i], modulus);
        IntPolynomial g = primitive_part(symmetric(prod, modulus));
        IntPolynomial q;
        if (g.degree() >= 1 && divides(g, f, q)) {
          found.push_back(g);
          f = primitive_part(q);
          std::vector<ZPoly> rest;
          for (size_t i = 0; i < r; ++i) {
            if (std::find(idx.begin(), idx.end(), i) == idx.end()) rest.push_back(lifted[i]);
          }
          lifted = std::move(rest);
          progress = true;
          break;
        }
      }
      // Next combination in lexicographic order.
      size_t k = size;
      while (k > 0 && idx[k - 1] == r - size + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (size_t i = k; i < size; ++i) idx[i] = idx[i - 1] + 1;
    }
    if (!progress) ++size;
  }
  if (f.degree() >= 1) found.push_back(f);
  return found;
}

}  // namespace

std::vector<FactorPower> squarefree_decomposition(const IntPolynomial& p) {
  if (p.degree() < 1) return {};
  const RationalPolynomial f = to_rational(primitive_part(p));
  std::vector<FactorPower> out;
  RationalPolynomial a0 = gcd(f, derivative(f));
  RationalPolynomial b = divmod(f, a0).first;
  RationalPolynomial c = divmod(derivative(f), a0).first;
  RationalPolynomial d = c - derivative(b);
  for (unsigned i = 1; b.degree() > 0; ++i) {
    RationalPolynomial a = gcd(b, d);
    if (a.degree() > 0) out.push_back({primitive_part(a), i});
    b = divmod(b, a).first;
    c = divmod(d, a).first;
    d = c - derivative(b);
  }
  return out;
}

std::vector<FactorPower> factor_rational(const IntPolynomial& p) {
  if (p.degree() < 1) throw DomainError("factor_rational needs degree >= 1");
  std::vector<FactorPower> out;
  for (const FactorPower& part : squarefree_decomposition(p)) {
    for (IntPolynomial& g : factor_squarefree(part.factor)) out.push_back({primitive_part(g), part.multiplicity});
  }
  std::sort(out.begin(), out.end(), [](const FactorPower& a, const FactorPower& b) {
    if (a.factor != b.factor) return a.factor < b.factor;
    return a.multiplicity < b.multiplicity;
  });
  return out;
}

std::vector<FactorPower> factor_rational(const RationalPolynomial& p) {
  return factor_rational(primitive_part(p));
}

}  // namespace qstar
