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
#include <numeric>
#include <thread>

#include "qstar/errors.hpp"
#include "qstar/hyperelliptic.hpp"

namespace qstar {

namespace {

// Moduli for the square-class prefilter, roughly in order of rejection power
// per lookup.
constexpr long kModuli[] = {64, 63, 65, 11, 17, 19, 23, 29, 31, 37, 41, 43, 47};

struct Hit {
  long v;
  long u;
  Integer root;  // sqrt(L * G(u, v))
};

class Searcher {
 public:
  Searcher(const SexticCurve& curve, long height) : height_(height) {
    scale_ = 1;
    for (const Rational& a : curve.coefficients()) {
      mpz_lcm(scale_.get_mpz_t(), scale_.get_mpz_t(), a.get_den_mpz_t());
    }
    for (int i = 0; i < 6; ++i) {
      const Rational& a = curve.a(i);
      coeffs_[static_cast<size_t>(i)] = a.get_num() * (scale_ / a.get_den());
    }
    coeffs_[6] = scale_;
    for (long m : kModuli) tables_.push_back(build_table(m));
  }

  void run(long v_start, long v_step, std::vector<Hit>& out) const {
    const size_t nm = tables_.size();
    std::vector<long> ures(nm);
    std::vector<const unsigned char*> rows(nm);
    for (long v = v_start; v <= height_; v += v_step) {
      for (size_t j = 0; j < nm; ++j) {
        const long m = kModuli[j];
        rows[j] = tables_[j].data() + static_cast<size_t>((v % m) * m);
        ures[j] = ((-height_ % m) + m) % m;
      }
      for (long u = -height_; u <= height_; ++u) {
        bool pass = true;
        for (size_t j = 0; j < nm; ++j) {
          if (!rows[j][ures[j]]) {
            pass = false;
            break;
          }
        }
        if (pass && std::gcd(u, v) == 1) test(u, v, out);
        for (size_t j = 0; j < nm; ++j) {
          if (++ures[j] == kModuli[j]) ures[j] = 0;
        }
      }
    }
  }

  const Integer& scale() const { return scale_; }

 private:
  // L * sum B_i u^i v^(6-i).
  Integer target(const Integer& u, const Integer& v) const {
    Integer acc = 0, vpow = 1;
    std::array<Integer, 7> vp;
    for (int i = 0; i <= 6; ++i) {
      vp[static_cast<size_t>(i)] = vpow;
      vpow *= v;
    }
    for (int i = 6; i >= 0; --i) acc = acc * u + coeffs_[static_cast<size_t>(i)] * vp[static_cast<size_t>(6 - i)];
    return acc * scale_;
  }

  std::vector<unsigned char> build_table(long m) const {
    std::vector<unsigned char> square(static_cast<size_t>(m), 0);
    for (long r = 0; r < m; ++r) square[static_cast<size_t>((r * r) % m)] = 1;
    std::vector<unsigned char> table(static_cast<size_t>(m * m), 0);
    for (long v = 0; v < m; ++v) {
      for (long u = 0; u < m; ++u) {
        Integer t = target(u, v);
        Integer r;
        mpz_fdiv_r_ui(r.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(m));
        table[static_cast<size_t>(v * m + u)] = square[r.get_ui()];
      }
    }
    return table;
  }

  void test(long u, long v, std::vector<Hit>& out) const {
    Integer t = target(u, v);
    if (t < 0 || !mpz_perfect_square_p(t.get_mpz_t())) return;
    out.push_back({v, u, isqrt(t)});
  }

  long height_;
  Integer scale_;
  std::array<Integer, 7> coeffs_;
  std::vector<std::vector<unsigned char>> tables_;
};

}  // namespace

std::vector<CurvePoint> search_points(const SexticCurve& curve, long height, unsigned jobs) {
  if (height < 1) throw InputError("height bound must be positive");
  jobs = std::max(1u, jobs);
  Searcher searcher(curve, height);

  std::vector<std::vector<Hit>> found(jobs);
  if (jobs == 1) {
    searcher.run(1, 1, found[0]);
  } else {
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < jobs; ++t) {
      workers.emplace_back([&, t] { searcher.run(1 + static_cast<long>(t), static_cast<long>(jobs), found[t]); });
    }
    for (auto& w : workers) w.join();
  }
  std::vector<Hit> hits;
  for (auto& part : found) hits.insert(hits.end(), part.begin(), part.end());
  std::sort(hits.begin(), hits.end(),
            [](const Hit& a, const Hit& b) { return a.v != b.v ? a.v < b.v : a.u < b.u; });

  std::vector<CurvePoint> points;
  for (const Hit& h : hits) {
    Rational x(h.u, h.v);
    Rational y(h.root, searcher.scale() * ipow(h.v, 3));
    y.canonicalize();
    points.push_back(CurvePoint::affine(x, y));
    if (y != 0) points.push_back(CurvePoint::affine(x, -y));
  }
  points.push_back(CurvePoint::infinity_plus());
  points.push_back(CurvePoint::infinity_minus());
  return points;
}

}  // namespace qstar
