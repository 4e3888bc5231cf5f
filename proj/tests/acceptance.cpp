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


// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails. QSTAR_SKIP_LONG_RUN skips the height-10^4 search.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "qstar/algnum.hpp"
#include "qstar/cm.hpp"
#include "qstar/fixtures.hpp"
#include "qstar/report.hpp"

using namespace qstar;

namespace {

const std::filesystem::path kData = QSTAR_TEST_DATA_DIR;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

// limit <= 0: no time limit.
void report(int id, bool ok, double secs, double limit, const std::string& detail) {
  const bool pass = ok && (limit <= 0 || secs < limit);
  if (!pass) ++failures;
  std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << id << "  (" << std::fixed;
  std::cout.precision(3);
  std::cout << secs << " s";
  if (limit > 0) std::cout << ", limit " << limit << " s";
  std::cout << ")  " << detail << "\n";
}

ModularDataset dataset(long level) { return load_dataset(dataset_path(level, kData)); }

RationalPolynomial rp(std::vector<Rational> c) { return RationalPolynomial(std::move(c)); }

void criterion1() {
  const SexticCurve& c = table1_row(67).curve;
  const auto t0 = Clock::now();
  const FGenerators g = rr_generators(c);
  const double secs = seconds_since(t0);
  const RationalPolynomial x = rp({0, 1});
  const XYExpr f3{rp({Rational(-1, 2), Rational(1, 2), -1, Rational(1, 2)}), rp({Rational(1, 2)})};
  const XYExpr f4{f3.px * x + rp({1}), f3.py * x};
  const XYExpr f5{f4.px * x - rp({1}), f4.py * x};
  const bool ok = g.f3 == f3 && g.f4 == f4 && g.f5 == f5;
  report(1, ok, secs, 1e-3, "f3 = (-1 + x - 2x^2 + x^3 + y)/2, f4 = x*f3 + 1, f5 = x*f4 - 1 on level 67");
}

void criterion2() {
  double worst = 0;
  bool ok = true;
  std::ostringstream detail;
  int exact = 0;
  long min_extra = 1L << 30;
  std::vector<long> translated;
  for (const TableRow& row : table1()) {
    const auto t0 = Clock::now();
    const ValidationReport v = validate_dataset(dataset(row.level), row.curve);
    worst = std::max(worst, seconds_since(t0));
    const bool required = row.level == 67 || row.level == 73 || row.level == 85;
    const bool is_exact = v.derived && v.derived_a == row.curve.coefficients();
    min_extra = std::min(min_extra, v.extra_verified);
    if (v.extra_verified < 10) ok = false;
    if (is_exact) {
      ++exact;
    } else if (!required && v.translation && v.translation == row.translation()) {
      translated.push_back(row.level);
    } else {
      ok = false;
      detail << "level " << row.level << " mismatch; ";
    }
  }
  detail << "67, 73, 85 exact; " << exact << "/" << table1().size() << " levels exact";
  for (long l : translated) detail << ", level " << l << " equal after the recorded translation x -> x + 2";
  detail << "; min extra vanishing coefficients " << min_extra;
  report(2, ok, worst, 5, detail.str() + " (time is the slowest level)");
}

struct Level67 {
  ModularDataset data = dataset(67);
  LevelContext ctx{derive_equation(data), data};
  std::vector<FExpression> js = express_all(ctx);
};

std::unique_ptr<Level67> criterion3() {
  const auto t0 = Clock::now();
  auto owned = std::make_unique<Level67>();
  Level67& l = *owned;
  bool ok = l.js.size() == 2;
  if (ok) {
    const FExpression& j1 = l.js[0];
    const FExpression& j2 = l.js[1];
    using G = Monomial::Gen;
    ok = j1.coefficient({G::F3, 22}) == -23 && j1.coefficient({G::F4, 21}) == 1 && j1.constant == -65536 &&
         j2.coefficient({G::F5, 21}) == 1 && j2.coefficient({G::F4, 21}) == 720 &&
         j2.coefficient({G::F3, 22}) == 179980 && j2.constant == 1073741824;
    const auto series = symmetric_j_series(l.ctx);
    for (size_t i = 0; ok && i < 2; ++i) {
      const LaurentSeries back = l.ctx.cache->materialize(l.js[i]);
      const long p = std::min(back.precision(), series[i].precision());
      ok = (back.truncated(p) - series[i].truncated(p)).is_zero();
    }
  }
  report(3, ok, seconds_since(t0), 60, "level 67 anchors for J_1, J_2 and full series reconstruction");
  return owned;
}

void criterion4(const Level67& l) {
  const auto t0 = Clock::now();
  auto cube = [](long a) { return Rational(ipow(Integer(a), 3)); };
  const std::vector<std::pair<CurvePoint, Rational>> expected = {
      {CurvePoint::infinity_minus(), cube(-32)}, {CurvePoint::affine(-1, 7), cube(255)},
      {CurvePoint::affine(-1, -7), cube(-5280)}, {CurvePoint::affine(0, 3), -3 * cube(160)},
      {CurvePoint::affine(0, -3), 0},            {CurvePoint::affine(1, 1), cube(20)},
      {CurvePoint::affine(1, -1), cube(-15)},    {CurvePoint::affine(2, 1), cube(-960)},
      {CurvePoint::affine(2, -1), 2 * cube(30)}};
  bool ok = true;
  std::string detail = "all 9 level 67 points contain the tabulated j";
  for (const auto& [p, j] : expected) {
    const RationalPolynomial g = j_polynomial_at_point(l.ctx, l.js, p);
    if (g.evaluate(j) != 0) {
      ok = false;
      detail = "missing j at " + p.to_string();
    }
  }
  const RationalPolynomial inf = j_polynomial_at_point(l.ctx, l.js, CurvePoint::infinity_minus());
  const RationalPolynomial lin = rp({32768, 1});
  if (inf != lin * lin) {
    ok = false;
    detail += "; inf- is not a double root";
  }
  report(4, ok, seconds_since(t0), 60, detail + "; -32768 is a double root at inf-");
}

std::set<std::string> table_points(const TableRow& row) {
  std::set<std::string> out{"inf+", "inf-"};
  const long t = row.translation().value_or(0);
  for (const CurvePoint& p : row.points_on_curve()) out.insert(CurvePoint::affine(p.x - t, p.y).to_string());
  return out;
}

void criterion5() {
  double total = 0;
  bool ok = true;
  std::string detail;
  for (const TableRow& row : table1()) {
    const SexticCurve c = row.translation() ? derive_equation(dataset(row.level)) : row.curve;
    const auto t0 = Clock::now();
    std::set<std::string> got;
    for (const CurvePoint& p : search_points(c, 100, 1)) got.insert(p.to_string());
    total += seconds_since(t0);
    if (got != table_points(row)) {
      ok = false;
      detail += " level " + std::to_string(row.level);
    }
  }
  report(5, ok, total, 10,
         ok ? "height 100 reproduces all " + std::to_string(table1().size()) + " tabulated point sets"
            : "mismatch at" + detail);

  if (std::getenv("QSTAR_SKIP_LONG_RUN")) {
    std::cout << "SKIP  criterion 5 long run (QSTAR_SKIP_LONG_RUN is set)\n";
    return;
  }
  double worst = 0;
  bool long_ok = true;
  int levels = 0;
  for (const TableRow& row : table1()) {
    if (!row.points_complete) continue;
    ++levels;
    const SexticCurve c = row.translation() ? derive_equation(dataset(row.level)) : row.curve;
    const auto t0 = Clock::now();
    std::set<std::string> got;
    for (const CurvePoint& p : search_points(c, 10000, std::max(1u, std::thread::hardware_concurrency()))) {
      got.insert(p.to_string());
    }
    worst = std::max(worst, seconds_since(t0));
    long_ok = long_ok && got == table_points(row);
  }
  std::cout << (long_ok && worst < 1800 ? "PASS" : "FAIL") << "  criterion 5 long run  (slowest level " << worst
            << " s, limit 1800 s)  " << levels << " complete levels, no additional points\n";
  if (!(long_ok && worst < 1800)) ++failures;
}

void criterion6() {
  // Each tabulated degree-1 j on levels 67 and 107 must map to a printed D.
  // A j printed with two different discriminants is checked against the
  // row whose pairing is consistent, and the conflict is reported.
  double worst = 0;
  bool ok = true;
  std::ostringstream detail;
  std::map<std::string, std::set<long>> printed;
  std::vector<const ResultRow*> rows;
  for (long level : {67L, 107L}) {
    for (const ResultRow& r : result_rows()) {
      if (r.level != level) continue;
      rows.push_back(&r);
      for (const JValue& j : r.j) {
        if (j.rational) printed[to_string(*j.rational)].insert(r.discriminants.begin(), r.discriminants.end());
      }
    }
  }
  int checked = 0;
  for (const ResultRow* r : rows) {
    for (const JValue& j : r->j) {
      if (!j.rational) continue;
      const auto t0 = Clock::now();
      const IntPolynomial g(std::vector<Integer>{-j.rational->get_num(), 1});
      const auto d = identify_cm(g);
      worst = std::max(worst, seconds_since(t0));
      ++checked;
      const bool in_row = d && std::count(r->discriminants.begin(), r->discriminants.end(), *d);
      if (in_row) continue;
      const bool elsewhere = d && printed[to_string(*j.rational)].count(*d);
      if (elsewhere && !r->anomaly.empty()) {
        detail << "level " << r->level << " " << r->point.to_string() << " prints D=" << r->discriminants[0]
               << " for j=" << j.text << ", identified D=" << *d << " as printed on another row; ";
      } else {
        ok = false;
        detail << "level " << r->level << " " << r->point.to_string() << " j=" << j.text << " gave "
               << (d ? std::to_string(*d) : "none") << "; ";
      }
    }
  }
  const auto t0 = Clock::now();
  const ClassPolynomial h = class_polynomial(-35);
  worst = std::max(worst, seconds_since(t0));
  // -(16 (15 + 7 sqrt 5))^3 = -(a + b sqrt 5)
  const Integer u = 240, v = 112;
  const Integer a = u * u * u + 15 * u * v * v, b = 3 * u * u * v + 5 * v * v * v;
  const IntPolynomial expected(std::vector<Integer>{a * a - 5 * b * b, 2 * a, 1});
  if (h.poly != expected) {
    ok = false;
    detail << "H_-35 differs from the surd expansion; ";
  }
  detail << checked << " degree-1 entries identified; H_-35 = " << to_string(h.poly);
  report(6, ok, worst, 10, detail.str() + " (time is the slowest call)");
}

void criterion7() {
  const auto t0 = Clock::now();
  std::ostringstream detail;
  bool ok = true;

  PipelineOptions opt;
  opt.points = {CurvePoint::affine(Rational(3, 2), Rational(-17, 8))};
  const PipelineResult r85 = run_pipeline(dataset(85), opt);
  bool found85 = false;
  for (const FactorReport& f : r85.reports.at(0).factors) {
    if (!f.cm_discriminant && f.element && same_multiquadratic_field(f.generators, {17, -95})) found85 = true;
  }
  ok = ok && found85;
  detail << "level 85 (3/2,-17/8): " << (found85 ? "Q(sqrt(17),sqrt(-95))" : "field not identified");

  opt.points = {CurvePoint::infinity_minus()};
  opt.allow_large = true;
  opt.jobs = std::max(1u, std::thread::hardware_concurrency());
  const PipelineResult r390 = run_pipeline(dataset(390), opt);
  std::vector<Integer> gens;
  for (const FactorReport& f : r390.reports.at(0).factors) {
    if (f.factor.degree() == 16 && f.element) gens = f.generators;
  }
  const bool match390 = !gens.empty() && same_multiquadratic_field(gens, {3, 5, 7, 11});
  ok = ok && match390;
  detail << "; level 390 inf-: expected Q(sqrt(3),sqrt(5),sqrt(7),sqrt(11)), got "
         << (gens.empty() ? std::string("no multiquadratic degree-16 factor") : field_name(gens));
  const double secs = seconds_since(t0);
  report(7, ok, secs, 120, detail.str());

  // Constructed element of Q(sqrt 3, sqrt 5, sqrt 7, sqrt 11), for reference.
  const auto t1 = Clock::now();
  std::vector<Rational> coords(16, 0);
  coords[0] = 1;
  coords[1] = 1;
  coords[2] = 2;
  coords[4] = 3;
  coords[8] = 5;
  coords[15] = Rational(1, 2);
  const MultiQuadElement theta({3, 5, 7, 11}, coords);
  const IntPolynomial g = primitive_part(conjugate_product(theta));
  const auto e = identify_multiquadratic(g);
  const bool oracle = e && same_multiquadratic_field(e->generators(), {3, 5, 7, 11});
  std::cout << "      criterion 7 reference: constructed degree-16 element -> "
            << (e ? field_name(e->generators()) : std::string("not identified")) << " ("
            << seconds_since(t1) << " s)" << (oracle ? "" : "  [unexpected]") << "\n";
}

bool valid_discriminant(long D) { return D < 0 && ((-D) % 4 == 0 || (-D) % 4 == 3); }

void criterion8() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::ostringstream detail;

  // Involution identities.
  bool inv_ok = true;
  for (const TableRow& row : table1()) {
    const FGenerators g = rr_generators(row.curve);
    inv_ok = inv_ok && g.f3 - g.f3.conjugate() == XYExpr{rp({}), rp({1})} &&
             g.f4 - g.f4.conjugate() == XYExpr{rp({}), rp({0, 1})} &&
             g.f5 - g.f5.conjugate() == XYExpr{rp({}), rp({0, 0, 1})};
  }
  ok = ok && inv_ok;
  detail << "involutions " << (inv_ok ? "ok" : "FAILED");

  // Factorization round trip on products of Eisenstein irreducibles.
  std::mt19937_64 rng(8);
  bool fac_ok = true;
  for (int t = 0; t < 200; ++t) {
    std::vector<IntPolynomial> parts;
    int total = 0;
    const int target = 1 + static_cast<int>(rng() % 12);
    while (total < target) {
      const int d = std::min(target - total, 1 + static_cast<int>(rng() % 4));
      std::vector<Integer> c(static_cast<size_t>(d) + 1);
      const long p = (rng() % 2) ? 2 : 3;
      c[static_cast<size_t>(d)] = 1;
      for (int i = 1; i < d; ++i) c[static_cast<size_t>(i)] = p * (static_cast<long>(rng() % 9) - 4);
      c[0] = p * (1 + static_cast<long>(rng() % (p - 1))) * ((rng() % 2) ? 1 : -1);
      if (d == 1) c[0] = static_cast<long>(rng() % 61) - 30;
      parts.emplace_back(std::move(c));
      total += d;
    }
    IntPolynomial prod(std::vector<Integer>{1});
    for (const auto& p : parts) prod = prod * p;
    std::vector<IntPolynomial> got;
    for (const auto& f : factor_rational(prod)) {
      for (unsigned k = 0; k < f.multiplicity; ++k) got.push_back(f.factor);
    }
    std::sort(parts.begin(), parts.end());
    std::sort(got.begin(), got.end());
    fac_ok = fac_ok && got == parts;
  }
  ok = ok && fac_ok;
  detail << "; 200 factorization round trips " << (fac_ok ? "ok" : "FAILED");

  // Precision doubling.
  int stable = 0, unstable = 0;
  for (long D = -3; D >= -600; --D) {
    if (!valid_discriminant(D)) continue;
    const ClassPolynomial h = class_polynomial(D);
    const ClassPolynomial h2 = class_polynomial_at(D, 2 * h.scale_bits);
    (h.certified && h2.certified && h.poly == h2.poly) ? ++stable : ++unstable;
  }
  ok = ok && unstable == 0;
  detail << "; class polynomials stable for " << stable << " discriminants";
  if (unstable) detail << " (" << unstable << " UNSTABLE)";

  // Reduced-form counts against a direct scan.
  int form_mismatch = 0;
  for (long D = -3; D >= -3000; --D) {
    if (!valid_discriminant(D)) continue;
    long count = 0;
    const long bound = static_cast<long>(std::sqrt(-D / 3.0));
    for (long a = 1; a <= bound; ++a) {
      for (long b = -a; b <= a; ++b) {
        if ((b * b - D) % (4 * a)) continue;
        const long c = (b * b - D) / (4 * a);
        if (c < a || (b < 0 && (-b == a || a == c)) || std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
        ++count;
      }
    }
    if (count != static_cast<long>(reduced_forms(D).size())) ++form_mismatch;
  }
  ok = ok && form_mismatch == 0;
  detail << "; reduced-form counts " << (form_mismatch ? "MISMATCH" : "match") << " for |D| <= 3000";

  // One class per genus for every printed discriminant.
  std::set<long> ds;
  for (const ResultRow& r : result_rows()) ds.insert(r.discriminants.begin(), r.discriminants.end());
  std::vector<long> failing;
  for (long D : ds) {
    if (!one_class_per_genus(D)) failing.push_back(D);
  }
  ok = ok && failing.empty();
  detail << "; one class per genus for " << ds.size() - failing.size() << "/" << ds.size() << " printed D";
  for (long D : failing) detail << " (fails: D=" << D << ", h=" << class_number(D) << ")";

  report(8, ok, seconds_since(t0), 0, detail.str());
}

}  // namespace

int main() {
  std::cout << "qstar acceptance\n";
  criterion1();
  criterion2();
  const auto l67 = criterion3();
  criterion4(*l67);
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  std::cout << (failures ? std::to_string(failures) + " criterion line(s) failed\n" : "all criteria passed\n");
  return failures ? 1 : 0;
}
