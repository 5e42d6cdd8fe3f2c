#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "../src/ecq.hpp"
#include "../vendor/doctest.h"

using namespace qcv;
using ecq::CurveQ;

namespace {

mpq_class q(long num, long den = 1) { return mpq_class(num) / mpq_class(den); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code;
  }
  return ErrorCode::Internal;
}

std::vector<unsigned> class_degrees(const ecq::ClassParity& cp) {
  std::vector<unsigned> all;
  for (const auto& b : cp.blocks)
    all.insert(all.end(), b.degrees.begin(), b.degrees.end());
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace

TEST_CASE("curve construction and invariants") {
  // y^2 = x^3 - x: c4 = 48, disc = 64, j = 1728
  CurveQ e = ecq::make_curve(0, 0, 0, -1, 0);
  CHECK(e.c4 == 48);
  CHECK(e.disc == 64);
  CHECK(e.j == 1728);

  // y^2 + y = x^3 - x^2 (conductor 11): disc = -11, j = -4096/11
  CurveQ f = ecq::make_curve(0, -1, 1, 0, 0);
  CHECK(f.disc == -11);
  CHECK(f.j == q(-4096, 11));

  CHECK(code_of([] { ecq::make_curve(0, 0, 0, 0, 0); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("curve from j") {
  CHECK(ecq::curve_from_j(0).a6 == 1);
  CHECK(ecq::curve_from_j(0).j == 0);
  CHECK(ecq::curve_from_j(1728).a4 == 1);
  CHECK(ecq::curve_from_j(1728).j == 1728);

  CurveQ e = ecq::curve_from_j(1792);
  CHECK(e.a1 == 1);
  CHECK(e.a4 == q(-36, 64));
  CHECK(e.j == 1792);

  const mpq_class jj = q(-35937, 4);
  CHECK(ecq::curve_from_j(jj).j == jj);
}

TEST_CASE("integral short model") {
  // already short with integer coefficients: unchanged
  ecq::ShortForm s = ecq::short_form(ecq::make_curve(0, 0, 0, 2, 3));
  CHECK(s.A == 2);
  CHECK(s.B == 3);

  // j = 1792 model clears denominators to y^2 = x^3 - 756x + 1512
  ecq::ShortForm t = ecq::short_form(ecq::curve_from_j(1792));
  CHECK(t.A == -756);
  CHECK(t.B == 1512);
}

TEST_CASE("division polynomials: small cases and bounds") {
  CurveQ e = ecq::make_curve(0, 0, 0, 2, 3);
  CHECK(ecq::division_poly(e, 1) == poly::QPoly{1});
  CHECK(ecq::division_poly(e, 2) == poly::QPoly{2});
  // psi_3 = 3x^4 + 6ax^2 + 12bx - a^2 with a = 2, b = 3
  CHECK(ecq::division_poly(e, 3) == poly::QPoly{-4, 36, 12, 0, 3});

  CHECK(code_of([&] { ecq::division_poly(e, 0); }) == ErrorCode::OutOfRange);
  CHECK(code_of([&] { ecq::division_poly(e, 31); }) == ErrorCode::CapExceeded);
  CHECK(code_of([&] { ecq::division_poly(e, 12, 10); }) ==
        ErrorCode::CapExceeded);
  CHECK(code_of([&] { ecq::primitive_kernel_poly(e, 1); }) ==
        ErrorCode::OutOfRange);
}

TEST_CASE("division polynomial degree law on random curves") {
  std::mt19937_64 rng(20250819);
  std::uniform_int_distribution<long> coef(-20, 20);
  int done = 0;
  while (done < 10) {
    const long a = coef(rng), b = coef(rng);
    // a couple of the samples get non-integral coefficients
    const long den = (done % 5 == 4) ? 7 : 1;
    CurveQ e;
    try {
      e = ecq::make_curve(0, 0, 0, q(a, den), q(b, den));
    } catch (const Error&) {
      continue;  // singular draw
    }
    for (unsigned n = 1; n <= 20; ++n) {
      const long expect =
          (n % 2 == 1) ? (long(n) * n - 1) / 2 : (long(n) * n - 4) / 2;
      CHECK(poly::deg(ecq::division_poly(e, n)) == expect);
    }
    ++done;
  }
}

TEST_CASE("primitive kernel polynomials: Moebius consistency") {
  CurveQ e = ecq::make_curve(0, 0, 0, -1, 1);
  // n = 2 keeps the full 2-division cubic
  poly::QPoly p2 = ecq::primitive_kernel_poly(e, 2);
  CHECK(poly::deg(p2) == 3);
  CHECK(p2 == poly::QPoly{2, -2, 0, 2});

  // the degrees of the exact-order pieces partition the n-division locus:
  // sum over d | n, d >= 2 equals deg psi_n plus 3 for the y-divided
  // 2-torsion cubic when n is even
  for (CurveQ c : {e, ecq::make_curve(1, 0, 1, q(-3, 2), 2)}) {
    for (unsigned n = 2; n <= 12; ++n) {
      long sum = 0;
      for (unsigned d = 2; d <= n; ++d)
        if (n % d == 0) sum += poly::deg(ecq::primitive_kernel_poly(c, d));
      const long full = poly::deg(ecq::division_poly(c, n)) +
                        (n % 2 == 0 ? 3 : 0);
      CHECK(sum == full);
    }
  }
}

TEST_CASE("factor degree caps") {
  CHECK(ecq::factor_degrees(poly::QPoly{-1, 0, 1}) ==
        std::vector<unsigned>{1, 1});
  CHECK(code_of([] { ecq::factor_degrees({}); }) == ErrorCode::InvalidArgument);
  poly::QPoly big(66, 0);
  big[0] = 1;
  big[65] = 1;
  CHECK(code_of([&] { ecq::factor_degrees(big); }) == ErrorCode::CapExceeded);
}

TEST_CASE("Velu 2-isogenies and the level-2 modular relation") {
  CurveQ e = ecq::make_curve(0, 0, 0, -1, 0);  // full rational 2-torsion
  auto iso = ecq::velu_two_isogenous(e);
  REQUIRE(iso.size() == 3);
  // ordered by the kernel x-coordinate -1, 0, 1
  CHECK(iso[0].a4 == -11);
  CHECK(iso[0].a6 == 14);
  CHECK(iso[1].a4 == 4);
  CHECK(iso[1].a6 == 0);
  CHECK(iso[2].a4 == -11);
  CHECK(iso[2].a6 == -14);
  for (const auto& c : iso) CHECK(ecq::phi2_relation_holds(e.j, c.j));

  CHECK_FALSE(ecq::phi2_relation_holds(0, 1));

  // x^3 + 2 is irreducible, so no rational kernel
  CHECK(code_of([] {
          ecq::velu_two_isogenous(ecq::make_curve(0, 0, 0, 0, 2));
        }) == ErrorCode::NotFound);
}

TEST_CASE("order-4 kernel polynomial over the quartic-special j") {
  // j = 3^3 * 5 * 7^5 / 2^7: the order-4 kernel polynomial is a single
  // irreducible sextic
  const mpq_class j = q(27) * 5 * 16807 / 128;
  CurveQ e = ecq::curve_from_j(j);
  auto degs = ecq::factor_degrees(ecq::primitive_kernel_poly(e, 4));
  CHECK(degs == std::vector<unsigned>{6});
}

TEST_CASE("order-7 division polynomial shadows") {
  // both j-values give factor degrees {3, 21} for psi_7, an odd
  // x-coordinate field that the parity verdict must leave open
  const mpq_class j1 = -(q(27) * 13 * 479 * 479 * 479) / 16384;
  const mpq_class j2 = q(351, 4);
  for (const mpq_class& j : {j1, j2}) {
    CurveQ e = ecq::curve_from_j(j);
    auto degs = ecq::factor_degrees(ecq::division_poly(e, 7));
    CHECK(degs == std::vector<unsigned>{3, 21});
    auto v = ecq::odd_degree_torsion_parity(e, 7);
    CHECK(v.kind == ecq::Parity::Inconclusive);
  }
}

TEST_CASE("single-curve parity verdicts") {
  // rational 5-torsion point on y^2 + y = x^3 - x^2
  auto v5 = ecq::odd_degree_torsion_parity(ecq::make_curve(0, -1, 1, 0, 0), 5);
  CHECK(v5.kind == ecq::Parity::HasOddXField);
  CHECK(v5.odd_degree == 1);

  // n = 2: the x-field degree is the point degree
  auto v2 = ecq::odd_degree_torsion_parity(ecq::make_curve(0, 0, 0, 0, 2), 2);
  CHECK(v2.kind == ecq::Parity::HasOddXField);
  CHECK(v2.odd_degree == 3);

  // order-4 kernel polynomial splits as two cubics on the p = 3 special
  // j-values; no rational x-coordinate, so the verdict stays open
  for (const mpq_class& j : {q(109503, 64), q(-35937, 4)}) {
    CurveQ e = ecq::curve_from_j(j);
    CHECK(ecq::factor_degrees(ecq::primitive_kernel_poly(e, 4)) ==
          std::vector<unsigned>{3, 3});
    CHECK(ecq::odd_degree_torsion_parity(e, 4).kind ==
          ecq::Parity::Inconclusive);
  }

  // order-12 kernel polynomial on the two CM-adjacent j-values factors as
  // {12, 36}: even on the curve itself
  for (long j : {1792L, 406749952L}) {
    CurveQ e = ecq::curve_from_j(q(j));
    CHECK(ecq::factor_degrees(ecq::primitive_kernel_poly(e, 12)) ==
          std::vector<unsigned>{12, 36});
    CHECK(ecq::odd_degree_torsion_parity(e, 12).kind ==
          ecq::Parity::AllEven);
  }
}

TEST_CASE("2-isogeny class parity at order 4") {
  // all four special j-values: every factor degree across the class is
  // even, resolving what the single-curve verdict left open
  const std::vector<mpq_class> js = {
      q(109503, 64), q(-35937, 4),
      -(q(27) * 13 * 479 * 479 * 479) / 16384, q(351, 4)};
  for (const auto& j : js) {
    auto cp = ecq::two_isogeny_class_parity(ecq::curve_from_j(j), 4);
    CHECK(cp.all_even);
    CHECK(class_degrees(cp) == std::vector<unsigned>{6, 6, 6});
  }

  CHECK(code_of([] {
          ecq::two_isogeny_class_parity(ecq::curve_from_j(0), 4);
        }) == ErrorCode::Unsupported);
  CHECK(code_of([] {
          ecq::two_isogeny_class_parity(ecq::curve_from_j(1728), 4);
        }) == ErrorCode::Unsupported);
}

TEST_CASE("2-isogeny class parity at order 12") {
  auto cp = ecq::two_isogeny_class_parity(ecq::curve_from_j(q(1792)), 12);
  CHECK(cp.all_even);
  CHECK(class_degrees(cp) ==
        std::vector<unsigned>{6, 6, 18, 18, 24, 72});
}

TEST_CASE("Weber function values") {
  // generic: c2 c3 x / Delta
  CHECK(ecq::weber_value(2, 1, 5) == q(10, -19));
  // c3 = 0 (j = 1728): c2^2 x^2 / Delta
  CHECK(ecq::weber_value(2, 0, 5) == q(4 * 25, 8));
  // c2 = 0 (j = 0): c3 x^3 / Delta
  CHECK(ecq::weber_value(0, 2, 5) == q(2 * 125, -108));
  // singular model rejected (27 = 27)
  CHECK(code_of([] { ecq::weber_value(3, 1, 1); }) ==
        ErrorCode::InvalidArgument);

  // twist invariance: (c2, c3, x) -> (u^4 c2, u^6 c3, u^2 x)
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> pick(-9, 9);
  for (int i = 0; i < 20; ++i) {
    long u = 0;
    while (u == 0) u = pick(rng);
    const mpq_class u2 = q(u) * u, u4 = u2 * u2, u6 = u4 * u2;
    const std::vector<std::pair<long, long>> models = {
        {2, 1}, {2, 0}, {0, 2}, {5, -3}};
    for (auto [c2, c3] : models) {
      const mpq_class x = q(pick(rng), 11);
      const mpq_class lhs = ecq::weber_value(c2, c3, x);
      const mpq_class rhs = ecq::weber_value(u4 * c2, u6 * c3, u2 * x);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("degree-3 hauptmodul values") {
  auto v1 = ecq::hauptmodul_f3(1);
  CHECK_FALSE(v1.is_cusp);
  CHECK(v1.value == q(-10218313, 17576));
  CHECK(ecq::hauptmodul_f3(0).value == 0);
  CHECK(ecq::hauptmodul_f3(-6).value == 0);
  CHECK(ecq::hauptmodul_f3(3).is_cusp);
}
