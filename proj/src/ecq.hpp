#pragma once
// Elliptic curves over Q with exact arithmetic: construction from j,
// division polynomials in the x-only convention, primitive kernel
// polynomials, Velu 2-isogenies, factor-degree multisets, parity verdicts
// for odd-degree torsion x-fields, and Weber function values.

#include <vector>

#include <gmpxx.h>

#include "common.hpp"
#include "factor.hpp"
#include "poly.hpp"

namespace qcv::ecq {

inline constexpr unsigned kDivisionPolyCap = 30;
inline constexpr unsigned kFactorDegreeCap = 64;

// long Weierstrass y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
struct CurveQ {
  mpq_class a1, a2, a3, a4, a6;
  mpq_class b2, b4, b6, b8, c4, c6, disc, j;
};

CurveQ make_curve(const mpq_class& a1, const mpq_class& a2,
                  const mpq_class& a3, const mpq_class& a4,
                  const mpq_class& a6);

// j = 0 and j = 1728 get the fixed models y^2 = x^3 + 1 and y^2 = x^3 + x;
// otherwise y^2 + xy = x^3 - (36/(j-1728))x - 1/(j-1728)
CurveQ curve_from_j(const mpq_class& j);

// integral short model y^2 = x^3 + Ax + B isomorphic to e over Q
// (x-coordinates rescale by a rational square, so factor degrees of the
// kernel polynomials do not depend on the scaling chosen here)
struct ShortForm {
  mpz_class A, B;
};
ShortForm short_form(const CurveQ& e);

// x-only division polynomial on the short model: psi_n for odd n, psi_n/y
// for even n; degree (n^2-1)/2 resp. (n^2-4)/2
poly::QPoly division_poly(const CurveQ& e, unsigned n,
                          unsigned cap = kDivisionPolyCap);

// Moebius quotient of division polynomials; roots are exactly the
// x-coordinates of points of exact order n (n = 2 gives the 2-torsion cubic)
poly::QPoly primitive_kernel_poly(const CurveQ& e, unsigned n,
                                  unsigned cap = kDivisionPolyCap);

// complete irreducible factor degrees over Q, ascending with multiplicity
std::vector<unsigned> factor_degrees(const poly::QPoly& f);

// one codomain per rational 2-torsion point, ordered by its x-coordinate;
// NotFound when the 2-division cubic has no rational root
std::vector<CurveQ> velu_two_isogenous(const CurveQ& e);

// Parity of the x-coordinate fields of exact-order-n points. AllEven means
// every irreducible factor of the primitive kernel polynomial has even
// degree. An odd factor alone does not decide the degree of the point (the
// y-coordinate may force a quadratic step), so beyond n <= 2 the verdict
// is HasOddXField(1) only when a rational point is exhibited, and
// Inconclusive otherwise.
enum class Parity { AllEven, HasOddXField, Inconclusive };
struct ParityVerdict {
  Parity kind;
  unsigned odd_degree;  // witness degree when kind == HasOddXField
};
ParityVerdict odd_degree_torsion_parity(const CurveQ& e, unsigned n,
                                        unsigned cap = kDivisionPolyCap);

// Exact-order-n parity across the whole 2-isogeny class: one block per
// irreducible factor of the 2-division cubic. Rational roots give a Velu
// codomain over Q; a degree d >= 2 factor gives the codomain over
// Q[z]/(f) whose kernel polynomial is pushed down to Q by the norm.
// Unsupported for j in {0, 1728} (extra automorphisms).
struct ParityBlock {
  unsigned block_degree;          // degree of the cubic factor
  std::vector<unsigned> degrees;  // factor degrees of the block polynomial
};
struct ClassParity {
  std::vector<ParityBlock> blocks;
  bool all_even;
};
ClassParity two_isogeny_class_parity(const CurveQ& e, unsigned n,
                                     unsigned cap = kDivisionPolyCap);

// h(x) on y^2 = 4x^3 - c2 x - c3 with Delta = c2^3 - 27 c3^2:
// c2 c3 x / Delta generically, c2^2 x^2 / Delta when c3 = 0 (j = 1728),
// c3 x^3 / Delta when c2 = 0 (j = 0)
mpq_class weber_value(const mpq_class& c2, const mpq_class& c3,
                      const mpq_class& x);

// f3(t) = (t(t+6)(t^2-6t+36))^3 / ((t-3)(t^2+3t+9))^3, with a cusp marker
// where the denominator vanishes (t = 3 is the only rational case)
struct F3Value {
  bool is_cusp;
  mpq_class value;
};
F3Value hauptmodul_f3(const mpq_class& t);

// classical level-2 modular polynomial, as an exact relation between
// j-invariants of 2-isogenous curves
bool phi2_relation_holds(const mpq_class& j1, const mpq_class& j2);

}  // namespace qcv::ecq
