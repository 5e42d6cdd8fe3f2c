#pragma once
// Dense univariate polynomials over Q and over Z. The coefficient of x^i
// sits at index i; the zero polynomial is the empty vector and a nonzero
// polynomial has a nonzero last entry. Gcds run modulo word-size primes
// with CRT reconstruction, so huge rational coefficients stay cheap.

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "common.hpp"

namespace qcv::poly {

using QPoly = std::vector<mpq_class>;
using ZPoly = std::vector<mpz_class>;

void trim(QPoly& f);
void trim(ZPoly& f);
int deg(const QPoly& f);  // -1 for the zero polynomial
int deg(const ZPoly& f);

QPoly from_z(const ZPoly& f);

QPoly add(const QPoly& a, const QPoly& b);
QPoly sub(const QPoly& a, const QPoly& b);
QPoly mul(const QPoly& a, const QPoly& b);
QPoly scale(const QPoly& a, const mpq_class& c);
QPoly derivative(const QPoly& f);
mpq_class eval(const QPoly& f, const mpq_class& x);

ZPoly add(const ZPoly& a, const ZPoly& b);
ZPoly sub(const ZPoly& a, const ZPoly& b);
ZPoly mul(const ZPoly& a, const ZPoly& b);
ZPoly derivative(const ZPoly& f);
mpz_class eval(const ZPoly& f, const mpz_class& x);

struct QuotRem {
  QPoly quot, rem;
};
QuotRem divrem(const QPoly& f, const QPoly& g);
QPoly exact_div(const QPoly& f, const QPoly& g);  // NotADivisor on remainder
QPoly monic(const QPoly& f);

// Exact division in Z[x]: the quotient when g divides f there, nullopt
// otherwise. For primitive g this also decides divisibility over Q.
std::optional<ZPoly> try_div(const ZPoly& f, const ZPoly& g);

mpz_class content(const ZPoly& f);  // gcd of coefficients, nonnegative

// f = scale * prim with prim integral, content 1 and positive leading
// coefficient. Rejects the zero polynomial.
struct PrimForm {
  mpq_class scale;
  ZPoly prim;
};
PrimForm primitive_form(const QPoly& f);

// Gcd in Z[x] including integer content, normalized to positive leading
// coefficient; gcd in Q[x] is monic (and gcd(0,0) = 0).
ZPoly gcd(const ZPoly& a, const ZPoly& b);
QPoly gcd(const QPoly& a, const QPoly& b);

// Yun decomposition: f = scale * prod parts[i].factor^parts[i].mult with
// the factors squarefree, pairwise coprime, primitive with positive
// leading coefficient, and strictly increasing multiplicities.
struct SquarefreePart {
  ZPoly factor;
  unsigned mult;
};
struct SquarefreeDecomp {
  mpq_class scale;
  std::vector<SquarefreePart> parts;
};
SquarefreeDecomp squarefree_decompose(const QPoly& f);

// Canonical integer-content printing: the primitive integer polynomial,
// prefixed by its rational scale when that is not 1.
std::string to_string(const QPoly& f);
std::string to_string(const ZPoly& f);

}  // namespace qcv::poly
