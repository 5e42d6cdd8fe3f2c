#include "ecq.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>

namespace qcv::ecq {
namespace {

using poly::QPoly;

// ---------------------------------------------------------------------------
// coefficient fields for the division-polynomial ladder: Q itself, and
// Q[z]/(m) for an irreducible monic m (degree 2 or 3 in practice)

struct QField {
  using Elem = mpq_class;
  Elem from_q(const mpq_class& q) const { return q; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  bool is_zero(const Elem& a) const { return a == 0; }
  Elem inv(const Elem& a) const {
    if (a == 0) fail(ErrorCode::NotInvertible, "division by zero rational");
    return mpq_class(1) / a;
  }
};

struct ExtField {
  QPoly m;  // monic modulus
  using Elem = QPoly;
  Elem reduce(const QPoly& v) const { return poly::divrem(v, m).rem; }
  Elem from_q(const mpq_class& q) const {
    if (q == 0) return {};
    return QPoly{q};
  }
  Elem add(const Elem& a, const Elem& b) const { return poly::add(a, b); }
  Elem sub(const Elem& a, const Elem& b) const { return poly::sub(a, b); }
  Elem mul(const Elem& a, const Elem& b) const {
    return reduce(poly::mul(a, b));
  }
  Elem neg(const Elem& a) const { return poly::scale(a, -1); }
  bool is_zero(const Elem& a) const { return a.empty(); }
  Elem inv(const Elem& a) const {
    if (a.empty())
      fail(ErrorCode::NotInvertible, "zero element in extension field");
    // extended Euclid, tracking only the cofactor of a
    QPoly r0 = m, r1 = a;
    QPoly t0, t1{mpq_class(1)};
    while (!r1.empty()) {
      auto qr = poly::divrem(r0, r1);
      QPoly t2 = poly::sub(t0, poly::mul(qr.quot, t1));
      r0 = std::move(r1);
      r1 = std::move(qr.rem);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    if (poly::deg(r0) != 0)
      fail(ErrorCode::NotInvertible,
           "element shares a factor with the field modulus");
    return poly::scale(t0, mpq_class(1) / r0[0]);
  }
};

// dense polynomials in x with coefficients in F
template <class F>
using Pol = std::vector<typename F::Elem>;

template <class F>
void ptrim(const F& K, Pol<F>& a) {
  while (!a.empty() && K.is_zero(a.back())) a.pop_back();
}

template <class F>
int pdeg(const Pol<F>& a) {
  return static_cast<int>(a.size()) - 1;
}

template <class F>
Pol<F> padd(const F& K, const Pol<F>& a, const Pol<F>& b) {
  Pol<F> r(std::max(a.size(), b.size()), K.from_q(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = K.add(r[i], b[i]);
  ptrim(K, r);
  return r;
}

template <class F>
Pol<F> psub(const F& K, const Pol<F>& a, const Pol<F>& b) {
  Pol<F> r(std::max(a.size(), b.size()), K.from_q(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = K.sub(r[i], b[i]);
  ptrim(K, r);
  return r;
}

template <class F>
Pol<F> pmul(const F& K, const Pol<F>& a, const Pol<F>& b) {
  if (a.empty() || b.empty()) return {};
  Pol<F> r(a.size() + b.size() - 1, K.from_q(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (K.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = K.add(r[i + j], K.mul(a[i], b[j]));
  }
  ptrim(K, r);
  return r;
}

template <class F>
Pol<F> pscale(const F& K, const Pol<F>& a, const typename F::Elem& c) {
  Pol<F> r;
  r.reserve(a.size());
  for (const auto& ai : a) r.push_back(K.mul(ai, c));
  ptrim(K, r);
  return r;
}

template <class F>
Pol<F> pdivexact(const F& K, Pol<F> a, const Pol<F>& b) {
  if (b.empty()) fail(ErrorCode::InvalidArgument, "division by zero polynomial");
  if (a.empty()) return {};
  if (a.size() < b.size())
    fail(ErrorCode::NotADivisor, "kernel polynomial division left a remainder");
  const auto lcinv = K.inv(b.back());
  Pol<F> q(a.size() - b.size() + 1, K.from_q(0));
  for (std::size_t i = q.size(); i-- > 0;) {
    typename F::Elem c = K.mul(a[i + b.size() - 1], lcinv);
    q[i] = c;
    if (K.is_zero(c)) continue;
    for (std::size_t jj = 0; jj < b.size(); ++jj)
      a[i + jj] = K.sub(a[i + jj], K.mul(c, b[jj]));
  }
  ptrim(K, a);
  if (!a.empty())
    fail(ErrorCode::NotADivisor, "kernel polynomial division left a remainder");
  ptrim(K, q);
  return q;
}

// ---------------------------------------------------------------------------
// division polynomials in the x-only convention on y^2 = x^3 + Ax + B:
// psi_n itself for odd n, psi_n with one factor of y removed for even n.
// With f = x^3 + Ax + B and m >= 5, k = floor(m/2):
//   m odd,  k even:  psi_m = f^2 psi_{k+2} psi_k^3 - psi_{k-1} psi_{k+1}^3
//   m odd,  k odd:   psi_m = psi_{k+2} psi_k^3 - f^2 psi_{k-1} psi_{k+1}^3
//   m even:          psi_m = psi_k (psi_{k+2} psi_{k-1}^2
//                                   - psi_{k-2} psi_{k+1}^2) / 2

template <class F>
struct Ladder {
  std::vector<Pol<F>> psi;  // psi[1..n]; index 0 unused
  Pol<F> cubic;             // x^3 + Ax + B
};

template <class F>
Ladder<F> division_ladder(const F& K, const typename F::Elem& A,
                          const typename F::Elem& B, unsigned n) {
  using E = typename F::Elem;
  const E zero = K.from_q(0);
  const E one = K.from_q(1);
  const E half = K.from_q(mpq_class(1, 2));

  Ladder<F> lad;
  lad.cubic = Pol<F>{B, A, zero, one};
  Pol<F> fsq = pmul(K, lad.cubic, lad.cubic);

  const unsigned top = std::max(n, 4u);
  lad.psi.assign(top + 1, Pol<F>{});
  lad.psi[1] = Pol<F>{one};
  lad.psi[2] = Pol<F>{K.from_q(2)};
  // psi_3 = 3x^4 + 6Ax^2 + 12Bx - A^2
  lad.psi[3] = Pol<F>{K.neg(K.mul(A, A)), K.mul(K.from_q(12), B),
                      K.mul(K.from_q(6), A), zero, K.from_q(3)};
  // psi_4/y = 4(x^6 + 5Ax^4 + 20Bx^3 - 5A^2x^2 - 4ABx - 8B^2 - A^3)
  {
    const E A2 = K.mul(A, A);
    const E B2 = K.mul(B, B);
    Pol<F> p{K.neg(K.add(K.mul(K.from_q(8), B2), K.mul(A2, A))),
             K.neg(K.mul(K.from_q(4), K.mul(A, B))),
             K.neg(K.mul(K.from_q(5), A2)),
             K.mul(K.from_q(20), B),
             K.mul(K.from_q(5), A),
             zero,
             one};
    lad.psi[4] = pscale(K, p, K.from_q(4));
  }

  for (unsigned m = 5; m <= top; ++m) {
    const unsigned k = m / 2;
    if (m % 2 == 1) {
      Pol<F> t1 = pmul(K, lad.psi[k + 2],
                       pmul(K, lad.psi[k], pmul(K, lad.psi[k], lad.psi[k])));
      Pol<F> t2 =
          pmul(K, lad.psi[k - 1],
               pmul(K, lad.psi[k + 1], pmul(K, lad.psi[k + 1], lad.psi[k + 1])));
      if (k % 2 == 0)
        lad.psi[m] = psub(K, pmul(K, fsq, t1), t2);
      else
        lad.psi[m] = psub(K, t1, pmul(K, fsq, t2));
    } else {
      Pol<F> t1 = pmul(K, lad.psi[k + 2], pmul(K, lad.psi[k - 1], lad.psi[k - 1]));
      Pol<F> t2 = pmul(K, lad.psi[k - 2], pmul(K, lad.psi[k + 1], lad.psi[k + 1]));
      lad.psi[m] = pscale(K, pmul(K, lad.psi[k], psub(K, t1, t2)), half);
    }
  }
  return lad;
}

// full(d): vanishing locus = x-coordinates of all nonzero d-torsion
template <class F>
Pol<F> full_torsion_poly(const F& K, const Ladder<F>& lad, unsigned d) {
  if (d % 2 == 1) return lad.psi[d];
  return pmul(K, lad.psi[d], lad.cubic);
}

int moebius(unsigned n) {
  int mu = 1;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

// prod_{d|n} full(d)^{mu(n/d)}; roots are the exact-order-n x-coordinates
template <class F>
Pol<F> primitive_poly(const F& K, const Ladder<F>& lad, unsigned n) {
  Pol<F> num{K.from_q(1)};
  Pol<F> den{K.from_q(1)};
  for (unsigned d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    const int mu = moebius(n / d);
    if (mu == 1)
      num = pmul(K, num, full_torsion_poly(K, lad, d));
    else if (mu == -1)
      den = pmul(K, den, full_torsion_poly(K, lad, d));
  }
  return pdivexact(K, num, den);
}

// ---------------------------------------------------------------------------

void check_cap(unsigned n, unsigned cap) {
  if (n > cap) fail(ErrorCode::CapExceeded, "division polynomial index above cap");
}

mpq_class eval_cubic(const mpz_class& A, const mpz_class& B,
                     const mpq_class& x) {
  return x * x * x + mpq_class(A) * x + mpq_class(B);
}

bool is_rational_square(const mpq_class& v) {
  if (v < 0) return false;
  return mpz_perfect_square_p(v.get_num().get_mpz_t()) != 0 &&
         mpz_perfect_square_p(v.get_den().get_mpz_t()) != 0;
}

// rational roots of a primitive integer polynomial, via its linear factors
std::vector<mpq_class> rational_roots(const fact::Factorization& fz) {
  std::vector<mpq_class> roots;
  for (const auto& g : fz.factors) {
    if (poly::deg(g.f) != 1) continue;
    roots.emplace_back(mpq_class(-g.f[0]) / mpq_class(g.f[1]));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// norm from Q[z]/(m) down to Q of a polynomial in x: determinant of the
// multiplication-by-P matrix on the power basis {1, z, ..., z^{d-1}}
QPoly ext_norm(const ExtField& K, const Pol<ExtField>& P) {
  const std::size_t d = static_cast<std::size_t>(poly::deg(K.m));
  std::vector<std::vector<QPoly>> M(d, std::vector<QPoly>(d));
  for (std::size_t c = 0; c < d; ++c) {
    QPoly zc(c + 1);
    zc[c] = 1;
    for (std::size_t i = 0; i < P.size(); ++i) {
      const QPoly coef = K.mul(P[i], zc);
      for (std::size_t r = 0; r < d; ++r) {
        if (r >= coef.size() || coef[r] == 0) continue;
        QPoly& cell = M[r][c];
        if (cell.size() <= i) cell.resize(i + 1);
        cell[i] = coef[r];
      }
    }
  }
  if (d == 1) return M[0][0];
  if (d == 2)
    return poly::sub(poly::mul(M[0][0], M[1][1]), poly::mul(M[0][1], M[1][0]));
  if (d == 3) {
    QPoly r = poly::mul(M[0][0], poly::sub(poly::mul(M[1][1], M[2][2]),
                                           poly::mul(M[1][2], M[2][1])));
    r = poly::sub(r, poly::mul(M[0][1], poly::sub(poly::mul(M[1][0], M[2][2]),
                                                  poly::mul(M[1][2], M[2][0]))));
    r = poly::add(r, poly::mul(M[0][2], poly::sub(poly::mul(M[1][0], M[2][1]),
                                                  poly::mul(M[1][1], M[2][0]))));
    return r;
  }
  fail(ErrorCode::Internal, "unexpected extension degree in norm");
}

std::vector<unsigned> degrees_of(const QPoly& f) {
  return fact::irreducible_degrees(fact::factor(f));
}

}  // namespace

// ---------------------------------------------------------------------------

CurveQ make_curve(const mpq_class& a1, const mpq_class& a2,
                  const mpq_class& a3, const mpq_class& a4,
                  const mpq_class& a6) {
  CurveQ e;
  e.a1 = a1;
  e.a2 = a2;
  e.a3 = a3;
  e.a4 = a4;
  e.a6 = a6;
  e.b2 = a1 * a1 + 4 * a2;
  e.b4 = 2 * a4 + a1 * a3;
  e.b6 = a3 * a3 + 4 * a6;
  e.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  e.c4 = e.b2 * e.b2 - 24 * e.b4;
  e.c6 = -e.b2 * e.b2 * e.b2 + 36 * e.b2 * e.b4 - 216 * e.b6;
  e.disc = -e.b2 * e.b2 * e.b8 - 8 * e.b4 * e.b4 * e.b4 - 27 * e.b6 * e.b6 +
           9 * e.b2 * e.b4 * e.b6;
  if (e.disc == 0) fail(ErrorCode::InvalidArgument, "singular curve");
  if (1728 * e.disc != e.c4 * e.c4 * e.c4 - e.c6 * e.c6)
    fail(ErrorCode::Internal, "curve invariant identity failed");
  e.j = e.c4 * e.c4 * e.c4 / e.disc;
  return e;
}

CurveQ curve_from_j(const mpq_class& j) {
  CurveQ e;
  if (j == 0) {
    e = make_curve(0, 0, 0, 0, 1);
  } else if (j == 1728) {
    e = make_curve(0, 0, 0, 1, 0);
  } else {
    const mpq_class d = j - 1728;
    e = make_curve(1, 0, 0, mpq_class(-36) / d, mpq_class(-1) / d);
  }
  if (e.j != j) fail(ErrorCode::Internal, "j-invariant round trip failed");
  return e;
}

ShortForm short_form(const CurveQ& e) {
  // y^2 = x^3 - (c4/48)x - (c6/864), then scale (A, B) -> (u^4 A, u^6 B)
  // to clear denominators
  mpq_class A = -e.c4 / 48;
  mpq_class B = -e.c6 / 864;
  mpz_class u = 1;
  mpz_class rest = lcm(A.get_den(), B.get_den());
  for (mpz_class p = 2; p * p <= rest && p < 1000000; p += (p == 2 ? 1 : 2)) {
    if (rest % p != 0) continue;
    unsigned va = 0, vb = 0;
    mpz_class da = A.get_den(), db = B.get_den();
    while (da % p == 0) {
      da /= p;
      ++va;
    }
    while (db % p == 0) {
      db /= p;
      ++vb;
    }
    const unsigned eu = std::max((va + 3) / 4, (vb + 5) / 6);
    mpz_class pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), eu);
    u *= pe;
    while (rest % p == 0) rest /= p;
  }
  // any unfactored cofactor enters u wholesale: v_q(u) = v_q(rest) always
  // covers ceil(v_q/4), so this is sufficient even if not minimal
  if (rest > 1) u *= rest;
  mpz_class u2 = u * u;
  mpz_class u4 = u2 * u2;
  mpq_class As = A * mpq_class(u4);
  mpq_class Bs = B * mpq_class(u4 * u2);
  if (As.get_den() != 1 || Bs.get_den() != 1)
    fail(ErrorCode::Internal, "short form scaling failed to clear denominators");
  return ShortForm{As.get_num(), Bs.get_num()};
}

poly::QPoly division_poly(const CurveQ& e, unsigned n, unsigned cap) {
  if (n < 1) fail(ErrorCode::OutOfRange, "division polynomial index must be >= 1");
  check_cap(n, cap);
  const ShortForm s = short_form(e);
  QField K;
  auto lad = division_ladder(K, mpq_class(s.A), mpq_class(s.B), n);
  return lad.psi[n];
}

poly::QPoly primitive_kernel_poly(const CurveQ& e, unsigned n, unsigned cap) {
  if (n < 2) fail(ErrorCode::OutOfRange, "kernel polynomial order must be >= 2");
  check_cap(n, cap);
  const ShortForm s = short_form(e);
  QField K;
  auto lad = division_ladder(K, mpq_class(s.A), mpq_class(s.B), n);
  return primitive_poly(K, lad, n);
}

std::vector<unsigned> factor_degrees(const poly::QPoly& f) {
  if (poly::deg(f) < 0)
    fail(ErrorCode::InvalidArgument, "cannot factor the zero polynomial");
  if (poly::deg(f) > static_cast<int>(kFactorDegreeCap))
    fail(ErrorCode::CapExceeded, "polynomial degree above factoring cap");
  return degrees_of(f);
}

std::vector<CurveQ> velu_two_isogenous(const CurveQ& e) {
  const ShortForm s = short_form(e);
  poly::ZPoly cubic{s.B, s.A, 0, 1};
  const auto fz = fact::factor(poly::from_z(cubic));
  const auto roots = rational_roots(fz);
  if (roots.empty())
    fail(ErrorCode::NotFound, "no rational two-torsion point");
  std::vector<CurveQ> out;
  out.reserve(roots.size());
  for (const auto& x0 : roots) {
    const mpq_class t = 3 * x0 * x0 + mpq_class(s.A);
    const mpq_class w = x0 * t;
    out.push_back(make_curve(0, 0, 0, mpq_class(s.A) - 5 * t,
                             mpq_class(s.B) - 7 * w));
  }
  return out;
}

ParityVerdict odd_degree_torsion_parity(const CurveQ& e, unsigned n,
                                        unsigned cap) {
  const QPoly prim = primitive_kernel_poly(e, n, cap);
  const auto fz = fact::factor(prim);
  bool any_odd = false;
  unsigned min_odd = 0;
  for (const auto& g : fz.factors) {
    const unsigned d = static_cast<unsigned>(poly::deg(g.f));
    if (d % 2 == 1) {
      any_odd = true;
      if (min_odd == 0 || d < min_odd) min_odd = d;
    }
  }
  if (!any_odd) return {Parity::AllEven, 0};
  if (n <= 2) return {Parity::HasOddXField, min_odd};
  // x-coordinate fields of odd degree exist, but the point degree also
  // depends on y; a rational point settles it, otherwise leave it open
  const ShortForm s = short_form(e);
  for (const auto& x0 : rational_roots(fz)) {
    if (is_rational_square(eval_cubic(s.A, s.B, x0)))
      return {Parity::HasOddXField, 1};
  }
  return {Parity::Inconclusive, 0};
}

ClassParity two_isogeny_class_parity(const CurveQ& e, unsigned n,
                                     unsigned cap) {
  if (n < 2) fail(ErrorCode::OutOfRange, "kernel polynomial order must be >= 2");
  check_cap(n, cap);
  if (e.j == 0 || e.j == 1728)
    fail(ErrorCode::Unsupported,
         "two-isogeny class analysis needs j outside {0, 1728}");
  const ShortForm s = short_form(e);
  poly::ZPoly cubic{s.B, s.A, 0, 1};
  const auto fz = fact::factor(poly::from_z(cubic));

  ClassParity cp;
  cp.all_even = true;
  for (const auto& g : fz.factors) {
    const int d = poly::deg(g.f);
    ParityBlock blk;
    blk.block_degree = static_cast<unsigned>(d);
    if (d == 1) {
      const mpq_class x0 = mpq_class(-g.f[0]) / mpq_class(g.f[1]);
      const mpq_class t = 3 * x0 * x0 + mpq_class(s.A);
      const mpq_class A2 = mpq_class(s.A) - 5 * t;
      const mpq_class B2 = mpq_class(s.B) - 7 * x0 * t;
      const CurveQ cod = make_curve(0, 0, 0, A2, B2);
      if (cod.j == 0 || cod.j == 1728)
        fail(ErrorCode::Unsupported,
             "two-isogenous codomain has extra automorphisms");
      QField K;
      auto lad = division_ladder(K, A2, B2, n);
      blk.degrees = degrees_of(primitive_poly(K, lad, n));
    } else {
      // codomain of the isogeny killing the 2-torsion point with
      // x-coordinate z, computed over Q[z]/(g): with t = 3z^2 + A,
      // A' = A - 5t = -15z^2 - 4A and, reducing z^3 = -Az - B,
      // B' = B - 7z t = 22B + 14Az
      ExtField K{poly::monic(poly::from_z(g.f))};
      const mpq_class Aq(s.A), Bq(s.B);
      QPoly A2 = K.reduce(QPoly{-4 * Aq, 0, -15});
      QPoly B2 = K.reduce(QPoly{22 * Bq, 14 * Aq});
      auto lad = division_ladder(K, A2, B2, n);
      QPoly norm = ext_norm(K, primitive_poly(K, lad, n));
      if (poly::deg(poly::gcd(norm, poly::derivative(norm))) != 0)
        fail(ErrorCode::Internal, "norm of kernel polynomial is not squarefree");
      blk.degrees = degrees_of(norm);
    }
    for (unsigned dd : blk.degrees)
      if (dd % 2 == 1) cp.all_even = false;
    cp.blocks.push_back(std::move(blk));
  }
  return cp;
}

mpq_class weber_value(const mpq_class& c2, const mpq_class& c3,
                      const mpq_class& x) {
  const mpq_class delta = c2 * c2 * c2 - 27 * c3 * c3;
  if (delta == 0) fail(ErrorCode::InvalidArgument, "singular Weber model");
  if (c3 == 0) return c2 * c2 * x * x / delta;
  if (c2 == 0) return c3 * x * x * x / delta;
  return c2 * c3 * x / delta;
}

F3Value hauptmodul_f3(const mpq_class& t) {
  const mpq_class den = (t - 3) * (t * t + 3 * t + 9);
  if (den == 0) return {true, 0};
  const mpq_class num = t * (t + 6) * (t * t - 6 * t + 36);
  const mpq_class ratio = num / den;
  return {false, ratio * ratio * ratio};
}

bool phi2_relation_holds(const mpq_class& j1, const mpq_class& j2) {
  const mpq_class X = j1, Y = j2;
  mpq_class v = X * X * X + Y * Y * Y - X * X * Y * Y;
  v += 1488 * (X * X * Y + X * Y * Y);
  v -= 162000 * (X * X + Y * Y);
  v += 40773375L * X * Y;
  v += 8748000000L * (X + Y);
  v -= 157464000000000L;
  return v == 0;
}

}  // namespace qcv::ecq
