#include "isogeny.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>

#include "modcurve.hpp"

namespace qcv::isogeny {
namespace {

unsigned long pow_ul(unsigned long p, unsigned e) {
  unsigned long r = 1;
  while (e-- > 0) {
    r *= p;
    if (r > kTorsionCap) fail(ErrorCode::CapExceeded, "p^k above module cap");
  }
  return r;
}

void check_prime(unsigned long p) {
  if (!is_prime(p)) fail(ErrorCode::NotPrime, "p must be prime");
}

// p-adic valuation of x in Z/p^k, with v(0) = k
unsigned val_p(unsigned long x, unsigned long p, unsigned k) {
  if (x == 0) return k;
  unsigned v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return std::min(v, k);
}

// elements of the cyclic subgroup as packed pairs
std::set<unsigned long> kernel_elements(unsigned long p, unsigned k,
                                        const CyclicKernel& c) {
  const unsigned long pk = pow_ul(p, k);
  const unsigned long ord = pow_ul(p, c.t);
  std::set<unsigned long> out;
  unsigned long x = 0, y = 0;
  for (unsigned long i = 0; i < ord; ++i) {
    out.insert(x * pk + y);
    x = (x + c.gx) % pk;
    y = (y + c.gy) % pk;
  }
  return out;
}

unsigned long inv_mod_p(unsigned long a, unsigned long p) {
  unsigned long r = 1, base = a % p, e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return r;
}

using Vec2 = std::array<unsigned long, 2>;
using Mat2 = std::array<unsigned long, 4>;  // [[m0,m1],[m2,m3]]

Vec2 matvec(const Mat2& m, const Vec2& v, unsigned long mod) {
  return {(m[0] * v[0] + m[1] * v[1]) % mod, (m[2] * v[0] + m[3] * v[1]) % mod};
}

}  // namespace

std::vector<CyclicKernel> cyclic_subgroups(unsigned long p, unsigned k,
                                           unsigned j) {
  check_prime(p);
  if (k < 1) fail(ErrorCode::OutOfRange, "exponent k must be at least 1");
  if (j < 1 || j > k)
    fail(ErrorCode::OutOfRange, "order exponent j must satisfy 1 <= j <= k");
  pow_ul(p, k);  // cap check
  const unsigned long pj = pow_ul(p, j);
  const unsigned long scale = pow_ul(p, k - j);
  std::vector<CyclicKernel> out;
  out.reserve(pj + pj / p);
  for (unsigned long t = 0; t < pj; ++t)
    out.push_back({scale % (scale * pj), scale * t % (scale * pj), j});
  for (unsigned long s = 0; s < pj / p; ++s)
    out.push_back({scale * s * p % (scale * pj), scale, j});
  // entries are already reduced mod p^k = scale * p^j
  return out;
}

ComposeOutcome compose_kernels(unsigned long p, unsigned k,
                               const CyclicKernel& f, const CyclicKernel& g) {
  check_prime(p);
  if (k < 1) fail(ErrorCode::OutOfRange, "exponent k must be at least 1");
  const unsigned long pk = pow_ul(p, k);
  for (const CyclicKernel* c : {&f, &g}) {
    if (c->t < 1 || c->t > k)
      fail(ErrorCode::OutOfRange, "kernel order exponent out of range");
    if (c->gx >= pk || c->gy >= pk)
      fail(ErrorCode::InvalidArgument, "generator not reduced mod p^k");
    const unsigned v = std::min(val_p(c->gx, p, k), val_p(c->gy, p, k));
    if (v != k - c->t)
      fail(ErrorCode::InvalidArgument,
           "generator order does not match the declared exponent");
  }
  const unsigned t = f.t, n = g.t;

  const auto ef = kernel_elements(p, k, f);
  const auto eg = kernel_elements(p, k, g);
  unsigned long common = 0;
  for (unsigned long e : ef) common += eg.count(e);
  unsigned m = 0;
  while (common % p == 0) {
    common /= p;
    ++m;
  }
  if (common != 1) fail(ErrorCode::Internal, "kernel meet is not a p-power");

  ComposeOutcome out;
  out.meet = m;
  if (m == t && t < n) {
    // C_f properly inside C_g: the codomain of f carries independent
    // isogenies of degrees p^{n-t} (the rest of g) and p^t (the dual of f)
    out.kind = ComposeKind::TwoIndependent;
    out.deg1 = n - t;
    out.deg2 = t;
  } else {
    // composite through the dual is [p^m] times a cyclic p^a-isogeny
    out.kind = ComposeKind::SingleIsogeny;
    out.a = std::max(t, n + t - 2 * m);
  }
  return out;
}

gl2::Mat induced_quotient_image(const gl2::Mat& g, unsigned N, unsigned m) {
  if (N < 2 || N > 255) fail(ErrorCode::OutOfRange, "level N out of range");
  if (m < 1 || N % m != 0)
    fail(ErrorCode::NotADivisor, "m must divide the level N");
  if (g.a % N != 1 % N || g.c % N != 0)
    fail(ErrorCode::BadShape, "matrix does not fix the order-N point (1,0)");
  const unsigned d = g.d % N;
  const unsigned b = g.b % N;
  if (std::gcd(d, N) != 1)
    fail(ErrorCode::NotInvertible, "matrix is singular mod N");
  gl2::Mat out = gl2::reduce(d, 0, (unsigned long long)m * b % N, 1, N);
  if (gl2::det(out, N) != gl2::det(g, N))
    fail(ErrorCode::Internal, "quotient image does not preserve determinant");
  return out;
}

BorelReport borel_isogeny_dichotomy(unsigned long p) {
  check_prime(p);
  if (p == 2) fail(ErrorCode::InvalidArgument, "p must be odd");
  if (p > 13) fail(ErrorCode::CapExceeded, "dichotomy sweep capped at p = 13");
  const unsigned long p2 = p * p;

  // the p+1 lines of F_p^2, by normalized generator
  std::vector<Vec2> lines;
  for (unsigned long t = 0; t < p; ++t) lines.push_back({1, t});
  lines.push_back({0, 1});

  BorelReport rep;
  rep.kernels = static_cast<unsigned>(lines.size());
  rep.holds = true;

  for (const Vec2& c : lines) {
    // complete c to a basis (c, q) of F_p^2
    const Vec2 q = (c[0] != 0) ? Vec2{0, 1} : Vec2{1, 0};
    // coordinates on the quotient p-torsion basis {u, w} = {c-lift, p*q}:
    // x in V (x mod p on the line) maps to (s, tau) with x = s*u + p*y
    // and y = alpha*c + tau*q mod p
    const auto psi = [&](const Vec2& x) -> Vec2 {
      unsigned long s = (c[0] != 0) ? x[0] % p : x[1] % p;
      if (c[0] != 0) s = s * inv_mod_p(c[0], p) % p;
      Vec2 y;
      for (int i = 0; i < 2; ++i) {
        const unsigned long xi = (x[i] + p2 - s * c[i] % p2) % p2;
        if (xi % p != 0)
          fail(ErrorCode::Internal, "vector not in the p-preimage of the line");
        y[i] = (xi / p) % p;
      }
      unsigned long alpha, tau;
      if (c[0] != 0) {
        alpha = y[0] * inv_mod_p(c[0], p) % p;
        tau = (y[1] + p * p - alpha * c[1] % p) % p;
      } else {
        alpha = y[1];
        tau = y[0];
      }
      (void)alpha;  // the alpha*c part dies in the quotient by C
      return {s, tau % p};
    };

    const Vec2 u = c;                      // lift of c into (Z/p^2)^2
    const Vec2 w = {p * q[0], p * q[1]};   // p * q-lift

    // induced images: zero-lifts of the stabilizer of the line in G,
    // times the image of the reduction kernel (lower unipotents)
    std::set<Mat2> ibar;
    for (unsigned long b = 0; b < p; ++b) {
      for (unsigned long d = 1; d < p; ++d) {
        // does [[1,b],[0,d]] stabilize the line <c>?
        const Vec2 gc = {(c[0] + b * c[1]) % p, d * c[1] % p};
        const bool stab = (gc[0] * c[1] % p) == (gc[1] * c[0] % p);
        if (!stab) continue;
        const Mat2 lift = {1, b, 0, d};  // zero-lift mod p^2
        const Vec2 cu = psi(matvec(lift, u, p2));
        const Vec2 cw = psi(matvec(lift, w, p2));
        // base matrix columns (cu, cw); right-multiply by [[1,0],[tau,1]]
        for (unsigned long tau = 0; tau < p; ++tau) {
          ibar.insert({(cu[0] + cw[0] * tau) % p, cw[0],
                       (cu[1] + cw[1] * tau) % p, cw[1]});
        }
      }
    }

    // branch 1: a common fixed nonzero vector
    bool fixed = false;
    for (unsigned long v0 = 0; v0 < p && !fixed; ++v0)
      for (unsigned long v1 = 0; v1 < p && !fixed; ++v1) {
        if (v0 == 0 && v1 == 0) continue;
        bool all = true;
        for (const Mat2& M : ibar) {
          const Vec2 mv = matvec(M, {v0, v1}, p);
          if (mv[0] != v0 || mv[1] != v1) {
            all = false;
            break;
          }
        }
        fixed = all;
      }

    // branch 2: a stable line with trivial quotient action, i.e. a
    // conjugate of {[[a,*],[0,1]]}
    bool borel = false;
    for (const Vec2& L : lines) {
      const Vec2 wq = (L[0] != 0) ? Vec2{0, 1} : Vec2{1, 0};
      bool all = true;
      for (const Mat2& M : ibar) {
        const Vec2 mL = matvec(M, L, p);
        if ((mL[0] * L[1]) % p != (mL[1] * L[0]) % p) {
          all = false;  // line not stable
          break;
        }
        // decompose M*wq = kappa*wq + mu*L; trivial quotient needs kappa = 1
        const Vec2 mw = matvec(M, wq, p);
        unsigned long kappa;
        if (L[0] != 0) {
          // wq = (0,1), L = (1, l): kappa = second coord minus mu*l with
          // mu = first coord
          kappa = (mw[1] + p * p - mw[0] * L[1] % p * inv_mod_p(L[0], p) % p) % p;
        } else {
          // wq = (1,0), L = (0,1): kappa = first coord
          kappa = mw[0] % p;
        }
        if (kappa != 1) {
          all = false;
          break;
        }
      }
      if (all) {
        borel = true;
        break;
      }
    }

    if (fixed) ++rep.fixed_vector_count;
    if (borel) ++rep.mirrored_borel_count;
    if (!fixed && !borel) rep.holds = false;
  }
  return rep;
}

Propagation sporadic_propagation(const mpz_class& deg_x, unsigned N,
                                 unsigned long p) {
  if (deg_x < 1) fail(ErrorCode::OutOfRange, "degree must be at least 1");
  if (N <= 2) fail(ErrorCode::OutOfRange, "level must exceed 2");
  check_prime(p);
  if (N % p != 0) fail(ErrorCode::NotADivisor, "p must divide the level");

  Propagation out;
  out.deg_bound = mpz_class(p) * p * deg_x;
  out.still_sporadic =
      mcurve::sporadic_sufficient(out.deg_bound, N * static_cast<unsigned>(p));
  out.hypothesis_held = mcurve::sporadic_sufficient(deg_x, N);
  return out;
}

}  // namespace qcv::isogeny
