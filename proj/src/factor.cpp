#include "factor.hpp"

#include <algorithm>
#include <random>
#include <utility>

#include "fpx.hpp"

namespace qcv::fact {

namespace {

using fpx::u64;
using poly::ZPoly;

constexpr int kPruningPrimes = 3;
constexpr std::size_t kMaxModularFactors = 48;

// ---------------------------------------------------------------- mod p

struct DistinctDegreePart {
  unsigned d;         // degree of every irreducible factor inside
  fpx::Poly product;  // their product, monic
};

// f monic squarefree mod p
std::vector<DistinctDegreePart> distinct_degree_split(fpx::Poly f, u64 p) {
  std::vector<DistinctDegreePart> out;
  fpx::Poly h = {0, 1};  // x^(p^d) mod f as d advances
  unsigned d = 0;
  while (fpx::deg(f) >= 2 * static_cast<int>(d + 1)) {
    ++d;
    h = fpx::powmod(h, mpz_class(static_cast<unsigned long>(p)), f, p);
    fpx::Poly g = fpx::gcd(fpx::sub(h, {0, 1}, p), f, p);
    if (fpx::deg(g) > 0) {
      out.push_back({d, g});
      f = fpx::divrem(f, g, p).quot;
      h = fpx::rem(h, f, p);
    }
  }
  if (fpx::deg(f) > 0) out.push_back({static_cast<unsigned>(fpx::deg(f)), f});
  return out;
}

// Cantor-Zassenhaus split of a product of degree-d irreducibles, p odd
void equal_degree_split(const fpx::Poly& g, unsigned d, u64 p,
                        std::mt19937_64& rng, std::vector<fpx::Poly>& out) {
  if (fpx::deg(g) == static_cast<int>(d)) {
    out.push_back(g);
    return;
  }
  mpz_class e;
  mpz_ui_pow_ui(e.get_mpz_t(), p, d);
  e = (e - 1) / 2;
  for (;;) {
    fpx::Poly a(static_cast<std::size_t>(fpx::deg(g)));
    for (auto& c : a) c = rng() % p;
    fpx::trim(a);
    if (fpx::deg(a) < 1) continue;
    fpx::Poly c1 = fpx::gcd(a, g, p);
    if (fpx::deg(c1) > 0 && fpx::deg(c1) < fpx::deg(g)) {
      equal_degree_split(c1, d, p, rng, out);
      equal_degree_split(fpx::divrem(g, c1, p).quot, d, p, rng, out);
      return;
    }
    fpx::Poly b = fpx::powmod(a, e, g, p);
    b = fpx::sub(b, {1}, p);
    fpx::Poly c2 = fpx::gcd(b, g, p);
    if (fpx::deg(c2) > 0 && fpx::deg(c2) < fpx::deg(g)) {
      equal_degree_split(c2, d, p, rng, out);
      equal_degree_split(fpx::divrem(g, c2, p).quot, d, p, rng, out);
      return;
    }
  }
}

bool is_good_prime(const ZPoly& f, u64 p) {
  if (mpz_divisible_ui_p(f.back().get_mpz_t(), p)) return false;
  const fpx::Poly fbar = fpx::from_mpz(f, p);
  const fpx::Poly dbar = fpx::derivative(fbar, p);
  if (dbar.empty()) return false;
  return fpx::deg(fpx::gcd(fbar, dbar, p)) == 0;
}

// the smallest `count` primes exceeding 2·deg(f) that keep f squarefree
std::vector<u64> good_primes(const ZPoly& f, int count) {
  std::vector<u64> out;
  for (u64 q = 2 * static_cast<u64>(poly::deg(f)) + 1;
       out.size() < static_cast<std::size_t>(count); ++q) {
    if (q > 100000000) fail(ErrorCode::Internal, "no good prime found");
    if (is_prime(q) && is_good_prime(f, q)) out.push_back(q);
  }
  return out;
}

// subset sums of the modular factor degrees: which degrees a divisor
// could possibly have
std::vector<char> achievable_degrees(
    const std::vector<DistinctDegreePart>& parts, unsigned n) {
  std::vector<char> a(n + 1, 0);
  a[0] = 1;
  for (const auto& part : parts) {
    const unsigned copies = static_cast<unsigned>(fpx::deg(part.product)) / part.d;
    for (unsigned c = 0; c < copies; ++c)
      for (int s = static_cast<int>(n); s >= static_cast<int>(part.d); --s)
        if (a[s - static_cast<int>(part.d)]) a[s] = 1;
  }
  return a;
}

// ------------------------------------------------------ lifting mod p^k

ZPoly zmod_reduce(const ZPoly& f, const mpz_class& m) {
  ZPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    mpz_fdiv_r(r[i].get_mpz_t(), f[i].get_mpz_t(), m.get_mpz_t());
  poly::trim(r);
  return r;
}

ZPoly zmod_add(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
  return zmod_reduce(poly::add(a, b), m);
}

ZPoly zmod_sub(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
  return zmod_reduce(poly::sub(a, b), m);
}

ZPoly zmod_mul(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
  return zmod_reduce(poly::mul(a, b), m);
}

ZPoly zmod_scale(const ZPoly& a, const mpz_class& c, const mpz_class& m) {
  ZPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    r[i] = a[i] * c;
    mpz_fdiv_r(r[i].get_mpz_t(), r[i].get_mpz_t(), m.get_mpz_t());
  }
  poly::trim(r);
  return r;
}

// division by a monic divisor, coefficients in Z/m
void zmod_divrem_monic(const ZPoly& f, const ZPoly& h, const mpz_class& m,
                       ZPoly& quot, ZPoly& rem) {
  if (h.empty() || h.back() != 1)
    fail(ErrorCode::Internal, "lifting divides by a non-monic polynomial");
  if (f.size() < h.size()) {
    quot.clear();
    rem = f;
    return;
  }
  ZPoly r = f;
  ZPoly q(f.size() - h.size() + 1);
  for (std::size_t k = f.size() - h.size() + 1; k-- > 0;) {
    const std::size_t top = k + h.size() - 1;
    if (r[top] == 0) continue;
    const mpz_class c = r[top];
    q[k] = c;
    for (std::size_t j = 0; j < h.size(); ++j) {
      r[k + j] -= c * h[j];
      mpz_fdiv_r(r[k + j].get_mpz_t(), r[k + j].get_mpz_t(), m.get_mpz_t());
    }
  }
  poly::trim(q);
  poly::trim(r);
  quot = std::move(q);
  rem = std::move(r);
}

ZPoly symmetric_lift(const ZPoly& f, const mpz_class& m) {
  ZPoly r = zmod_reduce(f, m);
  for (auto& c : r)
    if (c * 2 > m) c -= m;
  poly::trim(r);
  return r;
}

// One quadratic step: from f = g·h and s·g + t·h = 1 mod m to the same
// congruences mod m². h stays monic.
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t,
                 const mpz_class& m) {
  const mpz_class m2 = m * m;
  const ZPoly fr = zmod_reduce(f, m2);
  const ZPoly e = zmod_sub(fr, zmod_mul(g, h, m2), m2);
  ZPoly q, r;
  zmod_divrem_monic(zmod_mul(s, e, m2), h, m2, q, r);
  g = zmod_add(g, zmod_add(zmod_mul(t, e, m2), zmod_mul(q, g, m2), m2), m2);
  h = zmod_add(h, r, m2);
  const ZPoly one = {mpz_class(1)};
  const ZPoly b = zmod_sub(
      zmod_add(zmod_mul(s, g, m2), zmod_mul(t, h, m2), m2), one, m2);
  ZPoly c, d;
  zmod_divrem_monic(zmod_mul(s, b, m2), h, m2, c, d);
  s = zmod_sub(s, d, m2);
  t = zmod_sub(zmod_sub(t, zmod_mul(t, b, m2), m2), zmod_mul(c, g, m2), m2);
}

ZPoly to_zpoly(const fpx::Poly& f) {
  ZPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    r[i] = static_cast<unsigned long>(f[i]);
  return r;
}

// Lift the factorization f = lc(f)·∏ gs[lo..hi) from mod p to mod M
// (M a power of p), returning the lifted monic factors.
std::vector<ZPoly> lift_tree(const ZPoly& f, const std::vector<fpx::Poly>& gs,
                             std::size_t lo, std::size_t hi, u64 p,
                             const mpz_class& M) {
  if (hi - lo == 1) {
    const ZPoly fr = zmod_reduce(f, M);
    mpz_class lc_inv;
    if (!mpz_invert(lc_inv.get_mpz_t(), fr.back().get_mpz_t(), M.get_mpz_t()))
      fail(ErrorCode::Internal, "leading coefficient not invertible in lift");
    return {zmod_scale(fr, lc_inv, M)};
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  mpz_class lc_p = f.back() % static_cast<long>(p);
  if (lc_p < 0) lc_p += static_cast<long>(p);
  fpx::Poly gh = {lc_p.get_ui()};
  for (std::size_t i = lo; i < mid; ++i) gh = fpx::mul(gh, gs[i], p);
  fpx::Poly hh = {1};
  for (std::size_t i = mid; i < hi; ++i) hh = fpx::mul(hh, gs[i], p);
  fpx::Poly s, t;
  fpx::ext_gcd(gh, hh, p, s, t);

  ZPoly G = to_zpoly(gh), H = to_zpoly(hh), S = to_zpoly(s), T = to_zpoly(t);
  mpz_class m = static_cast<unsigned long>(p);
  while (m < M) {
    hensel_step(f, G, H, S, T, m);
    m *= m;
  }
  if (zmod_sub(zmod_reduce(f, M), zmod_mul(G, H, M), M) != ZPoly{})
    fail(ErrorCode::Internal, "lifted pair does not multiply back");

  std::vector<ZPoly> left = lift_tree(G, gs, lo, mid, p, M);
  std::vector<ZPoly> right = lift_tree(H, gs, mid, hi, p, M);
  left.insert(left.end(), right.begin(), right.end());
  return left;
}

// ------------------------------------------------------- recombination

ZPoly primitive_positive(const ZPoly& f) {
  mpz_class c = poly::content(f);
  if (f.back() < 0) c = -c;
  ZPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    mpz_divexact(r[i].get_mpz_t(), f[i].get_mpz_t(), c.get_mpz_t());
  return r;
}

struct SqfreeFactor {
  ZPoly f;
  Certificate cert;
};

// f primitive squarefree with positive leading coefficient, deg >= 2,
// nonzero constant term
std::vector<SqfreeFactor> factor_squarefree(ZPoly f) {
  const unsigned n = static_cast<unsigned>(poly::deg(f));
  const std::vector<u64> primes = good_primes(f, kPruningPrimes);

  std::vector<char> allowed(n + 1, 1);
  u64 best_p = 0;
  std::size_t best_r = static_cast<std::size_t>(-1);
  std::vector<DistinctDegreePart> best_parts;
  for (u64 p : primes) {
    const fpx::Poly fbar = fpx::monic(fpx::from_mpz(f, p), p);
    auto parts = distinct_degree_split(fbar, p);
    std::size_t r = 0;
    for (const auto& part : parts)
      r += static_cast<std::size_t>(fpx::deg(part.product)) / part.d;
    const auto a = achievable_degrees(parts, n);
    for (unsigned i = 0; i <= n; ++i) allowed[i] &= a[i];
    if (r < best_r) {
      best_r = r;
      best_p = p;
      best_parts = std::move(parts);
    }
  }
  if (best_r == 1)
    return {{std::move(f), {Certificate::Kind::IrreducibleModP, best_p}}};

  bool any_proper = false;
  for (unsigned i = 1; i < n; ++i)
    if (allowed[i]) any_proper = true;
  if (!any_proper) {
    // several primes jointly rule out every proper factor degree; the
    // recombination search space is empty
    return {{std::move(f),
             {Certificate::Kind::RecombinationExhausted, best_p}}};
  }
  if (best_r > kMaxModularFactors)
    fail(ErrorCode::CapExceeded, "too many modular factors to recombine");

  std::mt19937_64 rng(20250818);
  std::vector<fpx::Poly> gs;
  for (const auto& part : best_parts)
    equal_degree_split(part.product, part.d, best_p, rng, gs);
  std::sort(gs.begin(), gs.end(), [](const fpx::Poly& a, const fpx::Poly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });

  // coefficient bound for any true factor of f, times |lc|: 2^n·|f|₂·|lc|
  mpz_class sq = 0;
  for (const auto& c : f) sq += c * c;
  mpz_class norm2;
  mpz_sqrt(norm2.get_mpz_t(), sq.get_mpz_t());
  norm2 += 1;
  const mpz_class bound = (mpz_class(1) << n) * norm2 * abs(f.back());
  const mpz_class target = 2 * bound + 1;
  mpz_class M = static_cast<unsigned long>(best_p);
  while (M < target) M *= M;

  std::vector<ZPoly> G = lift_tree(f, gs, 0, gs.size(), best_p, M);
  {
    ZPoly prod = zmod_reduce({f.back()}, M);
    for (const auto& g : G) prod = zmod_mul(prod, g, M);
    if (zmod_sub(prod, zmod_reduce(f, M), M) != ZPoly{})
      fail(ErrorCode::Internal, "lifted factors do not multiply back");
  }

  std::vector<SqfreeFactor> out;
  mpz_class L = f.back();

  auto try_size = [&](std::size_t c) -> bool {
    // all index subsets of size c, lexicographically; when the subset and
    // its complement have equal size, only subsets containing index 0
    const std::size_t r = G.size();
    std::vector<std::size_t> idx(c);
    for (std::size_t i = 0; i < c; ++i) idx[i] = i;
    const bool pin_first = (2 * c == r);
    for (;;) {
      if (!pin_first || idx[0] == 0) {
        unsigned dsum = 0;
        for (std::size_t i : idx) dsum += static_cast<unsigned>(poly::deg(G[i]));
        if (dsum <= n && allowed[dsum]) {
          mpz_class t0 = L;
          for (std::size_t i : idx) {
            t0 *= G[i].empty() ? mpz_class(0) : G[i][0];
            mpz_fdiv_r(t0.get_mpz_t(), t0.get_mpz_t(), M.get_mpz_t());
          }
          if (t0 * 2 > M) t0 -= M;
          const mpz_class lf0 = L * f[0];
          if (t0 != 0 && mpz_divisible_p(lf0.get_mpz_t(), t0.get_mpz_t())) {
            ZPoly H = {L};
            for (std::size_t i : idx) H = zmod_mul(H, G[i], M);
            H = symmetric_lift(H, M);
            if (!H.empty()) {
              const ZPoly h = primitive_positive(H);
              if (auto q = poly::try_div(f, h)) {
                out.push_back({h,
                               {c == 1 ? Certificate::Kind::IrreducibleModP
                                       : Certificate::Kind::RecombinationExhausted,
                                best_p}});
                f = std::move(*q);
                L = f.back();
                std::vector<ZPoly> rest;
                for (std::size_t i = 0, k = 0; i < G.size(); ++i) {
                  if (k < idx.size() && idx[k] == i) {
                    ++k;
                    continue;
                  }
                  rest.push_back(std::move(G[i]));
                }
                G = std::move(rest);
                return true;
              }
            }
          }
        }
      }
      // next combination
      std::size_t i = c;
      while (i-- > 0) {
        if (idx[i] != i + r - c) {
          ++idx[i];
          for (std::size_t j = i + 1; j < c; ++j) idx[j] = idx[j - 1] + 1;
          break;
        }
        if (i == 0) return false;
      }
    }
  };

  for (std::size_t c = 1; 2 * c <= G.size();) {
    if (!try_size(c)) ++c;
  }

  if (poly::deg(f) <= 0)
    fail(ErrorCode::Internal, "recombination consumed the whole polynomial");
  Certificate cert = G.size() == 1
                         ? Certificate{Certificate::Kind::IrreducibleModP, best_p}
                         : Certificate{Certificate::Kind::RecombinationExhausted,
                                       best_p};
  out.push_back({std::move(f), cert});
  return out;
}

}  // namespace

Factorization factor(const poly::QPoly& f) {
  if (f.empty())
    fail(ErrorCode::InvalidArgument, "cannot factor the zero polynomial");
  Factorization out;
  if (poly::deg(f) == 0) {
    out.scale = f[0];
    return out;
  }
  const poly::SquarefreeDecomp sf = poly::squarefree_decompose(f);
  out.scale = sf.scale;
  for (const auto& part : sf.parts) {
    ZPoly g = part.factor;
    if (g[0] == 0) {
      out.factors.push_back(
          {ZPoly{0, 1}, part.mult, {Certificate::Kind::DegreeOne, 0}});
      g.erase(g.begin());
    }
    if (poly::deg(g) == 0) continue;
    if (poly::deg(g) == 1) {
      out.factors.push_back(
          {std::move(g), part.mult, {Certificate::Kind::DegreeOne, 0}});
      continue;
    }
    for (auto& sq : factor_squarefree(std::move(g)))
      out.factors.push_back({std::move(sq.f), part.mult, sq.cert});
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const IrreducibleFactor& a, const IrreducibleFactor& b) {
              if (a.f.size() != b.f.size()) return a.f.size() < b.f.size();
              for (std::size_t i = 0; i < a.f.size(); ++i) {
                const int c = cmp(a.f[i], b.f[i]);
                if (c != 0) return c < 0;
              }
              return a.multiplicity < b.multiplicity;
            });
  return out;
}

std::vector<unsigned> irreducible_degrees(const Factorization& fac) {
  std::vector<unsigned> out;
  for (const auto& f : fac.factors)
    for (unsigned i = 0; i < f.multiplicity; ++i)
      out.push_back(static_cast<unsigned>(poly::deg(f.f)));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qcv::fact
