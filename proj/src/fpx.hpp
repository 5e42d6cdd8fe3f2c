#pragma once
// Dense arithmetic in F_p[x] for word-size primes p < 2^31. Coefficient of
// x^i sits at index i, entries are already reduced mod p, and a nonzero
// polynomial has a nonzero last entry (the zero polynomial is empty).
// Shared by the modular gcd and the mod-p stages of factoring.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "common.hpp"

namespace qcv::fpx {

using u64 = std::uint64_t;
using Poly = std::vector<u64>;

inline u64 addm(u64 a, u64 b, u64 p) {
  u64 s = a + b;
  return s >= p ? s - p : s;
}

inline u64 subm(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

inline u64 mulm(u64 a, u64 b, u64 p) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p);
}

inline u64 powm(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulm(r, a, p);
    a = mulm(a, a, p);
    e >>= 1;
  }
  return r;
}

// p prime, a not divisible by p
inline u64 invm(u64 a, u64 p) { return powm(a, p - 2, p); }

inline void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

inline Poly from_mpz(const std::vector<mpz_class>& f, u64 p) {
  Poly r(f.size());
  const long lp = static_cast<long>(p);
  for (std::size_t i = 0; i < f.size(); ++i) {
    mpz_class t = f[i] % lp;
    if (t < 0) t += lp;
    r[i] = t.get_ui();
  }
  trim(r);
  return r;
}

inline Poly add(const Poly& a, const Poly& b, u64 p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    u64 x = i < a.size() ? a[i] : 0;
    u64 y = i < b.size() ? b[i] : 0;
    r[i] = addm(x, y, p);
  }
  trim(r);
  return r;
}

inline Poly sub(const Poly& a, const Poly& b, u64 p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    u64 x = i < a.size() ? a[i] : 0;
    u64 y = i < b.size() ? b[i] : 0;
    r[i] = subm(x, y, p);
  }
  trim(r);
  return r;
}

inline Poly mul(const Poly& a, const Poly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<u64>(
          (static_cast<unsigned __int128>(a[i]) * b[j] + r[i + j]) % p);
  }
  trim(r);
  return r;
}

inline Poly scale(const Poly& a, u64 c, u64 p) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mulm(a[i], c % p, p);
  trim(r);
  return r;
}

inline Poly monic(const Poly& f, u64 p) {
  if (f.empty()) return {};
  return scale(f, invm(f.back(), p), p);
}

struct DivRem {
  Poly quot, rem;
};

inline DivRem divrem(const Poly& f, const Poly& g, u64 p) {
  if (g.empty()) fail(ErrorCode::InvalidArgument, "division by zero polynomial");
  if (f.size() < g.size()) return {{}, f};
  const u64 inv_lc = invm(g.back(), p);
  Poly r = f;
  Poly q(f.size() - g.size() + 1, 0);
  for (std::size_t k = f.size() - g.size() + 1; k-- > 0;) {
    const std::size_t top = k + g.size() - 1;
    if (r[top] == 0) continue;
    const u64 c = mulm(r[top], inv_lc, p);
    q[k] = c;
    for (std::size_t j = 0; j < g.size(); ++j)
      r[k + j] = subm(r[k + j], mulm(c, g[j], p), p);
  }
  trim(q);
  trim(r);
  return {q, r};
}

inline Poly rem(const Poly& f, const Poly& g, u64 p) {
  return divrem(f, g, p).rem;
}

inline Poly gcd(Poly a, Poly b, u64 p) {
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& f, u64 p) {
  return rem(mul(a, b, p), f, p);
}

// base^e mod f, with an arbitrary-precision exponent (needed for the
// equal-degree split exponents (p^d - 1)/2)
inline Poly powmod(const Poly& base, const mpz_class& e, const Poly& f, u64 p) {
  if (e == 0) return {1 % p};
  Poly b = rem(base, f, p);
  Poly r = {1 % p};
  const std::size_t nbits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = nbits; i-- > 0;) {
    r = mulmod(r, r, f, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mulmod(r, b, f, p);
  }
  return r;
}

inline Poly derivative(const Poly& f, u64 p) {
  if (f.size() <= 1) return {};
  Poly r(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) r[i - 1] = mulm(f[i], i % p, p);
  trim(r);
  return r;
}

// Bezout pair for coprime a, b: s*a + t*b = 1. Throws Internal when the
// inputs turn out not to be coprime; callers guarantee coprimality.
inline void ext_gcd(const Poly& a, const Poly& b, u64 p, Poly& s, Poly& t) {
  Poly r0 = a, r1 = b;
  Poly s0 = {1}, s1 = {};
  Poly t0 = {}, t1 = {1};
  while (!r1.empty()) {
    DivRem qr = divrem(r0, r1, p);
    Poly r2 = qr.rem;
    Poly s2 = sub(s0, mul(qr.quot, s1, p), p);
    Poly t2 = sub(t0, mul(qr.quot, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (deg(r0) != 0)
    fail(ErrorCode::Internal, "ext_gcd: inputs are not coprime mod p");
  const u64 c = invm(r0[0], p);
  s = scale(s0, c, p);
  t = scale(t0, c, p);
}

}  // namespace qcv::fpx
