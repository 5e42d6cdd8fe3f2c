#include "poly.hpp"

#include <algorithm>
#include <sstream>

#include "fpx.hpp"

namespace qcv::poly {

void trim(QPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

void trim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int deg(const QPoly& f) { return static_cast<int>(f.size()) - 1; }
int deg(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }

QPoly from_z(const ZPoly& f) {
  QPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = mpq_class(f[i]);
  return r;
}

QPoly add(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] += b[i];
  }
  trim(r);
  return r;
}

QPoly sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] -= b[i];
  }
  trim(r);
  return r;
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

QPoly scale(const QPoly& a, const mpq_class& c) {
  if (c == 0) return {};
  QPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
  return r;
}

QPoly derivative(const QPoly& f) {
  if (f.size() <= 1) return {};
  QPoly r(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i)
    r[i - 1] = f[i] * mpq_class(static_cast<unsigned long>(i));
  trim(r);
  return r;
}

mpq_class eval(const QPoly& f, const mpq_class& x) {
  mpq_class v = 0;
  for (std::size_t i = f.size(); i-- > 0;) v = v * x + f[i];
  return v;
}

ZPoly add(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] += b[i];
  }
  trim(r);
  return r;
}

ZPoly sub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] -= b[i];
  }
  trim(r);
  return r;
}

ZPoly mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

ZPoly derivative(const ZPoly& f) {
  if (f.size() <= 1) return {};
  ZPoly r(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i)
    r[i - 1] = f[i] * static_cast<unsigned long>(i);
  trim(r);
  return r;
}

mpz_class eval(const ZPoly& f, const mpz_class& x) {
  mpz_class v = 0;
  for (std::size_t i = f.size(); i-- > 0;) v = v * x + f[i];
  return v;
}

QuotRem divrem(const QPoly& f, const QPoly& g) {
  if (g.empty()) fail(ErrorCode::InvalidArgument, "division by zero polynomial");
  if (f.size() < g.size()) return {{}, f};
  QPoly r = f;
  QPoly q(f.size() - g.size() + 1);
  const mpq_class inv_lc = 1 / g.back();
  for (std::size_t k = f.size() - g.size() + 1; k-- > 0;) {
    const std::size_t top = k + g.size() - 1;
    if (r[top] == 0) continue;
    const mpq_class c = r[top] * inv_lc;
    q[k] = c;
    for (std::size_t j = 0; j < g.size(); ++j) r[k + j] -= c * g[j];
  }
  trim(q);
  trim(r);
  return {q, r};
}

QPoly exact_div(const QPoly& f, const QPoly& g) {
  QuotRem qr = divrem(f, g);
  if (!qr.rem.empty())
    fail(ErrorCode::NotADivisor, "polynomial division leaves a remainder");
  return qr.quot;
}

QPoly monic(const QPoly& f) {
  if (f.empty()) return {};
  return scale(f, 1 / f.back());
}

std::optional<ZPoly> try_div(const ZPoly& f, const ZPoly& g) {
  if (g.empty()) fail(ErrorCode::InvalidArgument, "division by zero polynomial");
  if (f.empty()) return ZPoly{};
  if (f.size() < g.size()) return std::nullopt;
  ZPoly r = f;
  ZPoly q(f.size() - g.size() + 1);
  for (std::size_t k = f.size() - g.size() + 1; k-- > 0;) {
    const std::size_t top = k + g.size() - 1;
    if (r[top] == 0) continue;
    if (!mpz_divisible_p(r[top].get_mpz_t(), g.back().get_mpz_t()))
      return std::nullopt;
    mpz_class c;
    mpz_divexact(c.get_mpz_t(), r[top].get_mpz_t(), g.back().get_mpz_t());
    q[k] = c;
    for (std::size_t j = 0; j < g.size(); ++j) r[k + j] -= c * g[j];
  }
  trim(r);
  if (!r.empty()) return std::nullopt;
  trim(q);
  return q;
}

mpz_class content(const ZPoly& f) {
  mpz_class c = 0;
  for (const auto& a : f) {
    mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), a.get_mpz_t());
    if (c == 1) break;
  }
  return c;
}

PrimForm primitive_form(const QPoly& f) {
  if (f.empty())
    fail(ErrorCode::InvalidArgument, "zero polynomial has no primitive form");
  mpz_class den_lcm = 1;
  for (const auto& a : f)
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
            a.get_den().get_mpz_t());
  ZPoly g(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    mpz_class m;
    mpz_divexact(m.get_mpz_t(), den_lcm.get_mpz_t(),
                 f[i].get_den().get_mpz_t());
    g[i] = f[i].get_num() * m;
  }
  mpz_class c = content(g);
  if (g.back() < 0) c = -c;
  for (auto& a : g) mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
  mpq_class s(c, den_lcm);
  s.canonicalize();
  return {s, g};
}

namespace {

// primitive part with positive leading coefficient (input nonzero)
ZPoly primitive_part(const ZPoly& f) {
  mpz_class c = content(f);
  if (f.back() < 0) c = -c;
  ZPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    mpz_divexact(r[i].get_mpz_t(), f[i].get_mpz_t(), c.get_mpz_t());
  return r;
}

std::uint64_t next_crt_prime(std::uint64_t below, const mpz_class& avoid_a,
                             const mpz_class& avoid_b) {
  for (std::uint64_t q = below - 2;; q -= 2) {
    if (q < 100) fail(ErrorCode::Internal, "ran out of gcd primes");
    if (!is_prime(q)) continue;
    if (mpz_divisible_ui_p(avoid_a.get_mpz_t(), q)) continue;
    if (mpz_divisible_ui_p(avoid_b.get_mpz_t(), q)) continue;
    return q;
  }
}

// Gcd of primitive polynomials of degree >= 1, computed modulo word primes
// and lifted coefficient-wise by CRT; a candidate is accepted once it
// divides both inputs over Z. Unlucky primes only delay acceptance.
ZPoly brown_gcd(const ZPoly& pa, const ZPoly& pb) {
  mpz_class gamma;
  mpz_gcd(gamma.get_mpz_t(), pa.back().get_mpz_t(), pb.back().get_mpz_t());

  std::uint64_t q = (1ULL << 31) + 1;  // scan downward from here
  int d_best = -1;
  mpz_class modulus = 1;
  ZPoly acc, prev_candidate;
  for (;;) {
    q = next_crt_prime(q, pa.back(), pb.back());
    fpx::Poly g = fpx::gcd(fpx::from_mpz(pa, q), fpx::from_mpz(pb, q), q);
    if (fpx::deg(g) == 0) return {mpz_class(1)};
    mpz_class gam_q = gamma % static_cast<long>(q);
    if (gam_q < 0) gam_q += static_cast<long>(q);
    g = fpx::scale(g, gam_q.get_ui(), q);
    if (d_best >= 0 && fpx::deg(g) > d_best) continue;  // unlucky prime
    if (d_best < 0 || fpx::deg(g) < d_best) {
      d_best = fpx::deg(g);
      modulus = static_cast<unsigned long>(q);
      acc.assign(g.size(), 0);
      for (std::size_t i = 0; i < g.size(); ++i) {
        acc[i] = static_cast<unsigned long>(g[i]);
        if (acc[i] * 2 > static_cast<long>(q)) acc[i] -= static_cast<long>(q);
      }
      prev_candidate.clear();
    } else {
      mpz_class mod_q = modulus % static_cast<long>(q);
      if (mod_q < 0) mod_q += static_cast<long>(q);
      const std::uint64_t inv_m = fpx::invm(mod_q.get_ui(), q);
      const mpz_class new_modulus = modulus * static_cast<unsigned long>(q);
      for (std::size_t i = 0; i < acc.size(); ++i) {
        mpz_class cur = acc[i] % static_cast<long>(q);
        if (cur < 0) cur += static_cast<long>(q);
        const std::uint64_t gi = i < g.size() ? g[i] : 0;
        const std::uint64_t delta =
            fpx::mulm(fpx::subm(gi, cur.get_ui(), q), inv_m, q);
        acc[i] += modulus * static_cast<unsigned long>(delta);
        if (acc[i] * 2 > new_modulus) acc[i] -= new_modulus;
      }
      modulus = new_modulus;
    }
    ZPoly candidate = acc;
    trim(candidate);
    if (candidate.empty()) continue;
    candidate = primitive_part(candidate);
    if (candidate == prev_candidate) {
      // coefficients stabilized; verify by trial division
      if (try_div(pa, candidate) && try_div(pb, candidate)) return candidate;
    }
    prev_candidate = std::move(candidate);
  }
}

}  // namespace

ZPoly gcd(const ZPoly& a, const ZPoly& b) {
  if (a.empty() && b.empty()) return {};
  if (a.empty() || b.empty()) {
    ZPoly r = a.empty() ? b : a;
    if (r.back() < 0)
      for (auto& c : r) c = -c;
    return r;
  }
  const mpz_class ca = content(a), cb = content(b);
  mpz_class gc;
  mpz_gcd(gc.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  const ZPoly pa = primitive_part(a);
  const ZPoly pb = primitive_part(b);
  ZPoly pg;
  if (deg(pa) == 0 || deg(pb) == 0)
    pg = {mpz_class(1)};
  else if (pa == pb)
    pg = pa;
  else
    pg = brown_gcd(pa, pb);
  for (auto& c : pg) c *= gc;
  return pg;
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  if (a.empty() && b.empty()) return {};
  if (a.empty()) return monic(b);
  if (b.empty()) return monic(a);
  const ZPoly pg = gcd(primitive_form(a).prim, primitive_form(b).prim);
  return monic(from_z(pg));
}

SquarefreeDecomp squarefree_decompose(const QPoly& f) {
  if (f.empty())
    fail(ErrorCode::InvalidArgument, "cannot decompose the zero polynomial");
  if (deg(f) == 0) return {mpq_class(f[0]), {}};
  const PrimForm pf = primitive_form(f);
  const ZPoly dprim = derivative(pf.prim);
  const ZPoly u = gcd(pf.prim, dprim);

  auto div_or_die = [](const ZPoly& x, const ZPoly& y) {
    auto r = try_div(x, y);
    if (!r) fail(ErrorCode::Internal, "squarefree step division failed");
    return *r;
  };

  SquarefreeDecomp out;
  out.scale = pf.scale;
  ZPoly v = div_or_die(pf.prim, u);
  ZPoly w = div_or_die(dprim, u);
  unsigned i = 1;
  while (deg(v) > 0) {
    const ZPoly z = sub(w, derivative(v));
    const ZPoly h = gcd(v, z);
    if (deg(h) > 0) out.parts.push_back({h, i});
    v = div_or_die(v, h);
    w = div_or_die(z, h);
    ++i;
  }

  ZPoly check = {mpz_class(1)};
  for (const auto& part : out.parts)
    for (unsigned j = 0; j < part.mult; ++j) check = mul(check, part.factor);
  if (check != pf.prim)
    fail(ErrorCode::Internal, "squarefree decomposition does not multiply back");
  return out;
}

namespace {

void append_terms(std::ostringstream& os, const ZPoly& f) {
  bool first = true;
  for (std::size_t i = f.size(); i-- > 0;) {
    if (f[i] == 0) continue;
    const mpz_class a = abs(f[i]);
    if (first) {
      if (f[i] < 0) os << '-';
      first = false;
    } else {
      os << (f[i] < 0 ? " - " : " + ");
    }
    const bool show_coeff = (a != 1) || (i == 0);
    if (show_coeff) os << a.get_str();
    if (i > 0) {
      if (show_coeff) os << '*';
      os << 'x';
      if (i > 1) os << '^' << i;
    }
  }
  if (first) os << '0';
}

}  // namespace

std::string to_string(const QPoly& f) {
  if (f.empty()) return "0";
  if (deg(f) == 0) return f[0].get_str();
  const PrimForm pf = primitive_form(f);
  std::ostringstream os;
  if (pf.scale != 1) {
    os << pf.scale.get_str() << " * (";
    append_terms(os, pf.prim);
    os << ')';
  } else {
    append_terms(os, pf.prim);
  }
  return os.str();
}

std::string to_string(const ZPoly& f) {
  std::ostringstream os;
  append_terms(os, f);
  return os.str();
}

}  // namespace qcv::poly
