#include "torsion.hpp"

#include "modcurve.hpp"

namespace qcv::tors {

namespace {

mpz_class mpz_pow(unsigned base, unsigned exp) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
  return out;
}

void need_prime(unsigned p) {
  if (!is_prime(p)) fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
}

// 2k - c clamped at zero, without unsigned wraparound.
unsigned clamp_exp(unsigned k, unsigned c) { return 2 * k > c ? 2 * k - c : 0; }

}  // namespace

unsigned index_valuation_bound(unsigned p, std::optional<FiveIsogenies> five) {
  need_prime(p);
  if (p == 5) {
    if (!five)
      fail(ErrorCode::FlagRequired,
           "p = 5 needs the isogeny sub-case flag (one cyclic 5-isogeny, a "
           "cyclic 25-isogeny, or two independent 5-isogenies)");
    return *five == FiveIsogenies::One ? 0 : 1;
  }
  if (five)
    fail(ErrorCode::InvalidArgument, "the isogeny sub-case flag only applies to p = 5");
  if (p == 2) return 6;
  if (p == 3) return 2;
  return 0;  // p >= 7 with a rational cyclic p-isogeny
}

mpz_class required_degree_divisor(unsigned p, unsigned k, bool special_j) {
  need_prime(p);
  if (k == 0 || k > 32) fail(ErrorCode::OutOfRange, "need 1 <= k <= 32");
  if (special_j && p != 7)
    fail(ErrorCode::InvalidArgument, "only p = 7 has a special-j branch");
  switch (p) {
    case 2:
      if (k > 4)
        fail(ErrorCode::CapExceeded, "order 2^k with k > 4 does not occur");
      return 1;
    case 3:
      return mpz_pow(3, clamp_exp(k, 4));
    case 5:
      return mpz_pow(5, clamp_exp(k, 3));
    case 7:
      return special_j ? 3 * mpz_pow(7, clamp_exp(k, 3))
                       : mpz_pow(7, clamp_exp(k, 2));
    case 11:
      return 5 * mpz_pow(11, clamp_exp(k, 2));
    case 13:
      return 3 * mpz_pow(13, clamp_exp(k, 2));
    default:
      fail(ErrorCode::Unsupported, "no points of order " + std::to_string(p) +
                                       "^k arise in this family");
  }
}

unsigned admissible_two_power(unsigned p) {
  need_prime(p);
  switch (p) {
    case 3:
    case 7:
      return 2;
    case 5:
    case 11:
    case 13:
      return 1;
    default:
      fail(ErrorCode::Unsupported,
           "no admissible combined level for p = " + std::to_string(p));
  }
}

GonalityGap verify_gonality_gap(unsigned p, unsigned k) {
  need_prime(p);
  if (k > 16) fail(ErrorCode::OutOfRange, "need k <= 16");
  // The comparison starts at the level where the divisor rule has content.
  unsigned base_level = 0, k_min = 0;
  switch (p) {
    case 2: base_level = 16; k_min = 4; break;
    case 3: base_level = 27; k_min = 3; break;
    case 5: base_level = 25; k_min = 2; break;
    case 7: base_level = 49; k_min = 2; break;
    case 11: base_level = 11; k_min = 1; break;
    case 13: base_level = 13; k_min = 1; break;
    default:
      fail(ErrorCode::Unsupported,
           "no comparison available for p = " + std::to_string(p));
  }
  if (k < k_min)
    fail(ErrorCode::OutOfRange, "the comparison for p = " + std::to_string(p) +
                                    " starts at k = " + std::to_string(k_min));
  if (p == 2 && k != 4)
    fail(ErrorCode::OutOfRange, "for p = 2 only k = 4 is compared");

  std::uint32_t gon = 0;
  for (const auto& e : mcurve::builtin_gonality_table())
    if (e.level == base_level) gon = e.value;
  if (gon == 0) fail(ErrorCode::Internal, "missing base gonality entry");

  std::uint64_t pk = 1;
  for (unsigned i = 0; i < k; ++i) pk *= p;

  GonalityGap out;
  out.bound = gon * mcurve::degree_x1_map(base_level, pk / base_level);
  out.divisor = p == 2 ? mpz_class(3) : required_degree_divisor(p, k);
  out.divisor_special = p == 7 ? required_degree_divisor(7, k, true) : mpz_class(0);
  out.holds = out.divisor >= out.bound &&
              (p != 7 || out.divisor_special >= out.bound);
  out.strict = out.divisor > out.bound &&
               (p != 7 || out.divisor_special > out.bound);
  return out;
}

CmCheck cm_sporadic_check(unsigned p, unsigned n, const mpz_class& h) {
  need_prime(p);
  if (p % 4 != 3)
    fail(ErrorCode::InvalidArgument,
         "need p = 3 mod 4: no odd-degree CM points otherwise");
  if (n == 0) fail(ErrorCode::OutOfRange, "need n >= 1");
  if (h < 1) fail(ErrorCode::InvalidArgument, "class number must be >= 1");

  CmCheck out;
  if (p == 3)
    out.delta = n == 1 ? 0 : 3 * n / 2 - 2;
  else
    out.delta = 3 * n / 2 - 1;
  out.degree = h * ((p - 1) / 2) * mpz_pow(p, out.delta);

  std::uint64_t pn = 1;
  for (unsigned i = 0; i < n; ++i) {
    pn *= p;
    if (pn > (1ull << 31)) fail(ErrorCode::CapExceeded, "level p^n too large");
  }
  out.sporadic = mcurve::sporadic_sufficient(out.degree, unsigned(pn));
  return out;
}

unsigned cm_min_sporadic_level(unsigned p, const mpz_class& h, unsigned n_max) {
  for (unsigned n = 1; n <= n_max; ++n)
    if (cm_sporadic_check(p, n, h).sporadic) return n;
  fail(ErrorCode::NotFound,
       "not sporadic for any n <= " + std::to_string(n_max));
}

SplitCmCheck cm_split_sporadic_check(unsigned p, const mpz_class& h_k) {
  need_prime(p);
  if (h_k < 1) fail(ErrorCode::InvalidArgument, "class number must be >= 1");
  SplitCmCheck out;
  out.degree = h_k * p * (p - 1);
  out.sporadic = h_k * 3200 < 7 * mpz_class(p) * (p + 1);
  return out;
}

unsigned serre_threshold() {
  for (unsigned p = 2;; ++p) {
    if (!is_prime(p)) continue;
    const mpz_class p2 = mpz_class(p) * p;
    const mpz_class lhs = 2 * mpz_class(p) * (p2 - 1) * 1600;
    const mpz_class rhs = 7 * p2 * (p2 - 1);
    if (lhs < rhs) return p;
  }
}

}  // namespace qcv::tors
