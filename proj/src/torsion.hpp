#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>

#include "common.hpp"

// Arithmetic rules for prime-power torsion coming from cyclic isogenies:
// valuation bounds for the index of the mod-p^infty image, divisors of the
// degrees of the resulting points on X_1(p^k), the comparison of those
// divisors against gonality bounds, and the analogous CM counts.

namespace qcv::tors {

// Sub-case flag for p = 5: one rational cyclic 5-isogeny only, a rational
// cyclic 25-isogeny, or two independent rational 5-isogenies.
enum class FiveIsogenies { One, Cyclic25, TwoIndependent };

// Bound for ord_p of the index of the image of Galois in GL2(Z_p), for a
// non-CM curve over Q with a rational cyclic p-isogeny (none needed at
// p = 2). p = 5 requires the flag above (FlagRequired otherwise); passing
// it for any other p is an error.
unsigned index_valuation_bound(unsigned p,
                               std::optional<FiveIsogenies> five = std::nullopt);

// Every point of order p^k in the family of interest has degree divisible
// by this value. special_j selects the exceptional branch that exists for
// p = 7 only. Unsupported when no such points exist for the given p;
// CapExceeded for p = 2 beyond k = 4.
mpz_class required_degree_divisor(unsigned p, unsigned k, bool special_j = false);

// Largest a such that torsion of order 2^a * p^k remains admissible.
unsigned admissible_two_power(unsigned p);

struct GonalityGap {
  mpz_class divisor;          // generic branch
  mpz_class divisor_special;  // 0 when p has no special branch
  mpz_class bound;            // gonality upper bound for X_1(p^k)
  bool holds = false;         // every branch is >= bound
  bool strict = false;        // every branch is > bound
};

// Compares required_degree_divisor(p, k) (every branch) against the pushed-up
// gonality bound for X_1(p^k). For p = 2 only k = 4 is meaningful, and the
// divisor used is 3: the curve at that level has no non-cuspidal rational
// points, so a point of odd degree has degree at least 3.
GonalityGap verify_gonality_gap(unsigned p, unsigned k);

struct CmCheck {
  unsigned delta = 0;  // exponent of p in the degree
  mpz_class degree;
  bool sporadic = false;
};

// Degree of the CM point of order p^n built from the order of class number h,
// and whether it is sporadic on X_1(p^n). Requires p = 3 mod 4; the p = 1
// mod 4 case yields no odd-degree CM points (InvalidArgument).
CmCheck cm_sporadic_check(unsigned p, unsigned n, const mpz_class& h);

// Least n for which the check above reports sporadic; NotFound beyond n_max.
unsigned cm_min_sporadic_level(unsigned p, const mpz_class& h,
                               unsigned n_max = 30);

struct SplitCmCheck {
  mpz_class degree;  // h_k * p * (p-1)
  bool sporadic = false;
};

// Split-CM variant on X_1(p^2): degree h_k * phi(p^2), sporadic exactly when
// h_k < (7/3200) * p * (p+1).
SplitCmCheck cm_split_sporadic_check(unsigned p, const mpz_class& h_k);

// Least prime p for which 2p(p^2-1) < (7/1600) * p^2 (p^2-1), i.e. the point
// degree from the relevant twisting construction drops below the sporadic
// threshold on X_1(p^2).
unsigned serre_threshold();

}  // namespace qcv::tors
