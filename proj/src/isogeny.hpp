#pragma once
// Combinatorics of cyclic isogeny kernels inside (Z/p^k)^2 and the induced
// transformations of Galois images: kernel enumeration, the composition law
// for two cyclic kernels, the quotient-image congruences for the kernel
// <(N/m)P>, the order-p quotient dichotomy, and the p^2-degree propagation
// step for sporadic points.

#include <vector>

#include <gmpxx.h>

#include "common.hpp"
#include "gl2.hpp"

namespace qcv::isogeny {

inline constexpr unsigned long kTorsionCap = 4096;  // bound on p^k

// cyclic subgroup of (Z/p^k)^2, given by a canonical generator of exact
// order p^t
struct CyclicKernel {
  unsigned long gx = 0, gy = 0;
  unsigned t = 0;
};

// All cyclic subgroups of order p^j, duplicate-free. Generators are
// Hermite-normalized: p^{k-j}(1, t) for t in [0, p^j), then p^{k-j}(sp, 1)
// for s in [0, p^{j-1}); the count is p^{j-1}(p+1).
std::vector<CyclicKernel> cyclic_subgroups(unsigned long p, unsigned k,
                                           unsigned j);

// Composition law for kernels C_f (order p^t) and C_g (order p^n) of two
// cyclic isogenies from the same curve. When C_f is properly contained in
// C_g the codomain of f carries two independent isogenies of degrees
// p^{n-t} and p^t; otherwise the composite through the dual is cyclic of
// degree p^a with a = max(t, n+t-2m), where p^m is the order of the meet.
// In every cyclic case a >= min(n, 1 + n/2).
enum class ComposeKind { TwoIndependent, SingleIsogeny };
struct ComposeOutcome {
  ComposeKind kind;
  unsigned a = 0;              // SingleIsogeny: composite exponent
  unsigned deg1 = 0, deg2 = 0; // TwoIndependent: exponents n-t and t
  unsigned meet = 0;           // exponent m of |C_f meet C_g|
};
ComposeOutcome compose_kernels(unsigned long p, unsigned k,
                               const CyclicKernel& f, const CyclicKernel& g);

// Image of g = [[1,b],[0,d]] mod N on the order-N quotient torsion for the
// kernel <(N/m)(1,0)>, in the basis {phi(Q), R} with mR = phi(P) and the
// zero-lift convention: [[d, 0], [mb mod N, 1]]. The off-diagonal entries
// satisfy y = 0 mod N/m and z = 0 mod m, and the determinant is preserved.
gl2::Mat induced_quotient_image(const gl2::Mat& g, unsigned N, unsigned m);

// Exhaustive check at an odd prime p <= 13: for the full point-stabilizer
// G = {[[1,b],[0,d]]} <= GL2(F_p) and every order-p kernel C, the induced
// image on the quotient p-torsion (zero-lifts of the stabilizer of C in G,
// together with the whole reduction kernel I + pX) either fixes a nonzero
// vector or lands in a conjugate of {[[a,*],[0,1]]}.
struct BorelReport {
  unsigned kernels = 0;
  unsigned fixed_vector_count = 0;  // kernels settled by a fixed vector
  unsigned mirrored_borel_count = 0;
  bool holds = false;               // every kernel settled by at least one
};
BorelReport borel_isogeny_dichotomy(unsigned long p);

// One propagation step along X1(pN) -> X1(N) for p | N: the degree bound
// p^2 * deg_x, its exact sporadicity test at level pN, and whether the
// hypothesis held at level N to begin with.
struct Propagation {
  mpz_class deg_bound;
  bool still_sporadic = false;
  bool hypothesis_held = false;
};
Propagation sporadic_propagation(const mpz_class& deg_x, unsigned N,
                                 unsigned long p);

}  // namespace qcv::isogeny
