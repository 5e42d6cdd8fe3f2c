#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string_view>
#include <vector>

#include "common.hpp"
#include "gl2.hpp"

// Modular-curve bookkeeping for subgroups of GL2(Z/NZ): ramification data
// and genus of X_H over the j-line, indices of Gamma_1(N), degrees of the
// maps between X_1 curves, and gonality bounds assembled from a small table
// of known values pushed up along those maps.

namespace qcv::mcurve {

struct CurveInvariants {
  std::uint64_t index = 0;  // [PSL2(Z/N) : +-(h n SL2)]
  std::uint64_t e2 = 0;     // elliptic points of period 2
  std::uint64_t e3 = 0;     // elliptic points of period 3
  std::uint64_t cusps = 0;
  std::uint64_t genus = 0;
  bool det_surjective = true;  // false flags a geometrically disconnected X_H
};

// SL2(Z/NZ), generated by S = [[0,-1],[1,0]] and T = [[1,1],[0,1]].
gl2::Group sl2_group(unsigned n);

// {[[1,b],[0,d]] : d a unit}, the subgroup cutting out X_1(N).
gl2::Group gamma1_group(unsigned n);

// Counts cosets of +-(h n SL2) in SL2(Z/NZ) together with the fixed points
// of S and ST and the orbits of T on them; the genus comes out of the usual
// index / elliptic point / cusp formula, asserted to be integral.
CurveInvariants curve_invariants(const gl2::Group& h);

// [PSL2(Z) : +-Gamma_1(N)]: 1 and 3 for N = 1, 2, then
// (N^2/2) prod_{p | N} (1 - 1/p^2).
mpz_class gamma1_psl2_index(unsigned n);

// Degree of the natural map X_1(a*b) -> X_1(a):
//   c * b^2 * prod_{p | b, p !| a} (1 - 1/p^2),
// where c = 1/2 exactly when a <= 2 and a*b > 2, and c = 1 otherwise.
mpz_class degree_x1_map(std::uint64_t a, std::uint64_t b);

// 7*D/800, a lower bound for the gonality of a modular curve of
// PSL2-index D.
mpq_class abramovich_lower_bound(const mpz_class& d);

// Sufficient criterion for a degree-d point on X_1(N) to be sporadic:
// d < (7/1600) * [PSL2(Z) : +-Gamma_1(N)].
bool sporadic_sufficient(const mpz_class& deg, unsigned n);

struct GonalityEntry {
  unsigned level = 0;
  bool exact = false;  // false: the value is only an upper bound
  std::uint32_t value = 0;
};

// Q-gonalities of the small X_1(M) everything else is compared against.
const std::vector<GonalityEntry>& builtin_gonality_table();

// One entry per line, "level,exact|upper,value"; '#' starts a comment.
std::vector<GonalityEntry> parse_gonality_table(std::string_view text);

struct GonalityBound {
  mpz_class value;
  bool exact = false;  // witnessed by an exact table entry at level N itself
};

// min over table levels M | N of gon(X_1(M)) * deg(X_1(N) -> X_1(M)).
// NotFound when no table level divides N.
GonalityBound gonality_upper(unsigned n, const std::vector<GonalityEntry>& table);
GonalityBound gonality_upper(unsigned n);

}  // namespace qcv::mcurve
