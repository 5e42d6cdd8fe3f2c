#pragma once

#include <cstdint>
#include <vector>

#include "common.hpp"
#include "gl2.hpp"

// Finite groups as explicit multiplication tables: subgroup lattices,
// quotients, isomorphism counts, and fibered (subdirect) products of two
// factors counted through Goursat's correspondence. The same correspondence,
// applied to a subgroup of GL2(Z/2p^s) and its mod-2 / mod-p^s reductions,
// yields the two kernels that measure how entangled the reductions are.

namespace qcv::grp {

// Element ids run 0..n-1 and x*y is mul[x*n+y]. `id` is the identity.
struct Table {
  std::uint32_t n = 0;
  std::uint16_t id = 0;
  std::vector<std::uint16_t> mul;
  std::vector<std::uint16_t> inv;

  std::uint16_t at(std::uint16_t x, std::uint16_t y) const {
    return mul[std::size_t(x) * n + y];
  }
};

// Tables are meant for small groups; the quadratic storage is the point.
inline constexpr std::uint32_t kMaxTableOrder = 4096;

Table cyclic_table(std::uint32_t n);
// Ids in the product are x * b.n + y.
Table product_table(const Table& a, const Table& b);
Table table_from_group(const gl2::Group& g);

// Multiplicative order of every element.
std::vector<std::uint32_t> element_orders(const Table& g);

// Short generating list, grown greedily: the first element outside the
// running closure is appended until the closure is the whole group.
std::vector<std::uint16_t> table_generators(const Table& g);

// Every subgroup as a sorted element-id list, ordered by (size, elements).
// Walks the join lattice upward from the trivial subgroup, joining each
// known subgroup with each cyclic subgroup until nothing new appears.
std::vector<std::vector<std::uint16_t>> all_subgroups(const Table& g);

// The subgroups invariant under conjugation.
std::vector<std::vector<std::uint16_t>> normal_subgroups(const Table& g);

bool is_subgroup(const Table& g, const std::vector<std::uint16_t>& h);
bool is_normal(const Table& g, const std::vector<std::uint16_t>& h);

// Coset multiplication table of g/h for normal h (InvalidArgument otherwise,
// NotASubgroup when h is not even a subgroup). When proj is non-null it
// receives the coset id of every element of g.
Table quotient_table(const Table& g, const std::vector<std::uint16_t>& h,
                     std::vector<std::uint16_t>* proj = nullptr);

// Number of group isomorphisms a -> b; |Aut(a)| when the tables coincide.
std::uint64_t count_isomorphisms(const Table& a, const Table& b);
bool tables_isomorphic(const Table& a, const Table& b);

// Subgroups of a x b projecting onto both factors. Goursat: such subgroups
// correspond to triples (N_a normal in a, N_b normal in b, an isomorphism
// a/N_a -> b/N_b), so the count is a sum of isomorphism counts over pairs
// of normal subgroups with matching quotients. The brute count enumerates
// subgroups of the product and filters; the two must agree.
std::uint64_t count_subdirect_goursat(const Table& a, const Table& b);
std::uint64_t count_subdirect_brute(const Table& a, const Table& b);

// For h <= GL2(Z/2p^s) with p an odd prime, write A = h mod p^s and
// B = h mod 2. The two reduction kernels, pushed into the opposite factor,
//   k = { x mod p^s : x in h, x = 1 mod 2 }   (normal in A)
//   l = { x mod 2   : x in h, x = 1 mod p^s } (normal in B)
// satisfy A/k ~= B/l via the correspondence above. quotient_order is that
// common order; iso_checked records that the induced bijection of cosets was
// verified to be a well-defined isomorphism, not just an order match.
struct GoursatKernels {
  gl2::Group k;  // subgroup of the mod-p^s image
  gl2::Group l;  // subgroup of the mod-2 image
  std::uint64_t quotient_order = 0;
  bool iso_checked = false;
};

// BadShape unless the modulus of h is 2*p^s with p an odd prime and s >= 1.
GoursatKernels goursat_kernels(const gl2::Group& h, unsigned p);

}  // namespace qcv::grp
