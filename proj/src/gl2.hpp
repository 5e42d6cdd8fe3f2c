#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "common.hpp"

// Exact arithmetic and subgroup algorithms for GL2(Z/nZ), 2 <= n <= 255.
// A matrix is stored row-major with entries reduced mod n; an element set is
// a sorted vector of packed 32-bit keys, which makes membership tests binary
// searches and gives every enumeration a canonical deterministic order.

namespace qcv::gl2 {

using Key = std::uint32_t;

struct Mat {
  std::uint8_t a, b, c, d;  // [[a,b],[c,d]]
};

inline Key pack(const Mat& m) {
  return Key(m.a) | Key(m.b) << 8 | Key(m.c) << 16 | Key(m.d) << 24;
}
inline Mat unpack(Key k) {
  return Mat{std::uint8_t(k & 0xff), std::uint8_t(k >> 8 & 0xff),
             std::uint8_t(k >> 16 & 0xff), std::uint8_t(k >> 24 & 0xff)};
}

Mat reduce(long long a, long long b, long long c, long long d, unsigned n);
Mat mul(const Mat& x, const Mat& y, unsigned n);
unsigned det(const Mat& m, unsigned n);
unsigned trace(const Mat& m, unsigned n);
bool is_invertible(const Mat& m, unsigned n);
Mat inverse(const Mat& m, unsigned n);   // throws NotInvertible
unsigned unit_inverse(unsigned a, unsigned n);  // throws NotInvertible
Mat identity();
Mat neg_identity(unsigned n);

inline constexpr std::size_t kDefaultClosureCap = 2'000'000;

struct Group {
  unsigned n = 0;
  std::vector<Mat> gens;        // may be empty for filtered groups
  std::vector<Key> elems;       // sorted, duplicate-free, contains identity

  std::uint64_t order() const { return elems.size(); }
  bool contains(Key k) const;
  bool contains(const Mat& m) const { return contains(pack(m)); }
  bool is_subgroup_of(const Group& ambient) const;
};

// Breadth-first closure of the generated subgroup. Throws NotInvertible for a
// singular generator and CapExceeded when the element count would pass `cap`.
Group closure(unsigned n, std::vector<Mat> gens, std::size_t cap = kDefaultClosureCap);

// The full group GL2(Z/nZ) materialized by scanning all n^4 matrices.
Group full_gl2(unsigned n, std::size_t cap = kDefaultClosureCap);

// |GL2(Z/nZ)| = n^4 prod_{p|n} (1-1/p)(1-1/p^2).
std::uint64_t group_order_formula(unsigned n);

// |ambient| / |h|; requires h to be contained in ambient.
std::uint64_t index_in_ambient(const Group& h, const Group& ambient);

// Image of h under entrywise reduction mod m (m | n). If `surjective_onto_full`
// is non-null it reports whether the image is all of GL2(Z/mZ).
Group reduce_mod(const Group& h, unsigned m, bool* surjective_onto_full = nullptr);

// Subgroup of elements whose determinant lies in `allowed_units`.
Group det_restrict(const Group& h, const std::vector<unsigned>& allowed_units);

// Units hit by the determinant, sorted.
std::vector<unsigned> det_image(const Group& h);

// A small generating set recovered greedily from the element list.
std::vector<Mat> find_generators(const Group& h);

// Searches the ambient group exhaustively for g with g h1 g^-1 = h2.
// Order/trace/determinant fingerprints prune non-conjugate pairs early.
std::optional<Mat> conjugating_element(const Group& h1, const Group& h2,
                                       const Group& ambient);

// Normalizer of the nonsplit Cartan subgroup of GL2(F_p): the unit group of
// F_p[sqrt(eps)] for the least positive non-residue eps, extended by the
// conjugation [[1,0],[0,-1]]. Order 2(p^2-1).
Group nonsplit_cartan_normalizer(unsigned p);

// Plain-text catalog of named subgroups, one per line:
//   LABEL N a,b,c,d; a,b,c,d; ...
struct CatalogEntry {
  std::string label;
  unsigned n = 0;
  std::vector<Mat> gens;
};

std::vector<CatalogEntry> parse_catalog(std::string_view text);
const std::vector<CatalogEntry>& builtin_catalog();  // labels H1..H10, modulus 18
const CatalogEntry& catalog_lookup(const std::vector<CatalogEntry>& cat,
                                   std::string_view label);

}  // namespace qcv::gl2
