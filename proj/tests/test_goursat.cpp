#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "goursat.hpp"

using namespace qcv;
using grp::Table;

namespace {

template <typename F>
std::optional<ErrorCode> code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code;
  }
  return std::nullopt;
}

Table s3() { return grp::table_from_group(gl2::full_gl2(2)); }

Table sl2f3() {
  return grp::table_from_group(gl2::det_restrict(gl2::full_gl2(3), {1}));
}

// SL2(F_3) modulo its center {I, -I}; -I is the unique element of order 2.
Table a4() {
  Table s = sl2f3();
  auto ord = grp::element_orders(s);
  std::vector<std::uint16_t> center{s.id};
  for (std::uint32_t x = 0; x < s.n; ++x)
    if (ord[x] == 2) center.push_back(std::uint16_t(x));
  REQUIRE(center.size() == 2);
  std::sort(center.begin(), center.end());
  return grp::quotient_table(s, center);
}

gl2::Group random_subgroup(unsigned n, std::mt19937& rng, int ngens) {
  std::uniform_int_distribution<unsigned> d(0, n - 1);
  std::vector<gl2::Mat> gens;
  while (int(gens.size()) < ngens) {
    gl2::Mat m{std::uint8_t(d(rng)), std::uint8_t(d(rng)), std::uint8_t(d(rng)),
               std::uint8_t(d(rng))};
    if (gl2::is_invertible(m, n)) gens.push_back(m);
  }
  return gl2::closure(n, gens);
}

// Sign of the permutation a mod-2 matrix induces on the three nonzero
// column vectors (1,0), (0,1), (1,1).
int sign_mod2(const gl2::Mat& m) {
  const unsigned vx[3] = {1, 0, 1}, vy[3] = {0, 1, 1};
  auto slot = [](unsigned x, unsigned y) {
    return x == 1 && y == 0 ? 0 : (x == 0 && y == 1 ? 1 : 2);
  };
  int perm[3];
  for (int i = 0; i < 3; ++i) {
    const unsigned x = (m.a * vx[i] + m.b * vy[i]) % 2;
    const unsigned y = (m.c * vx[i] + m.d * vy[i]) % 2;
    perm[i] = slot(x, y);
  }
  bool seen[3] = {false, false, false};
  int cycles = 0;
  for (int i = 0; i < 3; ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (int j = i; !seen[j]; j = perm[j]) seen[j] = true;
  }
  return (3 - cycles) % 2 == 0 ? 1 : -1;
}

}  // namespace

TEST_CASE("cyclic and product tables") {
  Table c6 = grp::cyclic_table(6);
  CHECK(c6.n == 6);
  CHECK(c6.at(4, 5) == 3);
  CHECK(c6.inv[2] == 4);
  CHECK(grp::element_orders(c6) == std::vector<std::uint32_t>{1, 6, 3, 2, 3, 6});

  Table v4 = grp::product_table(grp::cyclic_table(2), grp::cyclic_table(2));
  CHECK(v4.n == 4);
  for (std::uint32_t x = 0; x < 4; ++x) CHECK(v4.at(std::uint16_t(x), std::uint16_t(x)) == v4.id);

  CHECK(code_of([] { grp::cyclic_table(0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { grp::cyclic_table(5000); }) == ErrorCode::CapExceeded);
}

TEST_CASE("table built from a matrix group") {
  Table s = s3();
  CHECK(s.n == 6);
  auto ord = grp::element_orders(s);
  std::sort(ord.begin(), ord.end());
  CHECK(ord == std::vector<std::uint32_t>{1, 2, 2, 2, 3, 3});
  CHECK(grp::table_generators(s).size() <= 3);
}

TEST_CASE("subgroup lattice sizes of small groups") {
  CHECK(grp::all_subgroups(grp::cyclic_table(6)).size() == 4);
  CHECK(grp::all_subgroups(grp::cyclic_table(12)).size() == 6);
  CHECK(grp::all_subgroups(s3()).size() == 6);
  Table v4 = grp::product_table(grp::cyclic_table(2), grp::cyclic_table(2));
  CHECK(grp::all_subgroups(v4).size() == 5);
  CHECK(grp::all_subgroups(a4()).size() == 10);
  CHECK(grp::all_subgroups(sl2f3()).size() == 15);
}

TEST_CASE("normal subgroups") {
  auto sizes = [](const std::vector<std::vector<std::uint16_t>>& v) {
    std::vector<std::size_t> s;
    for (const auto& h : v) s.push_back(h.size());
    return s;
  };
  CHECK(sizes(grp::normal_subgroups(s3())) == std::vector<std::size_t>{1, 3, 6});
  CHECK(sizes(grp::normal_subgroups(a4())) == std::vector<std::size_t>{1, 4, 12});
  CHECK(sizes(grp::normal_subgroups(sl2f3())) ==
        std::vector<std::size_t>{1, 2, 8, 24});
}

TEST_CASE("quotients and their shapes") {
  Table s = s3();
  auto n3 = grp::normal_subgroups(s)[1];
  REQUIRE(n3.size() == 3);
  Table q = grp::quotient_table(s, n3);
  CHECK(q.n == 2);
  CHECK(grp::tables_isomorphic(q, grp::cyclic_table(2)));

  Table a = a4();
  auto v4 = grp::normal_subgroups(a)[1];
  REQUIRE(v4.size() == 4);
  CHECK(grp::tables_isomorphic(grp::quotient_table(a, v4),
                               grp::cyclic_table(3)));

  // order-2 subgroups of S3 are not normal; a bare non-identity element is
  // not even a subgroup
  std::uint16_t t = 0;
  auto ord = grp::element_orders(s);
  for (std::uint32_t x = 0; x < s.n; ++x)
    if (ord[x] == 2) t = std::uint16_t(x);
  std::vector<std::uint16_t> h2{s.id, t};
  std::sort(h2.begin(), h2.end());
  CHECK(code_of([&] { grp::quotient_table(s, h2); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([&] { grp::quotient_table(s, {t}); }) ==
        ErrorCode::NotASubgroup);
}

TEST_CASE("isomorphism counts") {
  CHECK(grp::count_isomorphisms(grp::cyclic_table(6), grp::cyclic_table(6)) == 2);
  CHECK(grp::count_isomorphisms(s3(), s3()) == 6);
  CHECK(grp::count_isomorphisms(a4(), a4()) == 24);
  Table v4 = grp::product_table(grp::cyclic_table(2), grp::cyclic_table(2));
  CHECK(grp::count_isomorphisms(grp::cyclic_table(4), v4) == 0);
  CHECK(grp::count_isomorphisms(grp::cyclic_table(6), s3()) == 0);
  CHECK(!grp::tables_isomorphic(sl2f3(), grp::cyclic_table(24)));
}

TEST_CASE("subdirect product counts, two ways") {
  struct Case {
    Table a, b;
    std::uint64_t expect;
  };
  const Case cases[] = {
      {grp::cyclic_table(2), grp::cyclic_table(2), 2},
      {grp::cyclic_table(3), grp::cyclic_table(3), 3},
      {s3(), s3(), 8},
      {grp::cyclic_table(4), grp::cyclic_table(2), 2},
      {grp::cyclic_table(6), grp::cyclic_table(6), 6},
      {s3(), grp::cyclic_table(6), 2},
      {a4(), s3(), 1},
      {sl2f3(), s3(), 1},
  };
  for (const auto& c : cases) {
    const auto g = grp::count_subdirect_goursat(c.a, c.b);
    CHECK(g == c.expect);
    CHECK(g == grp::count_subdirect_brute(c.a, c.b));
  }
  // sum of phi(d) over d | 24
  Table c24 = grp::cyclic_table(24);
  CHECK(grp::count_subdirect_goursat(c24, c24) == 24);
  CHECK(grp::count_subdirect_brute(c24, c24) == 24);
}

TEST_CASE("kernel pair of the full group mod 6 splits cleanly") {
  auto gk = grp::goursat_kernels(gl2::full_gl2(6), 3);
  CHECK(gk.l.elems == gl2::full_gl2(2).elems);
  CHECK(gk.k.order() == 48);
  CHECK(gk.quotient_order == 1);
  CHECK(gk.iso_checked);
}

TEST_CASE("a mod-3 group lifted trivially mod 2 has trivial mod-2 kernel image") {
  auto g3 = gl2::full_gl2(3);
  std::vector<gl2::Mat> lifted;
  for (const auto& m : gl2::find_generators(g3)) {
    auto crt = [](unsigned r3, unsigned r2) {
      for (unsigned v = 0; v < 6; ++v)
        if (v % 3 == r3 && v % 2 == r2) return v;
      return 0u;
    };
    lifted.push_back(gl2::reduce(crt(m.a, 1), crt(m.b, 0), crt(m.c, 0),
                                 crt(m.d, 1), 6));
  }
  auto h = gl2::closure(6, lifted);
  CHECK(h.order() == 48);
  auto gk = grp::goursat_kernels(h, 3);
  CHECK(gk.l.order() == 1);
  CHECK(gk.k.order() == 48);
  CHECK(gk.quotient_order == 1);
  CHECK(gk.iso_checked);
}

TEST_CASE("entangled mod-2 and mod-3 parts share a common order-2 quotient") {
  // Elements of GL2(Z/6) whose mod-2 permutation sign equals the quadratic
  // character of their mod-3 determinant: the kernel of a surjection to C2.
  auto full = gl2::full_gl2(6);
  std::vector<gl2::Key> keep;
  for (auto e : full.elems) {
    const auto x = gl2::unpack(e);
    const auto m2 = gl2::reduce(x.a, x.b, x.c, x.d, 2);
    const int chi = gl2::det(gl2::reduce(x.a, x.b, x.c, x.d, 3), 3) == 1 ? 1 : -1;
    if (sign_mod2(m2) == chi) keep.push_back(e);
  }
  gl2::Group h{6, {}, keep};
  REQUIRE(h.order() == 144);
  auto gk = grp::goursat_kernels(h, 3);
  CHECK(gk.l.order() == 3);
  CHECK(gk.k.order() == 24);
  CHECK(gk.quotient_order == 2);
  CHECK(gk.iso_checked);
}

TEST_CASE("mod-2 kernel images only shrink by p-power index up the tower") {
  std::mt19937 rng(20250818);
  auto run = [&rng](unsigned two_psq, unsigned two_p, unsigned p, int trials,
                    int ngens) {
    for (int i = 0; i < trials; ++i) {
      auto h = random_subgroup(two_psq, rng, ngens);
      auto top = grp::goursat_kernels(h, p);
      auto low = grp::goursat_kernels(gl2::reduce_mod(h, two_p), p);
      CHECK(top.iso_checked);
      CHECK(low.iso_checked);
      for (auto e : top.l.elems) CHECK(low.l.contains(e));
      std::uint64_t ratio = low.l.order() / top.l.order();
      CHECK(low.l.order() % top.l.order() == 0);
      while (ratio % p == 0) ratio /= p;
      CHECK(ratio == 1);
    }
  };
  run(18, 6, 3, 8, 2);
  run(50, 10, 5, 3, 1);
}

TEST_CASE("modulus shape errors") {
  auto g6 = gl2::full_gl2(6);
  CHECK(code_of([&] { grp::goursat_kernels(g6, 5); }) == ErrorCode::BadShape);
  CHECK(code_of([&] { grp::goursat_kernels(g6, 2); }) == ErrorCode::BadShape);
  CHECK(code_of([&] { grp::goursat_kernels(g6, 9); }) == ErrorCode::BadShape);
  CHECK(code_of([&] { grp::goursat_kernels(gl2::full_gl2(9), 3); }) ==
        ErrorCode::BadShape);
  CHECK(code_of([&] { grp::goursat_kernels(gl2::full_gl2(10), 3); }) ==
        ErrorCode::BadShape);
  CHECK(code_of([&] { grp::goursat_kernels(gl2::full_gl2(2), 3); }) ==
        ErrorCode::BadShape);
}
