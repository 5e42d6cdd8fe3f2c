#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "gl2.hpp"

using namespace qcv;
using namespace qcv::gl2;

namespace {

Group from_label(const char* label) {
  const auto& e = catalog_lookup(builtin_catalog(), label);
  return closure(e.n, e.gens);
}

std::vector<unsigned> pm1(unsigned n) { return {1u, n - 1u}; }

}  // namespace

TEST_CASE("matrix arithmetic basics") {
  Mat x = reduce(2, 7, 15, 16, 18);
  Mat y = reduce(7, 11, 12, 11, 18);
  Mat z = mul(x, y, 18);
  CHECK(z.a == (2 * 7 + 7 * 12) % 18);
  CHECK(z.b == (2 * 11 + 7 * 11) % 18);
  CHECK(det(x, 18) == ((2 * 16 - 7 * 15) % 18 + 18) % 18);
  Mat xi = inverse(x, 18);
  CHECK(pack(mul(x, xi, 18)) == pack(identity()));
  CHECK_THROWS_AS(inverse(reduce(2, 0, 0, 1, 18), 18), Error);
}

TEST_CASE("closure of trivial and cyclic groups") {
  CHECK(closure(18, {}).order() == 1);
  CHECK(closure(18, {identity()}).order() == 1);
  CHECK(closure(5, {reduce(1, 1, 0, 1, 5)}).order() == 5);
  CHECK_THROWS_AS(closure(18, {reduce(2, 0, 0, 1, 18)}), Error);
  CHECK_THROWS_AS(closure(18, {reduce(1, 1, 0, 1, 18)}, 3), Error);
}

TEST_CASE("order formula matches exhaustive count for n <= 24") {
  CHECK(group_order_formula(2) == 6);
  CHECK(group_order_formula(3) == 48);
  CHECK(group_order_formula(18) == 23328);
  for (unsigned n = 2; n <= 24; ++n)
    CHECK(full_gl2(n).order() == group_order_formula(n));
}

TEST_CASE("catalog groups have order 324 and index 72") {
  Group amb = full_gl2(18);
  for (const auto& e : builtin_catalog()) {
    Group h = closure(e.n, e.gens);
    CHECK(h.order() == 324);
    CHECK(index_in_ambient(h, amb) == 72);
    CHECK(det_image(h).size() == 6);  // determinant onto all units mod 18
  }
}

TEST_CASE("index errors") {
  Group amb = full_gl2(18);
  Group h5 = closure(5, {reduce(1, 1, 0, 1, 5)});
  CHECK_THROWS_AS(index_in_ambient(h5, amb), Error);
  Group h4 = from_label("H4");
  Group h8 = from_label("H8");
  CHECK_THROWS_AS(index_in_ambient(h4, h8), Error);
  CHECK(index_in_ambient(amb, amb) == 1);
}

TEST_CASE("neg identity and scalar subgroup index") {
  Group pm = closure(5, {neg_identity(5)});
  CHECK(pm.order() == 2);
  CHECK(index_in_ambient(pm, full_gl2(5)) == 240);
}

TEST_CASE("reduction maps") {
  Group h1 = from_label("H1");
  bool surj = false;
  Group same = reduce_mod(h1, 18, &surj);
  CHECK(same.elems == h1.elems);
  CHECK_FALSE(surj);

  Group full18 = full_gl2(18);
  Group full9 = reduce_mod(full18, 9, &surj);
  CHECK(surj);
  CHECK(full9.order() == group_order_formula(9));
  CHECK(group_order_formula(9) == 3888);

  // Composing reductions agrees with reducing once.
  Group via9 = reduce_mod(reduce_mod(h1, 9), 3);
  Group direct3 = reduce_mod(h1, 3);
  CHECK(via9.elems == direct3.elems);

  Group h1mod2 = reduce_mod(h1, 2);
  CHECK(h1mod2.order() == 6);  // onto GL2(F2)

  CHECK_THROWS_AS(reduce_mod(h1, 5), Error);
}

TEST_CASE("determinant restriction to {+1,-1}") {
  for (const auto& e : builtin_catalog()) {
    Group h = closure(e.n, e.gens);
    Group r = det_restrict(h, pm1(18));
    CHECK(r.order() == 108);
  }
  Group sl5 = det_restrict(full_gl2(5), {1});
  CHECK(sl5.order() == 120);
  Group g5 = full_gl2(5);
  Group same = det_restrict(g5, {1, 2, 3, 4});
  CHECK(same.order() == g5.order());
  CHECK_THROWS_AS(det_restrict(full_gl2(6), {2}), Error);
}

TEST_CASE("conjugacy of det-restricted catalog groups") {
  Group amb = full_gl2(18);
  auto restricted = [&](const char* label) {
    return det_restrict(from_label(label), pm1(18));
  };
  Group r4 = restricted("H4"), r5 = restricted("H5"), r6 = restricted("H6");
  Group r8 = restricted("H8"), r9 = restricted("H9"), r10 = restricted("H10");

  // First family.
  CHECK(r4.elems == r5.elems);  // literally equal as sets
  auto c46 = conjugating_element(r4, r6, amb);
  REQUIRE(c46.has_value());
  {
    Mat g = *c46;
    Mat gi = inverse(g, 18);
    for (Key k : r4.elems)
      CHECK(r6.contains(mul(mul(g, unpack(k), 18), gi, 18)));
  }

  // Second family.
  CHECK(r8.elems == r9.elems);
  auto c810 = conjugating_element(r8, r10, amb);
  REQUIRE(c810.has_value());

  // The two families are not conjugate.
  CHECK_FALSE(conjugating_element(r4, r8, amb).has_value());
}

TEST_CASE("conjugacy is reflexive and symmetric on random subgroups") {
  std::mt19937 rng(20240817);
  Group amb = full_gl2(12);
  auto random_subgroup = [&]() {
    std::vector<Mat> gens;
    std::uniform_int_distribution<std::size_t> pick(0, amb.elems.size() - 1);
    for (int i = 0; i < 2; ++i) gens.push_back(unpack(amb.elems[pick(rng)]));
    return closure(12, gens);
  };
  for (int trial = 0; trial < 25; ++trial) {
    Group h = random_subgroup();
    CHECK(conjugating_element(h, h, amb).has_value());
    // Conjugate copy: both directions succeed.
    std::uniform_int_distribution<std::size_t> pick(0, amb.elems.size() - 1);
    Mat g = unpack(amb.elems[pick(rng)]);
    Mat gi = inverse(g, 12);
    std::vector<Mat> cg;
    for (const Mat& s : (h.gens.empty() ? find_generators(h) : h.gens))
      cg.push_back(mul(mul(g, s, 12), gi, 12));
    Group hc = closure(12, cg);
    CHECK(conjugating_element(h, hc, amb).has_value());
    CHECK(conjugating_element(hc, h, amb).has_value());
  }
}

TEST_CASE("closure order divides ambient order (random subgroups)") {
  std::mt19937 rng(77);
  for (unsigned n : {6u, 12u, 18u}) {
    Group amb = full_gl2(n);
    std::uniform_int_distribution<std::size_t> pick(0, amb.elems.size() - 1);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Mat> gens;
      for (int i = 0; i < 2; ++i) gens.push_back(unpack(amb.elems[pick(rng)]));
      Group h = closure(n, gens);
      CHECK(group_order_formula(n) % h.order() == 0);
    }
  }
}

TEST_CASE("nonsplit Cartan normalizer orders") {
  CHECK(nonsplit_cartan_normalizer(3).order() == 16);
  CHECK(nonsplit_cartan_normalizer(5).order() == 48);
  CHECK(nonsplit_cartan_normalizer(13).order() == 336);
  for (unsigned p : {3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u, 43u, 47u})
    CHECK(nonsplit_cartan_normalizer(p).order() == 2ull * (p * p - 1));
  CHECK_THROWS_AS(nonsplit_cartan_normalizer(9), Error);
  CHECK_THROWS_AS(nonsplit_cartan_normalizer(2), Error);
}

TEST_CASE("Cartan sits inside its normalizer with index 2") {
  for (unsigned p : {5u, 7u, 11u}) {
    Group norm = nonsplit_cartan_normalizer(p);
    // Recover the Cartan as the subgroup commuting with a fixed non-scalar
    // element of the embedded quadratic field.
    Mat w{};
    for (Key k : norm.elems) {
      Mat m = unpack(k);
      if (m.b != 0 && m.a == m.d) {
        w = m;
        break;
      }
    }
    Group cartan;
    cartan.n = p;
    for (Key k : norm.elems) {
      Mat m = unpack(k);
      if (pack(mul(m, w, p)) == pack(mul(w, m, p))) cartan.elems.push_back(k);
    }
    CHECK(cartan.order() == (std::uint64_t)p * p - 1);
    CHECK(index_in_ambient(cartan, norm) == 2);
  }
}

TEST_CASE("catalog parsing") {
  auto cat = parse_catalog("G1 7 1,1,0,1; 0,6,1,0\n# comment only\nG2 5 2,0,0,1\n");
  REQUIRE(cat.size() == 2);
  CHECK(cat[0].label == "G1");
  CHECK(cat[0].n == 7);
  CHECK(cat[0].gens.size() == 2);
  CHECK(cat[1].label == "G2");
  CHECK(closure(5, cat[1].gens).order() == 4);

  CHECK_THROWS_AS(parse_catalog("BAD 6 2,0,0,1\n"), Error);   // singular generator
  CHECK_THROWS_AS(parse_catalog("BAD 600 1,0,0,1\n"), Error); // modulus range
  CHECK_THROWS_AS(parse_catalog("BAD 6 1,0,0\n"), Error);     // malformed entries
  CHECK_THROWS_AS(catalog_lookup(builtin_catalog(), "H11"), Error);
}

TEST_CASE("builtin catalog round-trips through the parser format") {
  const auto& cat = builtin_catalog();
  REQUIRE(cat.size() == 10);
  CHECK(cat.front().label == "H1");
  CHECK(cat.back().label == "H10");
  for (const auto& e : cat) CHECK(e.n == 18);
}
