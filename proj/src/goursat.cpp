#include "goursat.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>
#include <unordered_map>
#include <unordered_set>
#include <utility>

namespace qcv::grp {

namespace {

struct Bits {
  std::vector<std::uint64_t> w;
  Bits() = default;
  explicit Bits(std::uint32_t n) : w((n + 63) / 64, 0) {}
  bool test(std::uint32_t i) const { return w[i >> 6] >> (i & 63) & 1; }
  void set(std::uint32_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool contains(const Bits& o) const {
    for (std::size_t i = 0; i < w.size(); ++i)
      if (o.w[i] & ~w[i]) return false;
    return true;
  }
  std::uint32_t count() const {
    std::uint32_t c = 0;
    for (auto x : w) c += std::uint32_t(std::popcount(x));
    return c;
  }
  bool operator==(const Bits& o) const { return w == o.w; }
};

struct BitsHash {
  std::size_t operator()(const Bits& b) const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : b.w) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return std::size_t(h);
  }
};

// Closure of base (assumed closed under the table product) joined with extra
// elements. Pairs with both factors inside base are skipped.
std::vector<std::uint16_t> join_closure(const Table& g,
                                        const std::vector<std::uint16_t>& base,
                                        const std::vector<std::uint16_t>& extra,
                                        Bits* bits_out = nullptr) {
  Bits in(g.n);
  std::vector<std::uint16_t> list;
  list.reserve(base.size() + extra.size());
  for (auto x : base)
    if (!in.test(x)) {
      in.set(x);
      list.push_back(x);
    }
  const std::size_t closed = list.size();
  for (auto x : extra)
    if (!in.test(x)) {
      in.set(x);
      list.push_back(x);
    }
  if (list.size() != closed) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (std::size_t j = i < closed ? closed : 0; j < list.size(); ++j) {
        auto p = g.at(list[i], list[j]);
        if (!in.test(p)) {
          in.set(p);
          list.push_back(p);
        }
        p = g.at(list[j], list[i]);
        if (!in.test(p)) {
          in.set(p);
          list.push_back(p);
        }
      }
    }
  }
  std::sort(list.begin(), list.end());
  if (bits_out) *bits_out = std::move(in);
  return list;
}

void check_table_order(std::uint64_t n) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "group must be nonempty");
  if (n > kMaxTableOrder)
    fail(ErrorCode::CapExceeded, "group order " + std::to_string(n) +
                                     " exceeds the table cap " +
                                     std::to_string(kMaxTableOrder));
}

}  // namespace

Table cyclic_table(std::uint32_t n) {
  check_table_order(n);
  Table t;
  t.n = n;
  t.id = 0;
  t.mul.resize(std::size_t(n) * n);
  t.inv.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    t.inv[i] = std::uint16_t((n - i) % n);
    for (std::uint32_t j = 0; j < n; ++j)
      t.mul[std::size_t(i) * n + j] = std::uint16_t((i + j) % n);
  }
  return t;
}

Table product_table(const Table& a, const Table& b) {
  check_table_order(std::uint64_t(a.n) * b.n);
  Table t;
  t.n = a.n * b.n;
  t.id = std::uint16_t(std::uint32_t(a.id) * b.n + b.id);
  t.mul.resize(std::size_t(t.n) * t.n);
  t.inv.resize(t.n);
  for (std::uint32_t xa = 0; xa < a.n; ++xa)
    for (std::uint32_t xb = 0; xb < b.n; ++xb) {
      const std::uint32_t x = xa * b.n + xb;
      t.inv[x] = std::uint16_t(std::uint32_t(a.inv[xa]) * b.n + b.inv[xb]);
      for (std::uint32_t ya = 0; ya < a.n; ++ya)
        for (std::uint32_t yb = 0; yb < b.n; ++yb)
          t.mul[std::size_t(x) * t.n + ya * b.n + yb] = std::uint16_t(
              std::uint32_t(a.at(std::uint16_t(xa), std::uint16_t(ya))) * b.n +
              b.at(std::uint16_t(xb), std::uint16_t(yb)));
    }
  return t;
}

Table table_from_group(const gl2::Group& g) {
  check_table_order(g.order());
  const auto& el = g.elems;
  auto idx = [&el](gl2::Key k) {
    auto it = std::lower_bound(el.begin(), el.end(), k);
    if (it == el.end() || *it != k)
      fail(ErrorCode::Internal, "product left the element set");
    return std::uint16_t(it - el.begin());
  };
  Table t;
  t.n = std::uint32_t(el.size());
  t.mul.resize(std::size_t(t.n) * t.n);
  t.inv.resize(t.n);
  t.id = idx(gl2::pack(gl2::identity()));
  for (std::uint32_t i = 0; i < t.n; ++i) {
    const auto mi = gl2::unpack(el[i]);
    t.inv[i] = idx(gl2::pack(gl2::inverse(mi, g.n)));
    for (std::uint32_t j = 0; j < t.n; ++j)
      t.mul[std::size_t(i) * t.n + j] =
          idx(gl2::pack(gl2::mul(mi, gl2::unpack(el[j]), g.n)));
  }
  return t;
}

std::vector<std::uint32_t> element_orders(const Table& g) {
  std::vector<std::uint32_t> ord(g.n);
  for (std::uint32_t x = 0; x < g.n; ++x) {
    std::uint32_t k = 1;
    for (std::uint16_t y = std::uint16_t(x); y != g.id;
         y = g.at(y, std::uint16_t(x)))
      ++k;
    ord[x] = k;
  }
  return ord;
}

std::vector<std::uint16_t> table_generators(const Table& g) {
  std::vector<std::uint16_t> gens;
  Bits in(g.n);
  std::vector<std::uint16_t> span =
      join_closure(g, {}, {g.id}, &in);
  while (span.size() < g.n) {
    std::uint32_t x = 0;
    while (in.test(x)) ++x;
    gens.push_back(std::uint16_t(x));
    span = join_closure(g, span, {std::uint16_t(x)}, &in);
  }
  return gens;
}

std::vector<std::vector<std::uint16_t>> all_subgroups(const Table& g) {
  // Distinct cyclic subgroups seed the walk.
  std::unordered_set<Bits, BitsHash> seen_cyc;
  std::vector<std::vector<std::uint16_t>> cyc;
  std::vector<Bits> cyc_bits;
  for (std::uint32_t x = 0; x < g.n; ++x) {
    Bits b;
    auto c = join_closure(g, {}, {std::uint16_t(x)}, &b);
    if (seen_cyc.insert(b).second) {
      cyc.push_back(std::move(c));
      cyc_bits.push_back(std::move(b));
    }
  }

  std::unordered_set<Bits, BitsHash> known;
  std::vector<std::vector<std::uint16_t>> subs;
  std::vector<Bits> sub_bits;
  {
    Bits b;
    auto triv = join_closure(g, {}, {g.id}, &b);
    known.insert(b);
    subs.push_back(std::move(triv));
    sub_bits.push_back(std::move(b));
  }
  for (std::size_t i = 0; i < subs.size(); ++i) {
    for (std::size_t c = 0; c < cyc.size(); ++c) {
      if (sub_bits[i].contains(cyc_bits[c])) continue;
      Bits b;
      auto j = join_closure(g, subs[i], cyc[c], &b);
      if (known.insert(b).second) {
        subs.push_back(std::move(j));
        sub_bits.push_back(std::move(b));
      }
    }
  }
  std::sort(subs.begin(), subs.end(),
            [](const std::vector<std::uint16_t>& a,
               const std::vector<std::uint16_t>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  return subs;
}

bool is_subgroup(const Table& g, const std::vector<std::uint16_t>& h) {
  if (h.empty()) return false;
  Bits in(g.n);
  for (auto x : h) {
    if (x >= g.n) fail(ErrorCode::InvalidArgument, "element id out of range");
    in.set(x);
  }
  if (!in.test(g.id)) return false;
  for (auto x : h)
    for (auto y : h)
      if (!in.test(g.at(x, y))) return false;
  return true;
}

bool is_normal(const Table& g, const std::vector<std::uint16_t>& h) {
  if (!is_subgroup(g, h)) return false;
  Bits in(g.n);
  for (auto x : h) in.set(x);
  for (auto t : table_generators(g))
    for (auto x : h)
      if (!in.test(g.at(g.at(t, x), g.inv[t]))) return false;
  return true;
}

Table quotient_table(const Table& g, const std::vector<std::uint16_t>& h,
                     std::vector<std::uint16_t>* proj) {
  if (!is_subgroup(g, h))
    fail(ErrorCode::NotASubgroup, "quotient needs a subgroup");
  if (!is_normal(g, h))
    fail(ErrorCode::InvalidArgument, "quotient by a non-normal subgroup");
  std::vector<std::uint16_t> coset(g.n, std::uint16_t(0xffff));
  std::vector<std::uint16_t> reps;
  for (std::uint32_t x = 0; x < g.n; ++x) {
    if (coset[x] != 0xffff) continue;
    const auto c = std::uint16_t(reps.size());
    reps.push_back(std::uint16_t(x));
    for (auto e : h) coset[g.at(std::uint16_t(x), e)] = c;
  }
  Table q;
  q.n = std::uint32_t(reps.size());
  q.id = coset[g.id];
  q.mul.resize(std::size_t(q.n) * q.n);
  q.inv.resize(q.n);
  for (std::uint32_t i = 0; i < q.n; ++i) {
    q.inv[i] = coset[g.inv[reps[i]]];
    for (std::uint32_t j = 0; j < q.n; ++j)
      q.mul[std::size_t(i) * q.n + j] = coset[g.at(reps[i], reps[j])];
  }
  if (proj) *proj = std::move(coset);
  return q;
}

std::vector<std::vector<std::uint16_t>> normal_subgroups(const Table& g) {
  std::vector<std::vector<std::uint16_t>> out;
  for (auto& h : all_subgroups(g))
    if (is_normal(g, h)) out.push_back(h);
  return out;
}

namespace {

// Counts isomorphisms by mapping a generating list of `a` to same-order
// elements of `b`; each full assignment determines at most one candidate map,
// which is then checked to be a bijective homomorphism.
std::uint64_t iso_count(const Table& a, const Table& b, bool stop_at_one) {
  if (a.n != b.n) return 0;
  if (a.n == 1) return 1;
  auto orda = element_orders(a);
  auto ordb = element_orders(b);
  {
    auto sa = orda, sb = ordb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return 0;
  }
  const auto gens = table_generators(a);

  // Express every element as (parent) * gens[via], breadth-first from id.
  std::vector<std::int32_t> parent(a.n, -1), via(a.n, -1);
  std::vector<std::uint16_t> bfs{a.id};
  parent[a.id] = a.id;
  for (std::size_t i = 0; i < bfs.size(); ++i)
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      const auto y = a.at(bfs[i], gens[gi]);
      if (parent[y] < 0) {
        parent[y] = bfs[i];
        via[y] = std::int32_t(gi);
        bfs.push_back(y);
      }
    }

  std::vector<std::vector<std::uint16_t>> cand(gens.size());
  for (std::size_t gi = 0; gi < gens.size(); ++gi)
    for (std::uint32_t y = 0; y < b.n; ++y)
      if (ordb[y] == orda[gens[gi]]) cand[gi].push_back(std::uint16_t(y));

  std::vector<std::uint16_t> img(gens.size()), phi(a.n);
  std::vector<char> hit(b.n);
  std::uint64_t total = 0;

  auto check = [&]() {
    phi[a.id] = b.id;
    for (std::size_t i = 1; i < bfs.size(); ++i) {
      const auto x = bfs[i];
      phi[x] = b.at(phi[parent[x]], img[via[x]]);
    }
    std::fill(hit.begin(), hit.end(), 0);
    for (std::uint32_t x = 0; x < a.n; ++x) {
      if (hit[phi[x]]) return false;
      hit[phi[x]] = 1;
    }
    for (std::uint32_t x = 0; x < a.n; ++x)
      for (std::size_t gi = 0; gi < gens.size(); ++gi)
        if (phi[a.at(std::uint16_t(x), gens[gi])] !=
            b.at(phi[x], img[gi]))
          return false;
    return true;
  };

  std::vector<std::size_t> pos(gens.size(), 0);
  std::size_t k = 0;
  while (true) {
    if (k == gens.size()) {
      if (check()) {
        ++total;
        if (stop_at_one) return total;
      }
      if (k == 0) break;
      --k;
      ++pos[k];
      continue;
    }
    if (pos[k] == cand[k].size()) {
      pos[k] = 0;
      if (k == 0) break;
      --k;
      ++pos[k];
      continue;
    }
    img[k] = cand[k][pos[k]];
    ++k;
  }
  return total;
}

}  // namespace

std::uint64_t count_isomorphisms(const Table& a, const Table& b) {
  return iso_count(a, b, false);
}

bool tables_isomorphic(const Table& a, const Table& b) {
  return iso_count(a, b, true) > 0;
}

std::uint64_t count_subdirect_goursat(const Table& a, const Table& b) {
  const auto na = normal_subgroups(a);
  const auto nb = normal_subgroups(b);
  std::uint64_t total = 0;
  for (const auto& ha : na) {
    for (const auto& hb : nb) {
      if (std::uint64_t(a.n) * hb.size() != std::uint64_t(b.n) * ha.size())
        continue;  // quotient orders differ
      total += count_isomorphisms(quotient_table(a, ha), quotient_table(b, hb));
    }
  }
  return total;
}

std::uint64_t count_subdirect_brute(const Table& a, const Table& b) {
  const auto p = product_table(a, b);
  std::uint64_t total = 0;
  for (const auto& sub : all_subgroups(p)) {
    Bits pa(a.n), pb(b.n);
    for (auto e : sub) {
      pa.set(e / b.n);
      pb.set(e % b.n);
    }
    if (pa.count() == a.n && pb.count() == b.n) ++total;
  }
  return total;
}

GoursatKernels goursat_kernels(const gl2::Group& h, unsigned p) {
  if (p < 3 || p % 2 == 0 || !is_prime(p))
    fail(ErrorCode::BadShape, "need an odd prime, got " + std::to_string(p));
  if (h.n % 2 != 0)
    fail(ErrorCode::BadShape, "modulus " + std::to_string(h.n) +
                                  " is not of the form 2*" + std::to_string(p) +
                                  "^s");
  unsigned q = h.n / 2, s = 0;
  while (q > 1 && q % p == 0) {
    q /= p;
    ++s;
  }
  if (q != 1 || s == 0)
    fail(ErrorCode::BadShape, "modulus " + std::to_string(h.n) +
                                  " is not of the form 2*" + std::to_string(p) +
                                  "^s");
  const unsigned ps = h.n / 2;

  auto a = gl2::reduce_mod(h, ps);
  auto b = gl2::reduce_mod(h, 2);

  std::vector<gl2::Key> kk, ll;
  for (auto e : h.elems) {
    const auto x = gl2::unpack(e);
    if (x.a % 2 == 1 && x.b % 2 == 0 && x.c % 2 == 0 && x.d % 2 == 1)
      kk.push_back(gl2::pack(gl2::reduce(x.a, x.b, x.c, x.d, ps)));
    if (x.a % ps == 1 && x.b % ps == 0 && x.c % ps == 0 && x.d % ps == 1)
      ll.push_back(gl2::pack(gl2::reduce(x.a, x.b, x.c, x.d, 2)));
  }
  std::sort(kk.begin(), kk.end());
  kk.erase(std::unique(kk.begin(), kk.end()), kk.end());
  std::sort(ll.begin(), ll.end());
  ll.erase(std::unique(ll.begin(), ll.end()), ll.end());

  GoursatKernels out;
  out.k = gl2::Group{ps, {}, std::move(kk)};
  out.l = gl2::Group{2, {}, std::move(ll)};
  if (a.order() % out.k.order() != 0 || b.order() % out.l.order() != 0)
    fail(ErrorCode::Internal, "kernel order does not divide image order");
  out.quotient_order = a.order() / out.k.order();
  if (out.quotient_order != b.order() / out.l.order())
    fail(ErrorCode::Internal, "quotient orders disagree");

  // Label the cosets of each kernel, then read the induced coset bijection
  // off the elements of h and confirm it is a well-defined isomorphism.
  auto label_cosets = [](const gl2::Group& g, const gl2::Group& ker) {
    std::unordered_map<gl2::Key, std::uint32_t> lab;
    lab.reserve(g.elems.size() * 2);
    std::vector<gl2::Key> reps;
    for (auto e : g.elems) {
      if (lab.count(e)) continue;
      const auto c = std::uint32_t(reps.size());
      reps.push_back(e);
      const auto xm = gl2::unpack(e);
      for (auto ke : ker.elems)
        lab.emplace(gl2::pack(gl2::mul(xm, gl2::unpack(ke), g.n)), c);
    }
    return std::pair(std::move(lab), std::move(reps));
  };
  auto [lab_a, reps_a] = label_cosets(a, out.k);
  auto [lab_b, reps_b] = label_cosets(b, out.l);

  bool ok = reps_a.size() == out.quotient_order &&
            reps_b.size() == out.quotient_order;
  std::vector<std::int64_t> theta(reps_a.size(), -1);
  for (auto e : h.elems) {
    if (!ok) break;
    const auto x = gl2::unpack(e);
    const auto ca = lab_a.at(gl2::pack(gl2::reduce(x.a, x.b, x.c, x.d, ps)));
    const auto cb = lab_b.at(gl2::pack(gl2::reduce(x.a, x.b, x.c, x.d, 2)));
    if (theta[ca] < 0)
      theta[ca] = cb;
    else if (theta[ca] != cb)
      ok = false;  // not well-defined
  }
  if (ok) {
    std::vector<char> hit(reps_b.size(), 0);
    for (auto t : theta) {
      if (t < 0 || hit[std::size_t(t)]) {
        ok = false;
        break;
      }
      hit[std::size_t(t)] = 1;
    }
  }
  if (ok) {
    for (std::size_t c1 = 0; c1 < reps_a.size() && ok; ++c1)
      for (std::size_t c2 = 0; c2 < reps_a.size() && ok; ++c2) {
        const auto pa = lab_a.at(gl2::pack(gl2::mul(
            gl2::unpack(reps_a[c1]), gl2::unpack(reps_a[c2]), ps)));
        const auto pb = lab_b.at(gl2::pack(
            gl2::mul(gl2::unpack(reps_b[std::size_t(theta[c1])]),
                     gl2::unpack(reps_b[std::size_t(theta[c2])]), 2)));
        if (std::uint32_t(theta[pa]) != pb) ok = false;
      }
  }
  out.iso_checked = ok;
  return out;
}

}  // namespace qcv::grp
