#include "gl2.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace qcv::gl2 {

namespace {

unsigned umod(long long v, unsigned n) {
  long long r = v % (long long)n;
  if (r < 0) r += n;
  return (unsigned)r;
}

void check_modulus(unsigned n) {
  if (n < 2 || n > 255) fail(ErrorCode::OutOfRange, "modulus must lie in [2, 255]");
}

}  // namespace

Mat reduce(long long a, long long b, long long c, long long d, unsigned n) {
  check_modulus(n);
  return Mat{(std::uint8_t)umod(a, n), (std::uint8_t)umod(b, n),
             (std::uint8_t)umod(c, n), (std::uint8_t)umod(d, n)};
}

Mat mul(const Mat& x, const Mat& y, unsigned n) {
  unsigned a = (x.a * y.a + x.b * y.c) % n;
  unsigned b = (x.a * y.b + x.b * y.d) % n;
  unsigned c = (x.c * y.a + x.d * y.c) % n;
  unsigned d = (x.c * y.b + x.d * y.d) % n;
  return Mat{(std::uint8_t)a, (std::uint8_t)b, (std::uint8_t)c, (std::uint8_t)d};
}

unsigned det(const Mat& m, unsigned n) {
  unsigned ad = (unsigned)m.a * m.d % n;
  unsigned bc = (unsigned)m.b * m.c % n;
  return (ad + n - bc) % n;
}

unsigned trace(const Mat& m, unsigned n) { return (unsigned)(m.a + m.d) % n; }

bool is_invertible(const Mat& m, unsigned n) {
  return std::gcd(det(m, n), n) == 1;
}

unsigned unit_inverse(unsigned a, unsigned n) {
  long long t = 0, newt = 1, r = n, newr = a % n;
  while (newr != 0) {
    long long q = r / newr;
    std::swap(t -= q * newt, newt);
    std::swap(r -= q * newr, newr);
  }
  if (r != 1) fail(ErrorCode::NotInvertible, "residue is not a unit");
  return umod(t, n);
}

Mat inverse(const Mat& m, unsigned n) {
  unsigned dm = det(m, n);
  if (std::gcd(dm, n) != 1) fail(ErrorCode::NotInvertible, "matrix is singular mod n");
  unsigned di = unit_inverse(dm, n);
  return reduce((long long)m.d * di, -(long long)m.b * di,
                -(long long)m.c * di, (long long)m.a * di, n);
}

Mat identity() { return Mat{1, 0, 0, 1}; }

Mat neg_identity(unsigned n) { return reduce(-1, 0, 0, -1, n); }

bool Group::contains(Key k) const {
  return std::binary_search(elems.begin(), elems.end(), k);
}

bool Group::is_subgroup_of(const Group& ambient) const {
  if (n != ambient.n) return false;
  return std::includes(ambient.elems.begin(), ambient.elems.end(),
                       elems.begin(), elems.end());
}

Group closure(unsigned n, std::vector<Mat> gens, std::size_t cap) {
  check_modulus(n);
  std::vector<Mat> step;
  for (auto& g : gens) {
    g = reduce(g.a, g.b, g.c, g.d, n);
    if (!is_invertible(g, n))
      fail(ErrorCode::NotInvertible, "generator is not invertible mod n");
    step.push_back(g);
    step.push_back(inverse(g, n));
  }
  std::unordered_set<Key> seen;
  seen.reserve(1024);
  std::vector<Key> frontier;
  seen.insert(pack(identity()));
  frontier.push_back(pack(identity()));
  while (!frontier.empty()) {
    std::vector<Key> next;
    for (Key k : frontier) {
      Mat m = unpack(k);
      for (const Mat& s : step) {
        Key nk = pack(mul(m, s, n));
        if (seen.insert(nk).second) {
          if (seen.size() > cap)
            fail(ErrorCode::CapExceeded, "closure exceeds element cap");
          next.push_back(nk);
        }
      }
    }
    frontier = std::move(next);
  }
  Group g;
  g.n = n;
  g.gens = std::move(gens);
  g.elems.assign(seen.begin(), seen.end());
  std::sort(g.elems.begin(), g.elems.end());
  return g;
}

Group full_gl2(unsigned n, std::size_t cap) {
  check_modulus(n);
  if (group_order_formula(n) > cap)
    fail(ErrorCode::CapExceeded, "full group exceeds element cap");
  std::vector<bool> unit(n, false);
  for (unsigned i = 0; i < n; ++i) unit[i] = std::gcd(i, n) == 1;
  Group g;
  g.n = n;
  g.elems.reserve(group_order_formula(n));
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b)
      for (unsigned c = 0; c < n; ++c) {
        unsigned bc = b * c % n;
        for (unsigned d = 0; d < n; ++d) {
          unsigned dt = (a * d % n + n - bc) % n;
          if (unit[dt]) g.elems.push_back(pack(Mat{(std::uint8_t)a, (std::uint8_t)b,
                                                   (std::uint8_t)c, (std::uint8_t)d}));
        }
      }
  std::sort(g.elems.begin(), g.elems.end());
  g.gens = find_generators(g);
  return g;
}

std::uint64_t group_order_formula(unsigned n) {
  check_modulus(n);
  std::uint64_t result = 1;
  for (int i = 0; i < 4; ++i) result *= n;
  unsigned m = n;
  for (unsigned p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result = result / (p * p * p) * ((p - 1) * (p * p - 1));
    }
  }
  if (m > 1) {
    std::uint64_t p = m;
    result = result / (p * p * p) * ((p - 1) * (p * p - 1));
  }
  return result;
}

std::uint64_t index_in_ambient(const Group& h, const Group& ambient) {
  if (h.n != ambient.n) fail(ErrorCode::InvalidArgument, "mismatched moduli");
  if (!h.is_subgroup_of(ambient))
    fail(ErrorCode::NotASubgroup, "group is not contained in the ambient group");
  if (ambient.order() % h.order() != 0)
    fail(ErrorCode::Internal, "order does not divide ambient order");
  return ambient.order() / h.order();
}

Group reduce_mod(const Group& h, unsigned m, bool* surjective_onto_full) {
  if (h.n % m != 0) fail(ErrorCode::NotADivisor, "m does not divide the modulus");
  check_modulus(m);
  // The image of a generated subgroup is generated by the reduced generators;
  // fall back to reducing all elements when no generating set is stored.
  std::vector<Mat> gens;
  if (!h.gens.empty()) {
    for (const Mat& g : h.gens) gens.push_back(reduce(g.a, g.b, g.c, g.d, m));
  } else {
    for (Key k : h.elems) {
      Mat e = unpack(k);
      gens.push_back(reduce(e.a, e.b, e.c, e.d, m));
    }
  }
  Group img = closure(m, std::move(gens));
  img.gens = find_generators(img);
  if (surjective_onto_full) *surjective_onto_full = img.order() == group_order_formula(m);
  return img;
}

Group det_restrict(const Group& h, const std::vector<unsigned>& allowed_units) {
  std::vector<bool> allowed(h.n, false);
  for (unsigned u : allowed_units) {
    unsigned r = u % h.n;
    if (std::gcd(r, h.n) != 1)
      fail(ErrorCode::InvalidArgument, "allowed determinant is not a unit");
    allowed[r] = true;
  }
  Group out;
  out.n = h.n;
  for (Key k : h.elems)
    if (allowed[det(unpack(k), h.n)]) out.elems.push_back(k);
  // elems of h are sorted, so the filtered list stays sorted.
  return out;
}

std::vector<unsigned> det_image(const Group& h) {
  std::vector<bool> seen(h.n, false);
  for (Key k : h.elems) seen[det(unpack(k), h.n)] = true;
  std::vector<unsigned> out;
  for (unsigned i = 0; i < h.n; ++i)
    if (seen[i]) out.push_back(i);
  return out;
}

std::vector<Mat> find_generators(const Group& h) {
  std::vector<Mat> gens;
  if (h.order() <= 1) return gens;
  Group cur = closure(h.n, {});
  for (Key k : h.elems) {
    if (cur.contains(k)) continue;
    gens.push_back(unpack(k));
    cur = closure(h.n, gens);
    if (cur.order() == h.order()) break;
  }
  return gens;
}

namespace {

unsigned element_order(Mat m, unsigned n) {
  unsigned ord = 1;
  Mat cur = m;
  Key idk = pack(identity());
  while (pack(cur) != idk) {
    cur = mul(cur, m, n);
    ++ord;
    if (ord > 1u << 20) fail(ErrorCode::Internal, "element order runaway");
  }
  return ord;
}

// Conjugation-invariant signature: sorted (element order, det, trace) triples.
std::vector<std::uint64_t> fingerprint(const Group& h) {
  std::vector<std::uint64_t> fp;
  fp.reserve(h.elems.size());
  for (Key k : h.elems) {
    Mat m = unpack(k);
    std::uint64_t v = (std::uint64_t)element_order(m, h.n) << 32 |
                      det(m, h.n) << 16 | trace(m, h.n);
    fp.push_back(v);
  }
  std::sort(fp.begin(), fp.end());
  return fp;
}

}  // namespace

std::optional<Mat> conjugating_element(const Group& h1, const Group& h2,
                                       const Group& ambient) {
  if (h1.n != h2.n || h1.n != ambient.n)
    fail(ErrorCode::InvalidArgument, "mismatched moduli");
  if (h1.order() != h2.order()) return std::nullopt;
  if (h1.elems == h2.elems) return identity();
  if (fingerprint(h1) != fingerprint(h2)) return std::nullopt;
  unsigned n = h1.n;
  std::vector<Mat> gens = h1.gens.empty() ? find_generators(h1) : h1.gens;
  // Conjugating every generator into h2 conjugates all of h1 into h2; equal
  // orders then force equality.
  for (Key gk : ambient.elems) {
    Mat g = unpack(gk);
    Mat gi = inverse(g, n);
    bool ok = true;
    for (const Mat& s : gens) {
      if (!h2.contains(mul(mul(g, s, n), gi, n))) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  return std::nullopt;
}

Group nonsplit_cartan_normalizer(unsigned p) {
  check_modulus(p);
  if (p == 2 || p % 2 == 0) fail(ErrorCode::NotPrime, "p must be an odd prime");
  for (unsigned q = 3; q * q <= p; q += 2)
    if (p % q == 0) fail(ErrorCode::NotPrime, "p must be an odd prime");
  // Least positive quadratic non-residue.
  std::vector<bool> residue(p, false);
  for (unsigned i = 1; i < p; ++i) residue[i * i % p] = true;
  unsigned eps = 0;
  for (unsigned i = 2; i < p; ++i)
    if (!residue[i]) {
      eps = i;
      break;
    }
  if (eps == 0) fail(ErrorCode::Internal, "no non-residue found");
  // Unit group of F_p[sqrt(eps)]: a + b sqrt(eps) acts as [[a, eps b], [b, a]].
  Group g;
  g.n = p;
  g.elems.reserve(2 * (p * p - 1));
  Mat flip = reduce(1, 0, 0, -1, p);  // conjugation sqrt(eps) -> -sqrt(eps)
  for (unsigned a = 0; a < p; ++a)
    for (unsigned b = 0; b < p; ++b) {
      if (a == 0 && b == 0) continue;
      Mat m = Mat{(std::uint8_t)a, (std::uint8_t)(eps * b % p),
                  (std::uint8_t)b, (std::uint8_t)a};
      g.elems.push_back(pack(m));
      g.elems.push_back(pack(mul(m, flip, p)));
    }
  std::sort(g.elems.begin(), g.elems.end());
  g.elems.erase(std::unique(g.elems.begin(), g.elems.end()), g.elems.end());
  g.gens = find_generators(g);
  return g;
}

std::vector<CatalogEntry> parse_catalog(std::string_view text) {
  std::vector<CatalogEntry> out;
  std::istringstream lines{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    CatalogEntry e;
    if (!(ls >> e.label)) continue;  // blank line
    long long n = 0;
    if (!(ls >> n) || n < 2 || n > 255)
      fail(ErrorCode::ParseError,
           "catalog line " + std::to_string(lineno) + ": bad modulus");
    e.n = (unsigned)n;
    std::string rest;
    std::getline(ls, rest);
    std::istringstream gs(rest);
    std::string chunk;
    while (std::getline(gs, chunk, ';')) {
      if (chunk.find_first_not_of(" \t\r") == std::string::npos) continue;
      long long v[4];
      char comma;
      std::istringstream cs(chunk);
      if (!(cs >> v[0] >> comma >> v[1] >> comma >> v[2] >> comma >> v[3]))
        fail(ErrorCode::ParseError,
             "catalog line " + std::to_string(lineno) + ": bad matrix entry");
      Mat m = reduce(v[0], v[1], v[2], v[3], e.n);
      if (!is_invertible(m, e.n))
        fail(ErrorCode::ParseError,
             "catalog line " + std::to_string(lineno) + ": singular generator");
      e.gens.push_back(m);
    }
    if (e.gens.empty())
      fail(ErrorCode::ParseError,
           "catalog line " + std::to_string(lineno) + ": no generators");
    out.push_back(std::move(e));
  }
  return out;
}

const std::vector<CatalogEntry>& builtin_catalog() {
  static const std::vector<CatalogEntry> cat = parse_catalog(
      "H1 18 2,7,15,16; 7,11,12,11; 13,2,9,17; 1,8,15,5\n"
      "H2 18 2,9,7,10; 14,3,7,10; 17,15,3,14\n"
      "H3 18 7,2,15,11; 1,6,6,13; 13,3,9,4; 2,3,15,5\n"
      "H4 18 17,7,0,1; 7,7,15,16; 1,9,12,17\n"
      "H5 18 17,9,9,8; 1,1,15,10; 5,5,12,7\n"
      "H6 18 14,17,3,5; 13,1,12,5; 11,8,15,7; 17,1,12,1\n"
      "H7 18 11,16,6,17; 13,3,9,14\n"
      "H8 18 5,2,12,11; 17,5,15,16\n"
      "H9 18 11,1,3,4; 7,15,9,14\n"
      "H10 18 16,1,3,11; 5,15,9,16\n");
  return cat;
}

const CatalogEntry& catalog_lookup(const std::vector<CatalogEntry>& cat,
                                   std::string_view label) {
  for (const auto& e : cat)
    if (e.label == label) return e;
  fail(ErrorCode::NotFound, "no catalog entry named " + std::string(label));
}

}  // namespace qcv::gl2
