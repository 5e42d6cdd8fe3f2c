#include "modcurve.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <unordered_map>
#include <utility>

namespace qcv::mcurve {

namespace {

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

gl2::Group sl2_group(unsigned n) {
  auto g = gl2::closure(
      n, {gl2::reduce(0, -1, 1, 0, n), gl2::reduce(1, 1, 0, 1, n)});
  // |SL2(Z/n)| = |GL2(Z/n)| / phi(n); S and T generate, so anything else
  // means the closure went wrong.
  if (g.order() * euler_phi(n) != gl2::group_order_formula(n))
    fail(ErrorCode::Internal, "SL2 closure has the wrong order");
  return g;
}

gl2::Group gamma1_group(unsigned n) {
  if (n < 2 || n > 255) fail(ErrorCode::OutOfRange, "level out of range");
  std::vector<gl2::Key> keys;
  for (unsigned d = 0; d < n; ++d) {
    if (std::gcd(d, n) != 1) continue;
    for (unsigned b = 0; b < n; ++b)
      keys.push_back(gl2::pack(gl2::reduce(1, b, 0, d, n)));
  }
  std::sort(keys.begin(), keys.end());
  gl2::Group g;
  g.n = n;
  g.gens = {gl2::reduce(1, 1, 0, 1, n)};
  g.elems = std::move(keys);
  return g;
}

CurveInvariants curve_invariants(const gl2::Group& h) {
  const unsigned n = h.n;
  CurveInvariants out;
  out.det_surjective = gl2::det_image(h).size() == euler_phi(n);

  const auto sl2 = sl2_group(n);
  const auto neg = gl2::neg_identity(n);

  // +-(h n SL2)
  std::vector<gl2::Key> g;
  for (auto e : h.elems) {
    const auto m = gl2::unpack(e);
    if (gl2::det(m, n) != 1) continue;
    g.push_back(e);
    g.push_back(gl2::pack(gl2::mul(neg, m, n)));
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());

  // Right cosets Gx, labeled in one linear pass.
  std::unordered_map<gl2::Key, std::uint32_t> lab;
  lab.reserve(sl2.elems.size() * 2);
  std::vector<gl2::Mat> reps;
  for (auto x : sl2.elems) {
    if (lab.count(x)) continue;
    const auto c = std::uint32_t(reps.size());
    const auto xm = gl2::unpack(x);
    reps.push_back(xm);
    for (auto ge : g) lab.emplace(gl2::pack(gl2::mul(gl2::unpack(ge), xm, n)), c);
  }
  out.index = reps.size();

  const auto s = gl2::reduce(0, -1, 1, 0, n);
  const auto st = gl2::mul(s, gl2::reduce(1, 1, 0, 1, n), n);
  const auto t = gl2::reduce(1, 1, 0, 1, n);
  for (const auto& r : reps) {
    if (lab.at(gl2::pack(gl2::mul(r, s, n))) == lab.at(gl2::pack(r))) ++out.e2;
    if (lab.at(gl2::pack(gl2::mul(r, st, n))) == lab.at(gl2::pack(r))) ++out.e3;
  }

  std::vector<char> seen(reps.size(), 0);
  for (std::uint32_t c = 0; c < reps.size(); ++c) {
    if (seen[c]) continue;
    ++out.cusps;
    for (std::uint32_t j = c; !seen[j];
         j = lab.at(gl2::pack(gl2::mul(reps[j], t, n))))
      seen[j] = 1;
  }

  const std::int64_t twelve_g = 12 + std::int64_t(out.index) -
                                3 * std::int64_t(out.e2) -
                                4 * std::int64_t(out.e3) -
                                6 * std::int64_t(out.cusps);
  if (twelve_g < 0 || twelve_g % 12 != 0)
    fail(ErrorCode::Internal, "genus formula did not come out integral");
  out.genus = std::uint64_t(twelve_g / 12);
  return out;
}

mpz_class gamma1_psl2_index(unsigned n) {
  if (n == 0) fail(ErrorCode::OutOfRange, "level must be positive");
  if (n == 1) return 1;
  if (n == 2) return 3;
  mpq_class q(mpz_class(n) * n, 2);
  for (auto p : prime_divisors(n))
    q *= mpq_class(mpz_class(p) * p - 1, mpz_class(p) * p);
  q.canonicalize();
  if (q.get_den() != 1) fail(ErrorCode::Internal, "index is not integral");
  return q.get_num();
}

mpz_class degree_x1_map(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) fail(ErrorCode::InvalidArgument, "levels must be positive");
  mpq_class q(mpz_class(b) * b);
  for (auto p : prime_divisors(b))
    if (a % p != 0) q *= mpq_class(mpz_class(p) * p - 1, mpz_class(p) * p);
  if (a <= 2 && mpz_class(a) * b > 2) q /= 2;
  q.canonicalize();
  if (q.get_den() != 1) fail(ErrorCode::Internal, "degree is not integral");
  return q.get_num();
}

mpq_class abramovich_lower_bound(const mpz_class& d) {
  if (d <= 0) fail(ErrorCode::InvalidArgument, "index must be positive");
  mpq_class q(7 * d, 800);
  q.canonicalize();
  return q;
}

bool sporadic_sufficient(const mpz_class& deg, unsigned n) {
  if (deg < 1) fail(ErrorCode::InvalidArgument, "degree must be at least 1");
  mpq_class rhs(7 * gamma1_psl2_index(n), 1600);
  rhs.canonicalize();
  return mpq_class(deg) < rhs;
}

const std::vector<GonalityEntry>& builtin_gonality_table() {
  static const std::vector<GonalityEntry> table = {
      {11, true, 2},  {13, true, 2},  {16, true, 2},
      {18, true, 2},  {25, true, 5},  {27, true, 6},
      {28, true, 6},  {36, true, 8},  {49, false, 21},
  };
  return table;
}

std::vector<GonalityEntry> parse_gonality_table(std::string_view text) {
  std::vector<GonalityEntry> out;
  std::size_t lineno = 0, pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    std::string compact;
    for (char ch : line)
      if (ch != ' ' && ch != '\t' && ch != '\r') compact.push_back(ch);
    if (compact.empty()) continue;
    const auto err = [&lineno](const std::string& what) {
      fail(ErrorCode::ParseError,
           "gonality table line " + std::to_string(lineno) + ": " + what);
    };
    const auto c1 = compact.find(',');
    const auto c2 = c1 == std::string::npos ? std::string::npos
                                            : compact.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      err("expected level,exact|upper,value");
    GonalityEntry e;
    char* end = nullptr;
    const std::string lvl = compact.substr(0, c1);
    e.level = unsigned(std::strtoul(lvl.c_str(), &end, 10));
    if (lvl.empty() || *end || e.level == 0) err("bad level");
    const std::string kind = compact.substr(c1 + 1, c2 - c1 - 1);
    if (kind == "exact")
      e.exact = true;
    else if (kind == "upper")
      e.exact = false;
    else
      err("expected 'exact' or 'upper'");
    const std::string val = compact.substr(c2 + 1);
    e.value = std::uint32_t(std::strtoul(val.c_str(), &end, 10));
    if (val.empty() || *end || e.value == 0) err("bad value");
    out.push_back(e);
  }
  return out;
}

GonalityBound gonality_upper(unsigned n,
                             const std::vector<GonalityEntry>& table) {
  if (n == 0) fail(ErrorCode::OutOfRange, "level must be positive");
  bool have = false;
  GonalityBound best;
  for (const auto& e : table) {
    if (e.level == 0 || n % e.level != 0) continue;
    const mpz_class cand = e.value * degree_x1_map(e.level, n / e.level);
    if (!have || cand < best.value) {
      best.value = cand;
      best.exact = false;
      have = true;
    }
  }
  if (!have)
    fail(ErrorCode::NotFound,
         "no gonality entry for any divisor of " + std::to_string(n));
  for (const auto& e : table)
    if (e.level == n && e.exact && best.value == e.value) best.exact = true;
  return best;
}

GonalityBound gonality_upper(unsigned n) {
  return gonality_upper(n, builtin_gonality_table());
}

}  // namespace qcv::mcurve
