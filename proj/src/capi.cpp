#include "qcv.h"

#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "claims.hpp"
#include "common.hpp"
#include "ecq.hpp"
#include "gl2.hpp"
#include "goursat.hpp"
#include "isogeny.hpp"
#include "modcurve.hpp"
#include "torsion.hpp"

namespace {

thread_local int g_code = 0;
thread_local std::string g_message;

void set_error(int code, const std::string& msg) {
  g_code = code;
  g_message = msg;
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p == nullptr) {
    set_error(-1, "out of memory");
    return nullptr;
  }
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

// Runs f, converting exceptions into the thread-local error slot.
template <class F>
char* wrap(F&& f) {
  set_error(0, "");
  try {
    return dup_string(f());
  } catch (const qcv::Error& e) {
    set_error(static_cast<int>(e.code) + 1, e.what());
  } catch (const std::exception& e) {
    set_error(-1, e.what());
  }
  return nullptr;
}

template <class F>
int wrap_status(F&& f) {
  set_error(0, "");
  try {
    f();
    return 0;
  } catch (const qcv::Error& e) {
    set_error(static_cast<int>(e.code) + 1, e.what());
  } catch (const std::exception& e) {
    set_error(-1, e.what());
  }
  return -1;
}

mpz_class parse_integer(const char* s) {
  if (s == nullptr || *s == '\0')
    qcv::fail(qcv::ErrorCode::ParseError, "empty integer");
  try {
    return mpz_class(s);
  } catch (const std::invalid_argument&) {
    qcv::fail(qcv::ErrorCode::ParseError,
              std::string("not an integer: ") + s);
  }
}

mpq_class parse_rational(const char* s) {
  if (s == nullptr || *s == '\0')
    qcv::fail(qcv::ErrorCode::ParseError, "empty rational");
  const std::string text(s);
  const auto slash = text.find('/');
  if (slash == std::string::npos)
    return mpq_class(parse_integer(text.c_str()));
  const mpz_class num = parse_integer(text.substr(0, slash).c_str());
  const mpz_class den = parse_integer(text.substr(slash + 1).c_str());
  if (den == 0) qcv::fail(qcv::ErrorCode::ParseError, "zero denominator");
  return mpq_class(num) / den;
}

std::vector<mpq_class> parse_rational_list(const char* s) {
  std::vector<mpq_class> out;
  std::string text(s == nullptr ? "" : s);
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    out.push_back(parse_rational(text.substr(start, comma - start).c_str()));
    start = comma + 1;
  }
  return out;
}

unsigned long parse_ulong(const char* s) {
  const mpz_class z = parse_integer(s);
  if (z < 0 || !z.fits_ulong_p())
    qcv::fail(qcv::ErrorCode::OutOfRange, "value does not fit in a word");
  return z.get_ui();
}

qcv::ecq::CurveQ curve_from_args(const char* j, const char* ainv) {
  if ((j != nullptr) == (ainv != nullptr))
    qcv::fail(qcv::ErrorCode::InvalidArgument,
              "pass exactly one of a j-invariant or a coefficient list");
  if (j != nullptr) return qcv::ecq::curve_from_j(parse_rational(j));
  const auto a = parse_rational_list(ainv);
  if (a.size() != 5)
    qcv::fail(qcv::ErrorCode::ParseError,
              "coefficient list must be a1,a2,a3,a4,a6");
  return qcv::ecq::make_curve(a[0], a[1], a[2], a[3], a[4]);
}

std::string join(const std::vector<unsigned>& v) {
  std::string s;
  for (unsigned d : v) {
    if (!s.empty()) s += ", ";
    s += std::to_string(d);
  }
  return s;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

qcv::isogeny::CyclicKernel parse_kernel(const char* s) {
  std::string text(s == nullptr ? "" : s);
  std::vector<unsigned long> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    parts.push_back(parse_ulong(text.substr(start, comma - start).c_str()));
    start = comma + 1;
  }
  if (parts.size() != 3)
    qcv::fail(qcv::ErrorCode::ParseError, "kernel must be gx,gy,t");
  if (parts[2] > 64)
    qcv::fail(qcv::ErrorCode::OutOfRange, "kernel order exponent too large");
  return {parts[0], parts[1], static_cast<unsigned>(parts[2])};
}

const qcv::grp::Table& named_table(const char* name) {
  static const qcv::grp::Table c2 = qcv::grp::cyclic_table(2);
  static const qcv::grp::Table c3 = qcv::grp::cyclic_table(3);
  static const qcv::grp::Table c4 = qcv::grp::cyclic_table(4);
  static const qcv::grp::Table c6 = qcv::grp::cyclic_table(6);
  static const qcv::grp::Table s3 =
      qcv::grp::table_from_group(qcv::gl2::full_gl2(2));
  const std::string n(name == nullptr ? "" : name);
  if (n == "c2") return c2;
  if (n == "c3") return c3;
  if (n == "c4") return c4;
  if (n == "c6") return c6;
  if (n == "s3") return s3;
  qcv::fail(qcv::ErrorCode::NotFound,
            "unknown group name (have c2, c3, c4, c6, s3): " + n);
}

}  // namespace

struct qcv_session {
  qcv::claims::Options opt;
};

struct qcv_reports {
  std::vector<qcv::claims::ClaimReport> reports;
};

extern "C" {

const char* qcv_version(void) { return "0.1.0"; }

int qcv_last_error_code(void) { return g_code; }

const char* qcv_last_error_message(void) { return g_message.c_str(); }

void qcv_string_free(char* s) { std::free(s); }

qcv_session* qcv_session_new(void) {
  set_error(0, "");
  return new (std::nothrow) qcv_session{};
}

void qcv_session_free(qcv_session* s) { delete s; }

int qcv_session_set_jobs(qcv_session* s, unsigned jobs) {
  return wrap_status([&] {
    if (s == nullptr)
      qcv::fail(qcv::ErrorCode::InvalidArgument, "null session");
    if (jobs < 1)
      qcv::fail(qcv::ErrorCode::OutOfRange, "jobs must be at least 1");
    s->opt.jobs = jobs;
  });
}

int qcv_session_load_gonality_table(qcv_session* s, const char* text) {
  return wrap_status([&] {
    if (s == nullptr || text == nullptr)
      qcv::fail(qcv::ErrorCode::InvalidArgument, "null argument");
    s->opt.gonality = qcv::mcurve::parse_gonality_table(text);
  });
}

int qcv_session_load_catalog(qcv_session* s, const char* text) {
  return wrap_status([&] {
    if (s == nullptr || text == nullptr)
      qcv::fail(qcv::ErrorCode::InvalidArgument, "null argument");
    s->opt.catalog = qcv::gl2::parse_catalog(text);
  });
}

qcv_reports* qcv_run_claims(qcv_session* s, const char* only_prefix) {
  set_error(0, "");
  try {
    qcv::claims::Options opt = s != nullptr ? s->opt : qcv::claims::Options{};
    opt.only_prefix = only_prefix == nullptr ? "" : only_prefix;
    auto out = new qcv_reports{qcv::claims::run_claims(opt)};
    return out;
  } catch (const qcv::Error& e) {
    set_error(static_cast<int>(e.code) + 1, e.what());
  } catch (const std::exception& e) {
    set_error(-1, e.what());
  }
  return nullptr;
}

size_t qcv_reports_count(const qcv_reports* r) {
  return r == nullptr ? 0 : r->reports.size();
}

const char* qcv_reports_field(const qcv_reports* r, size_t i, int field) {
  if (r == nullptr || i >= r->reports.size()) return nullptr;
  const auto& rep = r->reports[i];
  switch (field) {
    case QCV_FIELD_CLAIM_ID: return rep.claim_id.c_str();
    case QCV_FIELD_STATUS: return qcv::claims::to_string(rep.status).data();
    case QCV_FIELD_COMPUTED: return rep.computed.c_str();
    case QCV_FIELD_EXPECTED: return rep.expected.c_str();
    case QCV_FIELD_PROVENANCE:
      return qcv::claims::to_string(rep.provenance).data();
    default: return nullptr;
  }
}

double qcv_reports_elapsed_ms(const qcv_reports* r, size_t i) {
  if (r == nullptr || i >= r->reports.size()) return -1.0;
  return r->reports[i].elapsed_ms;
}

void qcv_reports_free(qcv_reports* r) { delete r; }

size_t qcv_claims_total(void) { return qcv::claims::list_claims().size(); }

char* qcv_claims_markdown(void) {
  return wrap([] { return qcv::claims::render_markdown_table(); });
}

char* qcv_cartan_order(unsigned p) {
  return wrap([&] {
    return std::to_string(qcv::gl2::nonsplit_cartan_normalizer(p).order());
  });
}

char* qcv_genus(qcv_session* s, const char* label) {
  return wrap([&] {
    const auto& cat = (s != nullptr && s->opt.catalog)
                          ? *s->opt.catalog
                          : qcv::gl2::builtin_catalog();
    if (label == nullptr)
      qcv::fail(qcv::ErrorCode::InvalidArgument, "null label");
    const auto& e = qcv::gl2::catalog_lookup(cat, label);
    const auto inv =
        qcv::mcurve::curve_invariants(qcv::gl2::closure(e.n, e.gens));
    return "d=" + std::to_string(inv.index) + " e2=" + std::to_string(inv.e2) +
           " e3=" + std::to_string(inv.e3) +
           " cusps=" + std::to_string(inv.cusps) +
           " genus=" + std::to_string(inv.genus);
  });
}

char* qcv_subdirect_count(const char* a, const char* b) {
  return wrap([&] {
    const auto& ta = named_table(a);
    const auto& tb = named_table(b);
    const auto g = qcv::grp::count_subdirect_goursat(ta, tb);
    const auto br = qcv::grp::count_subdirect_brute(ta, tb);
    if (g != br)
      qcv::fail(qcv::ErrorCode::Internal,
                "correspondence and brute-force counts disagree");
    return std::to_string(g);
  });
}

char* qcv_gamma1_index(unsigned n) {
  return wrap([&] { return qcv::mcurve::gamma1_psl2_index(n).get_str(); });
}

char* qcv_x1_map_degree(const char* a, const char* b) {
  return wrap([&] {
    return qcv::mcurve::degree_x1_map(parse_ulong(a), parse_ulong(b))
        .get_str();
  });
}

char* qcv_gonality_upper(qcv_session* s, unsigned n) {
  return wrap([&] {
    const auto& table = (s != nullptr && s->opt.gonality)
                            ? *s->opt.gonality
                            : qcv::mcurve::builtin_gonality_table();
    const auto bound = qcv::mcurve::gonality_upper(n, table);
    return bound.value.get_str() + (bound.exact ? " (exact)" : " (upper)");
  });
}

char* qcv_sporadic_sufficient(const char* deg, unsigned n) {
  return wrap([&] {
    return std::string(qcv::mcurve::sporadic_sufficient(parse_integer(deg), n)
                           ? "sporadic"
                           : "not sporadic");
  });
}

char* qcv_abramovich_bound(const char* psl2_index) {
  return wrap([&] {
    return qcv::mcurve::abramovich_lower_bound(parse_integer(psl2_index))
        .get_str();
  });
}

char* qcv_degree_divisor(unsigned p, unsigned k, int special_j) {
  return wrap([&] {
    return qcv::tors::required_degree_divisor(p, k, special_j != 0).get_str();
  });
}

char* qcv_gonality_gap(unsigned p, unsigned k) {
  return wrap([&] {
    const auto g = qcv::tors::verify_gonality_gap(p, k);
    const char* verdict = !g.holds ? "fails" : (g.strict ? "strict" : "ties");
    if (g.divisor_special != 0)
      return "generic " + g.divisor.get_str() + ", special " +
             g.divisor_special.get_str() + ", bound " + g.bound.get_str() +
             ", " + verdict;
    return g.divisor.get_str() + " vs " + g.bound.get_str() + ", " + verdict;
  });
}

char* qcv_index_valuation_bound(unsigned p, int five_flag) {
  return wrap([&] {
    std::optional<qcv::tors::FiveIsogenies> flag;
    switch (five_flag) {
      case 0: break;
      case 1: flag = qcv::tors::FiveIsogenies::One; break;
      case 2: flag = qcv::tors::FiveIsogenies::Cyclic25; break;
      case 3: flag = qcv::tors::FiveIsogenies::TwoIndependent; break;
      default:
        qcv::fail(qcv::ErrorCode::InvalidArgument,
                  "five_flag must be 0, 1, 2 or 3");
    }
    return std::to_string(qcv::tors::index_valuation_bound(p, flag));
  });
}

char* qcv_two_power_bound(unsigned p) {
  return wrap(
      [&] { return std::to_string(qcv::tors::admissible_two_power(p)); });
}

char* qcv_cm_check(unsigned p, unsigned n, const char* class_number) {
  return wrap([&] {
    const auto c = qcv::tors::cm_sporadic_check(p, n, parse_integer(class_number));
    return "delta " + std::to_string(c.delta) + ", degree " +
           c.degree.get_str() +
           (c.sporadic ? ", sporadic" : ", not sporadic");
  });
}

char* qcv_cm_min_level(unsigned p, const char* class_number) {
  return wrap([&] {
    return std::to_string(
        qcv::tors::cm_min_sporadic_level(p, parse_integer(class_number)));
  });
}

char* qcv_cm_split_check(unsigned p, const char* class_number) {
  return wrap([&] {
    const auto c =
        qcv::tors::cm_split_sporadic_check(p, parse_integer(class_number));
    return "degree " + c.degree.get_str() +
           (c.sporadic ? ", sporadic" : ", not sporadic");
  });
}

char* qcv_serre_threshold(void) {
  return wrap([] { return std::to_string(qcv::tors::serre_threshold()); });
}

char* qcv_short_form(const char* j, const char* ainv) {
  return wrap([&] {
    const auto sf = qcv::ecq::short_form(curve_from_args(j, ainv));
    return "A " + sf.A.get_str() + ", B " + sf.B.get_str();
  });
}

char* qcv_divpoly_degrees(const char* j, const char* ainv, unsigned n) {
  return wrap([&] {
    const auto e = curve_from_args(j, ainv);
    const auto degs =
        qcv::ecq::factor_degrees(qcv::ecq::primitive_kernel_poly(e, n));
    return "degrees " + join(degs) +
           (degs.size() == 1 ? " (irreducible)" : "");
  });
}

char* qcv_parity(const char* j, const char* ainv, unsigned n,
                 int class_level) {
  return wrap([&] {
    const auto e = curve_from_args(j, ainv);
    if (class_level != 0) {
      const auto cp = qcv::ecq::two_isogeny_class_parity(e, n);
      std::vector<unsigned> all;
      for (const auto& b : cp.blocks)
        all.insert(all.end(), b.degrees.begin(), b.degrees.end());
      std::sort(all.begin(), all.end());
      return "degrees " + join(all) +
             (cp.all_even ? "; all even" : "; odd block present");
    }
    const auto degs =
        qcv::ecq::factor_degrees(qcv::ecq::primitive_kernel_poly(e, n));
    const auto v = qcv::ecq::odd_degree_torsion_parity(e, n);
    std::string verdict;
    switch (v.kind) {
      case qcv::ecq::Parity::AllEven: verdict = "all even"; break;
      case qcv::ecq::Parity::HasOddXField:
        verdict = "odd x-field of degree " + std::to_string(v.odd_degree);
        break;
      case qcv::ecq::Parity::Inconclusive: verdict = "inconclusive"; break;
    }
    return "degrees " + join(degs) + "; " + verdict;
  });
}

char* qcv_weber_value(const char* c2, const char* c3, const char* x) {
  return wrap([&] {
    return qcv::ecq::weber_value(parse_rational(c2), parse_rational(c3),
                                 parse_rational(x))
        .get_str();
  });
}

char* qcv_f3_value(const char* t) {
  return wrap([&] {
    const auto v = qcv::ecq::hauptmodul_f3(parse_rational(t));
    return v.is_cusp ? std::string("cusp") : v.value.get_str();
  });
}

char* qcv_cyclic_kernel_count(unsigned long p, unsigned k, unsigned j) {
  return wrap([&] {
    return std::to_string(qcv::isogeny::cyclic_subgroups(p, k, j).size());
  });
}

char* qcv_compose_kernels(unsigned long p, unsigned k, const char* f,
                          const char* g) {
  return wrap([&] {
    const auto out = qcv::isogeny::compose_kernels(p, k, parse_kernel(f),
                                                   parse_kernel(g));
    if (out.kind == qcv::isogeny::ComposeKind::TwoIndependent)
      return "independent deg1=" + std::to_string(out.deg1) +
             " deg2=" + std::to_string(out.deg2) +
             " meet=" + std::to_string(out.meet);
    return "single a=" + std::to_string(out.a) +
           " meet=" + std::to_string(out.meet);
  });
}

char* qcv_induced_image(const char* g, unsigned n, unsigned m) {
  return wrap([&] {
    std::string text(g == nullptr ? "" : g);
    std::vector<unsigned long> e;
    std::size_t start = 0;
    while (start <= text.size()) {
      auto comma = text.find(',', start);
      if (comma == std::string::npos) comma = text.size();
      e.push_back(parse_ulong(text.substr(start, comma - start).c_str()));
      start = comma + 1;
    }
    if (e.size() != 4)
      qcv::fail(qcv::ErrorCode::ParseError, "matrix must be a,b,c,d");
    const auto out = qcv::isogeny::induced_quotient_image(
        qcv::gl2::reduce(static_cast<long long>(e[0]),
                         static_cast<long long>(e[1]),
                         static_cast<long long>(e[2]),
                         static_cast<long long>(e[3]), n),
        n, m);
    return std::to_string(out.a) + "," + std::to_string(out.b) + "," +
           std::to_string(out.c) + "," + std::to_string(out.d);
  });
}

char* qcv_borel_dichotomy(unsigned long p) {
  return wrap([&] {
    const auto rep = qcv::isogeny::borel_isogeny_dichotomy(p);
    return "kernels " + std::to_string(rep.kernels) + ", fixed " +
           std::to_string(rep.fixed_vector_count) + ", mirrored " +
           std::to_string(rep.mirrored_borel_count) +
           (rep.holds ? ", holds" : ", fails");
  });
}

char* qcv_propagation(const char* deg, unsigned n, unsigned long p) {
  return wrap([&] {
    const auto r =
        qcv::isogeny::sporadic_propagation(parse_integer(deg), n, p);
    return "bound " + r.deg_bound.get_str() +
           "; input sporadic: " + yes_no(r.hypothesis_held) +
           "; image sporadic: " + yes_no(r.still_sporadic);
  });
}

}  // extern "C"
