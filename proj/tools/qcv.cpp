// Command-line front end for the verification toolkit. Everything goes
// through the C surface in qcv.h; no C++ core headers are used here.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <string_view>

#include "CLI11.hpp"
#include "json.hpp"
#include "qcv.h"

namespace {

// prints a malloc'd result (or the error) and frees it; returns the exit code
int emit(char* s) {
  if (s == nullptr) {
    std::cerr << "error: " << qcv_last_error_message() << "\n";
    return 2;
  }
  std::cout << s;
  if (s[0] == '\0' || s[std::string_view(s).size() - 1] != '\n')
    std::cout << "\n";
  qcv_string_free(s);
  return 0;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

// owns a session for the duration of one subcommand
struct Session {
  qcv_session* s = qcv_session_new();
  ~Session() {
    if (s != nullptr) qcv_session_free(s);
  }
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;
  Session() = default;
};

// loads optional override files; returns 0 or an exit code
int load_overrides(qcv_session* s, const std::string& gonality_path,
                   const std::string& catalog_path) {
  std::string text;
  if (!gonality_path.empty()) {
    if (!read_file(gonality_path, text)) {
      std::cerr << "error: cannot read " << gonality_path << "\n";
      return 2;
    }
    if (qcv_session_load_gonality_table(s, text.c_str()) != 0) {
      std::cerr << "error: " << qcv_last_error_message() << "\n";
      return 2;
    }
  }
  if (!catalog_path.empty()) {
    if (!read_file(catalog_path, text)) {
      std::cerr << "error: cannot read " << catalog_path << "\n";
      return 2;
    }
    if (qcv_session_load_catalog(s, text.c_str()) != 0) {
      std::cerr << "error: " << qcv_last_error_message() << "\n";
      return 2;
    }
  }
  return 0;
}

int run_verify(const std::string& only, const std::string& format, int jobs,
               const std::string& gonality_path,
               const std::string& catalog_path) {
  Session session;
  if (qcv_session_set_jobs(session.s, jobs) != 0) {
    std::cerr << "error: " << qcv_last_error_message() << "\n";
    return 2;
  }
  if (int rc = load_overrides(session.s, gonality_path, catalog_path); rc != 0)
    return rc;

  qcv_reports* r =
      qcv_run_claims(session.s, only.empty() ? nullptr : only.c_str());
  if (r == nullptr) {
    std::cerr << "error: " << qcv_last_error_message() << "\n";
    return 2;
  }

  const size_t count = qcv_reports_count(r);
  size_t passed = 0, failed = 0, inconclusive = 0;
  nlohmann::json doc = nlohmann::json::array();
  for (size_t i = 0; i < count; ++i) {
    const std::string id = qcv_reports_field(r, i, QCV_FIELD_CLAIM_ID);
    const std::string status = qcv_reports_field(r, i, QCV_FIELD_STATUS);
    const std::string computed = qcv_reports_field(r, i, QCV_FIELD_COMPUTED);
    const std::string expected = qcv_reports_field(r, i, QCV_FIELD_EXPECTED);
    const std::string prov = qcv_reports_field(r, i, QCV_FIELD_PROVENANCE);
    const double ms = qcv_reports_elapsed_ms(r, i);
    if (status == "PASS")
      ++passed;
    else if (status == "FAIL")
      ++failed;
    else
      ++inconclusive;

    if (format == "json") {
      doc.push_back({{"claim_id", id},
                     {"status", status},
                     {"computed", computed},
                     {"expected", expected},
                     {"provenance", prov},
                     {"elapsed_ms", ms}});
    } else {
      std::cout << status;
      for (size_t pad = status.size(); pad < 13; ++pad) std::cout << ' ';
      std::cout << id;
      if (status != "PASS")
        std::cout << "  computed: " << computed << "  expected: " << expected;
      std::cout << "\n";
    }
  }
  qcv_reports_free(r);

  if (format == "json") {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << passed << " passed, " << failed << " failed, " << inconclusive
              << " inconclusive (" << count << " claims)\n";
  }
  if (failed > 0) return 1;
  if (inconclusive > 0) return 3;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modular curve and isogeny verification toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", qcv_version());

  int rc = 0;

  // verify: replay the claim registry
  std::string only, format = "text", gonality_path, catalog_path;
  int jobs = 1;
  auto* verify = app.add_subcommand("verify", "replay the claim registry");
  verify->add_option("--only", only, "restrict to claim ids with this prefix");
  verify->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--jobs", jobs, "worker threads")
      ->check(CLI::PositiveNumber);
  verify->add_option("--gonality-table", gonality_path,
                     "replace the built-in gonality table (level,exact|upper,"
                     "value per line)");
  verify->add_option("--catalog", catalog_path,
                     "replace the built-in subgroup catalog");
  verify->callback(
      [&] { rc = run_verify(only, format, jobs, gonality_path, catalog_path); });

  // list-claims: registry as a markdown table
  auto* list = app.add_subcommand("list-claims", "print the claim registry");
  list->callback([&] { rc = emit(qcv_claims_markdown()); });

  // shared option storage; exactly one subcommand parses per run
  unsigned p = 0, k = 0, n = 0, m = 0, kj = 0;
  int five = 0, class_level = 0;
  bool special = false;
  std::string a, b, j, ainv, deg, h, t, x, c2, c3, f, g, d, label;

  auto* genus = app.add_subcommand(
      "genus", "signature and genus of a catalog subgroup's curve");
  genus->add_option("--label", label, "catalog label")->required();
  genus->add_option("--catalog", catalog_path, "catalog file");
  genus->callback([&] {
    Session session;
    if ((rc = load_overrides(session.s, "", catalog_path)) != 0) return;
    rc = emit(qcv_genus(catalog_path.empty() ? nullptr : session.s,
                        label.c_str()));
  });

  auto* cartan = app.add_subcommand(
      "cartan", "order of the normalizer of the nonsplit Cartan mod p");
  cartan->add_option("--p", p, "odd prime")->required();
  cartan->callback([&] { rc = emit(qcv_cartan_order(p)); });

  auto* index = app.add_subcommand(
      "index", "index of the Gamma1(n) image in PSL2(Z/n)");
  index->add_option("--n", n, "level")->required();
  index->callback([&] { rc = emit(qcv_gamma1_index(n)); });

  auto* degree = app.add_subcommand(
      "degree", "degree of the level-lowering map between X1 curves");
  degree->add_option("--a", a, "target level")->required();
  degree->add_option("--b", b, "level multiplier")->required();
  degree->callback([&] { rc = emit(qcv_x1_map_degree(a.c_str(), b.c_str())); });

  auto* gonality =
      app.add_subcommand("gonality", "gonality bound for X1(n) over Q");
  gonality->add_option("--n", n, "level")->required();
  gonality->add_option("--table", gonality_path, "gonality table file");
  gonality->callback([&] {
    Session session;
    if ((rc = load_overrides(session.s, gonality_path, "")) != 0) return;
    rc = emit(qcv_gonality_upper(gonality_path.empty() ? nullptr : session.s, n));
  });

  auto* sporadic = app.add_subcommand(
      "sporadic", "sufficient low-degree criterion for a point on X1(n)");
  sporadic->add_option("--deg", deg, "point degree")->required();
  sporadic->add_option("--n", n, "level")->required();
  sporadic->callback([&] { rc = emit(qcv_sporadic_sufficient(deg.c_str(), n)); });

  auto* abram = app.add_subcommand(
      "abramovich", "gonality lower bound from the PSL2 index");
  abram->add_option("--d", d, "PSL2 index")->required();
  abram->callback([&] { rc = emit(qcv_abramovich_bound(d.c_str())); });

  auto* divis = app.add_subcommand(
      "divisibility", "forced divisor of the degree of a p^k torsion point");
  divis->add_option("--p", p, "prime")->required();
  divis->add_option("--k", k, "prime-power exponent")->required();
  divis->add_flag("--special", special, "exceptional j-invariant branch");
  divis->callback(
      [&] { rc = emit(qcv_degree_divisor(p, k, special ? 1 : 0)); });

  auto* gap = app.add_subcommand(
      "gap", "forced degree divisor against the gonality bound");
  gap->add_option("--p", p, "prime")->required();
  gap->add_option("--k", k, "prime-power exponent")->required();
  gap->callback([&] { rc = emit(qcv_gonality_gap(p, k)); });

  auto* padic = app.add_subcommand(
      "padic", "bound on the p-adic valuation of the image index");
  padic->add_option("--p", p, "prime")->required();
  padic->add_option("--five", five,
                    "5-isogeny structure: 0 none, 1 one, 2 cyclic 25, 3 two "
                    "independent");
  padic->callback([&] { rc = emit(qcv_index_valuation_bound(p, five)); });

  auto* twopow = app.add_subcommand(
      "twopow", "largest two-power order compatible with a p-isogeny");
  twopow->add_option("--p", p, "prime")->required();
  twopow->callback([&] { rc = emit(qcv_two_power_bound(p)); });

  auto* cm = app.add_subcommand(
      "cm", "degree of a CM point of p^n torsion and its sporadic status");
  cm->add_option("--p", p, "prime, 3 mod 4")->required();
  cm->add_option("--n", n, "prime-power exponent")->required();
  cm->add_option("--class-number", h, "class number")->required();
  cm->callback([&] { rc = emit(qcv_cm_check(p, n, h.c_str())); });

  auto* cmmin = app.add_subcommand(
      "cm-min", "least exponent giving a sporadic CM point, if any");
  cmmin->add_option("--p", p, "prime, 3 mod 4")->required();
  cmmin->add_option("--class-number", h, "class number")->required();
  cmmin->callback([&] { rc = emit(qcv_cm_min_level(p, h.c_str())); });

  auto* cmsplit = app.add_subcommand(
      "cm-split", "sporadic status of the split-Cartan CM point");
  cmsplit->add_option("--p", p, "prime")->required();
  cmsplit->add_option("--class-number", h, "class number")->required();
  cmsplit->callback([&] { rc = emit(qcv_cm_split_check(p, h.c_str())); });

  auto* serre = app.add_subcommand(
      "serre", "uniform surjectivity threshold used for large primes");
  serre->callback([&] { rc = emit(qcv_serre_threshold()); });

  auto* shortform = app.add_subcommand(
      "shortform", "short Weierstrass coefficients of a curve over Q");
  shortform->add_option("--j", j, "j-invariant (num or num/den)");
  shortform->add_option("--ainv", ainv, "a1,a2,a3,a4,a6");
  shortform->callback([&] {
    rc = emit(qcv_short_form(j.empty() ? nullptr : j.c_str(),
                             ainv.empty() ? nullptr : ainv.c_str()));
  });

  auto* divpoly = app.add_subcommand(
      "divpoly", "factor degrees of the primitive n-division kernel");
  divpoly->add_option("--j", j, "j-invariant (num or num/den)");
  divpoly->add_option("--ainv", ainv, "a1,a2,a3,a4,a6");
  divpoly->add_option("--n", n, "torsion order")->required();
  divpoly->callback([&] {
    rc = emit(qcv_divpoly_degrees(j.empty() ? nullptr : j.c_str(),
                                  ainv.empty() ? nullptr : ainv.c_str(), n));
  });

  auto* parity = app.add_subcommand(
      "parity", "parity of the odd torsion point degrees over the x-fields");
  parity->add_option("--j", j, "j-invariant (num or num/den)");
  parity->add_option("--ainv", ainv, "a1,a2,a3,a4,a6");
  parity->add_option("--n", n, "torsion order")->required();
  parity->add_flag("--class", class_level,
                   "sweep the full 2-isogeny class of the curve");
  parity->callback([&] {
    rc = emit(qcv_parity(j.empty() ? nullptr : j.c_str(),
                         ainv.empty() ? nullptr : ainv.c_str(), n,
                         class_level));
  });

  auto* weber = app.add_subcommand(
      "weber", "value of the degree-3 map on y^2 = 4x^3 - c2 x - c3");
  weber->add_option("--c2", c2, "quartic invariant")->required();
  weber->add_option("--c3", c3, "sextic invariant")->required();
  weber->add_option("--x", x, "x-coordinate")->required();
  weber->callback([&] {
    rc = emit(qcv_weber_value(c2.c_str(), c3.c_str(), x.c_str()));
  });

  auto* f3 = app.add_subcommand(
      "f3", "j-invariant parametrized by the degree-3 hauptmodul");
  f3->add_option("--t", t, "parameter value")->required();
  f3->callback([&] { rc = emit(qcv_f3_value(t.c_str())); });

  auto* kernels = app.add_subcommand(
      "kernels", "count of cyclic order-p^j subgroups of the p^k torsion");
  kernels->add_option("--p", p, "prime")->required();
  kernels->add_option("--k", k, "ambient exponent")->required();
  kernels->add_option("--j", kj, "subgroup exponent")->required();
  kernels->callback([&] { rc = emit(qcv_cyclic_kernel_count(p, k, kj)); });

  auto* compose = app.add_subcommand(
      "compose", "kernel structure of one cyclic isogeny after another");
  compose->add_option("--p", p, "prime")->required();
  compose->add_option("--k", k, "ambient exponent")->required();
  compose->add_option("--f", f, "first kernel as gx,gy,t")->required();
  compose->add_option("--g", g, "second kernel as gx,gy,t")->required();
  compose->callback([&] {
    rc = emit(qcv_compose_kernels(p, k, f.c_str(), g.c_str()));
  });

  auto* induced = app.add_subcommand(
      "induced", "mod-N image induced on the quotient by a rational kernel");
  induced->add_option("--g", g, "matrix as a,b,c,d")->required();
  induced->add_option("--n", n, "level")->required();
  induced->add_option("--m", m, "kernel order dividing n")->required();
  induced->callback([&] { rc = emit(qcv_induced_image(g.c_str(), n, m)); });

  auto* borel = app.add_subcommand(
      "borel", "kernel census for the two Borel branches mod p");
  borel->add_option("--p", p, "prime up to 13")->required();
  borel->callback([&] { rc = emit(qcv_borel_dichotomy(p)); });

  auto* prop = app.add_subcommand(
      "propagate", "degree bound for the image of a point under p-isogeny");
  prop->add_option("--deg", deg, "point degree")->required();
  prop->add_option("--n", n, "level")->required();
  prop->add_option("--p", p, "isogeny prime dividing n")->required();
  prop->callback([&] { rc = emit(qcv_propagation(deg.c_str(), n, p)); });

  auto* subdirect = app.add_subcommand(
      "subdirect", "count of subdirect products of two named groups");
  subdirect->add_option("--a", a, "c2, c3, c4, c6 or s3")->required();
  subdirect->add_option("--b", b, "c2, c3, c4, c6 or s3")->required();
  subdirect->callback(
      [&] { rc = emit(qcv_subdirect_count(a.c_str(), b.c_str())); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return rc;
}
