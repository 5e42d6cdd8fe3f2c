#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>

#include "../vendor/doctest.h"
#include "qcv.h"

// Exercises the shared library strictly through the C surface.

namespace {

// takes ownership of the C string
std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  qcv_string_free(s);
  return out;
}

void expect_error(char* s, int code) {
  CHECK(s == nullptr);
  CHECK(qcv_last_error_code() == code);
  CHECK(std::string(qcv_last_error_message()).size() > 0);
  qcv_string_free(s);
}

// ErrorCode enumerators, shifted by one in the C layer (0 = ok)
constexpr int kInvalidArgument = 1;
constexpr int kNotPrime = 6;
constexpr int kParseError = 8;
constexpr int kNotFound = 9;
constexpr int kFlagRequired = 10;
constexpr int kOutOfRange = 11;

}  // namespace

TEST_CASE("version and registry size") {
  CHECK(std::string(qcv_version()) == "0.1.0");
  CHECK(qcv_claims_total() == 100);
}

TEST_CASE("error slot is thread-local state of the last call") {
  expect_error(qcv_cartan_order(4), kNotPrime);
  CHECK(take(qcv_cartan_order(13)) == "336");
  CHECK(qcv_last_error_code() == 0);
}

TEST_CASE("matrix group ops") {
  CHECK(take(qcv_cartan_order(3)) == "16");
  CHECK(take(qcv_cartan_order(47)) == "4416");
  const auto g = take(qcv_genus(nullptr, "H7"));
  CHECK(g.find("d=72") != std::string::npos);
  CHECK(g.find("genus=4") != std::string::npos);
  expect_error(qcv_genus(nullptr, "H77"), kNotFound);
  CHECK(take(qcv_subdirect_count("c2", "c2")) == "2");
  CHECK(take(qcv_subdirect_count("c3", "c3")) == "3");
  CHECK(take(qcv_subdirect_count("s3", "s3")) == "8");
  expect_error(qcv_subdirect_count("s3", "d8"), kNotFound);
}

TEST_CASE("modular curve ops") {
  CHECK(take(qcv_gamma1_index(21)) == "192");
  CHECK(take(qcv_x1_map_degree("18", "3")) == "9");
  expect_error(qcv_x1_map_degree("18", "x"), kParseError);
  CHECK(take(qcv_gonality_upper(nullptr, 169)) == "338 (upper)");
  CHECK(take(qcv_gonality_upper(nullptr, 36)) == "8 (exact)");
  CHECK(take(qcv_sporadic_sufficient("1", 25)) == "sporadic");
  CHECK(take(qcv_sporadic_sufficient("3", 21)) == "not sporadic");
  CHECK(take(qcv_abramovich_bound("300")) == "21/8");
}

TEST_CASE("torsion rule ops") {
  CHECK(take(qcv_degree_divisor(13, 2, 0)) == "507");
  CHECK(take(qcv_degree_divisor(7, 2, 1)) == "21");
  CHECK(take(qcv_gonality_gap(13, 2)) == "507 vs 338, strict");
  CHECK(take(qcv_gonality_gap(7, 2)) ==
        "generic 49, special 21, bound 21, ties");
  CHECK(take(qcv_index_valuation_bound(2, 0)) == "6");
  CHECK(take(qcv_index_valuation_bound(5, 2)) == "1");
  expect_error(qcv_index_valuation_bound(5, 0), kFlagRequired);
  expect_error(qcv_index_valuation_bound(3, 7), kInvalidArgument);
  CHECK(take(qcv_two_power_bound(7)) == "2");
  CHECK(take(qcv_cm_check(11, 2, "1")) == "delta 2, degree 605, not sporadic");
  CHECK(take(qcv_cm_min_level(7, "1")) == "5");
  CHECK(take(qcv_cm_split_check(101, "22")) == "degree 222200, sporadic");
  CHECK(take(qcv_cm_split_check(101, "23")) == "degree 232300, not sporadic");
  CHECK(take(qcv_serre_threshold()) == "461");
}

TEST_CASE("elliptic curve ops") {
  CHECK(take(qcv_short_form("1792", nullptr)) == "A -756, B 1512");
  CHECK(take(qcv_divpoly_degrees("2268945/128", nullptr, 4)) ==
        "degrees 6 (irreducible)");
  CHECK(take(qcv_divpoly_degrees(nullptr, "0,0,0,-1,0", 2)) ==
        "degrees 1, 1, 1");
  expect_error(qcv_divpoly_degrees(nullptr, nullptr, 4), kInvalidArgument);
  expect_error(qcv_divpoly_degrees("1728", "0,0,0,1,0", 4), kInvalidArgument);
  expect_error(qcv_divpoly_degrees(nullptr, "0,0,0,1", 4), kParseError);
  CHECK(take(qcv_parity("406749952", nullptr, 12, 0)) ==
        "degrees 12, 36; all even");
  CHECK(take(qcv_parity("109503/64", nullptr, 4, 1)) ==
        "degrees 6, 6, 6; all even");
  CHECK(take(qcv_weber_value("1", "1", "1")) == "-1/26");
  CHECK(take(qcv_f3_value("1")) == "-10218313/17576");
  CHECK(take(qcv_f3_value("3")) == "cusp");
}

TEST_CASE("isogeny kernel ops") {
  CHECK(take(qcv_cyclic_kernel_count(3, 2, 2)) == "12");
  CHECK(take(qcv_compose_kernels(3, 3, "1,0,3", "0,1,3")) ==
        "single a=6 meet=0");
  CHECK(take(qcv_compose_kernels(3, 3, "9,0,1", "1,0,3")) ==
        "independent deg1=2 deg2=1 meet=1");
  expect_error(qcv_compose_kernels(3, 3, "1,0", "0,1,3"), kParseError);
  CHECK(take(qcv_induced_image("1,1,0,3", 4, 2)) == "3,0,2,1");
  CHECK(take(qcv_borel_dichotomy(5)) ==
        "kernels 6, fixed 5, mirrored 1, holds");
  CHECK(take(qcv_propagation("3", 21, 3)) ==
        "bound 27; input sporadic: no; image sporadic: no");
}

TEST_CASE("session options reach the ops and the claims") {
  qcv_session* s = qcv_session_new();
  REQUIRE(s != nullptr);

  CHECK(qcv_session_set_jobs(s, 0) == -1);
  CHECK(qcv_last_error_code() == kOutOfRange);
  CHECK(qcv_session_set_jobs(s, 3) == 0);

  CHECK(qcv_session_load_gonality_table(s, "garbage") == -1);
  CHECK(qcv_last_error_code() == kParseError);
  CHECK(qcv_session_load_gonality_table(s, "36,exact,1\n") == 0);
  CHECK(take(qcv_gonality_upper(s, 36)) == "1 (exact)");

  CHECK(qcv_session_load_catalog(s, "X2 2 0,1,1,0; 1,1,0,1\n") == 0);
  const auto g = take(qcv_genus(s, "X2"));
  CHECK(g.find("genus=0") != std::string::npos);
  expect_error(qcv_genus(s, "H7"), kNotFound);  // builtin no longer visible

  qcv_session_free(s);
}

TEST_CASE("claim reports through the C surface") {
  qcv_reports* r = qcv_run_claims(nullptr, "appendix");
  REQUIRE(r != nullptr);
  CHECK(qcv_reports_count(r) == 13);
  for (size_t i = 0; i < qcv_reports_count(r); ++i) {
    CHECK(std::string(qcv_reports_field(r, i, QCV_FIELD_STATUS)) == "PASS");
    CHECK(std::string(qcv_reports_field(r, i, QCV_FIELD_CLAIM_ID))
              .rfind("appendix.", 0) == 0);
    CHECK(qcv_reports_elapsed_ms(r, i) >= 0.0);
  }
  CHECK(qcv_reports_field(r, 999, QCV_FIELD_STATUS) == nullptr);
  CHECK(qcv_reports_field(r, 0, 42) == nullptr);
  CHECK(qcv_reports_elapsed_ms(r, 999) == -1.0);
  qcv_reports_free(r);

  r = qcv_run_claims(nullptr, "cartan.p13");
  REQUIRE(r != nullptr);
  REQUIRE(qcv_reports_count(r) == 1);
  CHECK(std::string(qcv_reports_field(r, 0, QCV_FIELD_COMPUTED)) == "336");
  CHECK(std::string(qcv_reports_field(r, 0, QCV_FIELD_EXPECTED)) == "336");
  CHECK(std::string(qcv_reports_field(r, 0, QCV_FIELD_PROVENANCE)) ==
        "published");
  qcv_reports_free(r);

  const auto md = take(qcv_claims_markdown());
  CHECK(md.find("| `cartan.p13` |") != std::string::npos);
}
