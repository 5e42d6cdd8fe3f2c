#ifndef QCV_H
#define QCV_H

/* C interface to the verification library. Every function that can fail
 * returns NULL (for pointer results) and records a thread-local error code
 * and message; 0 means no error. Strings returned as char* are heap
 * allocated and must be released with qcv_string_free. Rational arguments
 * are decimal strings "num" or "num/den"; big values are fine.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

const char* qcv_version(void);

/* thread-local status of the most recent call */
int qcv_last_error_code(void); /* 0 = ok */
const char* qcv_last_error_message(void);

void qcv_string_free(char* s);

/* ---- session: options shared by claim runs and catalog lookups ---- */

typedef struct qcv_session qcv_session;

qcv_session* qcv_session_new(void);
void qcv_session_free(qcv_session* s);
/* worker threads for qcv_run_claims; returns 0 on success */
int qcv_session_set_jobs(qcv_session* s, unsigned jobs);
/* replace the builtin gonality table, one "level,exact|upper,value" per
 * line; '#' starts a comment; returns 0 on success */
int qcv_session_load_gonality_table(qcv_session* s, const char* text);
/* replace the builtin named-subgroup catalog, one
 * "LABEL N a,b,c,d; a,b,c,d; ..." per line; returns 0 on success */
int qcv_session_load_catalog(qcv_session* s, const char* text);

/* ---- claim replay ---- */

typedef struct qcv_reports qcv_reports;

/* run every claim whose id starts with only_prefix (NULL or "" = all) */
qcv_reports* qcv_run_claims(qcv_session* s, const char* only_prefix);
size_t qcv_reports_count(const qcv_reports* r);

enum qcv_report_field {
  QCV_FIELD_CLAIM_ID = 0,
  QCV_FIELD_STATUS = 1,     /* "PASS" | "FAIL" | "INCONCLUSIVE" */
  QCV_FIELD_COMPUTED = 2,
  QCV_FIELD_EXPECTED = 3,
  QCV_FIELD_PROVENANCE = 4  /* "published" | "derived" | "definition" */
};

/* borrowed pointer, valid while r lives; NULL on bad index/field */
const char* qcv_reports_field(const qcv_reports* r, size_t i, int field);
double qcv_reports_elapsed_ms(const qcv_reports* r, size_t i);
void qcv_reports_free(qcv_reports* r);

/* number of claims in the registry */
size_t qcv_claims_total(void);
/* the registry as a markdown table */
char* qcv_claims_markdown(void);

/* ---- matrix groups mod N ---- */

/* order of the normalizer of the nonsplit Cartan subgroup mod p */
char* qcv_cartan_order(unsigned p);
/* "d=.. e2=.. e3=.. cusps=.. genus=.." for a catalog label ("H7") */
char* qcv_genus(qcv_session* s, const char* label);
/* subdirect products of two named small groups (c2, c3, c4, c6, s3),
 * counted by the correspondence and by brute force; Internal on mismatch */
char* qcv_subdirect_count(const char* a, const char* b);

/* ---- modular-curve bookkeeping ---- */

char* qcv_gamma1_index(unsigned n);
char* qcv_x1_map_degree(const char* a, const char* b);
/* pushed-up gonality upper bound for X_1(n), using the session table */
char* qcv_gonality_upper(qcv_session* s, unsigned n);
/* "sporadic" | "not sporadic" for a degree-deg point on X_1(n) */
char* qcv_sporadic_sufficient(const char* deg, unsigned n);
/* 7D/800 as an exact rational */
char* qcv_abramovich_bound(const char* psl2_index);

/* ---- torsion divisibility rules ---- */

/* divisor of the degree of any order-p^k point in the family; special_j
 * selects the exceptional branch (p = 7 only) */
char* qcv_degree_divisor(unsigned p, unsigned k, int special_j);
/* "D vs B, strict|ties|fails", with the special branch listed when present */
char* qcv_gonality_gap(unsigned p, unsigned k);
/* index valuation bound; five_flag: 0 none, 1 one 5-isogeny, 2 cyclic 25,
 * 3 two independent */
char* qcv_index_valuation_bound(unsigned p, int five_flag);
char* qcv_two_power_bound(unsigned p);
/* "delta D, degree X, sporadic|not sporadic" */
char* qcv_cm_check(unsigned p, unsigned n, const char* class_number);
char* qcv_cm_min_level(unsigned p, const char* class_number);
/* "degree X, sporadic|not sporadic" on X_1(p^2) */
char* qcv_cm_split_check(unsigned p, const char* class_number);
char* qcv_serre_threshold(void);

/* ---- elliptic curves over Q ----
 * Exactly one of j / ainv must be non-NULL. j is a rational string; ainv is
 * "a1,a2,a3,a4,a6" with rational entries. */

/* "A ..., B ..." for the reduced short model y^2 = x^3 + Ax + B */
char* qcv_short_form(const char* j, const char* ainv);
/* irreducible factor degrees of the exact-order-n kernel polynomial,
 * "degrees d1, d2, ..." with "(irreducible)" appended for one factor */
char* qcv_divpoly_degrees(const char* j, const char* ainv, unsigned n);
/* x-field parity for exact order n; class_level walks the 2-isogeny class */
char* qcv_parity(const char* j, const char* ainv, unsigned n, int class_level);
char* qcv_weber_value(const char* c2, const char* c3, const char* x);
/* level-3 hauptmodul map; "cusp" at the rational pole */
char* qcv_f3_value(const char* t);

/* ---- isogeny-kernel combinatorics ---- */

/* number of cyclic subgroups of order p^j in (Z/p^k)^2 */
char* qcv_cyclic_kernel_count(unsigned long p, unsigned k, unsigned j);
/* compose kernels f, g given as "gx,gy,t" in (Z/p^k)^2 */
char* qcv_compose_kernels(unsigned long p, unsigned k, const char* f,
                          const char* g);
/* image of g = "a,b,c,d" (upper triangular, a = 1 mod N) on the quotient
 * torsion; output "a,b,c,d" */
char* qcv_induced_image(const char* g, unsigned n, unsigned m);
/* "kernels K, fixed F, mirrored M, holds|fails" */
char* qcv_borel_dichotomy(unsigned long p);
/* "bound B; input sporadic: yes|no; image sporadic: yes|no" */
char* qcv_propagation(const char* deg, unsigned n, unsigned long p);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QCV_H */
