/* gmfp — fixed-point solver and axiom verifier for generalized metric
 * structures. C interface to the shared library: opaque handles, status
 * codes, and accessor functions. Every function that can fail returns a
 * gmfp_status; GMFP_OK is zero. A failing call leaves a human-readable
 * detail in gmfp_last_error_message() (thread-local).
 */
#ifndef GMFP_H
#define GMFP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gmfp_status {
  GMFP_OK = 0,
  GMFP_ERR_INVALID_ARGUMENT,
  GMFP_ERR_EMPTY_SET_DIAMETER,
  GMFP_ERR_NOT_A_METRIC,
  GMFP_ERR_NOT_A_GMETRIC,
  GMFP_ERR_CARRIER_TOO_LARGE,
  GMFP_ERR_PREFIX_TOO_SHORT,
  GMFP_ERR_EMPTY_GRID,
  GMFP_ERR_NONPOSITIVE_ARGUMENT,
  GMFP_ERR_NONPOSITIVE_ALPHA,
  GMFP_ERR_PARAMETER_OUT_OF_RANGE,
  GMFP_ERR_COERCIVITY_EVIDENCE_FAILED,
  GMFP_ERR_MISSING_ENTRY,
  GMFP_ERR_INDEX_OUT_OF_RANGE,
  GMFP_ERR_NEGATIVE_VALUE,
  GMFP_ERR_DUPLICATE_KEY,
  GMFP_ERR_PARSE,
  GMFP_ERR_UNSUPPORTED_KIND,
  GMFP_ERR_INTERNAL
} gmfp_status;

/* Stable identifier string for a status ("not-a-gmetric", ...). */
const char* gmfp_status_name(gmfp_status st);

/* Detail text of the most recent failure on this thread. */
const char* gmfp_last_error_message(void);

const char* gmfp_version(void);

/* Frees strings returned through char** out-parameters. */
void gmfp_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Spaces                                                              */

typedef struct gmfp_space gmfp_space;

enum { GMFP_KIND_FINITE_METRIC = 0, GMFP_KIND_FINITE_GSPACE = 1, GMFP_KIND_ORACLE_1D = 2 };

gmfp_status gmfp_space_parse(const char* json_text, gmfp_space** out);
gmfp_status gmfp_space_serialize(const gmfp_space* sp, char** out_text);
/* Rejection-free random G-metric space (values in construction bands that
 * force the axioms); optionally with a random selfmap. Deterministic per
 * seed. */
gmfp_status gmfp_space_gen_gspace(int n, uint64_t seed, int with_map, gmfp_space** out);
void gmfp_space_free(gmfp_space* sp);

int gmfp_space_kind(const gmfp_space* sp);
int gmfp_space_size(const gmfp_space* sp); /* carrier points; 0 for oracle */
int gmfp_space_has_map(const gmfp_space* sp);

/* ------------------------------------------------------------------ */
/* Axiom checks and violation reports                                  */

typedef struct gmfp_violations gmfp_violations;

/* axiom: "metric", "almost-metric" (finite-metric kind);
 *        "gmetric", "dmetric", "consequences", "chain", "lipschitz",
 *        "strong-triangle" (finite-gspace kind).
 * lipschitz_cap bounds the O(n^6) sweep; pass 0 for the default. */
gmfp_status gmfp_check(const gmfp_space* sp, const char* axiom, double tol, int lipschitz_cap,
                       gmfp_violations** out);

size_t gmfp_violations_axiom_count(const gmfp_violations* v);
const char* gmfp_violations_axiom_id(const gmfp_violations* v, size_t axiom);
size_t gmfp_violations_witness_count(const gmfp_violations* v, size_t axiom);
/* Copies up to cap point labels into pts; *npts receives the tuple size. */
gmfp_status gmfp_violations_witness(const gmfp_violations* v, size_t axiom, size_t index, int* pts,
                                    size_t cap, size_t* npts, double* lhs, double* rhs);
void gmfp_violations_free(gmfp_violations* v);

/* ------------------------------------------------------------------ */
/* Derived metrics of a G-space                                        */

typedef struct gmfp_derived gmfp_derived;

gmfp_status gmfp_derive(const gmfp_space* sp, double tol, gmfp_derived** out);
/* which: 'b', 'c', 'd' or 'e'. */
gmfp_status gmfp_derived_value(const gmfp_derived* dm, char which, int x, int y, double* out);
/* Contract check of one derived table: almost-metric for b and c, metric for
 * d and e. */
gmfp_status gmfp_derived_check(const gmfp_derived* dm, char which, double tol,
                               gmfp_violations** out);
void gmfp_derived_free(gmfp_derived* dm);

/* symmetric != 0 when b == c pointwise within tol; otherwise the witness
 * pair and its two values are filled in. */
gmfp_status gmfp_is_symmetric(const gmfp_space* sp, double tol, int* symmetric, int* wx, int* wy,
                              double* b_value, double* c_value);

/* ------------------------------------------------------------------ */
/* Comparison functions (gauges)                                       */

typedef struct gmfp_phi gmfp_phi;

/* spec: "linear:0.5" or "pwl:t0,v0;t1,v1;...". */
gmfp_status gmfp_phi_parse(const char* spec, gmfp_phi** out);
gmfp_status gmfp_phi_eval(const gmfp_phi* phi, double t, double* out);
void gmfp_phi_free(gmfp_phi* phi);

enum { GMFP_VERDICT_CLOSED_FORM = 0, GMFP_VERDICT_ON_GRID = 1, GMFP_VERDICT_REFUTED = 2 };

/* property: "increasing", "regressive", "super-regressive". grid may be NULL
 * to use the builtin default; witness receives the refuting argument. */
gmfp_status gmfp_phi_check(const gmfp_phi* phi, const char* property, const double* grid,
                           size_t grid_len, int* verdict, double* witness);

/* Least n with phi^n(t) <= tol; *n_out is -1 when max_iter was exhausted. */
gmfp_status gmfp_matkowski_iterate(const gmfp_phi* phi, double t, double tol, int max_iter,
                                   int* n_out);

/* Fails with GMFP_ERR_COERCIVITY_EVIDENCE_FAILED when no bound exists below
 * the cap. */
gmfp_status gmfp_find_beta(const gmfp_phi* phi, double alpha, double search_cap, double* beta);

/* ------------------------------------------------------------------ */
/* Contraction certification                                           */

typedef struct gmfp_cert gmfp_cert;

/* cls: "ciric-alpha", "anticipative-alpha", "anticipative-phi", "pq-gamma",
 * "gm-gamma". phi is consulted for the phi class only. Finite carriers are
 * swept exhaustively; oracle carriers over all ordered pairs of an evenly
 * spaced grid with `samples` points (0 picks the default of 21). */
gmfp_status gmfp_certify(const gmfp_space* sp, const char* cls, double param, const gmfp_phi* phi,
                         double tol, int samples, gmfp_cert** out);

int gmfp_cert_certified(const gmfp_cert* c);
double gmfp_cert_max_ratio(const gmfp_cert* c);
size_t gmfp_cert_tuples_checked(const gmfp_cert* c);
const char* gmfp_cert_sample_note(const gmfp_cert* c);
/* Worst refuting tuple; points are labels for finite carriers, reals for
 * oracle ones. *npts is 0 for certified sweeps. */
gmfp_status gmfp_cert_witness(const gmfp_cert* c, double* pts, size_t cap, size_t* npts,
                              double* lhs, double* rhs);
void gmfp_cert_free(gmfp_cert* c);

/* The reduction inequalities (M against P, Q and P,Q against 2B on the
 * derived metric) over all ordered pairs of a finite G-space. */
gmfp_status gmfp_check_reduction(const gmfp_space* sp, double tol, gmfp_violations** out);

/* ------------------------------------------------------------------ */
/* Picard iteration and diagnostics                                    */

typedef struct gmfp_trace gmfp_trace;

enum { GMFP_STOP_FIXED_POINT = 0, GMFP_STOP_TOLERANCE = 1, GMFP_STOP_MAX_ITER = 2 };

/* x0 is a point label for finite kinds (validated as an integer) and a real
 * for oracle ones. Finite G-spaces iterate under the derived metric d. */
gmfp_status gmfp_solve(const gmfp_space* sp, double x0, double fp_tol, long max_iter,
                       gmfp_trace** out);

size_t gmfp_trace_len(const gmfp_trace* t);
double gmfp_trace_iterate(const gmfp_trace* t, size_t i);
double gmfp_trace_rho(const gmfp_trace* t, size_t i); /* i < len-1 */
int gmfp_trace_stop_reason(const gmfp_trace* t);
int gmfp_trace_has_candidate(const gmfp_trace* t);
double gmfp_trace_candidate(const gmfp_trace* t);
/* Returns nonzero when a cycle was hit; fills start index and length. */
int gmfp_trace_cycle(const gmfp_trace* t, long* start, long* length);
void gmfp_trace_free(gmfp_trace* t);

/* Orbit bound diagnostics: alpha = rho_0, beta from the gauge's coercivity,
 * and the check that every prefix diameter stays at or below beta.
 * prefix_diam may be NULL; otherwise up to cap diameters are copied. */
gmfp_status gmfp_beta_bound_check(const gmfp_space* sp, const gmfp_trace* t, const gmfp_phi* phi,
                                  double search_cap, double tol, double* alpha, double* beta,
                                  int* already_fixed, int* prefix_ok, double* prefix_diam,
                                  size_t cap, size_t* count);

typedef struct gmfp_envelope gmfp_envelope;

/* Truncated tail diameters against the iterated gauge phi^n(beta). */
gmfp_status gmfp_envelope_check(const gmfp_space* sp, const gmfp_trace* t, const gmfp_phi* phi,
                                double beta, double tol, gmfp_envelope** out);
size_t gmfp_envelope_rows(const gmfp_envelope* e);
gmfp_status gmfp_envelope_row(const gmfp_envelope* e, size_t n, double* tail_diam, double* bound,
                              int* pass);
int gmfp_envelope_all_pass(const gmfp_envelope* e);
void gmfp_envelope_free(gmfp_envelope* e);

/* Step-ratio check rho_{n+1} <= rate * rho_n, rate = gamma / (1 - gamma). */
gmfp_status gmfp_rate_check(const gmfp_trace* t, double gamma, double tol, double* rate,
                            int* all_pass, long* first_fail);

/* Exact fixed-point enumeration on finite carriers. */
gmfp_status gmfp_brute_fixpoints(const gmfp_space* sp, int* out, size_t cap, size_t* count);

/* Finite-prefix surrogates of G-convergence / G-Cauchy over the last
 * `window` entries of a label sequence. */
gmfp_status gmfp_g_converges_prefix(const gmfp_space* sp, const int* seq, size_t len, int x,
                                    double eps, size_t window, int* holds);
gmfp_status gmfp_g_cauchy_prefix(const gmfp_space* sp, const int* seq, size_t len, double eps,
                                 size_t window, int* holds);

/* Diameter of a point subset under a finite-metric table. */
gmfp_status gmfp_diam(const gmfp_space* sp, const int* subset, size_t len, double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GMFP_H */
