#ifndef HOLODYN_H
#define HOLODYN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HD_API __declspec(dllexport)
#else
#define HD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hd_status {
  HD_OK = 0,
  HD_ERR_DOMAIN,
  HD_ERR_SINGULAR_POINT,
  HD_ERR_UNSUPPORTED_DIMENSION,
  HD_ERR_PARSE,
  HD_ERR_HOLOMORPHY,
  HD_ERR_UNKNOWN_IDENTIFIER,
  HD_ERR_EVALUATION,
  HD_ERR_SINGULAR_PAIR,
  HD_ERR_CONSISTENCY,
  HD_ERR_BLOW_UP,
  HD_ERR_NO_CONVERGENCE,
  HD_ERR_ROOT_SELECTION,
  HD_ERR_PRECONDITION,
  HD_ERR_UNKNOWN_SCENARIO,
  HD_ERR_INVALID_ARGUMENT,
  HD_ERR_NULL_ARGUMENT,
  HD_ERR_INTERNAL
} hd_status;

/* Verdict values double as the CLI exit codes. */
typedef enum hd_verdict { HD_PASS = 0, HD_FAIL = 1, HD_INCONCLUSIVE = 2 } hd_verdict;

typedef enum hd_cert_method {
  HD_CERT_GREEN = 0,
  HD_CERT_BALL,
  HD_CERT_SHIFT,
  HD_CERT_GROUP,
  HD_CERT_ALL, /* green, ball and shift; group is reported but does not affect the verdict */
  HD_CERT_QUADRATIC /* needs a field built from quadratic parameters */
} hd_cert_method;

typedef struct hd_complex {
  double re;
  double im;
} hd_complex;

typedef struct hd_options {
  uint64_t seed;
  uint64_t samples;
  double tolerance;
  int depth;         /* dyadic radii 1 - 2^-k, k = 1..depth */
  double radius_cap; /* sampling stays inside this radius */
  size_t device_count;
} hd_options;

typedef struct hd_field hd_field;
typedef struct hd_report hd_report;

HD_API const char* hd_version(void);
HD_API void hd_options_default(hd_options* opt);
HD_API const char* hd_status_name(hd_status s);
HD_API const char* hd_verdict_name(hd_verdict v);

/* Message of the last failed call on this thread ("" after success). */
HD_API const char* hd_last_error(void);
/* Character offset of the last parse error, or -1. */
HD_API long hd_last_error_position(void);

HD_API hd_status hd_field_parse(const char* text, int dim, hd_field** out);
HD_API hd_status hd_field_quadratic(int dim, const hd_complex* a, const hd_complex* A_row_major, const hd_complex* b,
                                    hd_field** out);
HD_API hd_status hd_field_from_scenario(const char* scenario, hd_field** out);
HD_API void hd_field_free(hd_field* f);
HD_API int hd_field_dim(const hd_field* f);
/* Canonical printed form; the pointer lives as long as the field. */
HD_API const char* hd_field_text(const hd_field* f);
HD_API hd_status hd_field_eval(const hd_field* f, const hd_complex* z, hd_complex* out);

/* Parses "e<k>", "0", a tuple of constant expressions such as "(0.3, 0.1 - 0.2i)",
   or a point named in the scenario (which may be NULL). */
HD_API hd_status hd_parse_point(const char* scenario, const char* text, int dim, hd_complex* out);

/* Reports hold one or more JSON records and, for some commands, CSV text. */
HD_API void hd_report_free(hd_report* r);
HD_API hd_verdict hd_report_verdict(const hd_report* r);
HD_API size_t hd_report_record_count(const hd_report* r);
HD_API const char* hd_report_record(const hd_report* r, size_t index);
HD_API const char* hd_report_csv(const hd_report* r);

HD_API hd_status hd_certify(const hd_field* f, hd_cert_method method, const hd_options* opt, hd_report** out);
HD_API hd_status hd_certify_quadratic(int dim, const hd_complex* a, const hd_complex* A_row_major, const hd_complex* b,
                                      const hd_options* opt, hd_report** out);
HD_API hd_status hd_certify_stationary(const hd_field* f, const hd_complex* p, const hd_options* opt, hd_report** out);
HD_API hd_status hd_certify_brfp_rate(const hd_field* f, const hd_complex* p, double beta, const hd_options* opt,
                                      hd_report** out);

/* Integrates from z0 to t_end; the CSV holds the trajectory. */
HD_API hd_status hd_flow(const hd_field* f, const hd_complex* z0, double t_end, const hd_options* opt, hd_report** out);
/* Semigroup, Kobayashi monotonicity and, when p is non-NULL, the energy inequality at (p, beta). */
HD_API hd_status hd_flow_invariants(const hd_field* f, const hd_complex* p, double beta, const hd_options* opt,
                                    hd_report** out);

HD_API hd_status hd_boundary_scan(const hd_field* f, const hd_complex* p, const hd_options* opt, hd_report** out);
/* Radial slope of the field projected on the geodesic from 0 to p; the CSV holds the samples. */
HD_API hd_status hd_boundary_slope(const hd_field* f, const hd_complex* p, const hd_options* opt, hd_report** out);
HD_API hd_status hd_boundary_dilatation(const hd_field* f, const hd_complex* p, const double* times, size_t count,
                                        const hd_options* opt, hd_report** out);
HD_API hd_status hd_boundary_rate(const hd_field* f, const hd_complex* p, const hd_options* opt, hd_report** out);

/* w_out (dim entries) and out may each be NULL. */
HD_API hd_status hd_resolvent(const hd_field* f, const hd_complex* z, double t, const hd_options* opt, hd_complex* w_out,
                              hd_report** out);

HD_API hd_status hd_scenario_list(hd_report** out);
HD_API hd_status hd_scenario_run(const char* name, const hd_options* opt, hd_report** out);
HD_API hd_status hd_scenario_run_file(const char* path, const hd_options* opt, hd_report** out);

#ifdef __cplusplus
}
#endif

#endif
