/*
 * husts: Hyers-Ulam stability constants for x^Delta = lambda x on the
 * two-step time scale {0, a, a+b, 2a+b, 2(a+b), ...}.
 *
 * Plain C interface over the C++ library. Every call returns a husts_status;
 * on failure husts_last_error() holds a one-line message for the calling
 * thread. Handles are opaque and owned by the caller.
 */
#ifndef HUSTS_H
#define HUSTS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(HUSTS_BUILDING_LIBRARY)
#    define HUSTS_API __declspec(dllexport)
#  else
#    define HUSTS_API __declspec(dllimport)
#  endif
#else
#  define HUSTS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum husts_status {
  HUSTS_OK = 0,
  HUSTS_ERR_INVALID_STEPS = 1,
  HUSTS_ERR_NON_REGRESSIVE = 2,
  HUSTS_ERR_NOT_CONVERGENT = 3,
  HUSTS_ERR_OUT_OF_RANGE = 4,
  HUSTS_ERR_OUT_OF_REGIME = 5,
  HUSTS_ERR_NOT_APPLICABLE = 6,
  HUSTS_ERR_TOO_LARGE = 7,
  HUSTS_ERR_PATTERN_LENGTH = 8,
  HUSTS_ERR_INVALID_ARGUMENT = 9,
  HUSTS_ERR_NULL_POINTER = 10,
  HUSTS_ERR_BUFFER_TOO_SMALL = 11,
  HUSTS_ERR_INTERNAL = 12
} husts_status;

typedef enum husts_phase { HUSTS_EVEN = 0, HUSTS_ODD = 1 } husts_phase;

typedef enum husts_case {
  HUSTS_CASE_A = 0, HUSTS_CASE_B, HUSTS_CASE_C, HUSTS_CASE_D,
  HUSTS_CASE_E, HUSTS_CASE_F, HUSTS_CASE_G, HUSTS_CASE_H,
  HUSTS_CASE_I, HUSTS_CASE_J, HUSTS_CASE_K
} husts_case;

typedef enum husts_signature {
  HUSTS_SIG_POS_REGRESSIVE = 0,
  HUSTS_SIG_IN_UNIT_NEG,
  HUSTS_SIG_BEYOND_UNIT_NEG,
  HUSTS_SIG_IN_UNIT_POS,
  HUSTS_SIG_BEYOND_UNIT_POS,
  HUSTS_SIG_ON_UNIT,
  HUSTS_SIG_ZERO
} husts_signature;

typedef enum husts_reason {
  HUSTS_HAS_CONSTANT = 0,
  HUSTS_NO_HUS = 1,
  HUSTS_NOT_REGRESSIVE = 2
} husts_reason;

typedef enum husts_winner {
  HUSTS_WINNER_THEOREM = 0,
  HUSTS_WINNER_ANDRAS = 1,
  HUSTS_WINNER_TIE = 2,
  HUSTS_WINNER_NONE = 3
} husts_winner;

typedef enum husts_envelope { HUSTS_E1 = 0, HUSTS_E2 = 1, HUSTS_E3 = 2 } husts_envelope;

typedef enum husts_pattern_kind {
  HUSTS_PATTERN_ALTERNATING = 0,
  HUSTS_PATTERN_GREEDY = 1,
  HUSTS_PATTERN_EXPLICIT = 2,
  HUSTS_PATTERN_RANDOM = 3
} husts_pattern_kind;

typedef enum husts_search_mode {
  HUSTS_SEARCH_BRUTE_FORCE = 0,
  HUSTS_SEARCH_GREEDY = 1,
  HUSTS_SEARCH_ALTERNATING_BEST = 2,
  HUSTS_SEARCH_AUTO = 3 /* brute force up to the cap, greedy beyond */
} husts_search_mode;

typedef struct husts_steps husts_steps;
typedef struct husts_trajectory husts_trajectory;

typedef struct husts_thresholds {
  int has_roots; /* lambda_plus / lambda_minus valid iff nonzero */
  double lambda_plus;
  double lambda_minus;
  double product;
  double neg_inv_alpha;
  double neg_inv_beta;
  double neg_sum;
  double discriminant;
} husts_thresholds;

typedef struct husts_verdict {
  husts_case tag;
  husts_thresholds thresholds;
  int has_constant;
  double constant;
  int minimal;
  husts_reason reason;
} husts_verdict;

typedef struct husts_andras {
  double even_branch;
  double odd_branch;
  double sup_even;
  double sup_odd;
  double tail_even;
  double tail_odd;
} husts_andras;

typedef struct husts_compare_row {
  double lambda;
  husts_case tag;
  int has_theorem;
  double theorem_constant;
  int has_andras;
  double andras_even;
  double andras_odd;
  husts_winner winner;
  char note[64];
} husts_compare_row;

typedef struct husts_perturbation {
  double epsilon;
  husts_pattern_kind kind;
  husts_envelope envelope; /* alternating */
  int sign;                /* alternating: +1 or -1 */
  const double* values;    /* explicit: n_points - 1 values */
  size_t n_values;
  uint64_t seed;           /* random */
} husts_perturbation;

typedef struct husts_fit {
  double c_star;
  double deviation;
  double ratio;
} husts_fit;

typedef struct husts_verify_report {
  husts_case tag;
  int has_claimed;
  double claimed_constant;
  husts_search_mode mode;
  size_t n_points;
  double empirical_lower_bound;
  int has_extended;
  double extended_lower_bound; /* case J: ratio at 2 * n_points */
  double margin;
  int pass;
} husts_verify_report;

HUSTS_API const char* husts_version(void);
HUSTS_API const char* husts_last_error(void);
HUSTS_API const char* husts_status_name(husts_status status);
HUSTS_API const char* husts_case_name(husts_case tag);
HUSTS_API const char* husts_signature_name(husts_signature sig);
HUSTS_API const char* husts_reason_name(husts_reason reason);
HUSTS_API const char* husts_winner_name(husts_winner winner);
HUSTS_API const char* husts_search_mode_name(husts_search_mode mode);

/* strict != 0 rejects alpha == beta. */
HUSTS_API husts_status husts_steps_create(double alpha, double beta, int strict,
                                          husts_steps** out);
HUSTS_API void husts_steps_destroy(husts_steps* steps);
/* Absolute band for snapping lambda onto exceptional values (default 1e-9).
 * Used by classify, product_signature, theorem_constant, compare, verify. */
HUSTS_API husts_status husts_steps_set_tolerance(husts_steps* steps,
                                                 double tolerance);
HUSTS_API double husts_steps_alpha(const husts_steps* steps);
HUSTS_API double husts_steps_beta(const husts_steps* steps);

/* timescale */
HUSTS_API husts_status husts_time(const husts_steps* steps, uint64_t k,
                                  husts_phase phase, double* out);
HUSTS_API husts_status husts_mu(const husts_steps* steps, uint64_t k,
                                husts_phase phase, double* out);
HUSTS_API husts_status husts_exp(const husts_steps* steps, double lambda,
                                 uint64_t k, husts_phase phase, double* out);
HUSTS_API husts_status husts_delta_sum_abs_exp(const husts_steps* steps,
                                               double lambda, uint64_t k,
                                               husts_phase phase, double* out);
HUSTS_API husts_status husts_delta_sum_limit(const husts_steps* steps,
                                             double lambda, husts_phase phase,
                                             double* out);

/* classifier */
HUSTS_API husts_status husts_thresholds_compute(const husts_steps* steps,
                                                double lambda,
                                                husts_thresholds* out);
HUSTS_API husts_status husts_classify(const husts_steps* steps, double lambda,
                                      husts_case* tag,
                                      husts_thresholds* thresholds);
HUSTS_API husts_status husts_product_signature(const husts_steps* steps,
                                               double lambda,
                                               husts_signature* out);

/* constants */
HUSTS_API husts_status husts_theorem_constant(const husts_steps* steps,
                                              double lambda, husts_verdict* out);
HUSTS_API husts_status husts_andras_constant(const husts_steps* steps,
                                             double lambda, husts_andras* out);
HUSTS_API husts_status husts_hz_reduction_check(double h, double lambda,
                                                double* reduced,
                                                double* onitsuka);
HUSTS_API husts_status husts_compare(const husts_steps* steps,
                                     const double* lambdas, size_t count,
                                     husts_compare_row* rows);

/* verifier */
HUSTS_API husts_status husts_integrate(const husts_steps* steps, double lambda,
                                       double phi0,
                                       const husts_perturbation* perturbation,
                                       size_t n_points, husts_trajectory** out);
HUSTS_API void husts_trajectory_destroy(husts_trajectory* traj);
HUSTS_API size_t husts_trajectory_size(const husts_trajectory* traj);
/* Copies n_points values of phi / n_points - 1 values of q. */
HUSTS_API husts_status husts_trajectory_phi(const husts_trajectory* traj,
                                            double* out, size_t capacity);
HUSTS_API husts_status husts_trajectory_q(const husts_trajectory* traj,
                                          double* out, size_t capacity);
HUSTS_API husts_status husts_best_fit(const husts_trajectory* traj,
                                      husts_fit* out);
/* pattern receives n_points - 1 signs; pass NULL / 0 to skip. */
HUSTS_API husts_status husts_adversarial_lower_bound(
    const husts_steps* steps, double lambda, size_t n_points,
    husts_search_mode mode, double* ratio, int8_t* pattern, size_t capacity);
HUSTS_API husts_status husts_verify_case(const husts_steps* steps,
                                         double lambda, size_t n_points,
                                         husts_search_mode mode,
                                         husts_verify_report* out);

#ifdef __cplusplus
}
#endif

#endif /* HUSTS_H */
