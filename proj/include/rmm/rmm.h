#ifndef RMM_H
#define RMM_H

/* C interface to the reduced-minimal-model library.
 *
 * Big integers cross the boundary as decimal strings. Every char* handed to
 * the caller is heap-allocated and must be released with rmm_string_free.
 * On failure a function returns a nonzero rmm_status and leaves a message for
 * the calling thread in rmm_last_error(). */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(RMM_BUILDING)
#    define RMM_API __declspec(dllexport)
#  else
#    define RMM_API __declspec(dllimport)
#  endif
#else
#  define RMM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rmm_status {
    RMM_OK = 0,
    RMM_E_INVALID_ARGUMENT = 1,
    RMM_E_SINGULAR_CURVE,
    RMM_E_NON_INTEGRAL_RESULT,
    RMM_E_ZERO_SCALE,
    RMM_E_POINT_NOT_ON_CURVE,
    RMM_E_NOT_A_SIGNATURE,
    RMM_E_NOT_ADMISSIBLE,
    RMM_E_FACTORIZATION_TOO_HARD,
    RMM_E_NOT_MINIMAL,
    RMM_E_UNSUPPORTED_PRIME,
    RMM_E_UNSUPPORTED_TORSION,
    RMM_E_GCD_VIOLATION,
    RMM_E_SIGN_VIOLATION,
    RMM_E_PARITY_VIOLATION,
    RMM_E_SQUAREFREE_VIOLATION,
    RMM_E_CONSTRAINT_VIOLATION,
    RMM_E_DEGENERATE_CURVE,
    RMM_E_EMPTY_RESIDUE_CLASS,
    RMM_E_MALFORMED_LINE,
    RMM_E_NOT_A_MAZUR_GROUP,
    RMM_E_IO,
    RMM_E_INTERNAL = 100
} rmm_status;

typedef enum rmm_reduction {
    RMM_REDUCTION_GOOD = 0,
    RMM_REDUCTION_MULTIPLICATIVE = 1,
    RMM_REDUCTION_ADDITIVE = 2
} rmm_reduction;

typedef enum rmm_format {
    RMM_FORMAT_JSON = 0,
    RMM_FORMAT_TSV = 1
} rmm_format;

typedef struct rmm_curve rmm_curve;
typedef struct rmm_stats rmm_stats;

RMM_API const char* rmm_version(void);
RMM_API const char* rmm_status_name(rmm_status status);
/* Message of the last failure on this thread; "" if none. */
RMM_API const char* rmm_last_error(void);
RMM_API void rmm_string_free(char* s);

/* a holds a1, a2, a3, a4, a6 as decimal strings. */
RMM_API rmm_status rmm_curve_new(const char* const a[5], rmm_curve** out);
/* Model E_T(a, b[, d]); d may be NULL for families without it. */
RMM_API rmm_status rmm_curve_from_family(const char* torsion, const char* a, const char* b,
                                         const char* d, rmm_curve** out);
RMM_API void rmm_curve_free(rmm_curve* curve);

/* Any of the out pointers may be NULL. */
RMM_API rmm_status rmm_curve_signature(const rmm_curve* curve, char** c4, char** c6, char** delta);
RMM_API rmm_status rmm_curve_minimal_signature(const rmm_curve* curve, char** c4, char** c6,
                                               char** delta, char** u);
RMM_API rmm_status rmm_curve_rmm_index(const rmm_curve* curve, int* index);
/* "[a1,a2,a3,a4,a6]" */
RMM_API rmm_status rmm_curve_reduced_model(const rmm_curve* curve, char** model);
/* p must be 2 or 3. */
RMM_API rmm_status rmm_curve_reduction_type(const rmm_curve* curve, unsigned p, rmm_reduction* type);
RMM_API rmm_status rmm_curve_two_torsion_rank(const rmm_curve* curve, int* rank);
RMM_API rmm_status rmm_curve_report_json(const rmm_curve* curve, char** json);

RMM_API rmm_status rmm_family_report_json(const char* torsion, const char* a, const char* b,
                                          const char* d, char** json);
/* *violations receives the number of out-of-class curves plus cross-check failures. */
RMM_API rmm_status rmm_sweep_json(const char* torsion, long bound, unsigned threads,
                                  size_t* violations, char** json);
RMM_API rmm_status rmm_residues_json(const char* torsion, unsigned modulus, unsigned samples,
                                     size_t* inconsistent, char** json);
RMM_API rmm_status rmm_verify_c2c2_json(int* ok, char** json);

/* Reads an allcurves file; bad lines are skipped and listed in the report. */
RMM_API rmm_status rmm_stats_process_file(const char* path, unsigned threads, rmm_stats** out);
RMM_API void rmm_stats_free(rmm_stats* stats);
RMM_API size_t rmm_stats_record_count(const rmm_stats* stats);
/* One JSON object for the i-th nonblank input line, classified or skipped. */
RMM_API rmm_status rmm_stats_record_json(const rmm_stats* stats, size_t i, char** json);
RMM_API rmm_status rmm_stats_report(const rmm_stats* stats, rmm_format format, char** out);
RMM_API size_t rmm_stats_forbidden_cells(const rmm_stats* stats);

#ifdef __cplusplus
}
#endif

#endif /* RMM_H */
