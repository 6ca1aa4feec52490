/* C interface to the quantum group engine. All strings returned through `out` parameters are
   owned by the caller and released with qg_string_free. */
#ifndef QGROUPS_H
#define QGROUPS_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define QG_API __attribute__((visibility("default")))
#else
#define QG_API
#endif

typedef struct qg_context qg_context;

typedef enum {
    QG_OK = 0,
    QG_ERR_INVALID_ARGUMENT = 1, /* unknown algebra, non-reduced word, bad bound or suite */
    QG_ERR_NULL_POINTER = 2,
    QG_ERR_INTERNAL = 3,         /* an exception inside the engine */
    QG_ERR_CACHE = 4             /* cache I/O failure or recheck mismatch */
} qg_status;

/* Receives one line per completed weight block when set. */
typedef void (*qg_log_fn)(const char* line, void* user);

QG_API const char* qg_version(void);
/* Default |m| bound for an algebra label: A_n -> 3, B2 -> 2, G2 -> 1. */
QG_API int qg_default_bound(const char* algebra);

QG_API qg_status qg_context_new(const char* algebra, qg_context** out);
QG_API void qg_context_free(qg_context* ctx);
/* Message of the last failed call on this context (empty if none). Valid until the next call. */
QG_API const char* qg_last_error(const qg_context* ctx);

QG_API qg_status qg_set_jobs(qg_context* ctx, int jobs);
/* Directory for persisted root vectors; NULL or "" keeps them in memory only. */
QG_API qg_status qg_set_cache_dir(qg_context* ctx, const char* dir);
/* Recompute cached root vectors and compare; mismatches make later calls fail with QG_ERR_CACHE. */
QG_API qg_status qg_set_recheck_cache(qg_context* ctx, int on);
QG_API qg_status qg_set_log(qg_context* ctx, qg_log_fn fn, void* user);

/* Words are comma-separated 1-based node lists, e.g. "1,2,1". */
/* {"algebra", "source", "target", "bound", "blocks": [{"weight", "entries": [{"m", "n", "coeff"}]}]} */
QG_API qg_status qg_transition_json(qg_context* ctx, const char* from, const char* to, int bound, char** out);
/* Same layout for the intertwiner. With compare_gamma nonzero the document gains "diff" (entries where
   the intertwiner and the transition matrix disagree) and *diff_count receives its length. cutoff < 0
   means cutoff = bound. */
QG_API qg_status qg_intertwiner_json(qg_context* ctx, const char* from, const char* to, int bound, int cutoff,
                                     int compare_gamma, char** out, int* diff_count);
/* suites: comma-separated subset of relations,pairing,braid,rtt,spectra,main2 ("" runs none).
   {"algebra", "bound", "checks": [{"suite", "relation", "pass", "witness"?}]}; *failures counts failed checks. */
QG_API qg_status qg_verify_json(qg_context* ctx, const char* suites, int bound, char** out, int* failures);

/* Constant R-matrix on V(lambda) (x) V(mu); weights are comma-separated fundamental coordinates.
   R = q^shift * (listed matrix); entries use 1-based dense indices (s, t) of V(lambda) and V(mu). */
QG_API qg_status qg_rmatrix_json(qg_context* ctx, const char* lambda, const char* mu, char** out);

QG_API void qg_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
