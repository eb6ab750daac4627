#ifndef KNOTFILT_KNOTFILT_H
#define KNOTFILT_KNOTFILT_H

/*
 * C interface to the knotfilt library.
 *
 * Every function returns a kf_status. Report functions write a JSON document
 * to *out_json (release it with kf_string_free); the document is produced
 * for KF_OK and KF_ERR_THEOREM, and for KF_ERR_INPUT when the input parsed
 * but failed validation. On any other failure *out_json is NULL and
 * kf_last_error() describes the problem. Handles are immutable once built
 * and may be shared between threads; kf_last_error is per thread.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(KNOTFILT_BUILDING)
#define KF_API __declspec(dllexport)
#else
#define KF_API __declspec(dllimport)
#endif
#else
#define KF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kf_status {
  KF_OK = 0,
  KF_ERR_THEOREM = 1,  /* computed data violates a theorem-level invariant */
  KF_ERR_INPUT = 2,    /* unreadable, malformed or invalid input */
  KF_ERR_RESOURCE = 3, /* size cap exceeded */
  KF_ERR_INTERNAL = 4
} kf_status;

typedef struct kf_grid kf_grid;
typedef struct kf_complex kf_complex;

typedef struct kf_options {
  int max_grid_size; /* default 9 */
  int threads;       /* 0 = hardware concurrency; never changes results */
} kf_options;

KF_API const char* kf_version(void);
KF_API const char* kf_last_error(void);
KF_API void kf_string_free(char* s);
KF_API void kf_options_init(kf_options* options);

/* Grid diagrams (text format: `n`, `O: ...`, `X: ...`). */
KF_API kf_status kf_grid_parse(const char* text, kf_grid** out);
KF_API kf_status kf_grid_load(const char* path, kf_grid** out);
KF_API void kf_grid_free(kf_grid* grid);
KF_API kf_status kf_grid_size(const kf_grid* grid, int* n);

/* Abstract filtered complexes or knot complex data (JSON). */
KF_API kf_status kf_complex_parse(const char* text, kf_complex** out);
KF_API kf_status kf_complex_load(const char* path, kf_complex** out);
KF_API void kf_complex_free(kf_complex* complex);
/* 1 for knot data, 0 for an abstract filtered complex. */
KF_API kf_status kf_complex_is_knot(const kf_complex* complex, int* is_knot);

KF_API kf_status kf_validate_grid(const kf_grid* grid, char** out_json);
KF_API kf_status kf_validate_complex(const kf_complex* complex, char** out_json);

KF_API kf_status kf_hfk_grid(const kf_grid* grid, const kf_options* options, char** out_json);
KF_API kf_status kf_hfk_complex(const kf_complex* complex, char** out_json);

/* class_name: only "top" is defined (NULL means "top"). */
KF_API kf_status kf_tau_grid(const kf_grid* grid, const char* class_name, const kf_options* options,
                             char** out_json);
KF_API kf_status kf_tau_complex(const kf_complex* complex, const char* class_name, char** out_json);

KF_API kf_status kf_mirror_check(const kf_grid* grid, const kf_options* options, char** out_json);
KF_API kf_status kf_connect_sum(const kf_complex* a, const kf_complex* b, char** out_json);
/* has_m = 0 sweeps the whole Alexander window. */
KF_API kf_status kf_surgery_check(const kf_complex* complex, int has_m, int m, const char* class_name,
                                  char** out_json);

/* genus may be NULL. */
KF_API kf_status kf_bennequin(int tb, int rot, int tau, const int* genus, char** out_json);
KF_API kf_status kf_cable_bound(long long p, long long q, long long genus, char** out_json);
KF_API kf_status kf_cable_min_q(long long n, long long p, long long genus, char** out_json);
/* count pairs (tb[k], rot[k]) in distinct contact structures on one manifold. */
KF_API kf_status kf_fibered(const int* tb, const int* rot, size_t count, int genus, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* KNOTFILT_KNOTFILT_H */
