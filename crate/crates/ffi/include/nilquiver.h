#ifndef NILQUIVER_H
#define NILQUIVER_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum NqStatus {
  NQ_STATUS_OK = 0,
  NQ_STATUS_NULL_POINTER = 1,
  NQ_STATUS_INVALID_UTF8 = 2,
  NQ_STATUS_PARSE = 3,
  NQ_STATUS_INVALID_INPUT = 4,
  NQ_STATUS_PANIC = 5,
} NqStatus;

// The algebra N_s(Q) of a quiver.
typedef struct NqAlgebra NqAlgebra;

// A finite-dimensional module over a bound quiver algebra.
typedef struct NqModule NqModule;

// A quiver.
typedef struct NqQuiver NqQuiver;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *nq_version(void);

// Message of the last failed call on this thread, or NULL. Valid until the next call.
const char *nq_last_error(void);

// # Safety
// `s` must be NULL or a string returned by this library.
void nq_string_free(char *s);

// Parses `{"vertices": [...], "arrows": [{"name", "from", "to"}]}`.
//
// # Safety
// `json` must be a NUL-terminated string and `out` writable.
enum NqStatus nq_quiver_from_json(const char *json, struct NqQuiver **out);

// # Safety
// `q` must be a live handle and `out` writable.
enum NqStatus nq_quiver_n_vertices(const struct NqQuiver *q, size_t *out);

// # Safety
// `q` must be NULL or a handle not yet freed.
void nq_quiver_free(struct NqQuiver *q);

// Builds N_s(Q) for `s >= 1`.
//
// # Safety
// `q` must be a live handle and `out` writable.
enum NqStatus nq_nsq_new(const struct NqQuiver *q, size_t s, struct NqAlgebra **out);

// # Safety
// `a` must be a live handle and `out` writable.
enum NqStatus nq_algebra_dim(const struct NqAlgebra *a, size_t *out);

// # Safety
// `a` must be NULL or a handle not yet freed.
void nq_algebra_free(struct NqAlgebra *a);

// Parses a module file with an inline quiver; `p` applies when the file names no field.
//
// # Safety
// `json` must be a NUL-terminated string and `out` writable.
enum NqStatus nq_module_from_json(const char *json, uint64_t p, struct NqModule **out);

// The standard module Δ(i_t) for a vertex index `vertex` and layer `1 <= layer <= s`.
//
// # Safety
// `a` must be a live handle and `out` writable.
enum NqStatus nq_module_standard(const struct NqAlgebra *a,
                                 size_t vertex,
                                 size_t layer,
                                 uint64_t p,
                                 struct NqModule **out);

// # Safety
// `m` must be a live handle and `out` writable.
enum NqStatus nq_module_total_dim(const struct NqModule *m, size_t *out);

// dim Ext^k(m, n) over a common algebra and field.
//
// # Safety
// `m`, `n` must be live handles and `out` writable.
enum NqStatus nq_module_ext_dim(const struct NqModule *m,
                                const struct NqModule *n,
                                size_t k,
                                size_t *out);

// Whether all vertical arrows act injectively.
//
// # Safety
// `m` must be a live handle and `out` writable.
enum NqStatus nq_module_is_delta_filtered(const struct NqModule *m, bool *out);

// Serializes to the module file format; free the result with `nq_string_free`.
//
// # Safety
// `m` must be a live handle and `out` writable.
enum NqStatus nq_module_to_json(const struct NqModule *m, char **out);

// # Safety
// `m` must be NULL or a handle not yet freed.
void nq_module_free(struct NqModule *m);

// Samples `samples` flagged representations of `dd` (layers split by ';', entries by ',').
// On a rigid sample sets `found` and stores the N_s(Q)-module in `witness`; otherwise
// `witness` is set to NULL.
//
// # Safety
// `a` must be a live handle, `dd` a NUL-terminated string, outputs writable.
enum NqStatus nq_richardson_search(const struct NqAlgebra *a,
                                   const char *dd,
                                   uint64_t p,
                                   uint64_t samples,
                                   uint64_t seed,
                                   bool *found,
                                   struct NqModule **witness);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NILQUIVER_H */
