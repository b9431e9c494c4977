/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef PRODGAP_H
#define PRODGAP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. Values 1–6 mirror the library error kinds.
typedef enum PgStatus {
  PG_STATUS_OK = 0,
  PG_STATUS_INVALID_ARGUMENT = 1,
  PG_STATUS_CONSTRUCTION_UNAVAILABLE = 2,
  PG_STATUS_TOO_LARGE = 3,
  PG_STATUS_INSUFFICIENT_SIZE = 4,
  PG_STATUS_PARSE = 5,
  PG_STATUS_INTERNAL = 6,
  PG_STATUS_NULL_POINTER = 7,
  // A value does not fit the requested fixed-width type.
  PG_STATUS_OVERFLOW = 8,
  PG_STATUS_INDEX_OUT_OF_RANGE = 9,
  PG_STATUS_PANIC = 10,
} PgStatus;

// Opaque finite set of non-negative integers.
typedef struct PgSet PgSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next `pg_*` call on the same thread.
const char *pg_last_error(void);

// Library version as a static NUL-terminated string.
const char *pg_version(void);

// Builds a set from `len` values (unsorted, duplicates allowed).
//
// # Safety
// `values` must point to `len` readable `uint64_t` (it may be null when `len == 0`).
enum PgStatus pg_set_from_u64(const uint64_t *values, size_t len, struct PgSet **out);

// Parses newline-delimited decimals (`#` starts a comment).
//
// # Safety
// `text` must be a NUL-terminated string.
enum PgStatus pg_set_parse(const char *text, struct PgSet **out);

// # Safety
// `set` must be null or a handle from this library that was not freed yet.
void pg_set_free(struct PgSet *set);

// # Safety
// `set` must be a live handle.
enum PgStatus pg_set_len(const struct PgSet *set, size_t *out);

// Element `index` in increasing order.
//
// # Safety
// `set` must be a live handle.
enum PgStatus pg_set_get_u64(const struct PgSet *set, size_t index, uint64_t *out);

// Newline-delimited decimal rendering of the set.
//
// # Safety
// `set` must be a live handle.
enum PgStatus pg_set_to_string(const struct PgSet *set, char **out);

// # Safety
// `s` must be null or a string returned by this library that was not freed yet.
void pg_string_free(char *s);

// `{2pi + (i² mod p) : 0 ≤ i < p}` for an odd prime `p`.
//
// # Safety
// `out` must be writable.
enum PgStatus pg_sidon_erdos_turan(uint64_t p, struct PgSet **out);

// Writes whether all pairwise sums `a + b` (`a ≤ b`) are distinct. When not,
// and `counterexample` is non-null, it receives a JSON array `[a, b, c, d]`
// with `a + b = c + d`.
//
// # Safety
// `set` must be a live handle; `counterexample` may be null.
enum PgStatus pg_verify_sidon(const struct PgSet *set, bool *is_sidon, char **counterexample);

// Smallest difference between distinct elements, as a decimal string.
//
// # Safety
// `set` must be a live handle.
enum PgStatus pg_min_pairwise_gap(const struct PgSet *set, char **out);

// `{ab : a, b ∈ set}`.
//
// # Safety
// `set` must be a live handle.
enum PgStatus pg_product_set(const struct PgSet *set, struct PgSet **out);

// Smallest `b_{i+t} − b_i` over the sorted product set, as a decimal string.
//
// # Safety
// `set` must be a live handle.
enum PgStatus pg_min_t_gap(const struct PgSet *set, size_t t, char **out);

// `|A/A|`: distinct reduced fractions `a/a'` with `a < a'` in the set.
//
// # Safety
// `set` must be a live handle.
enum PgStatus pg_quotient_set_size(const struct PgSet *set, size_t *out);

// Quotient-size report for `set ⊆ [1, n]` as JSON.
//
// # Safety
// `set` must be a live handle.
enum PgStatus pg_theorem5_check_json(const struct PgSet *set, uint64_t n, char **out);

// Construction report as JSON. `alpha` is `"num/den"`; `t == 0` selects
// the single-gap family, `t ≥ 2` the cluster family.
//
// # Safety
// `alpha` must be a NUL-terminated string.
enum PgStatus pg_construct_json(const char *alpha, uint64_t t, uint64_t n_max, char **out);

// Certificates for every disjoint dense window of `set` inside `[1, max]`,
// as a JSON array. Each certificate is re-verified before it is returned.
//
// # Safety
// `set` must be a live handle and `alpha` a NUL-terminated string.
enum PgStatus pg_certify_json(const struct PgSet *set, const char *alpha, uint64_t t, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PRODGAP_H */
