#ifndef PADIC_TRUNK_H
#define PADIC_TRUNK_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum PtStatus {
  PT_STATUS_OK = 0,
  PT_STATUS_NULL_POINTER = 1,
  PT_STATUS_INVALID_UTF8 = 2,
  PT_STATUS_PARSE_ERROR = 3,
  PT_STATUS_ZERO_POLYNOMIAL = 4,
  PT_STATUS_NOT_PRIME = 5,
  PT_STATUS_PRIME_TOO_LARGE = 6,
  PT_STATUS_INSUFFICIENT_DEPTH = 7,
  PT_STATUS_ENUMERATION_TOO_LARGE = 8,
  PT_STATUS_INVALID_ARGUMENT = 9,
  PT_STATUS_NOT_QUADRATIC = 10,
  PT_STATUS_INDEX_OUT_OF_RANGE = 11,
  PT_STATUS_INTERNAL = 12,
} PtStatus;

typedef enum PtBranchStatus {
  PT_BRANCH_STATUS_EXPANDED = 0,
  PT_BRANCH_STATUS_LEAF = 1,
  PT_BRANCH_STATUS_HENSEL_CERTIFIED = 2,
  PT_BRANCH_STATUS_CYCLE_CERTIFIED = 3,
  PT_BRANCH_STATUS_UNDETERMINED = 4,
} PtBranchStatus;

typedef enum PtQuadraticKind {
  PT_QUADRATIC_KIND_K0 = 0,
  PT_QUADRATIC_KIND_K1 = 1,
  PT_QUADRATIC_KIND_K2 = 2,
  PT_QUADRATIC_KIND_K_INF = 3,
} PtQuadraticKind;

typedef struct PtPolynomial PtPolynomial;

typedef struct PtSolutionList PtSolutionList;

typedef struct PtTrunk PtTrunk;

/*
 Plain data of one trunk vertex. The residue `r` is fetched separately
 with `pt_trunk_node_residue`.
 */
typedef struct PtNodeInfo {
  uint32_t k;
  /*
   Thickness, 0 for the root.
   */
  uint32_t t;
  uint32_t phi;
  uint32_t residual_degree;
  enum PtBranchStatus status;
  /*
   Cycle period, 0 unless the status is cycle-certified.
   */
  uint32_t period;
  /*
   Index of the parent vertex, -1 for the root.
   */
  int64_t parent;
} PtNodeInfo;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread; empty if none. Valid
 until the next failing call on the same thread.
 */
const char *pt_last_error_message(void);

/*
 Library version, a static string.
 */
const char *pt_version(void);

/*
 Releases a string returned by this library.

 # Safety
 `s` must come from this library and not be freed twice.
 */
void pt_string_free(char *s);

/*
 Parses an expression such as `(X^2+3)*(X^2+3X+9)`.

 # Safety
 `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PtStatus pt_polynomial_parse(const char *text, struct PtPolynomial **out);

/*
 Builds a polynomial from `len` ascending coefficients.

 # Safety
 `coeffs` must point to `len` readable values (or be null with `len == 0`).
 */
enum PtStatus pt_polynomial_from_coeffs(const int64_t *coeffs,
                                        size_t len,
                                        struct PtPolynomial **out);

/*
 Canonical text of the polynomial; free with `pt_string_free`.

 # Safety
 `poly` must be a live handle.
 */
char *pt_polynomial_to_string(const struct PtPolynomial *poly);

/*
 Degree, or -1 for the zero polynomial or a null handle.

 # Safety
 `poly` must be a live handle or null.
 */
int64_t pt_polynomial_degree(const struct PtPolynomial *poly);

/*
 # Safety
 `poly` must come from this library and not be freed twice.
 */
void pt_polynomial_free(struct PtPolynomial *poly);

/*
 Builds the trunk of `poly` at the prime `p` down to `max_level`.

 # Safety
 `poly` must be a live handle and `out` a valid pointer.
 */
enum PtStatus pt_trunk_build(const struct PtPolynomial *poly,
                             uint64_t p,
                             uint32_t max_level,
                             struct PtTrunk **out);

/*
 Number of vertices including the root; 0 for a null handle.

 # Safety
 `trunk` must be a live handle or null.
 */
size_t pt_trunk_node_count(const struct PtTrunk *trunk);

/*
 Vertex `index` (0 is the root, then breadth-first order).

 # Safety
 `trunk` must be a live handle and `out` a valid pointer.
 */
enum PtStatus pt_trunk_node(const struct PtTrunk *trunk, size_t index, struct PtNodeInfo *out);

/*
 Residue `r` of vertex `index` as a decimal string; free with
 `pt_string_free`. Null on a bad handle or index.

 # Safety
 `trunk` must be a live handle or null.
 */
char *pt_trunk_node_residue(const struct PtTrunk *trunk, size_t index);

/*
 # Safety
 `trunk` must come from this library and not be freed twice.
 */
void pt_trunk_free(struct PtTrunk *trunk);

/*
 `N_e` as a decimal string in `*out`; free with `pt_string_free`.

 # Safety
 `trunk` must be a live handle and `out` a valid pointer.
 */
enum PtStatus pt_count_solutions(const struct PtTrunk *trunk, uint32_t e, char **out);

/*
 Whether the decimal integer `x` solves `P(x) = 0 mod p^e`.

 # Safety
 `trunk` must be a live handle, `x` a NUL-terminated string and `out` valid.
 */
enum PtStatus pt_is_solution(const struct PtTrunk *trunk, const char *x, uint32_t e, bool *out);

/*
 Sorted solutions modulo `p^e`.

 # Safety
 `trunk` must be a live handle and `out` a valid pointer.
 */
enum PtStatus pt_enumerate_solutions(const struct PtTrunk *trunk,
                                     uint32_t e,
                                     struct PtSolutionList **out);

/*
 Sorted solutions modulo the decimal integer `n >= 2`.

 # Safety
 `poly` must be a live handle, `n` a NUL-terminated string and `out` valid.
 */
enum PtStatus pt_crt_solve(const struct PtPolynomial *poly,
                           const char *n,
                           struct PtSolutionList **out);

/*
 # Safety
 `list` must be a live handle or null.
 */
size_t pt_solution_list_len(const struct PtSolutionList *list);

/*
 Element `index` as a decimal string owned by the list; null when out of
 range.

 # Safety
 `list` must be a live handle or null. The result lives as long as the list.
 */
const char *pt_solution_list_get(const struct PtSolutionList *list, size_t index);

/*
 # Safety
 `list` must come from this library and not be freed twice.
 */
void pt_solution_list_free(struct PtSolutionList *list);

/*
 Trunk shape of a quadratic over an odd prime. `*base_length` is -1 for
 an infinite base.

 # Safety
 `poly` must be a live handle; `kind` and `base_length` valid pointers.
 */
enum PtStatus pt_classify_quadratic(const struct PtPolynomial *poly,
                                    uint64_t p,
                                    enum PtQuadraticKind *kind,
                                    int64_t *base_length);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PADIC_TRUNK_H */
