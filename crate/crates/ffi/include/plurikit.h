#ifndef PLURIKIT_H
#define PLURIKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PkBasisKind {
  PK_BASIS_MONOMIAL = 0,
  PK_BASIS_DESCENDING = 1,
} PkBasisKind;

typedef enum PkOpKind {
  PK_OP_D = 0,
  PK_OP_E = 1,
  PK_OP_EPRIME = 2,
  PK_OP_F = 3,
} PkOpKind;

// Result codes. `PK_OK` is zero; the rest match the library error codes.
typedef enum PkStatus {
  PK_OK = 0,
  PK_POLE_AT_KAPPA = 1,
  PK_POLE_AT_S = 2,
  PK_SINGULAR_GRAM = 3,
  PK_SINGULAR_SYSTEM = 4,
  PK_AMBIENT_MISMATCH = 5,
  PK_ZERO_POCHHAMMER = 6,
  PK_NON_HOMOGENEOUS = 7,
  PK_NON_T_VARIABLE = 8,
  PK_INVALID_INPUT = 9,
  PK_PARSE_ERROR = 10,
  PK_NULL_POINTER = 11,
  PK_INVALID_UTF8 = 12,
  PK_PANIC = 13,
} PkStatus;

// Operator context: `n` and κ (symbolic or specialized).
typedef struct PkContext PkContext;

// Polynomial handle.
typedef struct PkPoly PkPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failing call on this thread; empty after a success.
// Valid until the next call on the same thread.
const char *pk_last_error_message(void);

// Stable name of a status code, e.g. `"PoleAtKappa"`.
const char *pk_status_name(enum PkStatus status);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void pk_string_free(char *s);

// Parses the polynomial JSON schema.
//
// # Safety
// `json` must be a valid NUL-terminated string; `out` must be writable.
enum PkStatus pk_poly_from_json(const char *json, struct PkPoly **out);

// # Safety
// `p` must be a live handle; `out` must be writable.
enum PkStatus pk_poly_to_json(const struct PkPoly *p, char **out);

// Human-readable rendering, κ written as `k`.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum PkStatus pk_poly_to_string(const struct PkPoly *p, char **out);

// Nonzero iff both handles hold the same polynomial (canonical comparison).
//
// # Safety
// Both arguments must be live handles.
int32_t pk_poly_equal(const struct PkPoly *a, const struct PkPoly *b);

// # Safety
// `p` must be null or a handle from this library, not yet freed.
void pk_poly_free(struct PkPoly *p);

// Context for `n × n` matrices. `kappa` is a rational such as `"5/2"`, or
// null for symbolic κ.
//
// # Safety
// `kappa` must be null or a valid string; `out` must be writable.
enum PkStatus pk_context_new(uintptr_t n, const char *kappa, struct PkContext **out);

// # Safety
// `ctx` must be null or a handle from this library, not yet freed.
void pk_context_free(struct PkContext *ctx);

// Applies `D_ij`, `E_ij`, `E'_ij` or `F_ij` (its adjoint when `adjoint` is nonzero).
//
// # Safety
// `ctx` and `p` must be live handles; `out` must be writable.
enum PkStatus pk_apply_op(const struct PkContext *ctx,
                          enum PkOpKind kind,
                          uintptr_t i,
                          uintptr_t j,
                          int32_t adjoint,
                          const struct PkPoly *p,
                          struct PkPoly **out);

// `(p, q)_κ` as coefficient JSON.
//
// # Safety
// All handles must be live; `out` must be writable.
enum PkStatus pk_inner_product(const struct PkContext *ctx,
                               const struct PkPoly *p,
                               const struct PkPoly *q,
                               char **out);

// `φ_κ(p)`, or `φ_κ⁻¹(p)` when `inverse` is nonzero (seed A).
//
// # Safety
// `ctx` and `p` must be live handles; `out` must be writable.
enum PkStatus pk_phi(const struct PkContext *ctx,
                     const struct PkPoly *p,
                     int32_t inverse,
                     struct PkPoly **out);

// Basis of the bidegree `(row_sums, col_sums)` for the trivial partition, as
// `[{"nu": [...], "poly": {...}}, ...]`. Both arrays have `ctx`'s `n` entries.
//
// # Safety
// `ctx` must be live; `row_sums` and `col_sums` must point to `n` readable
// `u32`s; `out` must be writable.
enum PkStatus pk_basis_json(const struct PkContext *ctx,
                            enum PkBasisKind kind,
                            const uint32_t *row_sums,
                            const uint32_t *col_sums,
                            char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PLURIKIT_H */
