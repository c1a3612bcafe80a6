#ifndef FMCALC_H
#define FMCALC_H

/* Generated by the fmcalc-capi build; edit src/lib.rs, not this file. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code of every fallible call.
typedef enum FmcStatus {
  // The call succeeded and all out-pointers are filled.
  FMC_STATUS_OK = 0,
  // A required pointer argument was null.
  FMC_STATUS_NULL_POINTER = 1,
  // A scalar argument was outside its domain (zero group order,
  // unknown automorphism model, bad factor index, ...).
  FMC_STATUS_INVALID_ARGUMENT = 2,
  // The operation itself refused (nonpositive moduli degree, genus
  // other than one, higher-rank dual, mismatched curves, ...).
  FMC_STATUS_MATH_DOMAIN = 3,
} FmcStatus;

// Automorphism model used by [`fmc_derived_equivalent`].
typedef enum FmcAut {
  // Multiplication by +1 and -1.
  FMC_AUT_PLUS_MINUS_ONE = 0,
  // Multiplication by +1 only.
  FMC_AUT_TRIVIAL = 1,
} FmcAut;

// Opaque handle to an integral kernel. Not repr(C) on purpose: the layout
// is private and callers only ever hold pointers.
typedef struct FmcKernel FmcKernel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Returns a static, NUL-terminated description of a status code. Never
// null; the string must not be freed.
const char *fmc_status_message(enum FmcStatus status);

// Order of the class `value` in the cyclic group of order `order`.
//
// # Safety
// `out` must be valid for writing one `u64`.
enum FmcStatus fmc_element_order(uint64_t order, uint64_t value, uint64_t *out);

// Class of the degree-`d` Picard construction applied to `value`.
//
// # Safety
// `out` must be valid for writing one `u64`.
enum FmcStatus fmc_pic_class(uint64_t order, uint64_t value, int64_t d, uint64_t *out);

// Decides derived equivalence of two classes in the cyclic group of order
// `order` under the chosen automorphism model. On equivalence, the witness
// decomposition is written through `out_multiplier` and `out_a` when those
// pointers are non-null.
//
// # Safety
// `out_equivalent` must be valid for writing one `bool`; `out_multiplier`
// and `out_a` must each be null or valid for writing one `u64`.
enum FmcStatus fmc_derived_equivalent(uint64_t order,
                                      uint64_t source,
                                      uint64_t target,
                                      enum FmcAut aut,
                                      bool *out_equivalent,
                                      uint64_t *out_multiplier,
                                      uint64_t *out_a);

// Section count of a degree-`degree` line bundle on a gerbey curve of the
// given genus (`brauer_trivial` controls the degree-zero case).
//
// # Safety
// `out` must be valid for writing one `u64`.
enum FmcStatus fmc_rr_h0(uint64_t genus, int64_t degree, bool brauer_trivial, uint64_t *out);

// Euler characteristic `degree - genus + 1` of a line bundle. Total.
int64_t fmc_euler_char(uint64_t genus, int64_t degree);

// Degree of the squared universal class on the pair (evaluates to
// `2d - 2`, computed symbolically).
//
// # Safety
// `out` must be valid for writing one `i64`.
enum FmcStatus fmc_pair_c1_squared(int64_t d, int64_t *out);

// Degree of the cubed total class of a degree-(d, f) kernel pair on the
// triple product (evaluates to `6(df - 1)`, computed symbolically).
//
// # Safety
// `out` must be valid for writing one `i64`.
enum FmcStatus fmc_triple_c1_cubed(int64_t d, int64_t f, int64_t *out);

// Degree of the restriction of the universal class to the fiber over a
// point of the chosen factor (0 or 1) of the pair.
//
// # Safety
// `out` must be valid for writing one `i64`.
enum FmcStatus fmc_fiber_degree(int64_t d, uint8_t factor, int64_t *out);

// Determinant of a rank/degree/weight moduli description: rank collapses
// to one, the degree survives, and the weight is scaled by the rank.
//
// # Safety
// `out_rank`, `out_degree`, and `out_weight` must each be valid for one
// write of the matching type.
enum FmcStatus fmc_determinant_data(uint64_t rank,
                                    int64_t degree,
                                    int64_t weight,
                                    uint64_t *out_rank,
                                    int64_t *out_degree,
                                    int64_t *out_weight);

// Creates the weight-1 universal kernel of moduli degree `d` (nonzero)
// from the base curve to its degree-`d` Picard stack.
//
// # Safety
// `out` must be valid for writing one pointer. The returned handle must be
// released with [`fmc_kernel_free`].
enum FmcStatus fmc_kernel_universal(int64_t d, struct FmcKernel **out);

// Creates the universal kernel of moduli degree `d` whose source is the
// target of `after` — the kernel that composes on the right of `after`.
//
// # Safety
// `after` must be a live handle; `out` as in [`fmc_kernel_universal`].
enum FmcStatus fmc_kernel_universal_from(const struct FmcKernel *after,
                                         int64_t d,
                                         struct FmcKernel **out);

// Creates a rank-one line-bundle kernel of arbitrary moduli degree and
// weight (degree zero builds the degenerate family).
//
// # Safety
// `out` as in [`fmc_kernel_universal`].
enum FmcStatus fmc_kernel_line_bundle(int64_t d, int64_t weight, struct FmcKernel **out);

// Releases a kernel handle. Null is a no-op.
//
// # Safety
// `k` must be null or a pointer previously returned by this library and
// not yet freed.
void fmc_kernel_free(struct FmcKernel *k);

// Fiberwise rank of the kernel.
//
// # Safety
// `k` must be a live handle; `out` must be valid for one `u64` write.
enum FmcStatus fmc_kernel_rank(const struct FmcKernel *k, uint64_t *out);

// Moduli degree of the kernel.
//
// # Safety
// `k` must be a live handle; `out` must be valid for one `i64` write.
enum FmcStatus fmc_kernel_degree(const struct FmcKernel *k, int64_t *out);

// Gerbe weight of the kernel.
//
// # Safety
// `k` must be a live handle; `out` must be valid for one `i64` write.
enum FmcStatus fmc_kernel_weight(const struct FmcKernel *k, int64_t *out);

// Homological shift of the kernel.
//
// # Safety
// `k` must be a live handle; `out` must be valid for one `i64` write.
enum FmcStatus fmc_kernel_shift(const struct FmcKernel *k, int64_t *out);

// Whether the kernel satisfies the fiberwise Hom-vanishing criterion.
//
// # Safety
// `k` must be a live handle; `out` must be valid for one `bool` write.
enum FmcStatus fmc_kernel_strongly_simple(const struct FmcKernel *k, bool *out);

// Whether the kernel presents a derived equivalence.
//
// # Safety
// `k` must be a live handle; `out` must be valid for one `bool` write.
enum FmcStatus fmc_kernel_is_equivalence(const struct FmcKernel *k, bool *out);

// Whether the kernel descends to a valid equivalence of plain twisted
// sheaves (weight one and an equivalence).
//
// # Safety
// `k` must be a live handle; `out` must be valid for one `bool` write.
enum FmcStatus fmc_kernel_shadow_valid(const struct FmcKernel *k, bool *out);

// Rank and degree of the pushforward of the kernel to its target.
//
// # Safety
// `k` must be a live handle; `out_rank` and `out_degree` must be valid for
// one write each.
enum FmcStatus fmc_kernel_pushforward(const struct FmcKernel *k,
                                      uint64_t *out_rank,
                                      int64_t *out_degree);

// Dual kernel (rank one only): negated degree and weight.
//
// # Safety
// `k` must be a live handle; `out` as in [`fmc_kernel_universal`].
enum FmcStatus fmc_kernel_dual(const struct FmcKernel *k, struct FmcKernel **out);

// Adjoint kernel: the dual shifted by the curve dimension. Left and right
// adjoints coincide here.
//
// # Safety
// `k` must be a live handle; `out` as in [`fmc_kernel_universal`].
enum FmcStatus fmc_kernel_adjoint(const struct FmcKernel *k, struct FmcKernel **out);

// Convolution of two kernels (the target of `first` must be the source of
// `second`). On success `out` receives the composite kernel; `out_chi`,
// when non-null, receives the Euler-characteristic cross-check.
//
// # Safety
// `first` and `second` must be live handles; `out` as in
// [`fmc_kernel_universal`]; `out_chi` must be null or valid for one `i64`
// write.
enum FmcStatus fmc_kernel_convolve(const struct FmcKernel *first,
                                   const struct FmcKernel *second,
                                   struct FmcKernel **out,
                                   int64_t *out_chi);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FMCALC_H */
