#ifndef CYCLIC_IC_H
#define CYCLIC_IC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CicStatus {
  CIC_STATUS_OK = 0,
  CIC_STATUS_NULL_POINTER = 1,
  CIC_STATUS_INVALID_ARGUMENT = 2,
  CIC_STATUS_WRONG_REGIME = 3,
  CIC_STATUS_INFEASIBLE = 4,
  CIC_STATUS_UNBOUNDED = 5,
  CIC_STATUS_PANIC = 6,
} CicStatus;

typedef enum CicRegime {
  CIC_REGIME_WEAK = 0,
  CIC_REGIME_STRONG = 1,
  CIC_REGIME_VERY_STRONG = 2,
  CIC_REGIME_MIXED = 3,
} CicRegime;

typedef enum CicSplit {
  CIC_SPLIT_ETW = 0,
  CIC_SPLIT_PRIVATE_ONLY = 1,
} CicSplit;

/**
 * Opaque channel handle.
 */
typedef struct CicChannel CicChannel;

/**
 * Opaque inequality-system handle.
 */
typedef struct CicSystem CicSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *cic_last_error_message(void);

/**
 * Builds a channel from `k` linear SNR and INR values.
 *
 * # Safety
 * `snr` and `inr` must point to `k` doubles; `out` must be writable.
 */
enum CicStatus cic_channel_new(size_t k,
                               const double *snr,
                               const double *inr,
                               struct CicChannel **out);

/**
 * # Safety
 * `ch` must come from [`cic_channel_new`] and not be used afterwards.
 */
void cic_channel_free(struct CicChannel *ch);

/**
 * # Safety
 * `ch` must be a live channel handle; `out` must be writable.
 */
enum CicStatus cic_channel_regime(const struct CicChannel *ch, enum CicRegime *out);

/**
 * Achievable region of the channel under `split`.
 *
 * # Safety
 * `ch` must be a live channel handle; `out` must be writable.
 */
enum CicStatus cic_achievable_region(const struct CicChannel *ch,
                                     enum CicSplit split,
                                     struct CicSystem **out);

/**
 * Weak-regime outer bound.
 *
 * # Safety
 * `ch` must be a live channel handle; `out` must be writable.
 */
enum CicStatus cic_outer_region(const struct CicChannel *ch, struct CicSystem **out);

/**
 * Three-user time-sharing region; fails unless the channel has three users.
 *
 * # Safety
 * `ch` must be a live channel handle; `out` must be writable.
 */
enum CicStatus cic_ts3_region(const struct CicChannel *ch,
                              enum CicSplit split,
                              struct CicSystem **out);

/**
 * Strong-regime capacity region; `CIC_STATUS_WRONG_REGIME` otherwise.
 *
 * # Safety
 * `ch` must be a live channel handle; `out` must be writable.
 */
enum CicStatus cic_strong_region(const struct CicChannel *ch, struct CicSystem **out);

/**
 * Achievable region rebuilt by Fourier-Motzkin elimination.
 *
 * # Safety
 * `ch` must be a live channel handle; `out` must be writable.
 */
enum CicStatus cic_project_to_rates(const struct CicChannel *ch,
                                    enum CicSplit split,
                                    struct CicSystem **out);

/**
 * # Safety
 * `sys` must come from this library and not be used afterwards.
 */
void cic_system_free(struct CicSystem *sys);

/**
 * # Safety
 * `sys` must be a live system handle; `out` must be writable.
 */
enum CicStatus cic_system_num_vars(const struct CicSystem *sys, size_t *out);

/**
 * # Safety
 * `sys` must be a live system handle; `out` must be writable.
 */
enum CicStatus cic_system_num_rows(const struct CicSystem *sys, size_t *out);

/**
 * Copies row `index` into `coeffs` (room for `num_vars` ints) and `rhs`.
 *
 * # Safety
 * `sys` must be a live system handle; `coeffs` must hold `num_vars`
 * ints and `rhs` must be writable.
 */
enum CicStatus cic_system_row(const struct CicSystem *sys,
                              size_t index,
                              int32_t *coeffs,
                              double *rhs);

/**
 * Renders the system as JSON; release the string with [`cic_string_free`].
 *
 * # Safety
 * `sys` must be a live system handle; `out` must be writable.
 */
enum CicStatus cic_system_to_json(const struct CicSystem *sys, char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void cic_string_free(char *s);

/**
 * Smallest per-user shift `b` that moves `outer` inside `inner`.
 *
 * # Safety
 * Both handles must be live; `out` must be writable.
 */
enum CicStatus cic_certified_gap(const struct CicSystem *inner,
                                 const struct CicSystem *outer,
                                 double *out);

/**
 * # Safety
 * Both handles must be live; `out` must be writable.
 */
enum CicStatus cic_regions_equal(const struct CicSystem *a, const struct CicSystem *b, bool *out);

/**
 * Largest common rate `t` with `(t, .., t)` in the region.
 *
 * # Safety
 * `sys` must be a live system handle; `out` must be writable.
 */
enum CicStatus cic_symmetric_max(const struct CicSystem *sys, double *out);

/**
 * Closed-form symmetric GDoF at `alpha = log INR / log SNR`.
 */
double cic_dsym_formula(double alpha);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CYCLIC_IC_H */
