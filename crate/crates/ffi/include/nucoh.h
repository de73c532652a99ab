#ifndef NUCOH_H
#define NUCOH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define NUCOH_MODE_PLANE_WAVE 0

#define NUCOH_MODE_WAVE_PACKET 1

#define NUCOH_KIND_NEUTRINO 0

#define NUCOH_KIND_ANTINEUTRINO 1

#define NUCOH_FLAVOR_E 0

#define NUCOH_FLAVOR_MU 1

#define NUCOH_FLAVOR_TAU 2

/*
 Pair codes used by the length and root queries, in output order.
 */
#define NUCOH_PAIR_21 0

#define NUCOH_PAIR_31 1

#define NUCOH_PAIR_32 2

typedef enum NucohStatus {
  NUCOH_STATUS_OK = 0,
  NUCOH_STATUS_NULL_POINTER = 1,
  NUCOH_STATUS_INVALID_ARGUMENT = 2,
  NUCOH_STATUS_DOMAIN = 3,
  NUCOH_STATUS_DEGENERATE = 4,
  NUCOH_STATUS_NOT_FOUND = 5,
  NUCOH_STATUS_NUMERICAL = 6,
  NUCOH_STATUS_BUFFER_TOO_SMALL = 7,
  NUCOH_STATUS_PANIC = 8,
} NucohStatus;

/*
 Opaque handle.
 */
typedef struct NucohModel NucohModel;

/*
 Model parameters; angles in radians, splittings in eV², `sigma_x` in m.
 */
typedef struct NucohParams {
  double theta12;
  double theta13;
  double theta23;
  double delta_cp;
  double dm21_sq;
  double dm31_sq;
  double sigma_x;
  double rho;
  int32_t mode;
  int32_t kind;
} NucohParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Model with the default parameters, wave-packet mode, neutrinos.
 Never returns null; release with `nucoh_model_free`.
 */
struct NucohModel *nucoh_model_new_default(void);

/*
 Default values for `NucohParams`.
 */
struct NucohParams nucoh_params_default(void);

/*
 # Safety
 `params` must be null or point to a valid `NucohParams`; `out` must be
 null or writable.
 */
enum NucohStatus nucoh_model_new(const struct NucohParams *params, struct NucohModel **out);

/*
 # Safety
 `model` must be null or a pointer returned by a `nucoh_model_new*`
 function that has not been freed.
 */
void nucoh_model_free(struct NucohModel *model);

/*
 # Safety
 `model` must be a live handle or null.
 */
enum NucohStatus nucoh_model_set_kind(struct NucohModel *model, int32_t kind);

/*
 # Safety
 `model` must be a live handle or null.
 */
enum NucohStatus nucoh_model_set_mode(struct NucohModel *model, int32_t mode);

/*
 Row (P_αe, P_αμ, P_ατ) in matter at baseline `l_m`, energy `e_ev`,
 potential `v_ev` (>= 0).

 # Safety
 `model` must be a live handle; `out` must hold three doubles.
 */
enum NucohStatus nucoh_probability_row(const struct NucohModel *model,
                                       int32_t flavor,
                                       double l_m,
                                       double e_ev,
                                       double v_ev,
                                       double *out);

/*
 Vacuum row at baseline `l_m` and energy `e_ev`.

 # Safety
 As for `nucoh_probability_row`.
 */
enum NucohStatus nucoh_vacuum_probability_row(const struct NucohModel *model,
                                              int32_t flavor,
                                              double l_m,
                                              double e_ev,
                                              double *out);

/*
 Fully decohered row.

 # Safety
 As for `nucoh_probability_row`.
 */
enum NucohStatus nucoh_averaged_probability_row(const struct NucohModel *model,
                                                int32_t flavor,
                                                double e_ev,
                                                double v_ev,
                                                double *out);

/*
 l1-norm of coherence from a probability row of three doubles.

 # Safety
 `row` must hold three doubles; `out` must be writable.
 */
enum NucohStatus nucoh_l1_from_probabilities(const double *row, double *out);

/*
 Oscillation and coherence lengths in m, ordered 21, 31, 32. An infinite
 coherence length is written as +INFINITY. The coherence lengths follow
 the packet width whatever the mode.

 # Safety
 `model` must be a live handle; both outputs must hold three doubles.
 */
enum NucohStatus nucoh_matter_lengths(const struct NucohModel *model,
                                      double e_ev,
                                      double v_ev,
                                      double *out_osc,
                                      double *out_coh);

/*
 Writes (V_res1, V_res2) in eV to `out`.

 # Safety
 `model` must be a live handle; `out` must hold two doubles.
 */
enum NucohStatus nucoh_resonance_potentials(const struct NucohModel *model,
                                            double e_ev,
                                            double *out);

/*
 Potentials where a velocity difference vanishes, ascending. Writes up to
 `capacity` entries to `out_v` and `out_pair`, and the total found to
 `count`. Returns `BUFFER_TOO_SMALL` when `capacity < *count`.

 # Safety
 `model` must be a live handle; the arrays must hold `capacity` entries
 and `count` must be writable.
 */
enum NucohStatus nucoh_infinite_coherence_potentials(const struct NucohModel *model,
                                                     double e_ev,
                                                     double *out_v,
                                                     int32_t *out_pair,
                                                     size_t capacity,
                                                     size_t *count);

/*
 Message of the last failed call on this thread; empty if none. Valid
 until the next failing call on the same thread.
 */
const char *nucoh_last_error_message(void);

const char *nucoh_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NUCOH_H */
