#ifndef TRIPARTITE_H
#define TRIPARTITE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TpPlatform {
  TP_PLATFORM_TRAPPED_DIAMOND = 0,
  TP_PLATFORM_CANTILEVER = 1,
  TP_PLATFORM_LEVITATED_YIG = 2,
} TpPlatform;

typedef enum TpSeries {
  TP_SERIES_TIME = 0,
  TP_SERIES_SPIN = 1,
  TP_SERIES_MAGNON = 2,
  TP_SERIES_PHONON = 3,
} TpSeries;

typedef enum TpStatus {
  TP_STATUS_OK = 0,
  TP_STATUS_NULL_POINTER = 1,
  TP_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Physical inputs admit no solution (e.g. no squeezing for Ω_p ≥ δ_m).
   */
  TP_STATUS_INVALID_PARAMETER = 3,
  /**
   * Integration or linear-algebra failure.
   */
  TP_STATUS_NUMERICAL = 4,
  TP_STATUS_BUFFER_TOO_SMALL = 5,
  TP_STATUS_PANIC = 6,
} TpStatus;

typedef struct TpDerived TpDerived;

/**
 * Physical inputs plus the constants table they are evaluated with.
 */
typedef struct TpParams TpParams;

typedef struct TpTrajectory TpTrajectory;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *tp_version(void);

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `len`). Returns the full message length in bytes.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t tp_last_error(char *buf, size_t len);

/**
 * Creates a parameter set from a [`TpPlatform`] preset with default constants.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum TpStatus tp_params_new(uint32_t platform, struct TpParams **out);

/**
 * Sets one numeric input by name (SI units), e.g. `"yig_radius"` or `"r"`.
 *
 * # Safety
 * `params` must come from [`tp_params_new`]; `name` must be a NUL-terminated string.
 */
enum TpStatus tp_params_set(struct TpParams *params, const char *name, double value);

/**
 * # Safety
 * `params` must be null or come from [`tp_params_new`], and not be used afterwards.
 */
void tp_params_free(struct TpParams *params);

/**
 * Derives couplings, drive and decay rates.
 *
 * # Safety
 * `params` must come from [`tp_params_new`]; `out` must be a valid pointer.
 */
enum TpStatus tp_derive(const struct TpParams *params, struct TpDerived **out);

/**
 * Reads one derived field by name (`"lambda"`, `"lambda_eff"`,
 * `"cooperativity"`, ...). Rates are angular frequencies in rad/s.
 *
 * # Safety
 * `derived` must come from [`tp_derive`]; `name` must be NUL-terminated; `out` valid.
 */
enum TpStatus tp_derived_get(const struct TpDerived *derived, const char *name, double *out);

/**
 * # Safety
 * `derived` must be null or come from [`tp_derive`], and not be used afterwards.
 */
void tp_derived_free(struct TpDerived *derived);

/**
 * Dissipative run from |e,0,0⟩ in units of λ with the reference decay rates
 * (γ_s = 0.05, Γ_m = 1.1, g₀ = 30, Δ_m = 15·e^r), sampled at `points + 1`
 * uniform times over `[0, t_end]`, with phonon-cutoff doubling.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum TpStatus tp_dissipative_run(double r,
                                 double gamma_k,
                                 double t_end,
                                 size_t points,
                                 struct TpTrajectory **out);

/**
 * Number of samples in a trajectory.
 *
 * # Safety
 * `traj` must come from [`tp_dissipative_run`]; `out` valid.
 */
enum TpStatus tp_trajectory_len(const struct TpTrajectory *traj, size_t *out);

/**
 * Phonon cutoff reached and whether the cutoff study converged.
 *
 * # Safety
 * `traj` must come from [`tp_dissipative_run`]; both outputs valid.
 */
enum TpStatus tp_trajectory_cutoff(const struct TpTrajectory *traj,
                                   size_t *n_phonon,
                                   bool *converged);

/**
 * Copies one [`TpSeries`] into `buf`, which must hold at least
 * [`tp_trajectory_len`] values.
 *
 * # Safety
 * `traj` must come from [`tp_dissipative_run`]; `buf` must point to `len` writable doubles.
 */
enum TpStatus tp_trajectory_copy(const struct TpTrajectory *traj,
                                 uint32_t series,
                                 double *buf,
                                 size_t len);

/**
 * # Safety
 * `traj` must be null or come from [`tp_dissipative_run`], and not be used afterwards.
 */
void tp_trajectory_free(struct TpTrajectory *traj);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRIPARTITE_H */
