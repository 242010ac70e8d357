#ifndef REPNORM_H
#define REPNORM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RepnormStatus {
  REPNORM_STATUS_OK = 0,
  REPNORM_STATUS_NULL_POINTER = 1,
  REPNORM_STATUS_DOMAIN = 2,
  REPNORM_STATUS_POLE = 3,
  REPNORM_STATUS_CONVERGENCE = 4,
  REPNORM_STATUS_PRECONDITION = 5,
  REPNORM_STATUS_NORMALIZATION = 6,
  REPNORM_STATUS_SCAN = 7,
  REPNORM_STATUS_FIT = 8,
  REPNORM_STATUS_CONFIG = 9,
  REPNORM_STATUS_IO = 10,
  REPNORM_STATUS_INVALID_STRING = 11,
  REPNORM_STATUS_PANIC = 12,
} RepnormStatus;

/*
 Opaque representation handle; create with `repnorm_rep_new_*`, release
 with `repnorm_rep_free`.
 */
typedef struct RepnormRep RepnormRep;

typedef struct RepnormComplex {
  double re;
  double im;
} RepnormComplex;

/*
 A value with its estimated absolute error.
 */
typedef struct RepnormValue {
  struct RepnormComplex value;
  double err_est;
} RepnormValue;

typedef struct RepnormScanConfig {
  double c_grid;
  uint32_t refine_iters;
  double t_max_pad;
} RepnormScanConfig;

typedef struct RepnormNormSample {
  double n;
  double value;
  double x_argmax;
  double err_est;
} RepnormNormSample;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Principal series with `sigma` 0 or 0.5.

 # Safety
 `out` must be a valid pointer to write the handle to.
 */
enum RepnormStatus repnorm_rep_new_principal(double sigma,
                                             struct RepnormComplex lambda,
                                             struct RepnormRep **out);

/*
 Complementary series, `-1/2 < lambda < 0`.

 # Safety
 `out` must be a valid pointer to write the handle to.
 */
enum RepnormStatus repnorm_rep_new_complementary(double lambda, struct RepnormRep **out);

/*
 Discrete series with lowest K-type `l / 2`, `l >= 2`.

 # Safety
 `out` must be a valid pointer to write the handle to.
 */
enum RepnormStatus repnorm_rep_new_discrete(uint32_t ell, struct RepnormRep **out);

/*
 Releases a handle; null is ignored.

 # Safety
 `rep` must come from a `repnorm_rep_new_*` call and not be freed twice.
 */
void repnorm_rep_free(struct RepnormRep *rep);

/*
 `<pi(a_x) e_m, e_n>` at `0 <= x < 1`. Labels are real numbers that must
 be multiples of 1/2.

 # Safety
 `rep` must be a live handle and `out` valid for writes.
 */
enum RepnormStatus repnorm_coef(const struct RepnormRep *rep,
                                double n,
                                double m,
                                double x,
                                struct RepnormValue *out);

struct RepnormScanConfig repnorm_scan_config_default(void);

/*
 `sup_x |<pi(a_x) e_m, e_n>|`. A null `cfg` uses the defaults.

 # Safety
 `rep` must be a live handle, `cfg` null or valid, `out` valid for writes.
 */
enum RepnormStatus repnorm_pmin_scan(const struct RepnormRep *rep,
                                     double m,
                                     double n,
                                     const struct RepnormScanConfig *cfg,
                                     struct RepnormNormSample *out);

/*
 `int <pi(a_x) e_m, e_n> d beta_eps(x)` by adaptive quadrature.

 # Safety
 `rep` must be a live handle and `out` valid for writes.
 */
enum RepnormStatus repnorm_integral(const struct RepnormRep *rep,
                                    double n,
                                    double m,
                                    double epsilon,
                                    double tol,
                                    struct RepnormValue *out);

/*
 Structural constant `c_g = num / den` of a family such as `"so(1,2)"`
 or `"sl(4,R)"`.

 # Safety
 `family` must be a NUL-terminated string; `num` and `den` valid for writes.
 */
enum RepnormStatus repnorm_structural_constant(const char *family, int64_t *num, int64_t *den);

/*
 Gauss hypergeometric function `2F1(a, b; c; z)` for real `z < 1`.

 # Safety
 `out` must be valid for writes.
 */
enum RepnormStatus repnorm_hyp2f1(struct RepnormComplex a,
                                  struct RepnormComplex b,
                                  struct RepnormComplex c,
                                  double z,
                                  double tol,
                                  struct RepnormValue *out);

/*
 Copies the last error message of this thread into `buf` (truncated and
 NUL-terminated) and returns the full message length in bytes. A null
 `buf` or zero `len` only queries the length.

 # Safety
 `buf` must be null or valid for `len` bytes.
 */
size_t repnorm_last_error(char *buf, size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REPNORM_H */
