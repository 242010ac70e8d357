//! C ABI over `repnorm`.
//!
//! Representations live behind the opaque [`RepnormRep`] handle. Every
//! function returns a [`RepnormStatus`]; on failure the message is kept in a
//! thread-local buffer readable through [`repnorm_last_error`]. Panics are
//! caught at the boundary and reported as `REPNORM_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use repnorm::integrals::{beta_measure, integral_quadrature};
use repnorm::norms::{pmin_scan, ScanConfig};
use repnorm::reps::coef;
use repnorm::specfun::hyp2f1;
use repnorm::structure::{structural_constant, LieType};
use repnorm::{CartanCoord, Error, KIndex, RepSpec, Sigma};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepnormStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Pole = 3,
    Convergence = 4,
    Precondition = 5,
    Normalization = 6,
    Scan = 7,
    Fit = 8,
    Config = 9,
    Io = 10,
    InvalidString = 11,
    Panic = 12,
}

impl From<&Error> for RepnormStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Domain(_) => RepnormStatus::Domain,
            Error::Pole(_) => RepnormStatus::Pole,
            Error::Convergence { .. } => RepnormStatus::Convergence,
            Error::Precondition(_) => RepnormStatus::Precondition,
            Error::Normalization(_) => RepnormStatus::Normalization,
            Error::Scan(_) => RepnormStatus::Scan,
            Error::Fit(_) => RepnormStatus::Fit,
            Error::Config(_) => RepnormStatus::Config,
            Error::Io(_) => RepnormStatus::Io,
        }
    }
}

/// Opaque representation handle; create with `repnorm_rep_new_*`, release
/// with `repnorm_rep_free`.
pub struct RepnormRep {
    spec: RepSpec,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepnormComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for RepnormComplex {
    fn from(z: Complex64) -> Self {
        RepnormComplex { re: z.re, im: z.im }
    }
}

impl From<RepnormComplex> for Complex64 {
    fn from(z: RepnormComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

/// A value with its estimated absolute error.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepnormValue {
    pub value: RepnormComplex,
    pub err_est: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepnormScanConfig {
    pub c_grid: f64,
    pub refine_iters: u32,
    pub t_max_pad: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepnormNormSample {
    pub n: f64,
    pub value: f64,
    pub x_argmax: f64,
    pub err_est: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

enum Failure {
    Lib(Error),
    Null(&'static str),
    BadString,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn set_error(msg: String) {
    LAST_ERROR.with(|s| *s.borrow_mut() = msg);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> RepnormStatus {
    set_error(String::new());
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RepnormStatus::Ok,
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            RepnormStatus::from(&e)
        }
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("{what} is null"));
            RepnormStatus::NullPointer
        }
        Ok(Err(Failure::BadString)) => {
            set_error("string is not valid UTF-8".into());
            RepnormStatus::InvalidString
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            RepnormStatus::Panic
        }
    }
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

unsafe fn rep_ref<'a>(p: *const RepnormRep) -> Result<&'a RepSpec, Failure> {
    p.as_ref().map(|r| &r.spec).ok_or(Failure::Null("rep"))
}

fn new_rep(out: *mut *mut RepnormRep, make: impl FnOnce() -> repnorm::Result<RepSpec>) -> RepnormStatus {
    guard(|| {
        let out = unsafe { out_ref(out, "out")? };
        *out = ptr::null_mut();
        let spec = make()?;
        *out = Box::into_raw(Box::new(RepnormRep { spec }));
        Ok(())
    })
}

/// Principal series with `sigma` 0 or 0.5.
///
/// # Safety
/// `out` must be a valid pointer to write the handle to.
#[no_mangle]
pub unsafe extern "C" fn repnorm_rep_new_principal(
    sigma: f64,
    lambda: RepnormComplex,
    out: *mut *mut RepnormRep,
) -> RepnormStatus {
    new_rep(out, || {
        let sigma = if sigma == 0.0 {
            Sigma::Zero
        } else if sigma == 0.5 {
            Sigma::Half
        } else {
            return Err(Error::Domain(format!("sigma must be 0 or 1/2, got {sigma}")));
        };
        RepSpec::principal(sigma, lambda.into())
    })
}

/// Complementary series, `-1/2 < lambda < 0`.
///
/// # Safety
/// `out` must be a valid pointer to write the handle to.
#[no_mangle]
pub unsafe extern "C" fn repnorm_rep_new_complementary(lambda: f64, out: *mut *mut RepnormRep) -> RepnormStatus {
    new_rep(out, || RepSpec::complementary(lambda))
}

/// Discrete series with lowest K-type `l / 2`, `l >= 2`.
///
/// # Safety
/// `out` must be a valid pointer to write the handle to.
#[no_mangle]
pub unsafe extern "C" fn repnorm_rep_new_discrete(ell: u32, out: *mut *mut RepnormRep) -> RepnormStatus {
    new_rep(out, || RepSpec::discrete(ell))
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `rep` must come from a `repnorm_rep_new_*` call and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn repnorm_rep_free(rep: *mut RepnormRep) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}

/// `<pi(a_x) e_m, e_n>` at `0 <= x < 1`. Labels are real numbers that must
/// be multiples of 1/2.
///
/// # Safety
/// `rep` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn repnorm_coef(
    rep: *const RepnormRep,
    n: f64,
    m: f64,
    x: f64,
    out: *mut RepnormValue,
) -> RepnormStatus {
    guard(|| {
        let spec = rep_ref(rep)?;
        let out = out_ref(out, "out")?;
        let v = coef(spec, KIndex::from_f64(n)?, KIndex::from_f64(m)?, &CartanCoord::from_x(x)?)?;
        *out = RepnormValue {
            value: v.value.into(),
            err_est: v.err_est,
        };
        Ok(())
    })
}

#[no_mangle]
pub extern "C" fn repnorm_scan_config_default() -> RepnormScanConfig {
    let d = ScanConfig::default();
    RepnormScanConfig {
        c_grid: d.c_grid,
        refine_iters: d.refine_iters as u32,
        t_max_pad: d.t_max_pad,
    }
}

/// `sup_x |<pi(a_x) e_m, e_n>|`. A null `cfg` uses the defaults.
///
/// # Safety
/// `rep` must be a live handle, `cfg` null or valid, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn repnorm_pmin_scan(
    rep: *const RepnormRep,
    m: f64,
    n: f64,
    cfg: *const RepnormScanConfig,
    out: *mut RepnormNormSample,
) -> RepnormStatus {
    guard(|| {
        let spec = rep_ref(rep)?;
        let out = out_ref(out, "out")?;
        let c = cfg.as_ref().copied().unwrap_or_else(|| repnorm_scan_config_default());
        let cfg = ScanConfig {
            c_grid: c.c_grid,
            refine_iters: c.refine_iters as usize,
            t_max_pad: c.t_max_pad,
        };
        let s = pmin_scan(spec, KIndex::from_f64(m)?, KIndex::from_f64(n)?, &cfg)?;
        *out = RepnormNormSample {
            n: s.n.value(),
            value: s.value,
            x_argmax: s.x_argmax,
            err_est: s.err_est,
        };
        Ok(())
    })
}

/// `int <pi(a_x) e_m, e_n> d beta_eps(x)` by adaptive quadrature.
///
/// # Safety
/// `rep` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn repnorm_integral(
    rep: *const RepnormRep,
    n: f64,
    m: f64,
    epsilon: f64,
    tol: f64,
    out: *mut RepnormValue,
) -> RepnormStatus {
    guard(|| {
        let spec = rep_ref(rep)?;
        let out = out_ref(out, "out")?;
        let beta = beta_measure(epsilon)?;
        let v = integral_quadrature(spec, KIndex::from_f64(n)?, KIndex::from_f64(m)?, &beta, tol)?;
        *out = RepnormValue {
            value: v.value.into(),
            err_est: v.err_est,
        };
        Ok(())
    })
}

/// Structural constant `c_g = num / den` of a family such as `"so(1,2)"`
/// or `"sl(4,R)"`.
///
/// # Safety
/// `family` must be a NUL-terminated string; `num` and `den` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn repnorm_structural_constant(
    family: *const c_char,
    num: *mut i64,
    den: *mut i64,
) -> RepnormStatus {
    guard(|| {
        if family.is_null() {
            return Err(Failure::Null("family"));
        }
        let name = CStr::from_ptr(family).to_str().map_err(|_| Failure::BadString)?;
        let (num, den) = (out_ref(num, "num")?, out_ref(den, "den")?);
        let t: LieType = name.parse()?;
        let c = structural_constant(&t);
        *num = c.num();
        *den = c.den();
        Ok(())
    })
}

/// Gauss hypergeometric function `2F1(a, b; c; z)` for real `z < 1`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn repnorm_hyp2f1(
    a: RepnormComplex,
    b: RepnormComplex,
    c: RepnormComplex,
    z: f64,
    tol: f64,
    out: *mut RepnormValue,
) -> RepnormStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let v = hyp2f1(a.into(), b.into(), c.into(), z, tol)?;
        *out = RepnormValue {
            value: v.value.into(),
            err_est: v.err_est,
        };
        Ok(())
    })
}

/// Copies the last error message of this thread into `buf` (truncated and
/// NUL-terminated) and returns the full message length in bytes. A null
/// `buf` or zero `len` only queries the length.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn repnorm_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|s| {
        let s = s.borrow();
        if !buf.is_null() && len > 0 {
            let n = s.len().min(len - 1);
            ptr::copy_nonoverlapping(s.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        s.len()
    })
}

#[cfg(test)]
mod tests {
    use std::ffi::CString;

    use super::*;

    fn last_error() -> String {
        let mut buf = [0 as c_char; 256];
        let n = unsafe { repnorm_last_error(buf.as_mut_ptr(), buf.len()) };
        let s = unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap().to_string();
        assert_eq!(n, s.len());
        s
    }

    fn discrete(ell: u32) -> *mut RepnormRep {
        let mut h = ptr::null_mut();
        assert_eq!(unsafe { repnorm_rep_new_discrete(ell, &mut h) }, RepnormStatus::Ok);
        h
    }

    #[test]
    fn coef_through_handle() {
        let h = discrete(2);
        let mut v = RepnormValue {
            value: RepnormComplex { re: 0.0, im: 0.0 },
            err_est: 0.0,
        };
        assert_eq!(unsafe { repnorm_coef(h, 1.0, 1.0, 0.3, &mut v) }, RepnormStatus::Ok);
        assert!((v.value.re - 0.7).abs() < 1e-14);
        assert_eq!(unsafe { repnorm_coef(h, 1.0, 1.0, 1.5, &mut v) }, RepnormStatus::Domain);
        assert!(last_error().contains("x must lie in"));
        unsafe { repnorm_rep_free(h) };
    }

    #[test]
    fn constructor_errors_leave_null_handle() {
        let mut h = 1 as *mut RepnormRep;
        assert_eq!(unsafe { repnorm_rep_new_complementary(0.3, &mut h) }, RepnormStatus::Domain);
        assert!(h.is_null());
        let lambda = RepnormComplex { re: -0.5, im: 1.0 };
        assert_eq!(unsafe { repnorm_rep_new_principal(0.25, lambda, &mut h) }, RepnormStatus::Domain);
        assert_eq!(unsafe { repnorm_rep_new_discrete(2, ptr::null_mut()) }, RepnormStatus::NullPointer);
        assert_eq!(last_error(), "out is null");
    }

    #[test]
    fn null_handle_is_reported() {
        let mut v = RepnormNormSample {
            n: 0.0,
            value: 0.0,
            x_argmax: 0.0,
            err_est: 0.0,
        };
        assert_eq!(
            unsafe { repnorm_pmin_scan(ptr::null(), 0.0, 4.0, ptr::null(), &mut v) },
            RepnormStatus::NullPointer
        );
        unsafe { repnorm_rep_free(ptr::null_mut()) };
    }

    #[test]
    fn scan_integral_and_constants() {
        let h = discrete(2);
        let mut s = RepnormNormSample {
            n: 0.0,
            value: 0.0,
            x_argmax: 0.0,
            err_est: 0.0,
        };
        assert_eq!(unsafe { repnorm_pmin_scan(h, 1.0, 1.0, ptr::null(), &mut s) }, RepnormStatus::Ok);
        assert!((s.value - 1.0).abs() < 1e-14);

        let mut v = RepnormValue {
            value: RepnormComplex { re: 0.0, im: 0.0 },
            err_est: 0.0,
        };
        // The coefficient is 1 - x, so the integral is eps B(1, 1 + eps) = eps / (1 + eps).
        assert_eq!(unsafe { repnorm_integral(h, 1.0, 1.0, 0.5, 1e-10, &mut v) }, RepnormStatus::Ok);
        assert!((v.value.re - 0.5 / 1.5).abs() < 1e-10);
        unsafe { repnorm_rep_free(h) };

        let (mut num, mut den) = (0, 0);
        let name = CString::new("sl(4,R)").unwrap();
        assert_eq!(
            unsafe { repnorm_structural_constant(name.as_ptr(), &mut num, &mut den) },
            RepnormStatus::Ok
        );
        assert_eq!((num, den), (5, 1));
        let bad = CString::new("e8").unwrap();
        assert_eq!(
            unsafe { repnorm_structural_constant(bad.as_ptr(), &mut num, &mut den) },
            RepnormStatus::Domain
        );
    }

    #[test]
    fn hyp2f1_elementary_case() {
        // 2F1(1, 1; 2; z) = -ln(1 - z) / z
        let one = RepnormComplex { re: 1.0, im: 0.0 };
        let two = RepnormComplex { re: 2.0, im: 0.0 };
        let mut v = RepnormValue { value: one, err_est: 0.0 };
        assert_eq!(unsafe { repnorm_hyp2f1(one, one, two, 0.5, 1e-15, &mut v) }, RepnormStatus::Ok);
        assert!((v.value.re - 2.0 * 2f64.ln()).abs() < 1e-14);
    }
}
