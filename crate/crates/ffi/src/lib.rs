//! C ABI for the legell library: error codes, plain-value entry points,
//! and an opaque handle for elliptic-form results so bindings can read
//! the K/E coefficients term by term.
//!
//! The header `include/legell.h` is generated by cbindgen at build time.

use legell::error::Error;
use legell::index::{index_from_rational, FunctionKind};
use legell::transform::EllipticForm;
use std::ffi::{c_char, c_int};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LegellStatus {
    Ok = 0,
    DomainError = 1,
    PoleError = 2,
    ConvergenceError = 3,
    UnsupportedIndex = 4,
    SingularLadder = 5,
    StabilityError = 6,
    DegenerateReflection = 7,
    DegenerateParameter = 8,
    UnsupportedCurve = 9,
    InternalError = 10,
    NullPointer = 11,
}

fn status_of(e: &Error) -> LegellStatus {
    match e {
        Error::Domain(_) => LegellStatus::DomainError,
        Error::Pole(_) => LegellStatus::PoleError,
        Error::Convergence(_) => LegellStatus::ConvergenceError,
        Error::UnsupportedIndex(_) => LegellStatus::UnsupportedIndex,
        Error::SingularLadder(_) => LegellStatus::SingularLadder,
        Error::Stability(_) => LegellStatus::StabilityError,
        Error::DegenerateReflection(_) => LegellStatus::DegenerateReflection,
        Error::DegenerateParameter(_) => LegellStatus::DegenerateParameter,
        Error::UnsupportedCurve(_) => LegellStatus::UnsupportedCurve,
        Error::Internal(_) => LegellStatus::InternalError,
    }
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn legell_status_name(status: LegellStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        LegellStatus::Ok => b"ok\0",
        LegellStatus::DomainError => b"domain error\0",
        LegellStatus::PoleError => b"pole error\0",
        LegellStatus::ConvergenceError => b"convergence error\0",
        LegellStatus::UnsupportedIndex => b"unsupported index\0",
        LegellStatus::SingularLadder => b"singular ladder\0",
        LegellStatus::StabilityError => b"stability budget exceeded\0",
        LegellStatus::DegenerateReflection => b"degenerate reflection\0",
        LegellStatus::DegenerateParameter => b"degenerate parameter\0",
        LegellStatus::UnsupportedCurve => b"unsupported curve\0",
        LegellStatus::InternalError => b"internal error\0",
        LegellStatus::NullPointer => b"null pointer\0",
    };
    s.as_ptr().cast()
}

fn kind_of(code: c_int) -> Option<FunctionKind> {
    match code {
        0 => Some(FunctionKind::LegendreP),
        1 => Some(FunctionKind::LegendreQhat),
        2 => Some(FunctionKind::FerrersP),
        3 => Some(FunctionKind::FerrersQ),
        4 => Some(FunctionKind::FerrersPbar),
        5 => Some(FunctionKind::LegendrePtilde),
        _ => None,
    }
}

unsafe fn write_out(out: *mut f64, v: f64) -> LegellStatus {
    if out.is_null() {
        return LegellStatus::NullPointer;
    }
    *out = v;
    LegellStatus::Ok
}

macro_rules! ffi_value {
    ($out:expr, $expr:expr) => {
        match $expr {
            Ok(v) => unsafe { write_out($out, v) },
            Err(e) => status_of(&e),
        }
    };
}

/// Gamma function.
///
/// # Safety
/// `out` must be a valid pointer to a double.
#[no_mangle]
pub unsafe extern "C" fn legell_gamma(x: f64, out: *mut f64) -> LegellStatus {
    ffi_value!(out, legell::gamma(x))
}

/// Complete elliptic integral K(m).
///
/// # Safety
/// `out` must be a valid pointer to a double.
#[no_mangle]
pub unsafe extern "C" fn legell_elliptic_k(m: f64, out: *mut f64) -> LegellStatus {
    ffi_value!(out, legell::complete_elliptic_k(m))
}

/// Complete elliptic integral E(m).
///
/// # Safety
/// `out` must be a valid pointer to a double.
#[no_mangle]
pub unsafe extern "C" fn legell_elliptic_e(m: f64, out: *mut f64) -> LegellStatus {
    ffi_value!(out, legell::complete_elliptic_e(m))
}

/// Gauss hypergeometric function 2F1(a, b; c; x).
///
/// # Safety
/// `out` must be a valid pointer to a double.
#[no_mangle]
pub unsafe extern "C" fn legell_gauss_2f1(
    a: f64,
    b: f64,
    c: f64,
    x: f64,
    out: *mut f64,
) -> LegellStatus {
    ffi_value!(out, legell::gauss_2f1(legell::HypParams::new(a, b, c, x)))
}

/// Series-oracle evaluation of a Legendre/Ferrers function. The degree
/// and order are exact rationals (numerator/denominator pairs). Kind
/// codes: 0 = Legendre P, 1 = Legendre Qhat, 2 = Ferrers P,
/// 3 = Ferrers Q, 4 = Ferrers P at negated argument, 5 = the
/// second-kind companion combination on the Legendre side.
///
/// # Safety
/// `out` must be a valid pointer to a double.
#[no_mangle]
pub unsafe extern "C" fn legell_eval_series(
    kind: c_int,
    nu_num: i64,
    nu_den: i64,
    mu_num: i64,
    mu_den: i64,
    x: f64,
    out: *mut f64,
) -> LegellStatus {
    let Some(kind) = kind_of(kind) else {
        return LegellStatus::DomainError;
    };
    let r = index_from_rational(kind, nu_num, nu_den, mu_num, mu_den)
        .and_then(|idx| legell::oracle_legendre(kind, &idx, x))
        .map(|v| v.value);
    ffi_value!(out, r)
}

/// Opaque elliptic-form result handle.
pub struct LegellForm {
    inner: EllipticForm,
}

/// Reduce a fractional-degree function (degree in Z +- 1/r for
/// r = 2, 3, 4, 6, integer order) to its elliptic form. On success the
/// returned handle must be freed with `legell_form_free`. On error the
/// result is null and `status`, when non-null, receives the code.
///
/// # Safety
/// `status` may be null; if non-null it must point to writable memory.
#[no_mangle]
pub unsafe extern "C" fn legell_eval_form(
    kind: c_int,
    nu_num: i64,
    nu_den: i64,
    order: i64,
    x: f64,
    status: *mut LegellStatus,
) -> *mut LegellForm {
    let set = |s: LegellStatus| {
        if !status.is_null() {
            unsafe { *status = s };
        }
    };
    let Some(kind) = kind_of(kind) else {
        set(LegellStatus::DomainError);
        return std::ptr::null_mut();
    };
    match index_from_rational(kind, nu_num, nu_den, order, 1)
        .and_then(|idx| legell::transform::eval_fractional(kind, &idx, x))
    {
        Ok(form) => {
            set(LegellStatus::Ok);
            Box::into_raw(Box::new(LegellForm { inner: form }))
        }
        Err(e) => {
            set(status_of(&e));
            std::ptr::null_mut()
        }
    }
}

/// Value of an elliptic form.
///
/// # Safety
/// `form` must be a live handle from `legell_eval_form`.
#[no_mangle]
pub unsafe extern "C" fn legell_form_value(form: *const LegellForm) -> f64 {
    if form.is_null() {
        return f64::NAN;
    }
    (*form).inner.value()
}

/// Derivative of an elliptic form with respect to the evaluation angle.
///
/// # Safety
/// `form` must be a live handle from `legell_eval_form`.
#[no_mangle]
pub unsafe extern "C" fn legell_form_derivative(form: *const LegellForm) -> f64 {
    if form.is_null() {
        return f64::NAN;
    }
    (*form).inner.derivative()
}

/// Number of a K(m0), b E(m0) terms in the form (one or two).
///
/// # Safety
/// `form` must be a live handle from `legell_eval_form`.
#[no_mangle]
pub unsafe extern "C" fn legell_form_term_count(form: *const LegellForm) -> usize {
    if form.is_null() {
        return 0;
    }
    (*form).inner.terms.len()
}

/// Read one term of the form: the modular parameter, the K and E
/// coefficients, and their derivative-channel counterparts.
///
/// # Safety
/// `form` must be a live handle; the five output pointers must each be
/// valid or null (null outputs are skipped).
#[no_mangle]
pub unsafe extern "C" fn legell_form_term(
    form: *const LegellForm,
    index: usize,
    modulus: *mut f64,
    coef_k: *mut f64,
    coef_e: *mut f64,
    coef_k_deriv: *mut f64,
    coef_e_deriv: *mut f64,
) -> LegellStatus {
    if form.is_null() {
        return LegellStatus::NullPointer;
    }
    let inner = &(*form).inner;
    let Some(term) = inner.terms.get(index) else {
        return LegellStatus::DomainError;
    };
    for (ptr, v) in [
        (modulus, term.modulus.get()),
        (coef_k, term.coef_k.v),
        (coef_e, term.coef_e.v),
        (coef_k_deriv, term.coef_k.d),
        (coef_e_deriv, term.coef_e.d),
    ] {
        if !ptr.is_null() {
            *ptr = v;
        }
    }
    LegellStatus::Ok
}

/// Release a form handle.
///
/// # Safety
/// `form` must be null or a handle not previously freed.
#[no_mangle]
pub unsafe extern "C" fn legell_form_free(form: *mut LegellForm) {
    if !form.is_null() {
        drop(Box::from_raw(form));
    }
}

/// Laplace coefficient b_s^(m)(alpha) under the cosine-transform
/// convention with the 1/pi prefactor; s is an exact rational.
///
/// # Safety
/// `out` must be a valid pointer to a double.
#[no_mangle]
pub unsafe extern "C" fn legell_laplace_coefficient(
    s_num: i64,
    s_den: i64,
    m: i64,
    alpha: f64,
    out: *mut f64,
) -> LegellStatus {
    if s_den == 0 {
        return LegellStatus::DomainError;
    }
    ffi_value!(
        out,
        legell::applications::laplace_coefficient(s_num as f64 / s_den as f64, m, alpha)
    )
}

/// Radical form of 2F1(1/6, 5/6; 5/4; x) for x <= 0.
///
/// # Safety
/// `out` must be a valid pointer to a double.
#[no_mangle]
pub unsafe extern "C" fn legell_octahedral_2f1(x: f64, out: *mut f64) -> LegellStatus {
    ffi_value!(out, legell::closed_form::octahedral_2f1(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_entry_points() {
        let mut v = 0.0f64;
        assert_eq!(unsafe { legell_elliptic_k(0.0, &mut v) }, LegellStatus::Ok);
        assert!((v - std::f64::consts::FRAC_PI_2).abs() < 1e-14);
        assert_eq!(
            unsafe { legell_elliptic_k(1.0, &mut v) },
            LegellStatus::DomainError
        );
        assert_eq!(unsafe { legell_gamma(0.0, &mut v) }, LegellStatus::PoleError);
        assert_eq!(unsafe { legell_gamma(5.0, &mut v) }, LegellStatus::Ok);
        assert_eq!(v, 24.0);
        assert_eq!(
            unsafe { legell_gamma(1.0, std::ptr::null_mut()) },
            LegellStatus::NullPointer
        );
    }

    #[test]
    fn form_handle_round_trip() {
        let mut status = LegellStatus::Ok;
        // Ferrers P at degree -1/4, order 0
        let form = unsafe { legell_eval_form(2, -1, 4, 0, 0.3, &mut status) };
        assert_eq!(status, LegellStatus::Ok);
        assert!(!form.is_null());
        let n = unsafe { legell_form_term_count(form) };
        assert_eq!(n, 1);
        let (mut m0, mut a, mut b) = (0.0, 0.0, 0.0);
        let st = unsafe {
            legell_form_term(
                form,
                0,
                &mut m0,
                &mut a,
                &mut b,
                std::ptr::null_mut(),
                std::ptr::null_mut(),
            )
        };
        assert_eq!(st, LegellStatus::Ok);
        let mut k = 0.0;
        let mut e = 0.0;
        unsafe {
            assert_eq!(legell_elliptic_k(m0, &mut k), LegellStatus::Ok);
            assert_eq!(legell_elliptic_e(m0, &mut e), LegellStatus::Ok);
        }
        let recomposed = a * k + b * e;
        let direct = unsafe { legell_form_value(form) };
        assert!((recomposed - direct).abs() < 1e-14 * (1.0 + direct.abs()));
        // against the series route
        let mut series = 0.0;
        assert_eq!(
            unsafe { legell_eval_series(2, -1, 4, 0, 1, 0.3, &mut series) },
            LegellStatus::Ok
        );
        assert!((direct - series).abs() < 1e-8 * (1.0 + series.abs()));
        unsafe { legell_form_free(form) };
    }

    #[test]
    fn error_paths_map_to_codes() {
        let mut status = LegellStatus::Ok;
        // unsupported general degree
        let form = unsafe { legell_eval_form(0, 3, 10, 0, 1.5, &mut status) };
        assert!(form.is_null());
        assert_eq!(status, LegellStatus::UnsupportedIndex);
        // out-of-domain argument
        let form = unsafe { legell_eval_form(0, -1, 4, 0, 0.5, &mut status) };
        assert!(form.is_null());
        assert_eq!(status, LegellStatus::DomainError);
        let mut v = 0.0;
        assert_eq!(
            unsafe { legell_laplace_coefficient(1, 2, 0, 1.5, &mut v) },
            LegellStatus::DomainError
        );
    }
}
