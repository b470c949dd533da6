//! C ABI over the `frob3` engine.
//!
//! Results live behind an opaque `Frob3Result` handle owned by the caller
//! and released with `frob3_result_free`. Every entry point returns a
//! `Frob3Status` or a pointer, and never unwinds across the boundary.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use frob3::formulas::frobenius_with;
use frob3::oracle::frobenius_sieve;
use frob3::params::make_triple;
use frob3::{Case, Error, Evaluator, FrobeniusResult, InputError, Method};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frob3Status {
    Ok = 0,
    NullPointer = 1,
    /// Non-positive, unit, or otherwise malformed generators.
    InvalidInput = 2,
    GcdNotOne = 3,
    /// A generator above 2^31-1, or a sieve past the memory cap.
    TooLarge = 4,
    /// The requested method does not apply to this input.
    NotApplicable = 5,
    Internal = 6,
}

/// Values accepted by the `method` argument of `frob3_compute`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frob3Method {
    Auto = 0,
    Formula = 1,
    Brauer = 2,
    Lemma3 = 3,
    Sieve = 4,
}

/// Opaque computation result.
pub struct Frob3Result {
    inner: FrobeniusResult,
}

fn method_from(raw: i32) -> Option<Method> {
    Some(match raw {
        0 => Method::Auto,
        1 => Method::Formula,
        2 => Method::Brauer,
        3 => Method::Lemma3,
        4 => Method::Sieve,
        _ => return None,
    })
}

fn status_of(e: &Error) -> Frob3Status {
    match e {
        Error::Input(InputError::GcdNotOne(_)) => Frob3Status::GcdNotOne,
        Error::Input(InputError::TooLarge(_)) | Error::SieveTooLarge { .. } => {
            Frob3Status::TooLarge
        }
        Error::Input(_) => Frob3Status::InvalidInput,
        Error::Precondition(_) => Frob3Status::NotApplicable,
        _ => Frob3Status::Internal,
    }
}

fn guarded(f: impl FnOnce() -> Frob3Status) -> Frob3Status {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(Frob3Status::Internal)
}

/// Computes g(a, b, c) with `method` (a `Frob3Method` value) and stores a
/// new handle in `*out`. On failure `*out` is set to null.
///
/// # Safety
/// `out` must be null or valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn frob3_compute(
    a: i64,
    b: i64,
    c: i64,
    method: i32,
    out: *mut *mut Frob3Result,
) -> Frob3Status {
    if out.is_null() {
        return Frob3Status::NullPointer;
    }
    *out = ptr::null_mut();
    guarded(|| {
        let Some(method) = method_from(method) else {
            return Frob3Status::InvalidInput;
        };
        let gens = match make_triple(a.into(), b.into(), c.into()) {
            Ok(g) => g,
            Err(e) => return status_of(&e.into()),
        };
        match frobenius_with(&gens, method) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(Frob3Result { inner }));
                Frob3Status::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Frobenius number by exhaustive sieve, independent of the formulas.
///
/// # Safety
/// `out` must be null or valid for one `int64_t` write.
#[no_mangle]
pub unsafe extern "C" fn frob3_sieve(a: i64, b: i64, c: i64, out: *mut i64) -> Frob3Status {
    if out.is_null() {
        return Frob3Status::NullPointer;
    }
    guarded(|| {
        let gens = match make_triple(a.into(), b.into(), c.into()) {
            Ok(g) => g,
            Err(e) => return status_of(&e.into()),
        };
        match frobenius_sieve(&gens.values()) {
            Ok(g) => match i64::try_from(g) {
                Ok(g) => {
                    *out = g;
                    Frob3Status::Ok
                }
                Err(_) => Frob3Status::Internal,
            },
            Err(e) => status_of(&e),
        }
    })
}

/// # Safety
/// `r` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn frob3_result_g(r: *const Frob3Result, out: *mut i64) -> Frob3Status {
    let (Some(r), false) = (r.as_ref(), out.is_null()) else {
        return Frob3Status::NullPointer;
    };
    match i64::try_from(r.inner.g) {
        Ok(g) => {
            *out = g;
            Frob3Status::Ok
        }
        Err(_) => Frob3Status::Internal,
    }
}

fn case_name(c: Case) -> &'static CStr {
    match c {
        Case::Degenerate => c"DEGENERATE",
        Case::Sylvester => c"SYLVESTER",
        Case::Thm3 => c"THM3",
        Case::Thm5a => c"THM5A",
        Case::Thm5b => c"THM5B",
        Case::MuBoundary => c"MU_BOUNDARY",
    }
}

fn method_name(m: Evaluator) -> &'static CStr {
    match m {
        Evaluator::Formula => c"formula",
        Evaluator::Brauer => c"brauer",
        Evaluator::Sieve => c"sieve",
        Evaluator::Lemma3 => c"lemma3",
    }
}

/// Case label as a static string, or null for a null handle. Do not free.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn frob3_result_case(r: *const Frob3Result) -> *const c_char {
    r.as_ref()
        .map_or(ptr::null(), |r| case_name(r.inner.label.case).as_ptr())
}

/// Name of the evaluator that produced g, static. Do not free.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn frob3_result_method(r: *const Frob3Result) -> *const c_char {
    r.as_ref()
        .map_or(ptr::null(), |r| method_name(r.inner.method).as_ptr())
}

/// The JSON document of the CLI. Release it with `frob3_string_free`.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn frob3_result_json(r: *const Frob3Result) -> *mut c_char {
    let Some(r) = r.as_ref() else {
        return ptr::null_mut();
    };
    catch_unwind(AssertUnwindSafe(|| {
        CString::new(frob3::render::to_json(&r.inner)).map_or(ptr::null_mut(), CString::into_raw)
    }))
    .unwrap_or(ptr::null_mut())
}

/// # Safety
/// `s` must be null or a string from `frob3_result_json`, freed once.
#[no_mangle]
pub unsafe extern "C" fn frob3_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `r` must be null or a handle from `frob3_compute`, freed once.
#[no_mangle]
pub unsafe extern "C" fn frob3_result_free(r: *mut Frob3Result) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Static description of a status code. Do not free.
#[no_mangle]
pub extern "C" fn frob3_status_str(s: Frob3Status) -> *const c_char {
    let text: &'static CStr = match s {
        Frob3Status::Ok => c"ok",
        Frob3Status::NullPointer => c"null pointer argument",
        Frob3Status::InvalidInput => c"invalid input",
        Frob3Status::GcdNotOne => c"gcd of the generators is not 1",
        Frob3Status::TooLarge => c"input or table too large",
        Frob3Status::NotApplicable => c"method not applicable to this input",
        Frob3Status::Internal => c"internal error",
    };
    text.as_ptr()
}
