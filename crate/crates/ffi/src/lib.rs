//! C ABI for irredcert.
//!
//! Objects cross the boundary as opaque handles that the caller releases
//! with the matching `*_free` function. Fallible calls return an
//! [`IrcStatus`]; on failure, [`irc_last_error`] describes the most recent
//! error on the calling thread. Strings returned to the caller are
//! NUL-terminated UTF-8 and must be released with [`irc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use irredcert::certificate::{auto_check, CheckOptions, Rule};
use irredcert::criteria::Verdict;
use irredcert::oracle::{kronecker_factorize, Factorization, Limits};
use irredcert::poly::{parse_poly, IntPoly};
use irredcert::polygon::build_polygon;
use irredcert::valuation::{DiscoveryMode, Prime};
use irredcert::{Certificate, Error};

/// Parsed integer polynomial.
pub struct IrcPoly(IntPoly);

/// Result of a check, with its evidence.
pub struct IrcCertificate(Certificate);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IrcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    NotPrime = 4,
    InvalidArgument = 5,
    Panic = 6,
    CertificateMismatch = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IrcVerdict {
    Irreducible = 0,
    Inconclusive = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IrcRule {
    None = 0,
    Linear = 1,
    Eisenstein = 2,
    DumasSinglePrime = 3,
    TheoremB = 4,
    TheoremA = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IrcFactorKind {
    Factored = 0,
    Irreducible = 1,
    LimitExceeded = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IrcDiscoveryMode {
    Endpoints = 0,
    AllCoeffs = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn fail(status: IrcStatus, msg: impl AsRef<str>) -> IrcStatus {
    set_last_error(msg.as_ref());
    status
}

fn status_of(e: &Error) -> IrcStatus {
    match e {
        Error::EmptyInput | Error::Syntax { .. } => IrcStatus::ParseError,
        Error::NotPrime(_) => IrcStatus::NotPrime,
        Error::CertificateMismatch(_) => IrcStatus::CertificateMismatch,
        _ => IrcStatus::InvalidArgument,
    }
}

/// Runs `body`, turning panics into `IrcStatus::Panic`.
fn guarded(body: impl FnOnce() -> IrcStatus) -> IrcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => {
            if status == IrcStatus::Ok {
                set_last_error("");
            }
            status
        }
        Err(_) => fail(IrcStatus::Panic, "internal panic"),
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn irc_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn irc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `"a0,a1,..."` or an expression such as `"x^2+2x+2"`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn irc_poly_parse(text: *const c_char, out: *mut *mut IrcPoly) -> IrcStatus {
    guarded(|| {
        if text.is_null() || out.is_null() {
            return fail(IrcStatus::NullPointer, "null argument");
        }
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return fail(IrcStatus::InvalidUtf8, "input is not UTF-8");
        };
        match parse_poly(text) {
            Ok(f) => {
                *out = Box::into_raw(Box::new(IrcPoly(f)));
                IrcStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Builds a polynomial from `len` coefficients, constant term first.
///
/// # Safety
/// `coeffs` must point to `len` values (or be null with `len == 0`); `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn irc_poly_from_coeffs(
    coeffs: *const i64,
    len: usize,
    out: *mut *mut IrcPoly,
) -> IrcStatus {
    guarded(|| {
        if out.is_null() || (coeffs.is_null() && len > 0) {
            return fail(IrcStatus::NullPointer, "null argument");
        }
        let slice = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(coeffs, len)
        };
        *out = Box::into_raw(Box::new(IrcPoly(IntPoly::from_i64s(slice))));
        IrcStatus::Ok
    })
}

/// # Safety
/// `poly` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn irc_poly_free(poly: *mut IrcPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Degree, or -1 for the zero polynomial or a null handle.
///
/// # Safety
/// `poly` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn irc_poly_degree(poly: *const IrcPoly) -> i64 {
    match poly.as_ref().and_then(|p| p.0.degree()) {
        Some(d) => d as i64,
        None => -1,
    }
}

/// Expression form such as `x^2+2x+2`; null for a null handle.
///
/// # Safety
/// `poly` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn irc_poly_to_string(poly: *const IrcPoly) -> *mut c_char {
    poly.as_ref()
        .map_or(ptr::null_mut(), |p| into_c_string(p.0.to_string()))
}

/// Coefficient list `a0,a1,...`; null for a null handle.
///
/// # Safety
/// `poly` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn irc_poly_to_coeff_list(poly: *const IrcPoly) -> *mut c_char {
    poly.as_ref()
        .map_or(ptr::null_mut(), |p| into_c_string(p.0.to_coeff_list()))
}

unsafe fn collect_primes(primes: *const u64, n_primes: usize) -> Result<Vec<Prime>, IrcStatus> {
    if n_primes == 0 {
        return Ok(Vec::new());
    }
    if primes.is_null() {
        return Err(fail(IrcStatus::NullPointer, "null prime array"));
    }
    let raw = std::slice::from_raw_parts(primes, n_primes);
    raw.iter()
        .map(|&p| Prime::new(p).map_err(|e| fail(status_of(&e), e.to_string())))
        .collect()
}

/// Checks `poly` with the given primes. When `discover` is true, or no
/// primes are given, primes up to `bound` dividing the scanned
/// coefficients are added.
///
/// # Safety
/// `poly` must be a live handle, `primes` must point to `n_primes` values
/// (or be null with `n_primes == 0`), and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn irc_check(
    poly: *const IrcPoly,
    primes: *const u64,
    n_primes: usize,
    discover: bool,
    bound: u64,
    mode: IrcDiscoveryMode,
    out: *mut *mut IrcCertificate,
) -> IrcStatus {
    guarded(|| {
        let (Some(poly), false) = (poly.as_ref(), out.is_null()) else {
            return fail(IrcStatus::NullPointer, "null argument");
        };
        let primes = match collect_primes(primes, n_primes) {
            Ok(p) => p,
            Err(status) => return status,
        };
        let opts = CheckOptions {
            primes,
            discover,
            bound,
            mode: match mode {
                IrcDiscoveryMode::Endpoints => DiscoveryMode::Endpoints,
                IrcDiscoveryMode::AllCoeffs => DiscoveryMode::AllCoeffs,
            },
        };
        let cert = auto_check(&poly.0, &opts);
        *out = Box::into_raw(Box::new(IrcCertificate(cert)));
        IrcStatus::Ok
    })
}

/// # Safety
/// `cert` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn irc_certificate_free(cert: *mut IrcCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Inconclusive for a null handle.
///
/// # Safety
/// `cert` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn irc_certificate_verdict(cert: *const IrcCertificate) -> IrcVerdict {
    match cert.as_ref().map(|c| c.0.verdict) {
        Some(Verdict::Irreducible) => IrcVerdict::Irreducible,
        _ => IrcVerdict::Inconclusive,
    }
}

/// # Safety
/// `cert` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn irc_certificate_rule(cert: *const IrcCertificate) -> IrcRule {
    match cert.as_ref().map(|c| c.0.fired_rule) {
        Some(Rule::Linear) => IrcRule::Linear,
        Some(Rule::Eisenstein) => IrcRule::Eisenstein,
        Some(Rule::DumasSinglePrime) => IrcRule::DumasSinglePrime,
        Some(Rule::TheoremB) => IrcRule::TheoremB,
        Some(Rule::TheoremA) => IrcRule::TheoremA,
        Some(Rule::None) | None => IrcRule::None,
    }
}

/// 0 for a null handle.
///
/// # Safety
/// `cert` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn irc_certificate_factor_degree_multiple(
    cert: *const IrcCertificate,
) -> usize {
    cert.as_ref().map_or(0, |c| c.0.factor_degree_multiple)
}

/// Certificate as pretty-printed JSON; null for a null handle.
///
/// # Safety
/// `cert` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn irc_certificate_to_json(cert: *const IrcCertificate) -> *mut c_char {
    cert.as_ref()
        .map_or(ptr::null_mut(), |c| into_c_string(c.0.to_json()))
}

/// Parses certificate JSON and re-verifies it against its own polynomial.
/// Returns `Ok` when the certificate is internally consistent.
///
/// # Safety
/// `json` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn irc_certificate_recheck(json: *const c_char) -> IrcStatus {
    guarded(|| {
        if json.is_null() {
            return fail(IrcStatus::NullPointer, "null argument");
        }
        let Ok(text) = CStr::from_ptr(json).to_str() else {
            return fail(IrcStatus::InvalidUtf8, "input is not UTF-8");
        };
        match Certificate::from_json(text).and_then(|c| c.recheck()) {
            Ok(()) => IrcStatus::Ok,
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Newton polygon of `poly` at `prime`, as JSON, into `*out`.
///
/// # Safety
/// `poly` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn irc_polygon_json(
    poly: *const IrcPoly,
    prime: u64,
    out: *mut *mut c_char,
) -> IrcStatus {
    guarded(|| {
        let (Some(poly), false) = (poly.as_ref(), out.is_null()) else {
            return fail(IrcStatus::NullPointer, "null argument");
        };
        let result = Prime::new(prime).and_then(|p| build_polygon(&poly.0, p));
        match result {
            Ok(polygon) => {
                let json = serde_json::to_string_pretty(&polygon).expect("polygon serializes");
                *out = into_c_string(json);
                IrcStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Factors `poly` with the default limits. `*kind` receives the outcome
/// and `*text` a rendering such as `(x+2)(x^2+2x+2)`.
///
/// # Safety
/// `poly` must be a live handle; `kind` and `text` must be writable.
#[no_mangle]
pub unsafe extern "C" fn irc_factorize(
    poly: *const IrcPoly,
    kind: *mut IrcFactorKind,
    text: *mut *mut c_char,
) -> IrcStatus {
    guarded(|| {
        let (Some(poly), false, false) = (poly.as_ref(), kind.is_null(), text.is_null()) else {
            return fail(IrcStatus::NullPointer, "null argument");
        };
        let result = kronecker_factorize(&poly.0, &Limits::default());
        *kind = match result {
            Factorization::Factored { .. } => IrcFactorKind::Factored,
            Factorization::Irreducible => IrcFactorKind::Irreducible,
            Factorization::LimitExceeded(_) => IrcFactorKind::LimitExceeded,
        };
        *text = into_c_string(result.to_string());
        IrcStatus::Ok
    })
}
