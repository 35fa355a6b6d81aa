use std::ffi::{CStr, CString};
use std::ptr;

use irredcert_ffi::*;

fn take_string(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let owned = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { irc_string_free(s) };
    owned
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(irc_last_error()) }
        .to_str()
        .unwrap()
        .to_owned()
}

fn parse(text: &str) -> *mut IrcPoly {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { irc_poly_parse(c.as_ptr(), &mut out) },
        IrcStatus::Ok
    );
    out
}

#[test]
fn check_round_trip() {
    let f = parse("27,108,108,108,108,108,4");
    assert_eq!(unsafe { irc_poly_degree(f) }, 6);
    let primes = [2u64, 3];
    let mut cert = ptr::null_mut();
    let status = unsafe {
        irc_check(
            f,
            primes.as_ptr(),
            2,
            false,
            10_000,
            IrcDiscoveryMode::Endpoints,
            &mut cert,
        )
    };
    assert_eq!(status, IrcStatus::Ok);
    assert_eq!(last_error(), "");
    assert_eq!(
        unsafe { irc_certificate_verdict(cert) },
        IrcVerdict::Irreducible
    );
    assert_eq!(unsafe { irc_certificate_rule(cert) }, IrcRule::TheoremB);
    let json = take_string(unsafe { irc_certificate_to_json(cert) });
    let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(parsed["residual_degrees"], serde_json::json!([]));
    let c = CString::new(json.clone()).unwrap();
    assert_eq!(
        unsafe { irc_certificate_recheck(c.as_ptr()) },
        IrcStatus::Ok
    );

    let tampered = CString::new(json.replace(
        "\"factor_degree_multiple\": 6",
        "\"factor_degree_multiple\": 3",
    ))
    .unwrap();
    assert_eq!(
        unsafe { irc_certificate_recheck(tampered.as_ptr()) },
        IrcStatus::CertificateMismatch
    );
    assert!(!last_error().is_empty());

    unsafe {
        irc_certificate_free(cert);
        irc_poly_free(f);
    }
}

#[test]
fn discovery_and_inconclusive() {
    let f = parse("x^2-1");
    let mut cert = ptr::null_mut();
    let status = unsafe {
        irc_check(
            f,
            ptr::null(),
            0,
            true,
            100,
            IrcDiscoveryMode::AllCoeffs,
            &mut cert,
        )
    };
    assert_eq!(status, IrcStatus::Ok);
    assert_eq!(
        unsafe { irc_certificate_verdict(cert) },
        IrcVerdict::Inconclusive
    );
    assert_eq!(unsafe { irc_certificate_rule(cert) }, IrcRule::None);
    unsafe {
        irc_certificate_free(cert);
        irc_poly_free(f);
    }
}

#[test]
fn status_codes() {
    let mut out = ptr::null_mut();
    let bad = CString::new("1,,2").unwrap();
    assert_eq!(
        unsafe { irc_poly_parse(bad.as_ptr(), &mut out) },
        IrcStatus::ParseError
    );
    assert!(last_error().contains("position"));
    assert!(out.is_null());
    assert_eq!(
        unsafe { irc_poly_parse(ptr::null(), &mut out) },
        IrcStatus::NullPointer
    );
    let invalid = [0xffu8, 0];
    assert_eq!(
        unsafe { irc_poly_parse(invalid.as_ptr().cast(), &mut out) },
        IrcStatus::InvalidUtf8
    );

    let f = parse("x^2+1");
    let primes = [4u64];
    let mut cert = ptr::null_mut();
    let status = unsafe {
        irc_check(
            f,
            primes.as_ptr(),
            1,
            false,
            10,
            IrcDiscoveryMode::Endpoints,
            &mut cert,
        )
    };
    assert_eq!(status, IrcStatus::NotPrime);
    assert!(cert.is_null());

    let mut json = ptr::null_mut();
    assert_eq!(
        unsafe { irc_polygon_json(f, 9, &mut json) },
        IrcStatus::NotPrime
    );
    let x = parse("x^2+x");
    assert_eq!(
        unsafe { irc_polygon_json(x, 2, &mut json) },
        IrcStatus::InvalidArgument
    );
    assert!(json.is_null());

    assert_eq!(unsafe { irc_poly_degree(ptr::null()) }, -1);
    assert!(unsafe { irc_poly_to_string(ptr::null()) }.is_null());
    unsafe {
        irc_poly_free(f);
        irc_poly_free(x);
        irc_poly_free(ptr::null_mut());
        irc_string_free(ptr::null_mut());
    }
}

#[test]
fn polygon_and_factorization() {
    let f = parse("x^2+2x+2");
    assert_eq!(take_string(unsafe { irc_poly_to_string(f) }), "x^2+2x+2");
    assert_eq!(take_string(unsafe { irc_poly_to_coeff_list(f) }), "2,2,1");
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { irc_polygon_json(f, 2, &mut json) }, IrcStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(v["vertices"], serde_json::json!([[0, 1], [2, 0]]));
    assert_eq!(v["segment_widths"], serde_json::json!([2]));

    let coeffs = [4i64, 6, 4, 1];
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { irc_poly_from_coeffs(coeffs.as_ptr(), 4, &mut g) },
        IrcStatus::Ok
    );
    let mut kind = IrcFactorKind::Irreducible;
    let mut text = ptr::null_mut();
    assert_eq!(
        unsafe { irc_factorize(g, &mut kind, &mut text) },
        IrcStatus::Ok
    );
    assert_eq!(kind, IrcFactorKind::Factored);
    assert_eq!(take_string(text), "(x+2)(x^2+2x+2)");

    let mut text = ptr::null_mut();
    assert_eq!(
        unsafe { irc_factorize(f, &mut kind, &mut text) },
        IrcStatus::Ok
    );
    assert_eq!(kind, IrcFactorKind::Irreducible);
    take_string(text);
    unsafe {
        irc_poly_free(f);
        irc_poly_free(g);
    }
}
