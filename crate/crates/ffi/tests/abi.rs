use std::ffi::CStr;
use std::ptr;

use frob3_ffi::*;

fn compute(a: i64, b: i64, c: i64, method: Frob3Method) -> (Frob3Status, *mut Frob3Result) {
    let mut out = ptr::null_mut();
    let status = unsafe { frob3_compute(a, b, c, method as i32, &mut out) };
    (status, out)
}

fn text(p: *const std::ffi::c_char) -> String {
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn compute_and_inspect() {
    let (status, r) = compute(11, 15, 16, Frob3Method::Auto);
    assert_eq!(status, Frob3Status::Ok);
    assert!(!r.is_null());
    let mut g = 0;
    assert_eq!(unsafe { frob3_result_g(r, &mut g) }, Frob3Status::Ok);
    assert_eq!(g, 51);
    assert_eq!(text(unsafe { frob3_result_case(r) }), "THM5A");
    assert_eq!(text(unsafe { frob3_result_method(r) }), "formula");
    let json = unsafe { frob3_result_json(r) };
    assert!(text(json).starts_with(r#"{"a":11,"b":15,"c":16,"g":51,"#));
    unsafe {
        frob3_string_free(json);
        frob3_result_free(r);
    }
}

#[test]
fn every_method() {
    for m in [
        Frob3Method::Auto,
        Frob3Method::Formula,
        Frob3Method::Brauer,
        Frob3Method::Lemma3,
        Frob3Method::Sieve,
    ] {
        let (status, r) = compute(100, 101, 139, m);
        assert_eq!(status, Frob3Status::Ok, "{m:?}");
        let mut g = 0;
        unsafe {
            frob3_result_g(r, &mut g);
            frob3_result_free(r);
        }
        assert_eq!(g, 1972, "{m:?}");
    }
}

#[test]
fn error_codes() {
    let cases = [
        ((4, 6, 8, 0), Frob3Status::GcdNotOne),
        ((0, 6, 7, 0), Frob3Status::InvalidInput),
        ((1, 6, 7, 0), Frob3Status::InvalidInput),
        ((3, 5, 1 << 31, 0), Frob3Status::TooLarge),
        ((3, 4, 5, 9), Frob3Status::InvalidInput),
        (
            (7, 9, 100, Frob3Method::Brauer as i32),
            Frob3Status::NotApplicable,
        ),
    ];
    for ((a, b, c, m), want) in cases {
        let mut out = ptr::null_mut();
        let status = unsafe { frob3_compute(a, b, c, m, &mut out) };
        assert_eq!(status, want, "({a}, {b}, {c}, {m})");
        assert!(out.is_null());
        assert!(!text(frob3_status_str(status)).is_empty());
    }
}

#[test]
fn null_handling() {
    unsafe {
        assert_eq!(
            frob3_compute(3, 4, 5, 0, ptr::null_mut()),
            Frob3Status::NullPointer
        );
        let mut g = 0;
        assert_eq!(
            frob3_result_g(ptr::null(), &mut g),
            Frob3Status::NullPointer
        );
        assert!(frob3_result_case(ptr::null()).is_null());
        assert!(frob3_result_method(ptr::null()).is_null());
        assert!(frob3_result_json(ptr::null()).is_null());
        assert_eq!(
            frob3_sieve(3, 4, 5, ptr::null_mut()),
            Frob3Status::NullPointer
        );
        frob3_result_free(ptr::null_mut());
        frob3_string_free(ptr::null_mut());
    }
}

#[test]
fn sieve_entry() {
    let mut g = 0;
    assert_eq!(unsafe { frob3_sieve(6, 10, 15, &mut g) }, Frob3Status::Ok);
    assert_eq!(g, 29);
    assert_eq!(
        unsafe { frob3_sieve(4, 6, 8, &mut g) },
        Frob3Status::GcdNotOne
    );
}

#[test]
fn header_declares_every_symbol() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/frob3.h")).unwrap();
    for sym in [
        "frob3_compute",
        "frob3_sieve",
        "frob3_result_g",
        "frob3_result_case",
        "frob3_result_method",
        "frob3_result_json",
        "frob3_string_free",
        "frob3_result_free",
        "frob3_status_str",
        "typedef struct Frob3Result Frob3Result",
        "FROB3_METHOD_LEMMA3 = 3",
        "FROB3_STATUS_INTERNAL = 6",
    ] {
        assert!(header.contains(sym), "{sym}");
    }
}
