use std::ffi::{CStr, CString};
use std::ptr;

use colorlie_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(colorlie_last_error()) }.to_string_lossy().into_owned()
}

fn make(name: &str, cocycle: &str) -> *mut ColorlieAlgebra {
    let mut a = ptr::null_mut();
    let st = unsafe { colorlie_algebra_from_name(c(name).as_ptr(), c(cocycle).as_ptr(), &mut a) };
    assert_eq!(st, ColorlieStatus::Ok, "{}", last_error());
    assert!(!a.is_null());
    a
}

#[test]
fn dimension_and_axioms() {
    let l = make("L", "canonical");
    let mut dim = 0usize;
    assert_eq!(unsafe { colorlie_algebra_dim(l, &mut dim) }, ColorlieStatus::Ok);
    assert_eq!(dim, 12);
    let mut violations = usize::MAX;
    assert_eq!(unsafe { colorlie_check_axioms(l, true, &mut violations) }, ColorlieStatus::Ok);
    assert_eq!(violations, 0);
    unsafe { colorlie_algebra_free(l) };

    let bad = make("L", "literal");
    assert_eq!(unsafe { colorlie_check_axioms(bad, true, &mut violations) }, ColorlieStatus::Ok);
    assert!(violations > 0);
    unsafe { colorlie_algebra_free(bad) };
}

#[test]
fn killing_determinant_string() {
    let sl2 = make("sl2", "canonical");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { colorlie_killing_determinant(sl2, &mut s) }, ColorlieStatus::Ok);
    // Killing matrix of (e, h, f): [[0,0,4],[0,8,0],[4,0,0]]
    assert_eq!(unsafe { CStr::from_ptr(s) }.to_str().unwrap(), "-128");
    unsafe {
        colorlie_string_free(s);
        colorlie_algebra_free(sl2);
    }
}

#[test]
fn codimensions() {
    let sl2 = make("sl2", "canonical");
    let mut v = 0u64;
    let mut exact = false;
    let st = unsafe { colorlie_codim(sl2, 3, false, ColorlieMode::Exact, 0, &mut v, &mut exact) };
    assert_eq!(st, ColorlieStatus::Ok);
    assert_eq!((v, exact), (2, true));
    let st = unsafe { colorlie_codim(sl2, 4, true, ColorlieMode::Randomized, 5, &mut v, ptr::null_mut()) };
    assert_eq!(st, ColorlieStatus::Ok);
    assert_eq!(v, 6);
    unsafe { colorlie_algebra_free(sl2) };

    let l = make("L", "canonical");
    let st = unsafe { colorlie_graded_codim(l, 2, ColorlieMode::Exact, 0, &mut v, &mut exact) };
    assert_eq!(st, ColorlieStatus::Ok);
    assert_eq!(v, 16);
    unsafe { colorlie_algebra_free(l) };
}

#[test]
fn lie_rows_rejected_for_non_lie() {
    let l = make("L", "canonical");
    let mut v = 0u64;
    let st = unsafe { colorlie_codim(l, 2, true, ColorlieMode::Exact, 0, &mut v, ptr::null_mut()) };
    assert_eq!(st, ColorlieStatus::InvalidArgument);
    assert!(last_error().contains("not a Lie algebra"));
    unsafe { colorlie_algebra_free(l) };
}

#[test]
fn json_round_trip() {
    let spec = colorlie::algebra::sl2_factory().to_json();
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { colorlie_algebra_from_json(c(&spec).as_ptr(), &mut a) }, ColorlieStatus::Ok);
    let mut dim = 0usize;
    unsafe { colorlie_algebra_dim(a, &mut dim) };
    assert_eq!(dim, 3);
    unsafe { colorlie_algebra_free(a) };

    let st = unsafe { colorlie_algebra_from_json(c("{not json").as_ptr(), &mut a) };
    assert_eq!(st, ColorlieStatus::Parse);
    assert!(!last_error().is_empty());
}

#[test]
fn error_codes() {
    let mut a = ptr::null_mut();
    let st = unsafe { colorlie_algebra_from_name(c("sl2").as_ptr(), c("bogus").as_ptr(), &mut a) };
    assert_eq!(st, ColorlieStatus::InvalidArgument);
    let st = unsafe { colorlie_algebra_from_name(ptr::null(), c("canonical").as_ptr(), &mut a) };
    assert_eq!(st, ColorlieStatus::NullPointer);
    let st = unsafe { colorlie_algebra_from_name(c("no-such-file.json").as_ptr(), c("canonical").as_ptr(), &mut a) };
    assert_eq!(st, ColorlieStatus::Io);
    let mut dim = 0usize;
    assert_eq!(unsafe { colorlie_algebra_dim(ptr::null(), &mut dim) }, ColorlieStatus::NullPointer);

    let sl2 = make("sl2", "canonical");
    let mut v = 0u64;
    let st = unsafe { colorlie_codim(sl2, 0, false, ColorlieMode::Exact, 0, &mut v, ptr::null_mut()) };
    assert_ne!(st, ColorlieStatus::Ok);
    // a success clears the message
    assert_eq!(unsafe { colorlie_algebra_dim(sl2, &mut dim) }, ColorlieStatus::Ok);
    assert_eq!(last_error(), "");
    unsafe {
        colorlie_algebra_free(sl2);
        colorlie_algebra_free(ptr::null_mut());
        colorlie_string_free(ptr::null_mut());
    }
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(colorlie_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_exports() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/colorlie.h")).unwrap();
    for f in [
        "colorlie_last_error",
        "colorlie_version",
        "colorlie_algebra_from_name",
        "colorlie_algebra_from_json",
        "colorlie_algebra_free",
        "colorlie_algebra_dim",
        "colorlie_check_axioms",
        "colorlie_killing_determinant",
        "colorlie_string_free",
        "colorlie_codim",
        "colorlie_graded_codim",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct ColorlieAlgebra ColorlieAlgebra;"));
    assert!(header.contains("COLORLIE_STATUS_OK = 0"));
}
