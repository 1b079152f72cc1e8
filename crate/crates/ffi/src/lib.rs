//! C ABI over the `colorlie` engine.
//!
//! Algebras are opaque handles created by `colorlie_algebra_from_name` or
//! `colorlie_algebra_from_json` and released with `colorlie_algebra_free`.
//! Every fallible call returns a `ColorlieStatus`; on failure the message is
//! available from `colorlie_last_error` until the next call on the same
//! thread. Strings returned to the caller are freed with
//! `colorlie_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use colorlie::algebra::{check_color_axioms, killing_matrix, GradedAlgebra};
use colorlie::cli::resolve_algebra;
use colorlie::codim::{codim_graded_total, codim_lie, codim_plain, CodimMode, CodimOptions, Status};
use colorlie::error::Error;
use colorlie::group::{canonical_cocycle, literal_sign_table, trivial_cocycle, Bicharacter, SignTable};
use colorlie::linalg::format_rational;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColorlieStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    /// A size guard or expansion cap was exceeded.
    TooLarge = 4,
    /// A construction or search failed.
    Failed = 5,
    Io = 6,
    /// A panic was caught at the boundary.
    Internal = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColorlieMode {
    Exact = 0,
    Randomized = 1,
    Auto = 2,
}

/// Opaque algebra handle.
pub struct ColorlieAlgebra {
    inner: GradedAlgebra,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> ColorlieStatus {
    match e {
        Error::Parse(_) | Error::Json(_) => ColorlieStatus::Parse,
        Error::CapExceeded { .. } | Error::SizeGuard { .. } => ColorlieStatus::TooLarge,
        Error::BudgetExhausted(_) | Error::ConstructionFailed(_) => ColorlieStatus::Failed,
        Error::Io(_) => ColorlieStatus::Io,
        _ => ColorlieStatus::InvalidArgument,
    }
}

/// Runs `f`, recording any error or panic.
fn guard(f: impl FnOnce() -> Result<(), (ColorlieStatus, String)>) -> ColorlieStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            ColorlieStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            ColorlieStatus::Internal
        }
    }
}

fn lib_err(e: Error) -> (ColorlieStatus, String) {
    (status_of(&e), e.to_string())
}

fn null_err(what: &str) -> (ColorlieStatus, String) {
    (ColorlieStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (ColorlieStatus, String)> {
    if p.is_null() {
        return Err(null_err(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (ColorlieStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn algebra_ref<'a>(a: *const ColorlieAlgebra) -> Result<&'a GradedAlgebra, (ColorlieStatus, String)> {
    a.as_ref().map(|h| &h.inner).ok_or_else(|| null_err("algebra"))
}

fn cocycle_by_name(name: &str) -> Result<SignTable, (ColorlieStatus, String)> {
    match name {
        "canonical" => Ok(*canonical_cocycle().table()),
        "literal" => Ok(literal_sign_table()),
        "trivial" => Ok(*trivial_cocycle().table()),
        other => Err((ColorlieStatus::InvalidArgument, format!("unknown cocycle {other:?}"))),
    }
}

fn options(mode: ColorlieMode, seed: u64) -> CodimOptions {
    CodimOptions {
        mode: match mode {
            ColorlieMode::Exact => CodimMode::Exact,
            ColorlieMode::Randomized => CodimMode::Randomized,
            ColorlieMode::Auto => CodimMode::Auto,
        },
        seed,
        ..CodimOptions::default()
    }
}

fn store_string(s: String, out: *mut *mut c_char) -> Result<(), (ColorlieStatus, String)> {
    if out.is_null() {
        return Err(null_err("out"));
    }
    let c = CString::new(s).map_err(|_| (ColorlieStatus::Internal, "string contains NUL".to_string()))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn colorlie_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn colorlie_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds an algebra from a name such as `sl2`, `sl2xsl2`, `abelian:3`, `L`,
/// `L:sl3` or a spec file path. `cocycle` is `canonical`, `literal` or
/// `trivial` and only matters for `L` names.
///
/// # Safety
/// `name` and `cocycle` must be NUL-terminated strings; `out` must be valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn colorlie_algebra_from_name(
    name: *const c_char,
    cocycle: *const c_char,
    out: *mut *mut ColorlieAlgebra,
) -> ColorlieStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let name = read_str(name, "name")?;
        let table = cocycle_by_name(read_str(cocycle, "cocycle")?)?;
        let (inner, _) = resolve_algebra(name, &table).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(ColorlieAlgebra { inner }));
        Ok(())
    })
}

/// Builds an algebra from the JSON spec format.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn colorlie_algebra_from_json(json: *const c_char, out: *mut *mut ColorlieAlgebra) -> ColorlieStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let inner = GradedAlgebra::from_json(read_str(json, "json")?).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(ColorlieAlgebra { inner }));
        Ok(())
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `a` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn colorlie_algebra_free(a: *mut ColorlieAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// # Safety
/// `a` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn colorlie_algebra_dim(a: *const ColorlieAlgebra, out: *mut usize) -> ColorlieStatus {
    guard(|| {
        let a = algebra_ref(a)?;
        if out.is_null() {
            return Err(null_err("out"));
        }
        *out = a.dim();
        Ok(())
    })
}

/// Counts color-axiom violations over all basis pairs and triples with the
/// canonical bicharacter (`canonical_beta`) or the trivial one.
///
/// # Safety
/// `a` must be a live handle and `violations` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn colorlie_check_axioms(
    a: *const ColorlieAlgebra,
    canonical_beta: bool,
    violations: *mut usize,
) -> ColorlieStatus {
    guard(|| {
        let a = algebra_ref(a)?;
        if violations.is_null() {
            return Err(null_err("violations"));
        }
        let beta = if canonical_beta { Bicharacter::canonical() } else { Bicharacter::trivial() };
        *violations = check_color_axioms(a, &beta).violation_count();
        Ok(())
    })
}

/// Determinant of the Killing matrix as an exact rational string.
///
/// # Safety
/// `a` must be a live handle and `out` valid for writes. Free the result
/// with `colorlie_string_free`.
#[no_mangle]
pub unsafe extern "C" fn colorlie_killing_determinant(a: *const ColorlieAlgebra, out: *mut *mut c_char) -> ColorlieStatus {
    guard(|| {
        let a = algebra_ref(a)?;
        store_string(format_rational(&killing_matrix(a).determinant()), out)
    })
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn colorlie_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn write_value(value: u128, status: Status, out_value: *mut u64, out_exact: *mut bool) -> Result<(), (ColorlieStatus, String)> {
    if out_value.is_null() {
        return Err(null_err("out_value"));
    }
    let v = u64::try_from(value).map_err(|_| (ColorlieStatus::TooLarge, format!("value {value} exceeds 64 bits")))?;
    unsafe {
        *out_value = v;
        if !out_exact.is_null() {
            *out_exact = status == Status::Exact;
        }
    }
    Ok(())
}

/// `c_n`, with left-normed rows when `lie`. `out_exact` (optional) reports
/// whether the value is exact or a lower bound.
///
/// # Safety
/// `a` must be a live handle; `out_value` valid for writes; `out_exact`
/// null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn colorlie_codim(
    a: *const ColorlieAlgebra,
    n: usize,
    lie: bool,
    mode: ColorlieMode,
    seed: u64,
    out_value: *mut u64,
    out_exact: *mut bool,
) -> ColorlieStatus {
    guard(|| {
        let a = algebra_ref(a)?;
        let opts = options(mode, seed);
        let r = if lie { codim_lie(a, n, &opts) } else { codim_plain(a, n, &opts) }.map_err(lib_err)?;
        write_value(r.value, r.status, out_value, out_exact)
    })
}

/// Graded codimension `c_n^gr`.
///
/// # Safety
/// As for `colorlie_codim`.
#[no_mangle]
pub unsafe extern "C" fn colorlie_graded_codim(
    a: *const ColorlieAlgebra,
    n: usize,
    mode: ColorlieMode,
    seed: u64,
    out_value: *mut u64,
    out_exact: *mut bool,
) -> ColorlieStatus {
    guard(|| {
        let a = algebra_ref(a)?;
        let r = codim_graded_total(a, n, &options(mode, seed)).map_err(lib_err)?;
        write_value(r.value, r.status, out_value, out_exact)
    })
}
