//! C ABI over `cartier-lift`.
//!
//! Curves are opaque `ClCurve` handles. Every fallible entry point returns a
//! `ClStatus`; on failure `cl_last_error` describes the cause. Strings handed
//! out by the library (JSON reports) must be released with `cl_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cartier_lift::cli::{self, CurveDescription, MorphismDescription};
use cartier_lift::curve::CurveModel;
use cartier_lift::differentials::{a_number, cartier_manin_matrix, p_rank};
use cartier_lift::Error;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    Utf8 = 2,
    /// Malformed input (bad TOML, bad field values, non-prime p, ...).
    InvalidInput = 3,
    /// Input outside an operation's precondition or the supported model classes.
    Unsupported = 4,
    /// An internal consistency check failed.
    Internal = 5,
    /// The caller's buffer is too small; the needed size was written.
    BufferTooSmall = 6,
    /// A Rust panic was caught at the boundary.
    Panic = 7,
}

/// Opaque curve handle.
pub struct ClCurve {
    model: CurveModel,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

fn status_of(e: &Error) -> ClStatus {
    match e {
        Error::Validation { .. } => ClStatus::InvalidInput,
        Error::Precondition(_) | Error::Unsupported(_) => ClStatus::Unsupported,
        Error::Dimension(_) | Error::Precision(_) | Error::Internal(_) => ClStatus::Internal,
    }
}

struct Failure(ClStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

/// Runs `body`, translating errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> ClStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            ClStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            ClStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure(ClStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Failure(ClStatus::Utf8, format!("{what}: {e}")))
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), Failure> {
    if p.is_null() {
        Err(Failure(ClStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

unsafe fn curve<'a>(c: *const ClCurve) -> Result<&'a CurveModel, Failure> {
    non_null(c, "curve")?;
    Ok(&(*c).model)
}

unsafe fn hand_out(json: serde_json::Value, out: *mut *mut c_char) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(&json).map_err(|e| Failure(ClStatus::Internal, e.to_string()))?;
    let c = CString::new(text).map_err(|e| Failure(ClStatus::Internal, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message for the last failed call on this thread; empty after a success.
///
/// The pointer stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn cl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a curve description (the CLI's TOML format) into a new handle.
///
/// # Safety
/// `toml` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cl_curve_from_toml(toml: *const c_char, out: *mut *mut ClCurve) -> ClStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = ptr::null_mut();
        let text = read_str(toml, "toml")?;
        let desc: CurveDescription = cli::parse_toml(text)?;
        let model = desc.to_model()?;
        *out = Box::into_raw(Box::new(ClCurve { model }));
        Ok(())
    })
}

/// Releases a handle from `cl_curve_from_toml`. Null is ignored.
///
/// # Safety
/// `curve` must be null or a live handle that is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cl_curve_free(curve: *mut ClCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// # Safety
/// `curve` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cl_curve_genus(curve: *const ClCurve, out: *mut u64) -> ClStatus {
    guard(|| {
        let c = self::curve(curve)?;
        non_null(out, "out")?;
        *out = c.genus();
        Ok(())
    })
}

/// # Safety
/// `curve` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cl_curve_p_rank(curve: *const ClCurve, out: *mut u64) -> ClStatus {
    guard(|| {
        let c = self::curve(curve)?;
        non_null(out, "out")?;
        *out = p_rank(c)? as u64;
        Ok(())
    })
}

/// # Safety
/// `curve` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cl_curve_a_number(curve: *const ClCurve, out: *mut u64) -> ClStatus {
    guard(|| {
        let c = self::curve(curve)?;
        non_null(out, "out")?;
        *out = a_number(c)? as u64;
        Ok(())
    })
}

/// Writes the g×g Cartier–Manin matrix row-major into `buf`.
///
/// `*genus` always receives g. If `len < g*g` nothing is written and
/// `CL_STATUS_BUFFER_TOO_SMALL` is returned. Genus 0 writes nothing and succeeds.
///
/// # Safety
/// `curve` must be a live handle, `genus` writable, and `buf` valid for `len` entries
/// (it may be null when `len` is 0).
#[no_mangle]
pub unsafe extern "C" fn cl_curve_cartier_manin(
    curve: *const ClCurve,
    buf: *mut u32,
    len: usize,
    genus: *mut usize,
) -> ClStatus {
    guard(|| {
        let c = self::curve(curve)?;
        non_null(genus, "genus")?;
        let g = c.genus() as usize;
        *genus = g;
        if g == 0 {
            return Ok(());
        }
        if len < g * g {
            return Err(Failure(ClStatus::BufferTooSmall, format!("need {} entries, got {len}", g * g)));
        }
        non_null(buf, "buf")?;
        let m = cartier_manin_matrix(c)?.matrix;
        std::slice::from_raw_parts_mut(buf, g * g).copy_from_slice(m.entries());
        Ok(())
    })
}

/// Runs `analyze-curve` on a curve description; `*out_json` receives the report.
///
/// # Safety
/// `toml` must be NUL-terminated and `out_json` writable. Free the result with `cl_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cl_analyze_curve_toml(
    toml: *const c_char,
    precision: usize,
    out_json: *mut *mut c_char,
) -> ClStatus {
    guard(|| {
        non_null(out_json, "out_json")?;
        *out_json = ptr::null_mut();
        let desc: CurveDescription = cli::parse_toml(read_str(toml, "toml")?)?;
        hand_out(cli::analyze_curve(&desc, precision)?, out_json)
    })
}

/// Runs `check-lift` on a morphism description; `*out_json` receives the report.
///
/// # Safety
/// `toml` must be NUL-terminated and `out_json` writable. Free the result with `cl_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cl_check_lift_toml(toml: *const c_char, out_json: *mut *mut c_char) -> ClStatus {
    guard(|| {
        non_null(out_json, "out_json")?;
        *out_json = ptr::null_mut();
        let desc: MorphismDescription = cli::parse_toml(read_str(toml, "toml")?)?;
        hand_out(cli::check_lift(&desc)?, out_json)
    })
}

/// Builds the Artin–Schreier example over `y^2 = f` with pole order `m`.
///
/// `f` holds `f_len` coefficients in ascending degree.
///
/// # Safety
/// `f` must be valid for `f_len` reads and `out_json` writable. Free the result with
/// `cl_string_free`.
#[no_mangle]
pub unsafe extern "C" fn cl_construct_example(
    p: u64,
    f: *const i64,
    f_len: usize,
    m: u64,
    out_json: *mut *mut c_char,
) -> ClStatus {
    guard(|| {
        non_null(out_json, "out_json")?;
        *out_json = ptr::null_mut();
        non_null(f, "f")?;
        let f = std::slice::from_raw_parts(f, f_len).to_vec();
        let desc = cli::ConstructDescription { p, f, m };
        hand_out(cli::construct_example(&desc)?, out_json)
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library that is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
