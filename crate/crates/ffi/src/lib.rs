//! C ABI over `skewone`.
//!
//! Everything crosses the boundary as UTF-8 JSON in NUL-terminated strings,
//! using the same documents as the command-line runner. Strings returned
//! through `out` parameters are owned by the caller and released with
//! [`sda_string_free`]; algebra handles are released with
//! [`sda_algebra_free`]. On any status other than `SDA_STATUS_OK` the
//! message is available from [`sda_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use serde_json::Value;
use skewone::cli::run_text;
use skewone::doc::{generic_value, parse_algebra, JobOptions};
use skewone::error::Error;
use skewone::scalars::{AnyField, Field, PrimeField, Rationals};
use skewone::structurable::{verify_structurable, GenericAlgebra};
use skewone::tensor::{vector_from_value, vector_to_value};
use skewone::verify::SamplingPolicy;

/// Result of every fallible call. The first four values match the
/// command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SdaStatus {
    Ok = 0,
    /// A verification ran and at least one check failed.
    CheckFailed = 1,
    /// Malformed JSON or a document that does not fit its schema.
    Schema = 2,
    /// Well-formed input refused by a precondition.
    Precondition = 3,
    NullPointer = 4,
    /// An input string is not valid UTF-8.
    Utf8 = 5,
    /// An internal panic was caught at the boundary.
    Panic = 6,
}

impl SdaStatus {
    fn from_exit_code(code: i32) -> Self {
        match code {
            0 => SdaStatus::Ok,
            1 => SdaStatus::CheckFailed,
            2 => SdaStatus::Schema,
            _ => SdaStatus::Precondition,
        }
    }
}

enum Inner {
    Rational(GenericAlgebra<Rationals>),
    Prime(GenericAlgebra<PrimeField>),
}

/// An algebra given by structure constants over Q or F_p. Opaque.
pub struct SdaAlgebra {
    inner: Inner,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(msg).expect("NULs removed")));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(SdaStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(SdaStatus::from_exit_code(e.exit_code()), e.to_string())
    }
}

type Outcome<T> = Result<T, Failure>;

/// Runs `body` behind the panic guard and records its error message.
fn guard(body: impl FnOnce() -> Outcome<SdaStatus>) -> SdaStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SdaStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Outcome<&'a str> {
    if p.is_null() {
        return Err(Failure(SdaStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(SdaStatus::Utf8, format!("{what} is not UTF-8")))
}

unsafe fn read_json(p: *const c_char, what: &str) -> Outcome<Value> {
    let text = read_str(p, what)?;
    serde_json::from_str(text).map_err(|e| Failure(SdaStatus::Schema, format!("{what}: {e}")))
}

unsafe fn algebra<'a>(h: *const SdaAlgebra) -> Outcome<&'a SdaAlgebra> {
    h.as_ref().ok_or_else(|| Failure(SdaStatus::NullPointer, "algebra handle is null".into()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Outcome<()> {
    if out.is_null() {
        return Err(Failure(SdaStatus::NullPointer, "output pointer is null".into()));
    }
    *out = CString::new(s.replace('\0', " ")).expect("NULs removed").into_raw();
    Ok(())
}

unsafe fn check_out<T>(out: *mut *mut T) -> Outcome<()> {
    if out.is_null() {
        return Err(Failure(SdaStatus::NullPointer, "output pointer is null".into()));
    }
    *out = ptr::null_mut();
    Ok(())
}

/// Library version as a static string; never freed.
#[no_mangle]
pub extern "C" fn sda_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL. Valid until
/// the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn sda_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Frees a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sda_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs a job document, the same JSON the command-line runner accepts, and
/// stores the report in `*report`. The report is written for every status
/// that comes from the job itself (0 to 3), including failures.
///
/// # Safety
/// `job` must be a NUL-terminated string; `report` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sda_run_job(job: *const c_char, report: *mut *mut c_char) -> SdaStatus {
    guard(|| {
        check_out(report)?;
        let text = read_str(job, "job")?;
        let outcome = run_text(text, &JobOptions::default());
        let status = SdaStatus::from_exit_code(outcome.exit_code);
        if status != SdaStatus::Ok {
            let msg = outcome.document["error"]["message"].as_str().unwrap_or("a check failed");
            set_error(msg);
        }
        write_string(report, outcome.render())?;
        Ok(status)
    })
}

/// Builds an algebra from a field (`"Q"` or `{"prime": p}`) and an algebra
/// document in any presentation.
///
/// # Safety
/// Both strings must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sda_algebra_new(
    field: *const c_char,
    algebra: *const c_char,
    out: *mut *mut SdaAlgebra,
) -> SdaStatus {
    guard(|| {
        check_out(out)?;
        let field = AnyField::from_value(&read_json(field, "field")?)?;
        let doc = read_json(algebra, "algebra")?;
        let inner = match field {
            AnyField::Rational(f) => Inner::Rational(parse_algebra(&f, &doc)?.to_generic()),
            AnyField::Prime(f) => Inner::Prime(parse_algebra(&f, &doc)?.to_generic()),
        };
        *out = Box::into_raw(Box::new(SdaAlgebra { inner }));
        Ok(SdaStatus::Ok)
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `h` must come from [`sda_algebra_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sda_algebra_free(h: *mut SdaAlgebra) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Dimension over the base field; 0 for NULL.
///
/// # Safety
/// `h` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sda_algebra_dim(h: *const SdaAlgebra) -> usize {
    match h.as_ref().map(|a| &a.inner) {
        Some(Inner::Rational(g)) => g.dim(),
        Some(Inner::Prime(g)) => g.dim(),
        None => 0,
    }
}

fn element<F: Field>(g: &GenericAlgebra<F>, v: &Value, what: &str) -> Outcome<Vec<F::Elem>> {
    Ok(vector_from_value(g.field(), g.dim(), v, what)?)
}

fn product<F: Field>(g: &GenericAlgebra<F>, x: &Value, y: &Value) -> Outcome<Value> {
    let (x, y) = (element(g, x, "x")?, element(g, y, "y")?);
    Ok(vector_to_value(g.field(), &g.mul(&x, &y)))
}

fn involution<F: Field>(g: &GenericAlgebra<F>, x: &Value) -> Outcome<Value> {
    Ok(vector_to_value(g.field(), &g.conj(&element(g, x, "x")?)))
}

/// `*out = xy`, with elements as JSON coordinate arrays.
///
/// # Safety
/// `h` must be a live handle, the strings NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sda_algebra_mul(
    h: *const SdaAlgebra,
    x: *const c_char,
    y: *const c_char,
    out: *mut *mut c_char,
) -> SdaStatus {
    guard(|| {
        check_out(out)?;
        let a = algebra(h)?;
        let (x, y) = (read_json(x, "x")?, read_json(y, "y")?);
        let v = match &a.inner {
            Inner::Rational(g) => product(g, &x, &y)?,
            Inner::Prime(g) => product(g, &x, &y)?,
        };
        write_string(out, v.to_string())?;
        Ok(SdaStatus::Ok)
    })
}

/// `*out = x̄`.
///
/// # Safety
/// As for [`sda_algebra_mul`].
#[no_mangle]
pub unsafe extern "C" fn sda_algebra_conj(h: *const SdaAlgebra, x: *const c_char, out: *mut *mut c_char) -> SdaStatus {
    guard(|| {
        check_out(out)?;
        let a = algebra(h)?;
        let x = read_json(x, "x")?;
        let v = match &a.inner {
            Inner::Rational(g) => involution(g, &x)?,
            Inner::Prime(g) => involution(g, &x)?,
        };
        write_string(out, v.to_string())?;
        Ok(SdaStatus::Ok)
    })
}

/// Structure constants as a generic algebra document.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sda_algebra_to_json(h: *const SdaAlgebra, out: *mut *mut c_char) -> SdaStatus {
    guard(|| {
        check_out(out)?;
        let v = match &algebra(h)?.inner {
            Inner::Rational(g) => generic_value(g),
            Inner::Prime(g) => generic_value(g),
        };
        write_string(out, v.to_string())?;
        Ok(SdaStatus::Ok)
    })
}

/// Checks the structurable identities with the given seed and sample count
/// (0 keeps the default) and stores the report. Returns
/// `SDA_STATUS_CHECK_FAILED` when a check fails; the report is still written.
///
/// # Safety
/// `h` must be a live handle and `report` writable.
#[no_mangle]
pub unsafe extern "C" fn sda_algebra_verify(
    h: *const SdaAlgebra,
    seed: u64,
    samples: usize,
    report: *mut *mut c_char,
) -> SdaStatus {
    guard(|| {
        check_out(report)?;
        let a = algebra(h)?;
        let mut pol = SamplingPolicy { seed, ..SamplingPolicy::default() };
        if samples > 0 {
            pol.samples = samples;
        }
        let rep = match &a.inner {
            Inner::Rational(g) => verify_structurable(g, &pol),
            Inner::Prime(g) => verify_structurable(g, &pol),
        };
        write_string(report, rep.to_value().to_string())?;
        if rep.all_passed() {
            Ok(SdaStatus::Ok)
        } else {
            set_error(rep.summary());
            Ok(SdaStatus::CheckFailed)
        }
    })
}
