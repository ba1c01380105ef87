//! C ABI over the `hscheck` checker.
//!
//! Reports are returned as opaque handles owned by the caller and released
//! with [`hs_report_free`]. Strings handed out by the library are borrowed
//! from the handle (or are static) and must not be freed by the caller.
//! The message of the last failing call on the current thread is available
//! through [`hs_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hscheck::checker::{check, check_local, CheckerConfig, WitnessReport};
use hscheck::deltamod::bernoulli_b1_omega;
use hscheck::localorders::LocalCase;
use hscheck::numfield::NumberFieldDescription;
use hscheck::Error;

/// Result codes for every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    Precondition = 5,
    PrecisionExhausted = 6,
    Unsupported = 7,
    Internal = 8,
    Panic = 9,
}

impl From<&Error> for HsStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse(_) => HsStatus::Parse,
            Error::InvalidInput(_)
            | Error::Domain(_)
            | Error::NotInvertible(_)
            | Error::ContextMismatch(_)
            | Error::Io(_) => HsStatus::InvalidInput,
            Error::Precondition(_) | Error::RequiresSquarefreeSplit(_) => HsStatus::Precondition,
            Error::PrecisionExhausted(_) => HsStatus::PrecisionExhausted,
            Error::UnsupportedDegree { .. } | Error::NilpotencyTooLarge(_) => HsStatus::Unsupported,
            Error::Internal(_) => HsStatus::Internal,
        }
    }
}

/// Opaque report handle.
pub struct HsReport {
    json: CString,
    verdict: CString,
    exit_code: i32,
}

impl HsReport {
    fn new(report: &WitnessReport) -> Self {
        let verdict = report
            .verdict
            .as_ref()
            .map(|v| serde_json::to_string(v).expect("verdict serializes"))
            .unwrap_or_else(|| "null".into());
        HsReport {
            json: CString::new(report.to_canonical_json()).expect("json has no NUL"),
            verdict: CString::new(verdict).expect("json has no NUL"),
            exit_code: report.verdict.as_ref().map_or(3, |v| v.exit_code()),
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<Vec<u8>>) {
    let mut bytes = msg.into();
    bytes.retain(|&b| b != 0);
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(bytes).expect("NULs removed"));
}

fn guard(f: impl FnOnce() -> Result<(), HsStatus>) -> HsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HsStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside hscheck");
            HsStatus::Panic
        }
    }
}

fn fail(e: Error) -> HsStatus {
    let s = HsStatus::from(&e);
    set_error(e.to_string());
    s
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, HsStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(HsStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        HsStatus::InvalidUtf8
    })
}

fn config(precision: u32) -> Result<CheckerConfig, HsStatus> {
    let c = CheckerConfig {
        precision,
        ..Default::default()
    };
    c.validate().map_err(fail)?;
    Ok(c)
}

unsafe fn store(out: *mut *mut HsReport, report: &WitnessReport) {
    *out = Box::into_raw(Box::new(HsReport::new(report)));
}

/// Runs the full check on the field defined by `poly` at `prime`.
///
/// # Safety
/// `poly` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hs_check_field(
    poly: *const c_char,
    prime: u64,
    precision: u32,
    out: *mut *mut HsReport,
) -> HsStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return Err(HsStatus::NullPointer);
        }
        *out = ptr::null_mut();
        let field = NumberFieldDescription::parse(read_str(poly)?).map_err(fail)?;
        let (_, report) = check(&field, prime, &config(precision)?).map_err(fail)?;
        store(out, &report);
        Ok(())
    })
}

/// Runs the local suite for `(p, e, f)` and the named case.
///
/// # Safety
/// `case_name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hs_check_local(
    p: u64,
    e: u32,
    f: u32,
    case_name: *const c_char,
    precision: u32,
    out: *mut *mut HsReport,
) -> HsStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return Err(HsStatus::NullPointer);
        }
        *out = ptr::null_mut();
        let case: LocalCase = read_str(case_name)?.parse().map_err(fail)?;
        let report = check_local(p, e, f, case, &config(precision)?).map_err(fail)?;
        store(out, &report);
        Ok(())
    })
}

/// Verdict as a compact JSON object, borrowed from `report`.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hs_report_verdict(report: *const HsReport) -> *const c_char {
    report.as_ref().map_or(ptr::null(), |r| r.verdict.as_ptr())
}

/// Canonical JSON report, borrowed from `report`.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hs_report_json(report: *const HsReport) -> *const c_char {
    report.as_ref().map_or(ptr::null(), |r| r.json.as_ptr())
}

/// Exit code the command-line tool would return, or -1 for a null handle.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hs_report_exit_code(report: *const HsReport) -> i32 {
    report.as_ref().map_or(-1, |r| r.exit_code)
}

/// # Safety
/// `report` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hs_report_free(report: *mut HsReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Residue mod `p` of `B_{1,ω}`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hs_bernoulli_b1_omega_residue(p: u64, precision: u32, out: *mut u64) -> HsStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return Err(HsStatus::NullPointer);
        }
        *out = bernoulli_b1_omega(p, precision).map_err(fail)?.residue();
        Ok(())
    })
}

/// Message of the last failure on this thread; empty if none.
#[no_mangle]
pub extern "C" fn hs_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub extern "C" fn hs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
