use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use hscheck_ffi::*;

fn text(p: *const std::ffi::c_char) -> String {
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn field_check_round_trip() {
    let poly = CString::new("x^3+x^2-2*x-1").unwrap();
    let mut report = ptr::null_mut();
    let status = unsafe { hs_check_field(poly.as_ptr(), 7, 40, &mut report) };
    assert_eq!(status, HsStatus::Ok);
    let verdict = text(unsafe { hs_report_verdict(report) });
    assert!(verdict.contains("not_hilbert_speiser"), "{verdict}");
    assert!(verdict.contains("p7-cubic"), "{verdict}");
    let json = text(unsafe { hs_report_json(report) });
    assert!(json.contains("hscheck-report/1"));
    assert!(json.ends_with('\n'));
    assert_eq!(unsafe { hs_report_exit_code(report) }, 0);
    unsafe { hs_report_free(report) };
}

#[test]
fn local_check_and_failure_exit_code() {
    let case = CString::new("deep").unwrap();
    let mut report = ptr::null_mut();
    assert_eq!(
        unsafe { hs_check_local(5, 4, 1, case.as_ptr(), 40, &mut report) },
        HsStatus::Ok
    );
    assert_eq!(unsafe { hs_report_exit_code(report) }, 0);
    unsafe { hs_report_free(report) };

    let case = CString::new("large-degree").unwrap();
    assert_eq!(
        unsafe { hs_check_local(5, 1, 1, case.as_ptr(), 40, &mut report) },
        HsStatus::Ok
    );
    assert_eq!(unsafe { hs_report_exit_code(report) }, 3);
    unsafe { hs_report_free(report) };
}

#[test]
fn errors_are_reported() {
    let mut report = ptr::null_mut();
    let bad = CString::new("x^^2").unwrap();
    assert_eq!(
        unsafe { hs_check_field(bad.as_ptr(), 7, 40, &mut report) },
        HsStatus::Parse
    );
    assert!(report.is_null());
    assert!(!text(hs_error_message()).is_empty());

    let poly = CString::new("x^2-7").unwrap();
    assert_eq!(
        unsafe { hs_check_field(poly.as_ptr(), 4, 40, &mut report) },
        HsStatus::InvalidInput
    );
    assert!(text(hs_error_message()).contains('4'));

    assert_eq!(
        unsafe { hs_check_field(ptr::null(), 7, 40, &mut report) },
        HsStatus::NullPointer
    );
    assert_eq!(
        unsafe { hs_check_field(poly.as_ptr(), 7, 40, ptr::null_mut()) },
        HsStatus::NullPointer
    );

    let case = CString::new("nonsense").unwrap();
    assert_eq!(
        unsafe { hs_check_local(5, 4, 1, case.as_ptr(), 40, &mut report) },
        HsStatus::Parse
    );

    assert_eq!(unsafe { hs_report_exit_code(ptr::null()) }, -1);
    assert!(unsafe { hs_report_json(ptr::null()) }.is_null());
    unsafe { hs_report_free(ptr::null_mut()) };
}

#[test]
fn bernoulli_residue_is_inverse_of_twelve() {
    for p in [5u64, 7, 11, 13, 97] {
        let mut r = 0u64;
        assert_eq!(unsafe { hs_bernoulli_b1_omega_residue(p, 10, &mut r) }, HsStatus::Ok);
        assert_eq!(r * 12 % p, 1, "p = {p}");
    }
    let mut r = 0u64;
    assert_eq!(
        unsafe { hs_bernoulli_b1_omega_residue(9, 10, &mut r) },
        HsStatus::InvalidInput
    );
}

#[test]
fn version_matches_crate() {
    assert_eq!(text(hs_version()), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_parses_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/hscheck.h");
    assert!(header.exists());
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-x", "c"])
        .arg(&header)
        .status()
    else {
        eprintln!("no C compiler available; header syntax not checked");
        return;
    };
    assert!(status.success());
}
