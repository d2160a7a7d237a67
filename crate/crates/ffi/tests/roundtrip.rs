//! Exercises the C ABI from Rust: handle lifecycle, status codes, error
//! messages, and the JSON-carrying calls.

use std::ffi::{CStr, CString};
use std::ptr;

use unary_forms_ffi::*;

fn fields_dir() -> std::path::PathBuf {
    std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fields")
}

fn take_string(ptr: *mut std::ffi::c_char) -> String {
    assert!(!ptr.is_null());
    let s = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_owned();
    unsafe { uf_string_free(ptr) };
    s
}

fn last_error() -> String {
    take_string(uf_last_error())
}

fn load(name: &str) -> *mut UfField {
    let path = CString::new(fields_dir().join(name).display().to_string()).unwrap();
    let mut handle: *mut UfField = ptr::null_mut();
    let status = unsafe { uf_field_load(path.as_ptr(), &mut handle) };
    assert_eq!(status, UfStatus::Ok, "{}", last_error());
    assert!(!handle.is_null());
    handle
}

#[test]
fn load_signature_regulator_free() {
    let field = load("qsqrt2.json");
    let (mut r, mut s) = (0usize, 0usize);
    assert_eq!(unsafe { uf_field_signature(field, &mut r, &mut s) }, UfStatus::Ok);
    assert_eq!((r, s), (2, 0));
    let mut reg = 0.0f64;
    assert_eq!(unsafe { uf_regulator(field, &mut reg) }, UfStatus::Ok);
    assert!((reg - 0.881_373_587_019_543).abs() < 1e-12);
    unsafe { uf_field_free(field) };
}

#[test]
fn null_arguments_are_invalid() {
    let mut handle: *mut UfField = ptr::null_mut();
    assert_eq!(
        unsafe { uf_field_load(ptr::null(), &mut handle) },
        UfStatus::InvalidArgument
    );
    assert!(last_error().contains("null"));
    let mut reg = 0.0;
    assert_eq!(unsafe { uf_regulator(ptr::null(), &mut reg) }, UfStatus::InvalidArgument);
}

#[test]
fn missing_file_reports_validation_failure() {
    let path = CString::new("/nonexistent/field.json").unwrap();
    let mut handle: *mut UfField = ptr::null_mut();
    let status = unsafe { uf_field_load(path.as_ptr(), &mut handle) };
    assert_eq!(status, UfStatus::ValidationFailed);
    assert!(handle.is_null());
}

#[test]
fn field_from_json_rejects_bad_units() {
    let text = std::fs::read_to_string(fields_dir().join("qsqrt2.json")).unwrap();
    let corrupted = text.replacen("2.4142135623730949e0", "4.8284271247461898e0", 1);
    let json = CString::new(corrupted).unwrap();
    let mut handle: *mut UfField = ptr::null_mut();
    let status = unsafe { uf_field_from_json(json.as_ptr(), &mut handle) };
    assert_eq!(status, UfStatus::ValidationFailed);
    assert!(last_error().contains("norm"));
}

#[test]
fn pisot_reduce_verify_round_trip() {
    let field = load("qsqrt2.json");

    let mut json: *mut std::ffi::c_char = ptr::null_mut();
    assert_eq!(unsafe { uf_pisot_search_json(field, 0.01, &mut json) }, UfStatus::Ok);
    let found: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(found["unit"]["exponents"], serde_json::json!([1]));

    let u = 1.0 + std::f64::consts::SQRT_2;
    let a = [u.powi(4), u.powi(-4)];

    let mut json: *mut std::ffi::c_char = ptr::null_mut();
    let status = unsafe {
        uf_reduce_json(field, a.as_ptr(), a.len(), 0.9, ptr::null(), 0, &mut json)
    };
    assert_eq!(status, UfStatus::Ok, "{}", last_error());
    let cert: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(cert["rounds"], 2);
    assert!((cert["trace_final"].as_f64().unwrap() - 2.0).abs() < 1e-9);
    assert!((cert["reduced"][0].as_f64().unwrap() - 1.0).abs() < 1e-9);

    let exps = [1i64];
    let mut json: *mut std::ffi::c_char = ptr::null_mut();
    let status = unsafe {
        uf_reduce_json(field, a.as_ptr(), a.len(), 0.9, exps.as_ptr(), exps.len(), &mut json)
    };
    assert_eq!(status, UfStatus::Ok);
    take_string(json);

    let mut json: *mut std::ffi::c_char = ptr::null_mut();
    let status = unsafe { uf_verify_json(field, a.as_ptr(), a.len(), 0.9, &mut json) };
    assert_eq!(status, UfStatus::Ok, "{}", last_error());
    let report: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(report["passed"], true);

    // bad delta surfaces as a validation failure with a message
    let mut json: *mut std::ffi::c_char = ptr::null_mut();
    let status = unsafe { uf_verify_json(field, a.as_ptr(), a.len(), 1.5, &mut json) };
    assert_eq!(status, UfStatus::ValidationFailed);
    assert!(last_error().contains("delta"));

    unsafe { uf_field_free(field) };
}

#[test]
fn facet_enumeration_and_bounds() {
    let field = load("zeta7plus.json");
    let mut json: *mut std::ffi::c_char = ptr::null_mut();
    assert_eq!(unsafe { uf_enumerate_facets_json(field, &mut json) }, UfStatus::Ok);
    let fc: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(fc["half_count"], 6);
    unsafe { uf_field_free(field) };

    let mut bound = 0.0f64;
    let status = unsafe { uf_facet_bound(2, 0, 0.881_373_587_019_543, false, &mut bound) };
    assert_eq!(status, UfStatus::Ok);
    assert!((bound - 4.1757).abs() < 1e-3);

    let mut slice = 0.0f64;
    assert_eq!(unsafe { uf_cube_slice_volume(1.0, 2, &mut slice) }, UfStatus::Ok);
    assert!((slice - std::f64::consts::SQRT_2).abs() < 1e-12);

    let mut b = 0.0f64;
    assert_eq!(unsafe { uf_blichfeldt_bound(2.0, 1, &mut b) }, UfStatus::Ok);
    assert_eq!(b, 3.0);

    let mut h = 0.0f64;
    assert_eq!(
        unsafe { uf_pisot_height_bound(0, 2, 0.962_423_650_119_207, 2, 0.01, &mut h) },
        UfStatus::Ok
    );
    assert!((h - 0.243_105_912).abs() < 1e-6);
    assert_eq!(
        unsafe { uf_pisot_height_bound(1, 1, 0.5, 1, 0.01, &mut h) },
        UfStatus::ValidationFailed
    );
}

#[test]
fn pell_and_generation() {
    let mut json: *mut std::ffi::c_char = ptr::null_mut();
    assert_eq!(unsafe { uf_pell_json(13, &mut json) }, UfStatus::Ok);
    let pell: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(pell["p"], "3");
    assert_eq!(pell["q"], "1");
    assert_eq!(pell["denom"], 2);

    assert_eq!(unsafe { uf_pell_json(12, &mut json) }, UfStatus::ValidationFailed);
    assert!(last_error().contains("squarefree"));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q3.json");
    let path = CString::new(out.display().to_string()).unwrap();
    assert_eq!(unsafe { uf_gen_quadratic(3, path.as_ptr()) }, UfStatus::Ok);
    let mut handle: *mut UfField = ptr::null_mut();
    assert_eq!(unsafe { uf_field_load(path.as_ptr(), &mut handle) }, UfStatus::Ok);
    let mut reg = 0.0;
    assert_eq!(unsafe { uf_regulator(handle, &mut reg) }, UfStatus::Ok);
    assert!((reg - (2.0 + 3.0f64.sqrt()).ln()).abs() < 1e-12);
    unsafe { uf_field_free(handle) };
}
