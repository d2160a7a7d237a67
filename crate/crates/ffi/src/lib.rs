//! C ABI over the unary-forms library.
//!
//! Conventions: field handles are opaque and freed with [`uf_field_free`];
//! every call returns a [`UfStatus`]; structured results come back as
//! JSON strings allocated here and released with [`uf_string_free`].  The
//! last error message of the calling thread is available through
//! [`uf_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use unary_forms::bounds::{
    blichfeldt_bound, cube_slice_volume, facet_bound, pisot_height_bound, FacetBoundInput,
};
use unary_forms::field::{FieldData, TotallyPositiveElement};
use unary_forms::field_file::{load_field_file, quadratic_field, save_field_file, FieldFile};
use unary_forms::lattice::{
    enumerate_facet_candidates, pisot_search, LogUnitLattice, UnitExponentVector,
};
use unary_forms::pell::pell_fundamental_unit;
use unary_forms::reduction::{reduce_unary, verify_reduction_bounds};
use unary_forms::Error;

/// Call outcome; anything but OK leaves a message for [`uf_last_error`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UfStatus {
    /// Success.
    Ok = 0,
    /// A pointer argument was null or an output slot was missing.
    InvalidArgument = 1,
    /// Input failed validation (bad field data, parameters out of range).
    ValidationFailed = 2,
    /// The computation itself could not complete.
    ComputeFailed = 3,
    /// A panic was caught at the boundary.
    Panic = 4,
}

/// Opaque field handle: validated field data plus its log-unit lattice
/// (absent for unit-rank-0 fields).
pub struct UfField {
    data: FieldData,
    lattice: Option<LogUnitLattice>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = Some(CString::new(sanitized).unwrap());
    });
}

fn status_of(err: &Error) -> UfStatus {
    match err {
        Error::Io(_)
        | Error::Json(_)
        | Error::FieldInvariant(_)
        | Error::InvalidSignature { .. }
        | Error::SignatureMismatch(..)
        | Error::GeneratorNorm { .. }
        | Error::Parameter(_)
        | Error::NotSquarefree(_)
        | Error::PellRange(_)
        | Error::DeltaWindow { .. }
        | Error::MixedSignature { .. }
        | Error::NotPisot(_)
        | Error::UnitRankZero
        | Error::TargetNotInHyperplane(_)
        | Error::AutomorphismIndex { .. }
        | Error::ZeroCoordinate(_)
        | Error::NonFinite(_) => UfStatus::ValidationFailed,
        _ => UfStatus::ComputeFailed,
    }
}

fn fail(err: Error) -> UfStatus {
    let status = status_of(&err);
    set_error(&err.to_string());
    status
}

fn guard<F: FnOnce() -> UfStatus>(f: F) -> UfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("panic at the FFI boundary");
            UfStatus::Panic
        }
    }
}

/// # Safety
/// `ptr` must be null or a valid nul-terminated string.
unsafe fn read_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, UfStatus> {
    if ptr.is_null() {
        set_error(&format!("{what} is null"));
        return Err(UfStatus::InvalidArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error(&format!("{what} is not valid UTF-8"));
        UfStatus::InvalidArgument
    })
}

fn write_string(out: *mut *mut c_char, value: String) -> UfStatus {
    if out.is_null() {
        set_error("output pointer is null");
        return UfStatus::InvalidArgument;
    }
    let c = CString::new(value.replace('\0', " ")).unwrap();
    unsafe { *out = c.into_raw() };
    UfStatus::Ok
}

fn write_f64(out: *mut f64, value: f64) -> UfStatus {
    if out.is_null() {
        set_error("output pointer is null");
        return UfStatus::InvalidArgument;
    }
    unsafe { *out = value };
    UfStatus::Ok
}

fn make_field(data: FieldData, out: *mut *mut UfField) -> UfStatus {
    if out.is_null() {
        set_error("output handle pointer is null");
        return UfStatus::InvalidArgument;
    }
    let lattice = if data.signature.unit_rank() > 0 {
        match LogUnitLattice::build(&data) {
            Ok(l) => Some(l),
            Err(e) => return fail(e),
        }
    } else {
        None
    };
    let handle = Box::new(UfField { data, lattice });
    unsafe { *out = Box::into_raw(handle) };
    UfStatus::Ok
}

/// # Safety
/// `field` must be a live handle from `uf_field_load`/`uf_field_from_json`.
unsafe fn field_ref<'a>(field: *const UfField) -> Result<&'a UfField, UfStatus> {
    if field.is_null() {
        set_error("field handle is null");
        return Err(UfStatus::InvalidArgument);
    }
    Ok(&*field)
}

fn lattice_of(field: &UfField) -> Result<&LogUnitLattice, UfStatus> {
    field.lattice.as_ref().ok_or_else(|| {
        set_error("field has unit rank 0: no log-unit lattice");
        UfStatus::ValidationFailed
    })
}

/// Last error message of this thread, or null; free with `uf_string_free`.
#[no_mangle]
pub extern "C" fn uf_last_error() -> *mut c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(msg) => msg.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer previously returned by this library and
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn uf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Loads and validates a JSON field file.
///
/// # Safety
/// `path` must be a valid nul-terminated string and `out` a valid slot.
#[no_mangle]
pub unsafe extern "C" fn uf_field_load(path: *const c_char, out: *mut *mut UfField) -> UfStatus {
    guard(|| {
        let path = match read_str(path, "path") {
            Ok(p) => PathBuf::from(p),
            Err(s) => return s,
        };
        match load_field_file(&path) {
            Ok(data) => make_field(data, out),
            Err(e) => fail(e),
        }
    })
}

/// Parses and validates a field file held in a JSON string.
///
/// # Safety
/// `json` must be a valid nul-terminated string and `out` a valid slot.
#[no_mangle]
pub unsafe extern "C" fn uf_field_from_json(
    json: *const c_char,
    out: *mut *mut UfField,
) -> UfStatus {
    guard(|| {
        let text = match read_str(json, "json") {
            Ok(t) => t,
            Err(s) => return s,
        };
        match FieldFile::from_json_str(text).and_then(FieldFile::into_field) {
            Ok(data) => make_field(data, out),
            Err(e) => fail(e),
        }
    })
}

/// Releases a field handle.
///
/// # Safety
/// `field` must be null or a live handle; it must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn uf_field_free(field: *mut UfField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Reads the signature (r, s) of a field handle.
///
/// # Safety
/// `field` must be a live handle; `r_out` and `s_out` must be valid slots.
#[no_mangle]
pub unsafe extern "C" fn uf_field_signature(
    field: *const UfField,
    r_out: *mut usize,
    s_out: *mut usize,
) -> UfStatus {
    guard(|| {
        let handle = match field_ref(field) {
            Ok(h) => h,
            Err(s) => return s,
        };
        if r_out.is_null() || s_out.is_null() {
            set_error("output pointer is null");
            return UfStatus::InvalidArgument;
        }
        *r_out = handle.data.signature.r;
        *s_out = handle.data.signature.s;
        UfStatus::Ok
    })
}

/// Standard regulator of the field's log-unit lattice.
///
/// # Safety
/// `field` must be a live handle; `out` must be a valid slot.
#[no_mangle]
pub unsafe extern "C" fn uf_regulator(field: *const UfField, out: *mut f64) -> UfStatus {
    guard(|| {
        let handle = match field_ref(field) {
            Ok(h) => h,
            Err(s) => return s,
        };
        let lattice = match lattice_of(handle) {
            Ok(l) => l,
            Err(s) => return s,
        };
        write_f64(out, lattice.regulator_report().regulator)
    })
}

/// Pisot-unit search; the result is returned as a JSON document.
///
/// # Safety
/// `field` must be a live handle; `out_json` must be a valid slot.
#[no_mangle]
pub unsafe extern "C" fn uf_pisot_search_json(
    field: *const UfField,
    epsilon: f64,
    out_json: *mut *mut c_char,
) -> UfStatus {
    guard(|| {
        let handle = match field_ref(field) {
            Ok(h) => h,
            Err(s) => return s,
        };
        let lattice = match lattice_of(handle) {
            Ok(l) => l,
            Err(s) => return s,
        };
        match pisot_search(&handle.data, lattice, epsilon) {
            Ok(found) => write_string(out_json, serde_json::to_string(&found).unwrap()),
            Err(e) => fail(e),
        }
    })
}

/// Runs the reduction loop on the r+s coordinates at `a` (length `a_len`).
/// `exponents` may be null (then `exponents_len` must be 0) to reduce with
/// the Pisot search result.  Returns the certificate as JSON.
///
/// # Safety
/// `field` must be a live handle; `a` must point to `a_len` doubles;
/// `exponents`, when non-null, must point to `exponents_len` values;
/// `out_json` must be a valid slot.
#[no_mangle]
pub unsafe extern "C" fn uf_reduce_json(
    field: *const UfField,
    a: *const f64,
    a_len: usize,
    delta: f64,
    exponents: *const i64,
    exponents_len: usize,
    out_json: *mut *mut c_char,
) -> UfStatus {
    guard(|| {
        let handle = match field_ref(field) {
            Ok(h) => h,
            Err(s) => return s,
        };
        let lattice = match lattice_of(handle) {
            Ok(l) => l,
            Err(s) => return s,
        };
        if a.is_null() {
            set_error("coordinate pointer is null");
            return UfStatus::InvalidArgument;
        }
        let coords = std::slice::from_raw_parts(a, a_len).to_vec();
        let element = match TotallyPositiveElement::new(handle.data.signature, coords) {
            Ok(e) => e,
            Err(e) => return fail(e),
        };
        let unit = if exponents.is_null() {
            if exponents_len != 0 {
                set_error("exponents pointer is null but exponents_len is nonzero");
                return UfStatus::InvalidArgument;
            }
            match pisot_search(&handle.data, lattice, 0.01) {
                Ok(found) => found.unit,
                Err(e) => return fail(e),
            }
        } else {
            UnitExponentVector::new(std::slice::from_raw_parts(exponents, exponents_len).to_vec())
        };
        match reduce_unary(&handle.data, lattice, &element, &unit, delta) {
            Ok(cert) => {
                let mut value = serde_json::to_value(&cert).unwrap();
                value["reduced"] = serde_json::json!(cert.reduced.coords());
                write_string(out_json, value.to_string())
            }
            Err(e) => fail(e),
        }
    })
}

/// Reduction plus the exact integer minimum and both output inequalities,
/// as JSON.
///
/// # Safety
/// As for [`uf_reduce_json`], without the exponent arguments.
#[no_mangle]
pub unsafe extern "C" fn uf_verify_json(
    field: *const UfField,
    a: *const f64,
    a_len: usize,
    delta: f64,
    out_json: *mut *mut c_char,
) -> UfStatus {
    guard(|| {
        let handle = match field_ref(field) {
            Ok(h) => h,
            Err(s) => return s,
        };
        let lattice = match lattice_of(handle) {
            Ok(l) => l,
            Err(s) => return s,
        };
        if a.is_null() {
            set_error("coordinate pointer is null");
            return UfStatus::InvalidArgument;
        }
        let coords = std::slice::from_raw_parts(a, a_len).to_vec();
        let element = match TotallyPositiveElement::new(handle.data.signature, coords) {
            Ok(e) => e,
            Err(e) => return fail(e),
        };
        let unit = match pisot_search(&handle.data, lattice, 0.01) {
            Ok(found) => found.unit,
            Err(e) => return fail(e),
        };
        match verify_reduction_bounds(&handle.data, lattice, &element, &unit, delta) {
            Ok(report) => write_string(out_json, serde_json::to_string(&report).unwrap()),
            Err(e) => fail(e),
        }
    })
}

/// Facet-candidate enumeration inside the log t_K cube, as JSON.
///
/// # Safety
/// `field` must be a live handle; `out_json` must be a valid slot.
#[no_mangle]
pub unsafe extern "C" fn uf_enumerate_facets_json(
    field: *const UfField,
    out_json: *mut *mut c_char,
) -> UfStatus {
    guard(|| {
        let handle = match field_ref(field) {
            Ok(h) => h,
            Err(s) => return s,
        };
        let lattice = match lattice_of(handle) {
            Ok(l) => l,
            Err(s) => return s,
        };
        match enumerate_facet_candidates(&handle.data, lattice) {
            Ok(fc) => write_string(out_json, serde_json::to_string(&fc).unwrap()),
            Err(e) => fail(e),
        }
    })
}

/// Facet-count bound; `abstract_exponent` selects the variant exponent.
///
/// # Safety
/// `out` must be a valid slot.
#[no_mangle]
pub unsafe extern "C" fn uf_facet_bound(
    r: usize,
    s: usize,
    regulator: f64,
    abstract_exponent: bool,
    out: *mut f64,
) -> UfStatus {
    guard(|| {
        let input = match FacetBoundInput::new(r, s, regulator) {
            Ok(i) => i,
            Err(e) => return fail(e),
        };
        match facet_bound(input, abstract_exponent) {
            Ok(report) => write_f64(out, report.bound),
            Err(e) => fail(e),
        }
    })
}

/// Volume of the central trace-zero section of the side-length cube.
///
/// # Safety
/// `out` must be a valid slot.
#[no_mangle]
pub unsafe extern "C" fn uf_cube_slice_volume(side: f64, n: u32, out: *mut f64) -> UfStatus {
    guard(|| match cube_slice_volume(side, n) {
        Ok(v) => write_f64(out, v),
        Err(e) => fail(e),
    })
}

/// n! volume + n.
///
/// # Safety
/// `out` must be a valid slot.
#[no_mangle]
pub unsafe extern "C" fn uf_blichfeldt_bound(volume: f64, n: u32, out: *mut f64) -> UfStatus {
    guard(|| match blichfeldt_bound(volume, n) {
        Ok(v) => write_f64(out, v),
        Err(e) => fail(e),
    })
}

/// Height bound for the shortest Pisot unit.
///
/// # Safety
/// `out` must be a valid slot.
#[no_mangle]
pub unsafe extern "C" fn uf_pisot_height_bound(
    r: usize,
    s: usize,
    regulator: f64,
    gamma: u8,
    epsilon: f64,
    out: *mut f64,
) -> UfStatus {
    guard(|| match pisot_height_bound(r, s, regulator, gamma, epsilon) {
        Ok(v) => write_f64(out, v),
        Err(e) => fail(e),
    })
}

/// Fundamental unit of Q(sqrt(d)) as JSON {d, p, q, denom, norm, regulator};
/// p and q are decimal strings since they outgrow any fixed width.
///
/// # Safety
/// `out_json` must be a valid slot.
#[no_mangle]
pub unsafe extern "C" fn uf_pell_json(d: u64, out_json: *mut *mut c_char) -> UfStatus {
    guard(|| match pell_fundamental_unit(d) {
        Ok(pell) => write_string(
            out_json,
            serde_json::json!({
                "d": pell.d,
                "p": pell.p.to_string(),
                "q": pell.q.to_string(),
                "denom": pell.denom,
                "norm": pell.norm,
                "regulator": pell.regulator,
            })
            .to_string(),
        ),
        Err(e) => fail(e),
    })
}

/// Writes the field file of Q(sqrt(d)) to `path`.
///
/// # Safety
/// `path` must be a valid nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn uf_gen_quadratic(d: u64, path: *const c_char) -> UfStatus {
    guard(|| {
        let path = match read_str(path, "path") {
            Ok(p) => PathBuf::from(p),
            Err(s) => return s,
        };
        match quadratic_field(d).and_then(|f| save_field_file(&f, &path)) {
            Ok(()) => UfStatus::Ok,
            Err(e) => fail(e),
        }
    })
}
