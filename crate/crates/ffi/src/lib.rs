//! C ABI over the ckpierce library: opaque family handles, integer status
//! codes, and JSON strings for structured results.
//!
//! Ownership rules: every `*mut CkpFamily` returned through an out-pointer
//! must be released with `ckp_family_free`, and every `*mut c_char` with
//! `ckp_string_free`. All functions tolerate null out-pointers by returning
//! `CKP_ERR_NULL_POINTER`; no function panics across the boundary.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use ckpierce::ck::find_ck;
use ckpierce::family::{load_family, save_family, Family};
use ckpierce::fixtures::{general_position_points, pentagon_ck};
use ckpierce::kkm::{find_piercing_lines_with, solution_to_json, SearchConfig};
use ckpierce::lowerbound::build_construction;
use ckpierce::piercing::min_piercing_lines;
use ckpierce::Error;

/// Status codes returned by every ckpierce FFI call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CkpStatus {
    CkpOk = 0,
    CkpErrParse = 1,
    CkpErrValidation = 2,
    CkpErrInvalidArgument = 3,
    CkpErrIo = 4,
    CkpErrNullPointer = 5,
    CkpErrUtf8 = 6,
    CkpErrPanic = 7,
}

/// Opaque handle to a convex family.
pub struct CkpFamily {
    inner: Family,
}

fn status_of(e: &Error) -> CkpStatus {
    match e {
        Error::Parse(_) => CkpStatus::CkpErrParse,
        Error::Validation(_) => CkpStatus::CkpErrValidation,
        Error::InvalidArgument(_) => CkpStatus::CkpErrInvalidArgument,
        Error::Io(_) => CkpStatus::CkpErrIo,
    }
}

fn guarded(f: impl FnOnce() -> CkpStatus) -> CkpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => CkpStatus::CkpErrPanic,
    }
}

/// NUL-terminated copy of `s` handed to the caller.
fn export_string(s: String) -> *mut c_char {
    // Interior NULs cannot occur in the JSON we emit; fall back to empty.
    CString::new(s)
        .unwrap_or_else(|_| CString::new("").unwrap())
        .into_raw()
}

unsafe fn family_ref<'a>(handle: *const CkpFamily) -> Option<&'a Family> {
    handle.as_ref().map(|h| &h.inner)
}

fn export_family(f: Family, out: *mut *mut CkpFamily) -> CkpStatus {
    let handle = Box::new(CkpFamily { inner: f });
    unsafe { *out = Box::into_raw(handle) };
    CkpStatus::CkpOk
}

/// Parses a family from its JSON encoding.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ckp_family_from_json(
    json: *const c_char,
    out: *mut *mut CkpFamily,
) -> CkpStatus {
    if json.is_null() || out.is_null() {
        return CkpStatus::CkpErrNullPointer;
    }
    guarded(|| {
        let Ok(text) = CStr::from_ptr(json).to_str() else {
            return CkpStatus::CkpErrUtf8;
        };
        match load_family(text) {
            Ok(f) => export_family(f, out),
            Err(e) => status_of(&e),
        }
    })
}

/// Serializes a family back to JSON. The result must be released with
/// `ckp_string_free`.
///
/// # Safety
/// `handle` must come from this library and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ckp_family_to_json(
    handle: *const CkpFamily,
    out: *mut *mut c_char,
) -> CkpStatus {
    if out.is_null() {
        return CkpStatus::CkpErrNullPointer;
    }
    guarded(|| {
        let Some(f) = family_ref(handle) else {
            return CkpStatus::CkpErrNullPointer;
        };
        *out = export_string(save_family(f));
        CkpStatus::CkpOk
    })
}

/// Number of members in the family.
///
/// # Safety
/// `handle` must come from this library and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ckp_family_len(
    handle: *const CkpFamily,
    out: *mut usize,
) -> CkpStatus {
    if out.is_null() {
        return CkpStatus::CkpErrNullPointer;
    }
    guarded(|| {
        let Some(f) = family_ref(handle) else {
            return CkpStatus::CkpErrNullPointer;
        };
        *out = f.len();
        CkpStatus::CkpOk
    })
}

/// Builds the circle construction of 3(k-1) segments.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ckp_generate_construction(
    k: u32,
    out: *mut *mut CkpFamily,
) -> CkpStatus {
    if out.is_null() {
        return CkpStatus::CkpErrNullPointer;
    }
    guarded(|| match build_construction(k) {
        Ok(f) => export_family(f, out),
        Err(e) => status_of(&e),
    })
}

/// Builds the convex-position point pentagon (a C(5)).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ckp_generate_pentagon(out: *mut *mut CkpFamily) -> CkpStatus {
    if out.is_null() {
        return CkpStatus::CkpErrNullPointer;
    }
    guarded(|| export_family(pentagon_ck(), out))
}

/// Builds `n` seeded one-vertex members with no three collinear.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ckp_generate_general_position(
    n: usize,
    seed: u64,
    out: *mut *mut CkpFamily,
) -> CkpStatus {
    if out.is_null() {
        return CkpStatus::CkpErrNullPointer;
    }
    guarded(|| match general_position_points(n, seed) {
        Ok(f) => export_family(f, out),
        Err(e) => status_of(&e),
    })
}

/// Exhaustive C(k) detection. On success `*found` is 1 when a C(k) exists
/// and 0 otherwise; when found, `*order_json` holds the witness order as a
/// JSON array of member indices.
///
/// # Safety
/// `handle` must come from this library; `found` and `order_json` must be
/// valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ckp_detect_ck(
    handle: *const CkpFamily,
    k: usize,
    found: *mut i32,
    order_json: *mut *mut c_char,
) -> CkpStatus {
    if found.is_null() || order_json.is_null() {
        return CkpStatus::CkpErrNullPointer;
    }
    guarded(|| {
        let Some(f) = family_ref(handle) else {
            return CkpStatus::CkpErrNullPointer;
        };
        match find_ck(f, k) {
            Ok(Some(cert)) => {
                *found = 1;
                *order_json = export_string(
                    serde_json::to_string(&cert.order).unwrap_or_default(),
                );
                CkpStatus::CkpOk
            }
            Ok(None) => {
                *found = 0;
                *order_json = std::ptr::null_mut();
                CkpStatus::CkpOk
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Exact minimum piercing within `budget` lines. On success `*found` is 1
/// when a piercing exists; `*solution_json` then holds the lines and the
/// member assignment.
///
/// # Safety
/// `handle` must come from this library; `found` and `solution_json` must be
/// valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ckp_min_piercing_lines(
    handle: *const CkpFamily,
    budget: usize,
    found: *mut i32,
    solution_json: *mut *mut c_char,
) -> CkpStatus {
    if found.is_null() || solution_json.is_null() {
        return CkpStatus::CkpErrNullPointer;
    }
    guarded(|| {
        let Some(f) = family_ref(handle) else {
            return CkpStatus::CkpErrNullPointer;
        };
        match min_piercing_lines(f, budget) {
            Ok(Some(sol)) => {
                let lines: Vec<serde_json::Value> = sol
                    .lines
                    .iter()
                    .map(|l| {
                        serde_json::json!({
                            "a": l.a.to_string(),
                            "b": l.b.to_string(),
                            "c": l.c.to_string(),
                        })
                    })
                    .collect();
                let value = serde_json::json!({
                    "lines": lines,
                    "assignment": sol.assignment,
                });
                *found = 1;
                *solution_json =
                    export_string(serde_json::to_string(&value).unwrap_or_default());
                CkpStatus::CkpOk
            }
            Ok(None) => {
                *found = 0;
                *solution_json = std::ptr::null_mut();
                CkpStatus::CkpOk
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Runs the full piercing procedure for a C(k)-free family: numeric search,
/// exact snap, and the Sperner witness phase. `*result_json` always receives
/// a JSON object with status `pierced`, `ck_witness`, or `unresolved`.
///
/// # Safety
/// `handle` must come from this library and `result_json` must be a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn ckp_find_piercing_lines(
    handle: *const CkpFamily,
    k: usize,
    tolerance: f64,
    seed: u64,
    result_json: *mut *mut c_char,
) -> CkpStatus {
    if result_json.is_null() {
        return CkpStatus::CkpErrNullPointer;
    }
    guarded(|| {
        let Some(f) = family_ref(handle) else {
            return CkpStatus::CkpErrNullPointer;
        };
        let config = SearchConfig { seed, ..SearchConfig::default() };
        match find_piercing_lines_with(f, k, tolerance, &config) {
            Ok(result) => {
                let value = solution_to_json(&result);
                *result_json =
                    export_string(serde_json::to_string(&value).unwrap_or_default());
                CkpStatus::CkpOk
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Releases a family handle. Null is a no-op.
///
/// # Safety
/// `handle` must come from this library and not have been freed before.
#[no_mangle]
pub unsafe extern "C" fn ckp_family_free(handle: *mut CkpFamily) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Releases a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must come from this library and not have been freed before.
#[no_mangle]
pub unsafe extern "C" fn ckp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
