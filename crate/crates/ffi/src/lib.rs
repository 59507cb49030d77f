//! C ABI over `lincong`.
//!
//! Instances and condition reports are opaque heap handles released with their
//! `*_free` function. Counts cross the boundary as NUL-terminated decimal
//! strings (they outgrow every fixed-width integer) allocated here and
//! released with [`lincong_string_free`]. Every fallible call returns a
//! [`LincongStatus`]; on failure [`lincong_last_error_message`] describes the
//! most recent error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lincong::congruence::{self, ConditionReport, CongruenceInstance, Method};
use lincong::{Error, ExactInt};

/// Status codes; the numeric values match the `lincong` CLI exit statuses.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LincongStatus {
    Ok = 0,
    Usage = 2,
    Precondition = 3,
    Resource = 4,
    NullArgument = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LincongMethod {
    /// Closed form when its hypothesis holds, partition oracle otherwise.
    Auto = 0,
    Formula = 1,
    IepEdges = 2,
    IepPartitions = 3,
    Brute = 4,
}

/// Opaque congruence `a_1 x_1 + ... + a_k x_k = b (mod n)`, reduced mod `n`.
pub struct LincongInstance(CongruenceInstance);

/// Opaque result of the subset-sum hypothesis check.
pub struct LincongReport(ConditionReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: LincongStatus, msg: impl Into<String>) -> LincongStatus {
    set_last_error(msg.into());
    status
}

fn from_error(e: Error) -> LincongStatus {
    let status = match e.exit_code() {
        3 => LincongStatus::Precondition,
        4 => LincongStatus::Resource,
        _ => LincongStatus::Usage,
    };
    fail(status, e.to_string())
}

/// Runs `body`, turning panics into [`LincongStatus::Panic`].
fn guard(body: impl FnOnce() -> LincongStatus) -> LincongStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            fail(LincongStatus::Panic, format!("internal error: {msg}"))
        }
    }
}

unsafe fn write_string(out: *mut *mut c_char, value: String) {
    *out = CString::new(value).expect("decimal digits").into_raw();
}

unsafe fn read_decimal(p: *const c_char, what: &str) -> Result<ExactInt, LincongStatus> {
    if p.is_null() {
        return Err(fail(LincongStatus::NullArgument, format!("{what} is NULL")));
    }
    let s = CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(LincongStatus::Usage, format!("{what} is not UTF-8")))?;
    s.trim().parse::<ExactInt>().map_err(|_| {
        fail(
            LincongStatus::Usage,
            format!("{what} `{s}` is not an integer"),
        )
    })
}

unsafe fn store_instance(
    built: Result<CongruenceInstance, Error>,
    out: *mut *mut LincongInstance,
) -> LincongStatus {
    match built {
        Ok(inst) => {
            *out = Box::into_raw(Box::new(LincongInstance(inst)));
            LincongStatus::Ok
        }
        Err(e) => from_error(e),
    }
}

/// Builds an instance from `k` machine-integer coefficients.
///
/// # Safety
/// `coeffs` must point to `k` readable `int64_t` values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lincong_instance_new(
    coeffs: *const i64,
    k: usize,
    b: i64,
    n: i64,
    out: *mut *mut LincongInstance,
) -> LincongStatus {
    guard(|| {
        if out.is_null() || (coeffs.is_null() && k > 0) {
            return fail(LincongStatus::NullArgument, "coeffs or out is NULL");
        }
        let slice = if k == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(coeffs, k)
        };
        let coeffs = slice.iter().map(|&a| ExactInt::from(a)).collect();
        store_instance(CongruenceInstance::new(coeffs, b.into(), n.into()), out)
    })
}

/// Builds an instance from decimal strings, for values beyond 64 bits.
///
/// # Safety
/// `coeffs` must point to `k` NUL-terminated strings; `b`, `n` must be
/// NUL-terminated strings and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lincong_instance_new_decimal(
    coeffs: *const *const c_char,
    k: usize,
    b: *const c_char,
    n: *const c_char,
    out: *mut *mut LincongInstance,
) -> LincongStatus {
    guard(|| {
        if out.is_null() || (coeffs.is_null() && k > 0) {
            return fail(LincongStatus::NullArgument, "coeffs or out is NULL");
        }
        let ptrs = if k == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(coeffs, k)
        };
        let mut values = Vec::with_capacity(k);
        for (i, &p) in ptrs.iter().enumerate() {
            match read_decimal(p, &format!("coefficient {}", i + 1)) {
                Ok(v) => values.push(v),
                Err(status) => return status,
            }
        }
        let b = match read_decimal(b, "b") {
            Ok(v) => v,
            Err(status) => return status,
        };
        let n = match read_decimal(n, "n") {
            Ok(v) => v,
            Err(status) => return status,
        };
        store_instance(CongruenceInstance::new(values, b, n), out)
    })
}

/// # Safety
/// `inst` must be NULL or a handle from `lincong_instance_new*` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lincong_instance_free(inst: *mut LincongInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Number of unknowns, or 0 for a NULL handle.
///
/// # Safety
/// `inst` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lincong_instance_k(inst: *const LincongInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.k())
}

/// Distinct-coordinate solution count, written to `*out` as a decimal string.
///
/// # Safety
/// `inst` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lincong_count(
    inst: *const LincongInstance,
    method: LincongMethod,
    out: *mut *mut c_char,
) -> LincongStatus {
    guard(|| {
        let Some(inst) = inst.as_ref() else {
            return fail(LincongStatus::NullArgument, "instance is NULL");
        };
        if out.is_null() {
            return fail(LincongStatus::NullArgument, "out is NULL");
        }
        let method = match method {
            LincongMethod::Auto => match congruence::default_method(&inst.0) {
                Ok(m) => m,
                Err(e) => return from_error(e),
            },
            LincongMethod::Formula => Method::Formula,
            LincongMethod::IepEdges => Method::IepEdges,
            LincongMethod::IepPartitions => Method::IepPartitions,
            LincongMethod::Brute => Method::Brute,
        };
        match congruence::distinct_count(&inst.0, method) {
            Ok(v) => {
                write_string(out, v.to_string());
                LincongStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Number of all solutions (coordinates not required distinct).
///
/// # Safety
/// `inst` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lincong_lehmer_count(
    inst: *const LincongInstance,
    out: *mut *mut c_char,
) -> LincongStatus {
    guard(|| {
        let Some(inst) = inst.as_ref() else {
            return fail(LincongStatus::NullArgument, "instance is NULL");
        };
        if out.is_null() {
            return fail(LincongStatus::NullArgument, "out is NULL");
        }
        write_string(out, congruence::lehmer_count(&inst.0).to_string());
        LincongStatus::Ok
    })
}

/// Solutions of `x_1 + ... + x_k = b (mod n)` with every `x_i` a unit mod `n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lincong_rademacher_brauer_count(
    n: i64,
    k: usize,
    b: i64,
    out: *mut *mut c_char,
) -> LincongStatus {
    guard(|| {
        if out.is_null() {
            return fail(LincongStatus::NullArgument, "out is NULL");
        }
        match congruence::rademacher_brauer_count(&n.into(), k, &b.into()) {
            Ok(v) => {
                write_string(out, v.to_string());
                LincongStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `inst` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lincong_check_condition(
    inst: *const LincongInstance,
    out: *mut *mut LincongReport,
) -> LincongStatus {
    guard(|| {
        let Some(inst) = inst.as_ref() else {
            return fail(LincongStatus::NullArgument, "instance is NULL");
        };
        if out.is_null() {
            return fail(LincongStatus::NullArgument, "out is NULL");
        }
        match congruence::check_condition(&inst.0) {
            Ok(r) => {
                *out = Box::into_raw(Box::new(LincongReport(r)));
                LincongStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `report` must be NULL or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn lincong_report_holds(report: *const LincongReport) -> bool {
    report.as_ref().is_some_and(|r| r.0.holds)
}

/// Whether `gcd(sum a_i, n)` divides `b`.
///
/// # Safety
/// `report` must be NULL or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn lincong_report_divides_b(report: *const LincongReport) -> bool {
    report.as_ref().is_some_and(|r| r.0.divides_b)
}

/// `gcd(sum a_i, n)` as a decimal string.
///
/// # Safety
/// `report` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lincong_report_full_sum_gcd(
    report: *const LincongReport,
    out: *mut *mut c_char,
) -> LincongStatus {
    guard(|| {
        let Some(report) = report.as_ref() else {
            return fail(LincongStatus::NullArgument, "report is NULL");
        };
        if out.is_null() {
            return fail(LincongStatus::NullArgument, "out is NULL");
        }
        write_string(out, report.0.full_sum_gcd.to_string());
        LincongStatus::Ok
    })
}

/// Copies the 0-based indices of the first failing subset into `indices`
/// (capacity `cap`) and its size into `*len`; `*len` is 0 when the hypothesis
/// holds. Returns `LINCONG_STATUS_RESOURCE` when `cap` is too small, with
/// `*len` set to the required size.
///
/// # Safety
/// `report` must be a live handle, `len` writable, and `indices` valid for
/// `cap` writes (it may be NULL when `cap` is 0).
#[no_mangle]
pub unsafe extern "C" fn lincong_report_failing_subset(
    report: *const LincongReport,
    indices: *mut usize,
    cap: usize,
    len: *mut usize,
) -> LincongStatus {
    guard(|| {
        let Some(report) = report.as_ref() else {
            return fail(LincongStatus::NullArgument, "report is NULL");
        };
        if len.is_null() || (indices.is_null() && cap > 0) {
            return fail(LincongStatus::NullArgument, "indices or len is NULL");
        }
        let subset = report.0.failing_subset.as_deref().unwrap_or(&[]);
        *len = subset.len();
        if subset.len() > cap {
            return fail(
                LincongStatus::Resource,
                format!(
                    "failing subset has {} indices, buffer holds {cap}",
                    subset.len()
                ),
            );
        }
        if !subset.is_empty() {
            ptr::copy_nonoverlapping(subset.as_ptr(), indices, subset.len());
        }
        LincongStatus::Ok
    })
}

/// # Safety
/// `report` must be NULL or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn lincong_report_free(report: *mut LincongReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lincong_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or NULL. The pointer stays
/// valid until the next `lincong_*` call on the same thread.
#[no_mangle]
pub extern "C" fn lincong_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
