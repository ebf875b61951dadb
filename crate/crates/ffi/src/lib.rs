//! C ABI over `incidence_scrolls`.
//!
//! Bases are opaque handles created by [`is_base_parse`] or [`is_base_new`]
//! and released with [`is_base_free`]. Every fallible call returns an
//! [`IsStatus`]; on failure [`is_last_error_message`] describes the cause.
//! Strings returned through out-parameters are owned by the caller and must
//! be released with [`is_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use incidence_scrolls::base::{self, BundleKind, IncidenceBase};
use incidence_scrolls::classify;
use incidence_scrolls::degeneration;
use incidence_scrolls::{Error, ErrorKind};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    Invalid = 3,
    Domain = 4,
    Consistency = 5,
    Overflow = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

impl From<&Error> for IsStatus {
    fn from(err: &Error) -> Self {
        match err.kind() {
            ErrorKind::Parse => IsStatus::Parse,
            ErrorKind::Invalid => IsStatus::Invalid,
            ErrorKind::Domain => IsStatus::Domain,
            ErrorKind::Consistency => IsStatus::Consistency,
            ErrorKind::Overflow => IsStatus::Overflow,
        }
    }
}

/// Opaque handle to a base.
pub struct IsBase {
    inner: IncidenceBase,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IsValidation {
    pub condition_count: u64,
    pub required_conditions: u64,
    pub satisfies_is: bool,
    pub no_hyperplanes: bool,
    pub nondegenerate: bool,
    pub all_pass: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsBundleKind {
    None = 0,
    Decomposable = 1,
    Indecomposable = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsInvariants {
    pub degree: i64,
    pub genus: i64,
    pub ambient: u32,
    pub e: i64,
    /// Degree of 𝔟 in the hyperplane class `C_0 + 𝔟f`.
    pub m: i64,
    pub min_directrix_degree: i64,
    pub min_directrix_space: u32,
    pub decomposable: bool,
    pub speciality: i64,
    /// `None` outside genus 0 and 1.
    pub bundle_kind: IsBundleKind,
    pub e_trivial: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    let c = CString::new(text).expect("interior NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn fail(status: IsStatus, message: impl Into<String>) -> IsStatus {
    set_last_error(message);
    status
}

fn fail_with(err: &Error) -> IsStatus {
    fail(IsStatus::from(err), err.to_string())
}

/// Runs `body` with panics turned into [`IsStatus::Panic`].
fn guard(body: impl FnOnce() -> IsStatus) -> IsStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| (*s).to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            fail(IsStatus::Panic, msg)
        }
    }
}

/// # Safety
/// `b` must be null or a live handle from this library.
unsafe fn base_ref<'a>(b: *const IsBase) -> Option<&'a IncidenceBase> {
    b.as_ref().map(|h| &h.inner)
}

fn string_out(s: String, out: *mut *mut c_char) -> IsStatus {
    match CString::new(s) {
        Ok(c) => {
            // SAFETY: caller checked `out` for null.
            unsafe { *out = c.into_raw() };
            IsStatus::Ok
        }
        Err(_) => fail(IsStatus::Consistency, "output contains a NUL byte"),
    }
}

/// Parses `n:d1,d2,...` or a JSON object with `ambient` and `dims`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn is_base_parse(text: *const c_char, out: *mut *mut IsBase) -> IsStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return fail(IsStatus::NullPointer, "null argument");
        }
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return fail(IsStatus::Parse, "base text is not UTF-8");
        };
        let text = text.trim();
        let parsed = if text.starts_with('{') {
            IncidenceBase::from_json(text)
        } else {
            text.parse()
        };
        match parsed {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(IsBase { inner }));
                IsStatus::Ok
            }
            Err(err) => fail_with(&err),
        }
    })
}

/// # Safety
/// `dims` must point to `len` readable values (or be null with `len == 0`)
/// and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn is_base_new(
    ambient: u32,
    dims: *const u32,
    len: usize,
    out: *mut *mut IsBase,
) -> IsStatus {
    guard(|| {
        if out.is_null() || (dims.is_null() && len > 0) {
            return fail(IsStatus::NullPointer, "null argument");
        }
        let dims = if len == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(dims, len).to_vec()
        };
        match IncidenceBase::new(ambient, dims) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(IsBase { inner }));
                IsStatus::Ok
            }
            Err(err) => fail_with(&err),
        }
    })
}

/// # Safety
/// `b` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn is_base_free(b: *mut IsBase) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Ambient dimension, or 0 for a null handle.
///
/// # Safety
/// `b` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn is_base_ambient(b: *const IsBase) -> u32 {
    base_ref(b).map_or(0, IncidenceBase::ambient)
}

/// Number of base spaces, or 0 for a null handle.
///
/// # Safety
/// `b` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn is_base_len(b: *const IsBase) -> usize {
    base_ref(b).map_or(0, IncidenceBase::len)
}

/// Copies the sorted dimensions into `buf`. `out_len` always receives the
/// number of dimensions.
///
/// # Safety
/// `buf` must have room for `cap` values; `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn is_base_dims(
    b: *const IsBase,
    buf: *mut u32,
    cap: usize,
    out_len: *mut usize,
) -> IsStatus {
    guard(|| {
        let Some(b) = base_ref(b) else {
            return fail(IsStatus::NullPointer, "null handle");
        };
        if out_len.is_null() {
            return fail(IsStatus::NullPointer, "null argument");
        }
        let dims = b.dims();
        *out_len = dims.len();
        if cap < dims.len() {
            return fail(
                IsStatus::BufferTooSmall,
                format!("{} dimensions, buffer holds {cap}", dims.len()),
            );
        }
        if !dims.is_empty() {
            if buf.is_null() {
                return fail(IsStatus::NullPointer, "null buffer");
            }
            ptr::copy_nonoverlapping(dims.as_ptr(), buf, dims.len());
        }
        IsStatus::Ok
    })
}

/// Text form `n:d1,d2,...`.
///
/// # Safety
/// `b` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn is_base_to_string(b: *const IsBase, out: *mut *mut c_char) -> IsStatus {
    guard(|| {
        let Some(b) = base_ref(b) else {
            return fail(IsStatus::NullPointer, "null handle");
        };
        if out.is_null() {
            return fail(IsStatus::NullPointer, "null argument");
        }
        string_out(b.to_string(), out)
    })
}

/// # Safety
/// `b` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn is_validate(b: *const IsBase, out: *mut IsValidation) -> IsStatus {
    guard(|| {
        let Some(b) = base_ref(b) else {
            return fail(IsStatus::NullPointer, "null handle");
        };
        if out.is_null() {
            return fail(IsStatus::NullPointer, "null argument");
        }
        let r = base::validate(b);
        *out = IsValidation {
            condition_count: r.condition_count,
            required_conditions: r.required_conditions,
            satisfies_is: r.satisfies_is,
            no_hyperplanes: r.no_hyperplanes,
            nondegenerate: r.nondegenerate,
            all_pass: r.all_pass,
        };
        IsStatus::Ok
    })
}

/// Reduced base with hyperplanes dropped and degenerate pairs spanned.
///
/// # Safety
/// `b` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn is_normalize(b: *const IsBase, out: *mut *mut IsBase) -> IsStatus {
    guard(|| {
        let Some(b) = base_ref(b) else {
            return fail(IsStatus::NullPointer, "null handle");
        };
        if out.is_null() {
            return fail(IsStatus::NullPointer, "null argument");
        }
        match base::normalize(b) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(IsBase { inner }));
                IsStatus::Ok
            }
            Err(err) => fail_with(&err),
        }
    })
}

/// # Safety
/// `b` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn is_degree(b: *const IsBase, out: *mut i64) -> IsStatus {
    guard(|| {
        let Some(b) = base_ref(b) else {
            return fail(IsStatus::NullPointer, "null handle");
        };
        if out.is_null() {
            return fail(IsStatus::NullPointer, "null argument");
        }
        match base::degree(b) {
            Ok(d) => {
                *out = d;
                IsStatus::Ok
            }
            Err(err) => fail_with(&err),
        }
    })
}

/// Genus by degeneration.
///
/// # Safety
/// `b` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn is_genus(b: *const IsBase, out: *mut i64) -> IsStatus {
    guard(|| {
        let Some(b) = base_ref(b) else {
            return fail(IsStatus::NullPointer, "null handle");
        };
        if out.is_null() {
            return fail(IsStatus::NullPointer, "null argument");
        }
        match degeneration::genus_by_degeneration(b) {
            Ok(g) => {
                *out = g;
                IsStatus::Ok
            }
            Err(err) => fail_with(&err),
        }
    })
}

/// Scroll invariants. A special scroll (nonzero speciality) is reported in
/// `speciality` rather than as an error.
///
/// # Safety
/// `b` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn is_invariants(b: *const IsBase, out: *mut IsInvariants) -> IsStatus {
    guard(|| {
        let Some(b) = base_ref(b) else {
            return fail(IsStatus::NullPointer, "null handle");
        };
        if out.is_null() {
            return fail(IsStatus::NullPointer, "null argument");
        }
        match base::invariants_reporting_speciality(b) {
            Ok(inv) => {
                let (bundle_kind, e_trivial) = match inv.bundle {
                    Some(bd) => (
                        match bd.kind {
                            BundleKind::Decomposable => IsBundleKind::Decomposable,
                            BundleKind::Indecomposable => IsBundleKind::Indecomposable,
                        },
                        bd.e_divisor_trivial,
                    ),
                    None => (IsBundleKind::None, false),
                };
                *out = IsInvariants {
                    degree: inv.degree,
                    genus: inv.genus,
                    ambient: inv.ambient,
                    e: inv.e,
                    m: inv.divisor_degree,
                    min_directrix_degree: inv.min_directrix_degree,
                    min_directrix_space: inv.min_directrix_space,
                    decomposable: inv.decomposable,
                    speciality: inv.speciality,
                    bundle_kind,
                    e_trivial,
                };
                IsStatus::Ok
            }
            Err(err) => fail_with(&err),
        }
    })
}

/// Intersection number of special classes `σ_{c_1} ⋯ σ_{c_k}` in `G(1,n)`.
/// Values beyond `u64` give [`IsStatus::Overflow`].
///
/// # Safety
/// `codims` must point to `len` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn is_intersection_number(
    ambient: u32,
    codims: *const u32,
    len: usize,
    out: *mut u64,
) -> IsStatus {
    guard(|| {
        if out.is_null() || (codims.is_null() && len > 0) {
            return fail(IsStatus::NullPointer, "null argument");
        }
        let codims = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(codims, len)
        };
        match incidence_scrolls::intersection_number(ambient, codims) {
            Ok(v) => match u64::try_from(v) {
                Ok(v) => {
                    *out = v;
                    IsStatus::Ok
                }
                Err(_) => fail(IsStatus::Overflow, format!("{v} does not fit in 64 bits")),
            },
            Err(err) => fail_with(&err),
        }
    })
}

/// Table of incidence scrolls of genus 0 or 1 up to `P^max_n`, as JSON.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn is_table_json(genus: u32, max_n: u32, out: *mut *mut c_char) -> IsStatus {
    guard(|| {
        if out.is_null() {
            return fail(IsStatus::NullPointer, "null argument");
        }
        if genus > 1 {
            return fail(
                IsStatus::Domain,
                format!("tables exist for genus 0 and 1, got {genus}"),
            );
        }
        match classify::build_tables(max_n) {
            Ok((rational, elliptic)) => {
                let rows = if genus == 0 { rational } else { elliptic };
                string_out(classify::render_table_json(&rows), out)
            }
            Err(err) => fail_with(&err),
        }
    })
}

/// Number of audit violations up to `P^max_n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn is_audit_violations(max_n: u32, out: *mut usize) -> IsStatus {
    guard(|| {
        if out.is_null() {
            return fail(IsStatus::NullPointer, "null argument");
        }
        *out = classify::audit(max_n).violations.len();
        IsStatus::Ok
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn is_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn is_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
