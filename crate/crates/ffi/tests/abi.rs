use std::ffi::{CStr, CString};
use std::ptr;

use incidence_scrolls_ffi::*;

fn parse(text: &str) -> *mut IsBase {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { is_base_parse(c.as_ptr(), &mut out) };
    assert_eq!(status, IsStatus::Ok);
    assert!(!out.is_null());
    out
}

fn last_error() -> String {
    let p = is_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn base_round_trip() {
    let b = parse("6:4,2,3,3,4");
    unsafe {
        assert_eq!(is_base_ambient(b), 6);
        assert_eq!(is_base_len(b), 5);
        let mut buf = [0u32; 8];
        let mut len = 0;
        assert_eq!(
            is_base_dims(b, buf.as_mut_ptr(), buf.len(), &mut len),
            IsStatus::Ok
        );
        assert_eq!(&buf[..len], &[2, 3, 3, 4, 4]);
        let mut small = [0u32; 2];
        assert_eq!(
            is_base_dims(b, small.as_mut_ptr(), small.len(), &mut len),
            IsStatus::BufferTooSmall
        );
        assert_eq!(len, 5);
        let mut s = ptr::null_mut();
        assert_eq!(is_base_to_string(b, &mut s), IsStatus::Ok);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "6:2,3,3,4,4");
        is_string_free(s);
        is_base_free(b);
    }
}

#[test]
fn json_and_array_constructors() {
    let b = parse(r#"{"ambient": 4, "dims": [2, 2, 2, 2, 2]}"#);
    let dims = [2u32; 5];
    let mut c = ptr::null_mut();
    unsafe {
        assert_eq!(
            is_base_new(4, dims.as_ptr(), dims.len(), &mut c),
            IsStatus::Ok
        );
        let (mut g1, mut g2) = (0, 0);
        assert_eq!(is_genus(b, &mut g1), IsStatus::Ok);
        assert_eq!(is_genus(c, &mut g2), IsStatus::Ok);
        assert_eq!((g1, g2), (1, 1));
        is_base_free(b);
        is_base_free(c);
    }
}

#[test]
fn invariants_of_elliptic_septic() {
    let b = parse("6:2,3,3,4,4");
    let mut inv = std::mem::MaybeUninit::<IsInvariants>::uninit();
    unsafe {
        assert_eq!(is_invariants(b, inv.as_mut_ptr()), IsStatus::Ok);
        let inv = inv.assume_init();
        assert_eq!(
            (inv.degree, inv.genus, inv.ambient, inv.e, inv.m),
            (7, 1, 6, 1, 4)
        );
        assert_eq!((inv.min_directrix_degree, inv.min_directrix_space), (3, 2));
        assert_eq!(inv.bundle_kind, IsBundleKind::Decomposable);
        assert_eq!(inv.speciality, 0);
        is_base_free(b);
    }
}

#[test]
fn special_scroll_reports_speciality() {
    let b = parse("5:3,3,3,3,3,3,3");
    let mut inv = std::mem::MaybeUninit::<IsInvariants>::uninit();
    unsafe {
        assert_eq!(is_invariants(b, inv.as_mut_ptr()), IsStatus::Ok);
        let inv = inv.assume_init();
        assert_eq!((inv.degree, inv.genus, inv.speciality), (14, 8, 6));
        assert_eq!(inv.bundle_kind, IsBundleKind::None);
        is_base_free(b);
    }
}

#[test]
fn validation_and_normalization() {
    let b = parse("5:1,1,3,4");
    let mut v = IsValidation::default();
    let mut reduced = ptr::null_mut();
    unsafe {
        assert_eq!(is_validate(b, &mut v), IsStatus::Ok);
        assert!(v.satisfies_is && !v.no_hyperplanes && !v.nondegenerate && !v.all_pass);
        let mut d = 0;
        assert_eq!(is_degree(b, &mut d), IsStatus::Invalid);
        assert!(last_error().contains("5:1,1,3,4"));
        assert_eq!(is_normalize(b, &mut reduced), IsStatus::Ok);
        assert_eq!(is_base_ambient(reduced), 3);
        assert_eq!(is_degree(reduced, &mut d), IsStatus::Ok);
        assert_eq!(d, 2);
        is_base_free(reduced);
        is_base_free(b);
    }
}

#[test]
fn error_codes() {
    let bad = CString::new("4:2,x").unwrap();
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(is_base_parse(bad.as_ptr(), &mut out), IsStatus::Parse);
        assert!(out.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(is_base_parse(ptr::null(), &mut out), IsStatus::NullPointer);
        let dims = [7u32];
        assert_eq!(is_base_new(4, dims.as_ptr(), 1, &mut out), IsStatus::Domain);
        let mut d = 0;
        assert_eq!(is_degree(ptr::null(), &mut d), IsStatus::NullPointer);
        is_base_free(ptr::null_mut());
        is_string_free(ptr::null_mut());
    }
}

#[test]
fn intersection_numbers_and_overflow() {
    let mut v = 0u64;
    unsafe {
        let codims = [1u32; 14];
        assert_eq!(
            is_intersection_number(8, codims.as_ptr(), codims.len(), &mut v),
            IsStatus::Ok
        );
        assert_eq!(v, 429);
        let mismatch = [1u32; 3];
        assert_eq!(
            is_intersection_number(3, mismatch.as_ptr(), mismatch.len(), &mut v),
            IsStatus::Domain
        );
        // σ_1^{2n-2} in G(1,n) is a Catalan number, past 2^64 for n = 40
        let many = [1u32; 78];
        assert_eq!(
            is_intersection_number(40, many.as_ptr(), many.len(), &mut v),
            IsStatus::Overflow
        );
    }
}

#[test]
fn table_json_and_audit() {
    let mut s = ptr::null_mut();
    let mut violations = usize::MAX;
    unsafe {
        assert_eq!(is_table_json(1, 8, &mut s), IsStatus::Ok);
        let text = CStr::from_ptr(s).to_str().unwrap().to_owned();
        is_string_free(s);
        assert_eq!(text.matches("\"ambient\"").count(), 6 + 6);
        assert!(text.contains("\"e_trivial\": true"));
        assert_eq!(is_table_json(2, 8, &mut s), IsStatus::Domain);
        assert_eq!(is_audit_violations(6, &mut violations), IsStatus::Ok);
        assert_eq!(violations, 0);
    }
}
