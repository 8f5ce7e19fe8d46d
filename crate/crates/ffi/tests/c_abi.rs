use std::ffi::{c_char, CStr};
use std::path::Path;
use std::process::Command;
use std::ptr;

use regmat_ffi::*;

unsafe fn last_error() -> String {
    let p = regmat_last_error_message();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

unsafe fn take_string(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_string_lossy().into_owned();
    regmat_string_free(p);
    s
}

#[test]
fn mask_pool_handle() {
    unsafe {
        let mut pool = ptr::null_mut();
        assert_eq!(regmat_mask_pool_new(4, 2, &mut pool), RegmatStatus::Ok);
        let len = regmat_mask_pool_len(pool);
        let data = std::slice::from_raw_parts(regmat_mask_pool_data(pool), len);
        assert_eq!(data, &[3, 5, 6, 9, 10, 12]);
        regmat_mask_pool_free(pool);

        let mut pool = ptr::null_mut();
        assert_eq!(regmat_mask_pool_new(3, 4, &mut pool), RegmatStatus::InvalidArgument);
        assert!(pool.is_null());
        assert!(last_error().contains("exceeds"));
        assert_eq!(regmat_mask_pool_new(3, 1, ptr::null_mut()), RegmatStatus::NullPointer);
        assert_eq!(regmat_mask_pool_len(ptr::null()), 0);
        regmat_mask_pool_free(ptr::null_mut());
    }
}

#[test]
fn bit_primitives() {
    unsafe {
        assert_eq!(regmat_popcount(0b1100), 2);
        let mut v = 9;
        assert_eq!(regmat_bit_value(5, 2, 3, &mut v), RegmatStatus::Ok);
        assert_eq!(v, 1);
        assert_eq!(regmat_bit_value(5, 3, 3, &mut v), RegmatStatus::InvalidArgument);
    }
}

#[test]
fn matrix_predicates() {
    unsafe {
        let rows = [1u64, 2, 4];
        let mut flag = false;
        assert_eq!(regmat_is_canonical(rows.as_ptr(), 3, 1, &mut flag), RegmatStatus::Ok);
        assert!(flag);
        let rows = [4u64, 2, 1];
        assert_eq!(regmat_is_canonical(rows.as_ptr(), 3, 1, &mut flag), RegmatStatus::Ok);
        assert!(!flag);
        assert_eq!(regmat_is_member(rows.as_ptr(), 3, 1, &mut flag), RegmatStatus::Ok);
        assert!(flag);

        let rows = [3u64, 0];
        let mut cols = [0u64; 2];
        assert_eq!(regmat_transpose(rows.as_ptr(), 2, cols.as_mut_ptr()), RegmatStatus::Ok);
        assert_eq!(cols, [2, 2]);

        let bad = [8u64, 0];
        assert_eq!(regmat_transpose(bad.as_ptr(), 2, cols.as_mut_ptr()), RegmatStatus::InvalidArgument);
        assert_eq!(regmat_is_member(ptr::null(), 2, 1, &mut flag), RegmatStatus::NullPointer);
    }
}

#[test]
fn counting() {
    unsafe {
        let mut report = RegmatCountReport::default();
        assert_eq!(regmat_count(7, 3, RegmatMethod::Pruned, 2, &mut report), RegmatStatus::Ok);
        assert_eq!((report.n, report.k, report.mu), (7, 3, 272));
        assert_eq!(regmat_count(4, 2, RegmatMethod::Baseline, 0, &mut report), RegmatStatus::Ok);
        assert_eq!((report.mu, report.tuples_visited), (2, 126));
        assert_eq!(regmat_count(13, 2, RegmatMethod::Pruned, 1, &mut report), RegmatStatus::InvalidArgument);
        assert_eq!(report.n, 4, "output untouched on failure");
    }
}

#[test]
fn representatives_handle() {
    unsafe {
        let mut reps = ptr::null_mut();
        assert_eq!(regmat_representatives_new(4, 2, 1, &mut reps), RegmatStatus::Ok);
        assert_eq!(regmat_representatives_len(reps), 2);
        assert_eq!(regmat_representatives_dimension(reps), 4);
        let mut rows = [0u64; 4];
        assert_eq!(regmat_representatives_get(reps, 0, rows.as_mut_ptr(), 4), RegmatStatus::Ok);
        let mut flag = false;
        regmat_is_canonical(rows.as_ptr(), 4, 2, &mut flag);
        assert!(flag);
        assert_eq!(regmat_representatives_get(reps, 2, rows.as_mut_ptr(), 4), RegmatStatus::OutOfRange);
        assert_eq!(regmat_representatives_get(reps, 0, rows.as_mut_ptr(), 3), RegmatStatus::BufferTooSmall);
        regmat_representatives_free(reps);
    }
}

#[test]
fn lambda_strings() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(regmat_lambda(3, 2, RegmatRoute::Auto, &mut s), RegmatStatus::Ok);
        assert_eq!(take_string(s), "6");
        assert_eq!(regmat_lambda(30, 2, RegmatRoute::Pi, &mut s), RegmatStatus::Ok);
        let pi = take_string(s);
        assert_eq!(regmat_lambda(30, 2, RegmatRoute::Partition, &mut s), RegmatStatus::Ok);
        assert_eq!(take_string(s), pi);
        assert_eq!(regmat_lambda(5, 3, RegmatRoute::Explicit, &mut s), RegmatStatus::Ok);
        assert_eq!(take_string(s), "2040");

        assert_eq!(regmat_lambda(9, 4, RegmatRoute::Auto, &mut s), RegmatStatus::InvalidArgument);
        assert!(last_error().contains("no known formula"));
        assert_eq!(regmat_lambda(5, 2, RegmatRoute::Explicit, &mut s), RegmatStatus::InvalidArgument);
        regmat_string_free(ptr::null_mut());
    }
}

#[test]
fn status_names_and_version() {
    unsafe {
        let name = CStr::from_ptr(regmat_status_name(RegmatStatus::BufferTooSmall));
        assert_eq!(name.to_str().unwrap(), "buffer too small");
        let v = CStr::from_ptr(regmat_version());
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}

#[test]
fn header_declares_every_export_and_compiles() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/regmat.h")).unwrap();
    for name in [
        "regmat_last_error_message",
        "regmat_mask_pool_new",
        "regmat_mask_pool_free",
        "regmat_count",
        "regmat_representatives_get",
        "regmat_lambda",
        "regmat_string_free",
        "REGMAT_STATUS_BUFFER_TOO_SMALL",
        "typedef struct RegmatMaskPool RegmatMaskPool;",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
    // syntax-check the header and the example program when a C compiler exists
    let Ok(status) = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(dir.join("include"))
        .arg(dir.join("examples/smoke.c"))
        .status()
    else {
        eprintln!("no C compiler found; skipped");
        return;
    };
    assert!(status.success());
}
