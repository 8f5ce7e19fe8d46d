//! C ABI for `regmat`.
//!
//! Objects cross the boundary as opaque handles that the caller releases with
//! the matching `*_free` function. Every fallible call returns a
//! [`RegmatStatus`]; on failure, [`regmat_last_error_message`] describes the
//! most recent error on the calling thread. Output parameters are written only
//! on success.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use regmat::enumerate::{collect_representatives, count_canonical, count_canonical_pruned_with};
use regmat::formulas;
use regmat::matrix::{columns_of, is_canonical_rows, is_member_rows};
use regmat::{Error, MaskPool, Route, RowTuple, SearchOptions};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegmatStatus {
    Ok = 0,
    InvalidArgument = 1,
    NullPointer = 2,
    TooLarge = 3,
    OutOfRange = 4,
    BufferTooSmall = 5,
    /// Independent evaluations of the same value disagreed.
    Mismatch = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegmatMethod {
    Baseline = 0,
    Pruned = 1,
}

/// Evaluation route for `regmat_lambda`. `Auto` evaluates every applicable
/// route and fails with `REGMAT_STATUS_MISMATCH` if they disagree.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegmatRoute {
    Auto = 0,
    Factorial = 1,
    Partition = 2,
    Anand = 3,
    GoodCrook = 4,
    Pi = 5,
    Explicit = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RegmatCountReport {
    pub n: u32,
    pub k: u32,
    pub mu: u64,
    pub tuples_visited: u64,
    pub elapsed_seconds: f64,
}

/// Opaque: sorted list of n-bit masks with k ones.
pub struct RegmatMaskPool(MaskPool);

/// Opaque: canonical matrices in lexicographic order.
pub struct RegmatRepresentatives {
    n: u32,
    items: Vec<RowTuple>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn fail(status: RegmatStatus, msg: impl Into<String>) -> RegmatStatus {
    set_last_error(msg);
    status
}

fn from_error(e: Error) -> RegmatStatus {
    let status = match e {
        Error::InvalidArgument(_) => RegmatStatus::InvalidArgument,
        Error::TooLarge(_) => RegmatStatus::TooLarge,
        Error::Mismatch(_) => RegmatStatus::Mismatch,
        Error::Internal(_) => RegmatStatus::Internal,
    };
    fail(status, e.to_string())
}

fn guard(body: impl FnOnce() -> RegmatStatus) -> RegmatStatus {
    catch_unwind(AssertUnwindSafe(body))
        .unwrap_or_else(|_| fail(RegmatStatus::Internal, "panic inside regmat"))
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(RegmatStatus::NullPointer, concat!(stringify!($p), " is null"));
        })+
    };
}

/// Message for the last failed call on this thread, or null if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn regmat_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn regmat_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[no_mangle]
pub extern "C" fn regmat_popcount(x: u64) -> u32 {
    regmat::popcount(x)
}

/// Bit `i` of `x` for a row of `width` bits.
///
/// # Safety
/// `out` must be null or valid for one write.
#[no_mangle]
pub unsafe extern "C" fn regmat_bit_value(x: u64, i: u32, width: u32, out: *mut u8) -> RegmatStatus {
    non_null!(out);
    match regmat::bit_value(x, i, width) {
        Ok(v) => {
            *out = v;
            RegmatStatus::Ok
        }
        Err(e) => from_error(e),
    }
}

/// # Safety
/// `out` must be null or valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn regmat_mask_pool_new(n: u32, k: u32, out: *mut *mut RegmatMaskPool) -> RegmatStatus {
    non_null!(out);
    guard(|| match regmat::k_subset_masks(n, k) {
        Ok(pool) => {
            *out = Box::into_raw(Box::new(RegmatMaskPool(pool)));
            RegmatStatus::Ok
        }
        Err(e) => from_error(e),
    })
}

/// # Safety
/// `pool` must be null or a live handle from `regmat_mask_pool_new`.
#[no_mangle]
pub unsafe extern "C" fn regmat_mask_pool_len(pool: *const RegmatMaskPool) -> usize {
    pool.as_ref().map_or(0, |p| p.0.len())
}

/// Pointer to the pool's `regmat_mask_pool_len` masks, ascending. Borrowed
/// from the handle.
///
/// # Safety
/// `pool` must be null or a live handle from `regmat_mask_pool_new`.
#[no_mangle]
pub unsafe extern "C" fn regmat_mask_pool_data(pool: *const RegmatMaskPool) -> *const u64 {
    pool.as_ref().map_or(ptr::null(), |p| p.0.masks().as_ptr())
}

/// # Safety
/// `pool` must be null or a handle from `regmat_mask_pool_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn regmat_mask_pool_free(pool: *mut RegmatMaskPool) {
    if !pool.is_null() {
        drop(Box::from_raw(pool));
    }
}

unsafe fn rows_arg<'a>(rows: *const u64, n: u32) -> Result<&'a [u64], RegmatStatus> {
    if rows.is_null() {
        return Err(fail(RegmatStatus::NullPointer, "rows is null"));
    }
    if n == 0 || n > regmat::bitcore::MAX_WIDTH {
        return Err(fail(RegmatStatus::InvalidArgument, format!("dimension {n} out of range")));
    }
    let slice = std::slice::from_raw_parts(rows, n as usize);
    if let Err(e) = RowTuple::new(n, slice.to_vec()) {
        return Err(from_error(e));
    }
    Ok(slice)
}

/// Whether the `n` rows form a canonical element: rows and columns
/// nondecreasing and every column with `k` ones.
///
/// # Safety
/// `rows` must point to `n` readable values; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn regmat_is_canonical(rows: *const u64, n: u32, k: u32, out: *mut bool) -> RegmatStatus {
    non_null!(out);
    match rows_arg(rows, n) {
        Ok(r) => {
            *out = is_canonical_rows(r, n, k);
            RegmatStatus::Ok
        }
        Err(s) => s,
    }
}

/// Whether every row and column of the matrix has exactly `k` ones.
///
/// # Safety
/// `rows` must point to `n` readable values; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn regmat_is_member(rows: *const u64, n: u32, k: u32, out: *mut bool) -> RegmatStatus {
    non_null!(out);
    match rows_arg(rows, n) {
        Ok(r) => {
            *out = is_member_rows(r, n, k);
            RegmatStatus::Ok
        }
        Err(s) => s,
    }
}

/// Writes the `n` column integers (the transpose's rows) to `cols`.
///
/// # Safety
/// `rows` must point to `n` readable values and `cols` to `n` writable ones.
#[no_mangle]
pub unsafe extern "C" fn regmat_transpose(rows: *const u64, n: u32, cols: *mut u64) -> RegmatStatus {
    non_null!(cols);
    match rows_arg(rows, n) {
        Ok(r) => {
            let out = std::slice::from_raw_parts_mut(cols, n as usize);
            out.copy_from_slice(&columns_of(r, n));
            RegmatStatus::Ok
        }
        Err(s) => s,
    }
}

/// Counts canonical elements. `jobs` applies to the pruned method only;
/// 0 is treated as 1.
///
/// # Safety
/// `out` must be null or valid for one write.
#[no_mangle]
pub unsafe extern "C" fn regmat_count(
    n: u32,
    k: u32,
    method: RegmatMethod,
    jobs: u32,
    out: *mut RegmatCountReport,
) -> RegmatStatus {
    non_null!(out);
    guard(|| {
        let report = match method {
            RegmatMethod::Baseline => count_canonical(n, k),
            RegmatMethod::Pruned => {
                let opts = SearchOptions {
                    jobs: jobs.max(1) as usize,
                    ..SearchOptions::default()
                };
                count_canonical_pruned_with(n, k, &opts)
            }
        };
        match report {
            Ok(r) => {
                *out = RegmatCountReport {
                    n: r.n,
                    k: r.k,
                    mu: r.mu,
                    tuples_visited: r.tuples_visited,
                    elapsed_seconds: r.elapsed.as_secs_f64(),
                };
                RegmatStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Collects every canonical element for `(n, k)`.
///
/// # Safety
/// `out` must be null or valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn regmat_representatives_new(
    n: u32,
    k: u32,
    jobs: u32,
    out: *mut *mut RegmatRepresentatives,
) -> RegmatStatus {
    non_null!(out);
    guard(|| {
        let opts = SearchOptions {
            jobs: jobs.max(1) as usize,
            ..SearchOptions::default()
        };
        match collect_representatives(n, k, &opts) {
            Ok(items) => {
                *out = Box::into_raw(Box::new(RegmatRepresentatives { n, items }));
                RegmatStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `reps` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn regmat_representatives_len(reps: *const RegmatRepresentatives) -> usize {
    reps.as_ref().map_or(0, |r| r.items.len())
}

/// Matrix dimension n, or 0 for a null handle.
///
/// # Safety
/// `reps` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn regmat_representatives_dimension(reps: *const RegmatRepresentatives) -> u32 {
    reps.as_ref().map_or(0, |r| r.n)
}

/// Copies the rows of element `index` (0-based) into `rows`, which must hold
/// at least n values.
///
/// # Safety
/// `reps` must be a live handle and `rows` valid for `rows_len` writes.
#[no_mangle]
pub unsafe extern "C" fn regmat_representatives_get(
    reps: *const RegmatRepresentatives,
    index: usize,
    rows: *mut u64,
    rows_len: usize,
) -> RegmatStatus {
    non_null!(reps, rows);
    let reps = &*reps;
    let Some(item) = reps.items.get(index) else {
        return fail(
            RegmatStatus::OutOfRange,
            format!("index {index} out of range for {} elements", reps.items.len()),
        );
    };
    if rows_len < reps.n as usize {
        return fail(
            RegmatStatus::BufferTooSmall,
            format!("buffer holds {rows_len} values, need {}", reps.n),
        );
    }
    std::slice::from_raw_parts_mut(rows, reps.n as usize).copy_from_slice(item.rows());
    RegmatStatus::Ok
}

/// # Safety
/// `reps` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn regmat_representatives_free(reps: *mut RegmatRepresentatives) {
    if !reps.is_null() {
        drop(Box::from_raw(reps));
    }
}

/// λ(n, k) as a decimal string, released with `regmat_string_free`.
///
/// # Safety
/// `out` must be null or valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn regmat_lambda(n: u32, k: u32, route: RegmatRoute, out: *mut *mut c_char) -> RegmatStatus {
    non_null!(out);
    guard(|| {
        let single = match route {
            RegmatRoute::Auto => None,
            RegmatRoute::Factorial => Some(Route::Factorial),
            RegmatRoute::Partition => Some(Route::Partition),
            RegmatRoute::Anand => Some(Route::Anand),
            RegmatRoute::GoodCrook => Some(Route::GoodCrook),
            RegmatRoute::Pi => Some(Route::Pi),
            RegmatRoute::Explicit => Some(Route::Explicit),
        };
        let value = match single {
            None => formulas::lambda(n, k),
            Some(r) if r.k() != k => {
                return fail(
                    RegmatStatus::InvalidArgument,
                    format!("route {} evaluates k = {}, not k = {k}", r.name(), r.k()),
                )
            }
            Some(r) => r.evaluate(n),
        };
        match value {
            Ok(v) => {
                let s = CString::new(v.to_str_radix(10)).expect("digits contain no NUL");
                *out = s.into_raw();
                RegmatStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn regmat_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Human-readable name of a status code (static string).
#[no_mangle]
pub extern "C" fn regmat_status_name(status: RegmatStatus) -> *const c_char {
    let s: &'static CStr = match status {
        RegmatStatus::Ok => c"ok",
        RegmatStatus::InvalidArgument => c"invalid argument",
        RegmatStatus::NullPointer => c"null pointer",
        RegmatStatus::TooLarge => c"too large",
        RegmatStatus::OutOfRange => c"out of range",
        RegmatStatus::BufferTooSmall => c"buffer too small",
        RegmatStatus::Mismatch => c"mismatch",
        RegmatStatus::Internal => c"internal error",
    };
    s.as_ptr()
}
