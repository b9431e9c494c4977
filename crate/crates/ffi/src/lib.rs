//! C ABI over `prodgap`.
//!
//! Conventions:
//! * every fallible call returns a [`PgStatus`]; results come back through
//!   out-pointers, which are only written on [`PgStatus::Ok`];
//! * sets are opaque [`PgSet`] handles released with [`pg_set_free`];
//! * strings handed out (`char **out`) are owned by the caller and released
//!   with [`pg_string_free`];
//! * integers that may exceed 64 bits are exchanged as decimal strings;
//! * [`pg_last_error`] describes the most recent failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use prodgap::constructions::{construction_report, theorem2_spec, theorem4_spec};
use prodgap::gap_finders::certify_small_gaps;
use prodgap::products::{min_gap_oracle, product_set};
use prodgap::quotients::{quotient_set, theorem5_check};
use prodgap::sidon::{erdos_turan_sidon, min_pairwise_gap, verify_sidon};
use prodgap::{DensityValue, Error, FiniteIntegerSet, Window};

/// Result codes. Values 1–6 mirror the library error kinds.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgStatus {
    Ok = 0,
    InvalidArgument = 1,
    ConstructionUnavailable = 2,
    TooLarge = 3,
    InsufficientSize = 4,
    Parse = 5,
    Internal = 6,
    NullPointer = 7,
    /// A value does not fit the requested fixed-width type.
    Overflow = 8,
    IndexOutOfRange = 9,
    Panic = 10,
}

/// Opaque finite set of non-negative integers.
pub struct PgSet {
    inner: FiniteIntegerSet,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(PgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e.code() {
            1 => PgStatus::InvalidArgument,
            2 => PgStatus::ConstructionUnavailable,
            3 => PgStatus::TooLarge,
            4 => PgStatus::InsufficientSize,
            5 => PgStatus::Parse,
            _ => PgStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(PgStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            PgStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            PgStatus::Panic
        }
    }
}

unsafe fn set_ref<'a>(set: *const PgSet) -> Result<&'a FiniteIntegerSet, Failure> {
    set.as_ref().map(|s| &s.inner).ok_or_else(|| null("set"))
}

unsafe fn c_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Failure(PgStatus::Parse, format!("{what} is not valid UTF-8")))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_set(out: *mut *mut PgSet, inner: FiniteIntegerSet) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(Box::into_raw(Box::new(PgSet { inner })));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|_| Failure(PgStatus::Internal, "interior NUL in output".into()))?;
    out.write(c.into_raw());
    Ok(())
}

fn density(s: &str) -> Result<DensityValue, Failure> {
    Ok(s.parse::<DensityValue>()?)
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next `pg_*` call on the same thread.
#[no_mangle]
pub extern "C" fn pg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a set from `len` values (unsorted, duplicates allowed).
///
/// # Safety
/// `values` must point to `len` readable `uint64_t` (it may be null when `len == 0`).
#[no_mangle]
pub unsafe extern "C" fn pg_set_from_u64(values: *const u64, len: usize, out: *mut *mut PgSet) -> PgStatus {
    guard(|| {
        let slice: &[u64] = if len == 0 {
            &[]
        } else if values.is_null() {
            return Err(null("values"));
        } else {
            std::slice::from_raw_parts(values, len)
        };
        put_set(out, FiniteIntegerSet::from_u64s(slice.iter().copied()))
    })
}

/// Parses newline-delimited decimals (`#` starts a comment).
///
/// # Safety
/// `text` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn pg_set_parse(text: *const c_char, out: *mut *mut PgSet) -> PgStatus {
    guard(|| put_set(out, FiniteIntegerSet::parse(c_str(text, "text")?)?))
}

/// # Safety
/// `set` must be null or a handle from this library that was not freed yet.
#[no_mangle]
pub unsafe extern "C" fn pg_set_free(set: *mut PgSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// # Safety
/// `set` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pg_set_len(set: *const PgSet, out: *mut usize) -> PgStatus {
    guard(|| put(out, set_ref(set)?.len()))
}

/// Element `index` in increasing order.
///
/// # Safety
/// `set` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pg_set_get_u64(set: *const PgSet, index: usize, out: *mut u64) -> PgStatus {
    guard(|| {
        let s = set_ref(set)?;
        let v = s.elements().get(index).ok_or_else(|| {
            Failure(PgStatus::IndexOutOfRange, format!("index {index} out of range for set of size {}", s.len()))
        })?;
        let v = u64::try_from(v).map_err(|_| Failure(PgStatus::Overflow, format!("{v} does not fit in 64 bits")))?;
        put(out, v)
    })
}

/// Newline-delimited decimal rendering of the set.
///
/// # Safety
/// `set` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pg_set_to_string(set: *const PgSet, out: *mut *mut c_char) -> PgStatus {
    guard(|| put_string(out, set_ref(set)?.to_lines()))
}

/// # Safety
/// `s` must be null or a string returned by this library that was not freed yet.
#[no_mangle]
pub unsafe extern "C" fn pg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `{2pi + (i² mod p) : 0 ≤ i < p}` for an odd prime `p`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pg_sidon_erdos_turan(p: u64, out: *mut *mut PgSet) -> PgStatus {
    guard(|| put_set(out, erdos_turan_sidon(p)?.elements().clone()))
}

/// Writes whether all pairwise sums `a + b` (`a ≤ b`) are distinct. When not,
/// and `counterexample` is non-null, it receives a JSON array `[a, b, c, d]`
/// with `a + b = c + d`.
///
/// # Safety
/// `set` must be a live handle; `counterexample` may be null.
#[no_mangle]
pub unsafe extern "C" fn pg_verify_sidon(
    set: *const PgSet,
    is_sidon: *mut bool,
    counterexample: *mut *mut c_char,
) -> PgStatus {
    guard(|| {
        let verdict = verify_sidon(set_ref(set)?);
        put(is_sidon, verdict.is_valid())?;
        if let (prodgap::sidon::SidonVerdict::Counterexample(q), false) = (&verdict, counterexample.is_null()) {
            put_string(counterexample, format!("[{}, {}, {}, {}]", q[0], q[1], q[2], q[3]))?;
        }
        Ok(())
    })
}

/// Smallest difference between distinct elements, as a decimal string.
///
/// # Safety
/// `set` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pg_min_pairwise_gap(set: *const PgSet, out: *mut *mut c_char) -> PgStatus {
    guard(|| put_string(out, min_pairwise_gap(set_ref(set)?)?.to_string()))
}

/// `{ab : a, b ∈ set}`.
///
/// # Safety
/// `set` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pg_product_set(set: *const PgSet, out: *mut *mut PgSet) -> PgStatus {
    guard(|| put_set(out, product_set(set_ref(set)?)))
}

/// Smallest `b_{i+t} − b_i` over the sorted product set, as a decimal string.
///
/// # Safety
/// `set` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pg_min_t_gap(set: *const PgSet, t: usize, out: *mut *mut c_char) -> PgStatus {
    guard(|| put_string(out, min_gap_oracle(set_ref(set)?, t)?.to_string()))
}

/// `|A/A|`: distinct reduced fractions `a/a'` with `a < a'` in the set.
///
/// # Safety
/// `set` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pg_quotient_set_size(set: *const PgSet, out: *mut usize) -> PgStatus {
    guard(|| put(out, quotient_set(set_ref(set)?)?.len()))
}

/// Quotient-size report for `set ⊆ [1, n]` as JSON.
///
/// # Safety
/// `set` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn pg_theorem5_check_json(set: *const PgSet, n: u64, out: *mut *mut c_char) -> PgStatus {
    guard(|| {
        let report = theorem5_check(set_ref(set)?, n)?;
        put_string(out, serde_json::to_string(&report).expect("report serializes"))
    })
}

/// Construction report as JSON. `alpha` is `"num/den"`; `t == 0` selects
/// the single-gap family, `t ≥ 2` the cluster family.
///
/// # Safety
/// `alpha` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn pg_construct_json(
    alpha: *const c_char,
    t: u64,
    n_max: u64,
    out: *mut *mut c_char,
) -> PgStatus {
    guard(|| {
        let alpha = density(c_str(alpha, "alpha")?)?;
        let spec = if t == 0 { theorem2_spec(&alpha)? } else { theorem4_spec(&alpha, t)? };
        let report = construction_report(&spec, n_max)?;
        put_string(out, serde_json::to_string(&report).expect("report serializes"))
    })
}

/// Certificates for every disjoint dense window of `set` inside `[1, max]`,
/// as a JSON array. Each certificate is re-verified before it is returned.
///
/// # Safety
/// `set` must be a live handle and `alpha` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn pg_certify_json(
    set: *const PgSet,
    alpha: *const c_char,
    t: u64,
    out: *mut *mut c_char,
) -> PgStatus {
    guard(|| {
        let s = set_ref(set)?;
        let alpha = density(c_str(alpha, "alpha")?)?;
        let hi = s.max().cloned().unwrap_or_default().max(1u32.into());
        let observation = Window::new(1u32.into(), hi)?;
        let certs = certify_small_gaps(s, &alpha, t, &observation)?;
        for c in &certs {
            c.verify_in(s)
                .map_err(|m| Failure(PgStatus::Internal, format!("certificate failed re-verification: {m}")))?;
        }
        put_string(out, serde_json::to_string(&certs).expect("certificates serialize"))
    })
}
