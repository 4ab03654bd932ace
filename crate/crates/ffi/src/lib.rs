//! C interface to the `trifocal` crate.
//!
//! Tensors are opaque `TfTensor` handles created by the `tf_tensor_*`
//! constructors and released with `tf_tensor_free`. Every fallible call
//! returns a `TfStatus`; on failure `tf_last_error_message` describes the
//! most recent error on the calling thread. Strings returned through `char **`
//! out-parameters are owned by the caller and released with `tf_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use trifocal::camera::trifocal_from_cameras;
use trifocal::ideal::{discover, hilbert_quotient, DiscoverConfig, HARD_DEGREE_CAP};
use trifocal::io::{camera_triple_from_json, tensor_from_json, tensor_to_json};
use trifocal::linalg::{Field, Scalar};
use trifocal::orbits::{is_trifocal, lookup};
use trifocal::report::{check_report, to_json, RunConfig};
use trifocal::tensor::Tensor333;

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Degenerate = 5,
    NotFound = 6,
    Computation = 7,
    Panic = 8,
}

/// Opaque handle to a 3x3x3 tensor over Q.
pub struct TfTensor(Tensor333);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

struct Fail(TfStatus, String);

fn fail<T>(status: TfStatus, msg: impl Into<String>) -> Result<T, Fail> {
    Err(Fail(status, msg.into()))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> TfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            TfStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            TfStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return fail(TfStatus::NullPointer, "null string argument");
    }
    CStr::from_ptr(s).to_str().or_else(|_| fail(TfStatus::InvalidUtf8, "argument is not UTF-8"))
}

unsafe fn tensor<'a>(t: *const TfTensor) -> Result<&'a Tensor333, Fail> {
    match t.as_ref() {
        Some(h) => Ok(&h.0),
        None => fail(TfStatus::NullPointer, "null tensor handle"),
    }
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return fail(TfStatus::NullPointer, "null output pointer");
    }
    out.write(v);
    Ok(())
}

unsafe fn put_tensor(out: *mut *mut TfTensor, t: Tensor333) -> Result<(), Fail> {
    if out.is_null() {
        return fail(TfStatus::NullPointer, "null output pointer");
    }
    out.write(Box::into_raw(Box::new(TfTensor(t))));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return fail(TfStatus::NullPointer, "null output pointer");
    }
    let c = CString::new(s).or_else(|_| fail(TfStatus::Computation, "string contains NUL"))?;
    put(out, c.into_raw())
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn tf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn tf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse tensor JSON: `t[i][j][k]`, scalars as integers or `"p/q"` strings.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tf_tensor_from_json(json: *const c_char, out: *mut *mut TfTensor) -> TfStatus {
    guard(|| {
        let t = tensor_from_json(text(json)?).or_else(|e| fail(TfStatus::Parse, e.to_string()))?;
        put_tensor(out, t)
    })
}

/// Tensor from 27 integers in the order 9i + 3j + k.
///
/// # Safety
/// `entries` must point to 27 readable values and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_tensor_from_ints(entries: *const i64, out: *mut *mut TfTensor) -> TfStatus {
    guard(|| {
        if entries.is_null() {
            return fail(TfStatus::NullPointer, "null entries");
        }
        let e = std::slice::from_raw_parts(entries, 27);
        let t = Tensor333::from_fn(Field::Rational, |i, j, k| Scalar::from_i64(e[9 * i + 3 * j + k], Field::Rational));
        put_tensor(out, t)
    })
}

/// Trifocal tensor of a camera triple given as `{"A1": .., "A2": .., "A3": ..}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tf_tensor_from_cameras_json(json: *const c_char, out: *mut *mut TfTensor) -> TfStatus {
    guard(|| {
        let ct = camera_triple_from_json(text(json)?).or_else(|e| {
            let status =
                if matches!(e, trifocal::io::IoError::Camera(_)) { TfStatus::Degenerate } else { TfStatus::Parse };
            fail(status, e.to_string())
        })?;
        let t = trifocal_from_cameras(&ct).or_else(|e| fail(TfStatus::Degenerate, e.to_string()))?;
        put_tensor(out, t)
    })
}

/// A named catalog representative such as `"F"`, `"17'"` or `"trifocal-11''"`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tf_tensor_catalog(name: *const c_char, out: *mut *mut TfTensor) -> TfStatus {
    guard(|| {
        let name = text(name)?;
        match lookup(name) {
            Some(nf) => put_tensor(out, nf.tensor),
            None => fail(TfStatus::NotFound, format!("no catalog entry named {name:?}")),
        }
    })
}

/// Release a tensor handle. Null is ignored.
///
/// # Safety
/// `t` must come from a `tf_tensor_*` constructor and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn tf_tensor_free(t: *mut TfTensor) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Tensor JSON of a handle; free the result with `tf_string_free`.
///
/// # Safety
/// `t` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tf_tensor_to_json(t: *const TfTensor, out: *mut *mut c_char) -> TfStatus {
    guard(|| put_string(out, tensor_to_json(tensor(t)?)))
}

/// Ranks of the three flattenings, written to `out[0..3]`.
///
/// # Safety
/// `t` must be a live handle and `out` point to 3 writable values.
#[no_mangle]
pub unsafe extern "C" fn tf_tensor_frank(t: *const TfTensor, out: *mut u32) -> TfStatus {
    guard(|| {
        let r = tensor(t)?.frank().as_array();
        for (i, x) in r.iter().enumerate() {
            put(out.wrapping_add(i), *x as u32)?;
        }
        Ok(())
    })
}

/// Generic ranks of the three slice pencils, written to `out[0..3]`.
///
/// # Safety
/// `t` must be a live handle and `out` point to 3 writable values.
#[no_mangle]
pub unsafe extern "C" fn tf_tensor_prank(t: *const TfTensor, out: *mut u32) -> TfStatus {
    guard(|| {
        let r = tensor(t)?.prank().as_array();
        for (i, x) in r.iter().enumerate() {
            put(out.wrapping_add(i), *x as u32)?;
        }
        Ok(())
    })
}

/// Membership test: P-Rank (3,3,2) (any order if `permutation_tolerant`) and F-Rank (3,3,3).
///
/// # Safety
/// `t` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tf_is_trifocal(t: *const TfTensor, permutation_tolerant: bool, out: *mut bool) -> TfStatus {
    guard(|| put(out, is_trifocal(tensor(t)?, permutation_tolerant).is_trifocal))
}

/// The JSON check report (signature, component, verdict and reason).
///
/// # Safety
/// `t` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tf_check_json(
    t: *const TfTensor,
    permutation_tolerant: bool,
    out: *mut *mut c_char,
) -> TfStatus {
    guard(|| {
        let cfg = RunConfig { permutation_tolerant, ..RunConfig::default() };
        let r = check_report(tensor(t)?, &cfg, false);
        put_string(out, to_json("check", &cfg, &r))
    })
}

fn config(prime: u32, degree: u32) -> Result<RunConfig, Fail> {
    let cfg = RunConfig { prime, degree_cap: HARD_DEGREE_CAP, ..RunConfig::default() };
    cfg.validate().or_else(|e| fail(TfStatus::InvalidArgument, e.to_string()))?;
    if degree > HARD_DEGREE_CAP {
        return fail(TfStatus::InvalidArgument, format!("degree {degree} exceeds {HARD_DEGREE_CAP}"));
    }
    Ok(cfg)
}

fn dcfg(cfg: &RunConfig, seed: u64) -> DiscoverConfig {
    DiscoverConfig { prime: cfg.prime, seed, oversample: cfg.oversample }
}

/// Number of new minimal generators of the trifocal ideal in `degree`, over GF(`prime`).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_generator_count(degree: u32, prime: u32, seed: u64, out: *mut u64) -> TfStatus {
    guard(|| {
        let cfg = config(prime, degree)?;
        let inv = discover(degree.max(1), &dcfg(&cfg, seed)).or_else(|e| fail(TfStatus::Computation, e.to_string()))?;
        put(out, inv.counts().get(&degree).copied().unwrap_or(0))
    })
}

/// Dimension of the degree-`degree` part of the quotient by the trifocal ideal, over GF(`prime`).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_hilbert(degree: u32, prime: u32, seed: u64, out: *mut u64) -> TfStatus {
    guard(|| {
        let cfg = config(prime, degree)?;
        let inv =
            discover(degree.clamp(1, 6), &dcfg(&cfg, seed)).or_else(|e| fail(TfStatus::Computation, e.to_string()))?;
        let h = hilbert_quotient(&inv.generators, degree, HARD_DEGREE_CAP)
            .or_else(|e| fail(TfStatus::Computation, e.to_string()))?;
        put(out, h)
    })
}
