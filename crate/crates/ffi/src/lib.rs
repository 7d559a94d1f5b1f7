//! C interface to `facto-core`.
//!
//! Objects cross the boundary as opaque heap handles and are exchanged as the
//! same JSON documents the `facto` CLI reads and writes. Every entry point
//! returns a [`FactoStatus`]; on failure the message is kept per thread and
//! read back with [`facto_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use facto_core::factorization::{fac_stable_hom_dim, rotate, zigzag_check, Factorization};
use facto_core::field_poly::Field;
use facto_core::functors::{cok, reconstruct};
use facto_core::json::{chain_from_json, factorization_from_json};
use facto_core::monochain::{chain_stable_hom_dim, MonoChain};
use facto_core::AlgebraError;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactoStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed JSON or an unknown field name.
    Parse = 3,
    /// The input parsed but is not a valid object, or an operation was undefined on it.
    Algebra = 4,
    /// The two arguments live over different fields or have different `d`, `l`.
    Mismatch = 5,
    Panic = 6,
}

/// Opaque handle to a factorization.
pub struct FactoFactorization(Factorization);

/// Opaque handle to a chain of monomorphisms.
pub struct FactoChain(MonoChain);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(FactoStatus, String);

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        let status = if matches!(e, AlgebraError::Parse(_)) { FactoStatus::Parse } else { FactoStatus::Algebra };
        Failure(status, e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> FactoStatus {
    let outcome = catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|p| {
        let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(Failure(FactoStatus::Panic, msg.unwrap_or_else(|| "panic".into())))
    });
    match outcome {
        Ok(()) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            FactoStatus::Ok
        }
        Err(Failure(status, msg)) => {
            let msg = CString::new(msg.replace('\0', " ")).expect("no interior nul");
            LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
            status
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(FactoStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure(FactoStatus::InvalidUtf8, e.to_string()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(FactoStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(FactoStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn parse(field: *const c_char, json: *const c_char) -> Result<(Field, serde_json::Value), Failure> {
    let field = Field::parse(text(field)?).map_err(|e| Failure(FactoStatus::Parse, e.to_string()))?;
    let v = serde_json::from_str(text(json)?).map_err(|e| Failure(FactoStatus::Parse, e.to_string()))?;
    Ok((field, v))
}

fn owned_string(v: &serde_json::Value) -> *mut c_char {
    CString::new(v.to_string()).expect("JSON has no nul bytes").into_raw()
}

/// Message for the most recent failure on this thread, or null after a success.
/// The pointer stays valid until the next `facto_*` call on the same thread.
#[no_mangle]
pub extern "C" fn facto_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from a `facto_*_to_json` call and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn facto_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse and validate a factorization. `field` is `"q"` or `"fp:<p>"`.
///
/// # Safety
/// String arguments must be nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn facto_factorization_from_json(
    field: *const c_char,
    json: *const c_char,
    out: *mut *mut FactoFactorization,
) -> FactoStatus {
    guard(|| {
        let (field, v) = parse(field, json)?;
        let x = factorization_from_json(field, &v)?;
        put(out, Box::into_raw(Box::new(FactoFactorization(x))))
    })
}

/// # Safety
/// `x` must be a live handle; `out` must be writable. Free the result with `facto_string_free`.
#[no_mangle]
pub unsafe extern "C" fn facto_factorization_to_json(x: *const FactoFactorization, out: *mut *mut c_char) -> FactoStatus {
    guard(|| put(out, owned_string(&handle(x)?.0.to_json())))
}

/// # Safety
/// `x` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn facto_factorization_free(x: *mut FactoFactorization) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Rank `m` and number of maps `l`.
///
/// # Safety
/// `x` must be a live handle; the output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn facto_factorization_shape(x: *const FactoFactorization, rank: *mut usize, l: *mut usize) -> FactoStatus {
    guard(|| {
        let x = &handle(x)?.0;
        put(rank, x.rank())?;
        put(l, x.l())
    })
}

/// Check the zig-zag identities. Writes -1 when they hold, otherwise the first failing position.
///
/// # Safety
/// `x` must be a live handle; `position` must be writable.
#[no_mangle]
pub unsafe extern "C" fn facto_factorization_zigzag(x: *const FactoFactorization, position: *mut i64) -> FactoStatus {
    guard(|| {
        let at = zigzag_check(&handle(x)?.0).err().map_or(-1, |k| k as i64);
        put(position, at)
    })
}

/// Rotate `times` steps; negative counts rotate backwards.
///
/// # Safety
/// `x` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn facto_rotate(x: *const FactoFactorization, times: i64, out: *mut *mut FactoFactorization) -> FactoStatus {
    guard(|| {
        let mut y = handle(x)?.0.clone();
        for _ in 0..times.unsigned_abs() {
            y = rotate(&y, times < 0);
        }
        put(out, Box::into_raw(Box::new(FactoFactorization(y))))
    })
}

/// Dimension of the stable hom space between two factorizations.
///
/// # Safety
/// Both handles must be live; `dim` must be writable.
#[no_mangle]
pub unsafe extern "C" fn facto_stable_hom_dim(x: *const FactoFactorization, y: *const FactoFactorization, dim: *mut usize) -> FactoStatus {
    guard(|| {
        let (x, y) = (&handle(x)?.0, &handle(y)?.0);
        if x.cfg() != y.cfg() || x.l() != y.l() {
            return Err(Failure(FactoStatus::Mismatch, "factorizations differ in field, d or l".into()));
        }
        put(dim, fac_stable_hom_dim(x, y))
    })
}

/// Parse and validate a chain of monomorphisms.
///
/// # Safety
/// String arguments must be nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn facto_chain_from_json(field: *const c_char, json: *const c_char, out: *mut *mut FactoChain) -> FactoStatus {
    guard(|| {
        let (field, v) = parse(field, json)?;
        let u = chain_from_json(field, &v)?;
        put(out, Box::into_raw(Box::new(FactoChain(u))))
    })
}

/// # Safety
/// `u` must be a live handle; `out` must be writable. Free the result with `facto_string_free`.
#[no_mangle]
pub unsafe extern "C" fn facto_chain_to_json(u: *const FactoChain, out: *mut *mut c_char) -> FactoStatus {
    guard(|| put(out, owned_string(&handle(u)?.0.to_json())))
}

/// # Safety
/// `u` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn facto_chain_free(u: *mut FactoChain) {
    if !u.is_null() {
        drop(Box::from_raw(u));
    }
}

/// Stable hom dimension between two chains.
///
/// # Safety
/// Both handles must be live; `dim` must be writable.
#[no_mangle]
pub unsafe extern "C" fn facto_chain_stable_hom_dim(u: *const FactoChain, v: *const FactoChain, dim: *mut usize) -> FactoStatus {
    guard(|| {
        let (u, v) = (&handle(u)?.0, &handle(v)?.0);
        if u.cfg() != v.cfg() || u.len() != v.len() {
            return Err(Failure(FactoStatus::Mismatch, "chains differ in field, d or l".into()));
        }
        put(dim, chain_stable_hom_dim(u, v))
    })
}

/// The cokernel chain of a factorization.
///
/// # Safety
/// `x` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn facto_cok(x: *const FactoFactorization, out: *mut *mut FactoChain) -> FactoStatus {
    guard(|| {
        let u = cok(&handle(x)?.0)?;
        put(out, Box::into_raw(Box::new(FactoChain(u))))
    })
}

/// A factorization whose cokernel chain is `u`.
///
/// # Safety
/// `u` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn facto_reconstruct(u: *const FactoChain, out: *mut *mut FactoFactorization) -> FactoStatus {
    guard(|| {
        let x = reconstruct(&handle(u)?.0)?;
        put(out, Box::into_raw(Box::new(FactoFactorization(x))))
    })
}
