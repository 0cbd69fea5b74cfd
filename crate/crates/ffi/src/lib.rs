//! C interface to the `littelmann` crate.
//!
//! Root systems and paths live behind opaque handles. Every fallible call
//! returns an [`LmStatus`]; on failure the message is available from
//! [`lm_last_error`] on the same thread. Strings returned through `char **`
//! are owned by the caller and released with [`lm_string_free`]. Simple
//! root indices are 0-based.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use littelmann::crystal::{decompose_weights, Limits};
use littelmann::extremal::is_extremal;
use littelmann::rootops::{lower, raise};
use littelmann::{Error, Path, RootSystem, Weight};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    /// The root operator sends the path to zero; the output is NULL.
    Zero = 5,
    /// Crystal generation hit its limits, or a non-finite type had none.
    Limit = 6,
    Verification = 7,
    Panic = 8,
}

/// A validated root system.
pub struct LmRootSystem(RootSystem);

/// A path with rational segments.
pub struct LmPath(Path);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> LmStatus {
    match e {
        Error::Parse(_) | Error::Json(_) => LmStatus::Parse,
        Error::Truncated | Error::LimitsRequired | Error::IterationCapExceeded(_) | Error::NonTerminating(_) => {
            LmStatus::Limit
        }
        Error::VerificationFailed(_) | Error::WitnessMismatch => LmStatus::Verification,
        _ => LmStatus::InvalidInput,
    }
}

struct Fail(LmStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<LmStatus, Fail>) -> LmStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => status,
        Ok(Err(Fail(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            LmStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(LmStatus::NullPointer, format!("{what} is NULL")))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(LmStatus::NullPointer, format!("{what} is NULL")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(LmStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn out_ptr<T>(out: *mut *mut T) -> Result<&'static mut *mut T, Fail> {
    let slot = out.as_mut().ok_or_else(|| Fail(LmStatus::NullPointer, "output pointer is NULL".into()))?;
    *slot = ptr::null_mut();
    Ok(slot)
}

fn give_string(out: &mut *mut c_char, s: String) {
    *out = CString::new(s).expect("JSON has no interior NUL").into_raw();
}

unsafe fn weight(p: *const i64, rank: usize, what: &str) -> Result<Weight, Fail> {
    if rank == 0 {
        return Ok(Weight(Vec::new()));
    }
    if p.is_null() {
        return Err(Fail(LmStatus::NullPointer, format!("{what} is NULL")));
    }
    Ok(Weight(std::slice::from_raw_parts(p, rank).to_vec()))
}

/// Message of the last failure on this thread. Valid until the next call
/// on the same thread.
#[no_mangle]
pub extern "C" fn lm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn lm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Built-in type such as `"A2"`, `"G2"`, `"E8"` or `"A1~"`.
#[no_mangle]
pub unsafe extern "C" fn lm_root_system_builtin(name: *const c_char, out: *mut *mut LmRootSystem) -> LmStatus {
    guard(|| {
        let slot = out_ptr(out)?;
        let rs = RootSystem::builtin(text(name, "name")?)?;
        *slot = Box::into_raw(Box::new(LmRootSystem(rs)));
        Ok(LmStatus::Ok)
    })
}

/// `{"name": ..., "cartan": [[...]]}` with `A[i][j] = <alpha_j, alpha_i^v>`.
#[no_mangle]
pub unsafe extern "C" fn lm_root_system_from_json(json: *const c_char, out: *mut *mut LmRootSystem) -> LmStatus {
    guard(|| {
        let slot = out_ptr(out)?;
        let rs = RootSystem::from_json(text(json, "json")?)?;
        *slot = Box::into_raw(Box::new(LmRootSystem(rs)));
        Ok(LmStatus::Ok)
    })
}

/// Rank, or 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn lm_root_system_rank(rs: *const LmRootSystem) -> usize {
    rs.as_ref().map_or(0, |r| r.0.rank())
}

#[no_mangle]
pub unsafe extern "C" fn lm_root_system_free(rs: *mut LmRootSystem) {
    if !rs.is_null() {
        drop(Box::from_raw(rs));
    }
}

/// Parses a JSON list of segments, each a list of rational strings.
#[no_mangle]
pub unsafe extern "C" fn lm_path_from_json(
    rs: *const LmRootSystem,
    json: *const c_char,
    out: *mut *mut LmPath,
) -> LmStatus {
    guard(|| {
        let slot = out_ptr(out)?;
        let rs = borrow(rs, "root system")?;
        let path = Path::from_json(text(json, "json")?, rs.0.rank())?;
        *slot = Box::into_raw(Box::new(LmPath(path)));
        Ok(LmStatus::Ok)
    })
}

/// Straight path to an integral weight in fundamental coordinates.
#[no_mangle]
pub unsafe extern "C" fn lm_path_straight(
    rs: *const LmRootSystem,
    coords: *const i64,
    rank: usize,
    out: *mut *mut LmPath,
) -> LmStatus {
    guard(|| {
        let slot = out_ptr(out)?;
        let rs = borrow(rs, "root system")?;
        rs.0.check_rank(rank)?;
        let lam = weight(coords, rank, "coords")?;
        *slot = Box::into_raw(Box::new(LmPath(Path::straight_int(&lam))));
        Ok(LmStatus::Ok)
    })
}

#[no_mangle]
pub unsafe extern "C" fn lm_path_to_json(path: *const LmPath, out: *mut *mut c_char) -> LmStatus {
    guard(|| {
        let slot = out_ptr(out)?;
        give_string(slot, borrow(path, "path")?.0.to_json());
        Ok(LmStatus::Ok)
    })
}

/// Endpoint as a JSON list of rational strings.
#[no_mangle]
pub unsafe extern "C" fn lm_path_endpoint_json(path: *const LmPath, out: *mut *mut c_char) -> LmStatus {
    guard(|| {
        let slot = out_ptr(out)?;
        let end = borrow(path, "path")?.0.endpoint();
        give_string(slot, serde_json::to_string(&end).expect("weights serialize"));
        Ok(LmStatus::Ok)
    })
}

#[no_mangle]
pub unsafe extern "C" fn lm_path_free(path: *mut LmPath) {
    if !path.is_null() {
        drop(Box::from_raw(path));
    }
}

unsafe fn apply(
    rs: *const LmRootSystem,
    path: *const LmPath,
    index: usize,
    out: *mut *mut LmPath,
    op: fn(&RootSystem, &Path, usize) -> Option<Path>,
) -> LmStatus {
    guard(|| {
        let slot = out_ptr(out)?;
        let rs = borrow(rs, "root system")?;
        let path = borrow(path, "path")?;
        rs.0.check_rank(path.0.rank())?;
        if index >= rs.0.rank() {
            return Err(Error::IndexOutOfRange { index, rank: rs.0.rank() }.into());
        }
        Ok(match op(&rs.0, &path.0, index) {
            Some(p) => {
                *slot = Box::into_raw(Box::new(LmPath(p)));
                LmStatus::Ok
            }
            None => LmStatus::Zero,
        })
    })
}

/// `f_{alpha_index}`; returns `LM_STATUS_ZERO` with a NULL output when the
/// result is zero.
#[no_mangle]
pub unsafe extern "C" fn lm_path_lower(
    rs: *const LmRootSystem,
    path: *const LmPath,
    index: usize,
    out: *mut *mut LmPath,
) -> LmStatus {
    apply(rs, path, index, out, lower)
}

/// `e_{alpha_index}`, with the same zero convention as [`lm_path_lower`].
#[no_mangle]
pub unsafe extern "C" fn lm_path_raise(
    rs: *const LmRootSystem,
    path: *const LmPath,
    index: usize,
    out: *mut *mut LmPath,
) -> LmStatus {
    apply(rs, path, index, out, raise)
}

/// Writes whether the path is extremal.
#[no_mangle]
pub unsafe extern "C" fn lm_path_is_extremal(rs: *const LmRootSystem, path: *const LmPath, out: *mut bool) -> LmStatus {
    guard(|| {
        let slot = out.as_mut().ok_or_else(|| Fail(LmStatus::NullPointer, "output pointer is NULL".into()))?;
        let rs = borrow(rs, "root system")?;
        let path = borrow(path, "path")?;
        *slot = is_extremal(&rs.0, &path.0)?.0;
        Ok(LmStatus::Ok)
    })
}

/// Decomposes `V(mu) (x) V(nu)` into `{"truncated": bool, "components":
/// [{"weight": [...], "multiplicity": n}, ...]}`. `max_nodes == 0` means
/// unbounded, which non-finite types reject with `LM_STATUS_LIMIT`.
#[no_mangle]
pub unsafe extern "C" fn lm_decompose(
    rs: *const LmRootSystem,
    mu: *const i64,
    nu: *const i64,
    rank: usize,
    max_nodes: usize,
    out: *mut *mut c_char,
) -> LmStatus {
    guard(|| {
        let slot = out_ptr(out)?;
        let rs = borrow(rs, "root system")?;
        rs.0.check_rank(rank)?;
        let (mu, nu) = (weight(mu, rank, "mu")?, weight(nu, rank, "nu")?);
        let limits = if max_nodes == 0 { Limits::none() } else { Limits::nodes(max_nodes) };
        let d = decompose_weights(&rs.0, &mu, &nu, limits)?;
        let components: serde_json::Value =
            serde_json::from_str(&d.components.to_json()).expect("multiset JSON is valid");
        let doc = serde_json::json!({ "truncated": d.truncated, "components": components });
        give_string(slot, doc.to_string());
        Ok(LmStatus::Ok)
    })
}

/// Crate version, statically allocated.
#[no_mangle]
pub extern "C" fn lm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
