//! C ABI for `cuspidal-core`.
//!
//! Germs live behind an opaque `CuspGerm` handle. Every entry point returns a
//! `CuspStatus`; on failure the message is available from
//! `cusp_last_error_message` on the calling thread. Strings returned through
//! `char **` out-parameters are owned by the caller and released with
//! `cusp_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cuspidal_core::cli::{
    classify_report, mesh_obj, prepare, sweep_csv, MeshOptions, Prepared, SweepOptions,
};
use cuspidal_core::geometry::{bias_secondary, eta_frame, solve_singular_u, trajectory_series};
use cuspidal_core::germs::{builtin, GermSpec, MapGerm};
use cuspidal_core::jets::DEFAULT_ORDER;
use cuspidal_core::{Error, Rational};

/// Result code of every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CuspStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Malformed germ spec, unknown builtin name or bad option value.
    InvalidInput = 3,
    /// The germ is outside the domain of the operation (wrong 2-jet,
    /// degenerate quadratic term, no real branch, ...).
    NotApplicable = 4,
    /// An iterative solver did not converge.
    NumericalFailure = 5,
    /// Internal error, including a caught panic.
    Internal = 6,
}

enum Tower {
    Exact(Prepared<Rational>),
    Float(Prepared<f64>),
}

/// Opaque germ handle.
pub struct CuspGerm {
    germ: MapGerm<Rational>,
    tower: Tower,
}

macro_rules! with_tower {
    ($g:expr, $p:ident => $body:expr) => {
        match &$g.tower {
            Tower::Exact($p) => $body,
            Tower::Float($p) => $body,
        }
    };
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CuspStatus {
    match e {
        Error::Parse { .. } | Error::Spec(_) | Error::UnknownName(_) | Error::Io(_) => CuspStatus::InvalidInput,
        Error::NoConvergence(_) | Error::BranchSingular { .. } => CuspStatus::NumericalFailure,
        Error::InvariantViolation(_) => CuspStatus::Internal,
        _ => CuspStatus::NotApplicable,
    }
}

struct Failure(CuspStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

/// Runs `f`, converting errors and panics into a status and the thread's last
/// error message.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CuspStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            CuspStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            CuspStatus::Internal
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(CuspStatus::NullArgument, format!("{what} is null"))
}

/// # Safety
/// `p` must be null or a NUL-terminated string.
unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(CuspStatus::InvalidUtf8, format!("{what}: {e}")))
}

/// # Safety
/// `out` must be null or valid for writes.
unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| Failure(CuspStatus::Internal, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

fn handle<'a>(g: *const CuspGerm) -> Result<&'a CuspGerm, Failure> {
    // SAFETY: non-null handles come from `Box::into_raw` in this crate.
    unsafe { g.as_ref() }.ok_or_else(|| null("germ"))
}

fn make_germ(germ: MapGerm<Rational>) -> Result<CuspGerm, Failure> {
    let tower = match prepare(&germ) {
        Ok(p) => Tower::Exact(p),
        Err(Error::IrrationalSqrt(_)) => Tower::Float(prepare(&germ.to_f64())?),
        Err(e) => return Err(e.into()),
    };
    Ok(CuspGerm { germ, tower })
}

fn truncated(germ: MapGerm<Rational>, order: u32) -> Result<MapGerm<Rational>, Failure> {
    if order == 0 {
        return Ok(germ);
    }
    let [x, y, z] = germ.into_components().map(|c| c.with_order(order as usize));
    Ok(MapGerm::new(x, y, z)?)
}

/// Parses a germ-spec JSON document. `order == 0` keeps the order in the spec.
///
/// Exact rational arithmetic is used unless normalization needs an irrational
/// square root, in which case the handle falls back to double precision.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cusp_germ_from_json(json: *const c_char, order: u32, out: *mut *mut CuspGerm) -> CuspStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = read_str(json, "json")?;
        let germ = truncated(GermSpec::parse(text)?.to_germ()?, order)?;
        *out = Box::into_raw(Box::new(make_germ(germ)?));
        Ok(())
    })
}

/// Built-in germ by name (`fs_plus`, `mond:S1`, ...). `order == 0` selects the
/// default truncation order.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cusp_germ_builtin(name: *const c_char, order: u32, out: *mut *mut CuspGerm) -> CuspStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let name = read_str(name, "name")?;
        let order = if order == 0 { DEFAULT_ORDER } else { order as usize };
        *out = Box::into_raw(Box::new(make_germ(builtin(name, order)?)?));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `germ` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cusp_germ_free(germ: *mut CuspGerm) {
    if !germ.is_null() {
        drop(Box::from_raw(germ));
    }
}

/// Whether the germ is a frontal through its truncation order.
///
/// # Safety
/// `germ` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cusp_germ_is_frontal(germ: *const CuspGerm, out: *mut bool) -> CuspStatus {
    guard(|| {
        let g = handle(germ)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = with_tower!(g, p => p.frontal);
        Ok(())
    })
}

/// Multi-line classification report (2-jet, frontality, obstruction, label).
///
/// # Safety
/// `germ` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cusp_germ_classify(germ: *const CuspGerm, out: *mut *mut c_char) -> CuspStatus {
    guard(|| {
        let g = handle(germ)?;
        if out.is_null() {
            return Err(null("out"));
        }
        write_string(out, with_tower!(g, p => classify_report(p).to_string()))
    })
}

/// Coefficients `alpha[0..3]` of `u(s~) = alpha1 s~ + alpha2 s~^2 + alpha3 s~^3`
/// along the S2 trajectory of the frontal part.
///
/// # Safety
/// `germ` must be a live handle and `alpha` valid for three writes.
#[no_mangle]
pub unsafe extern "C" fn cusp_trajectory_series(germ: *const CuspGerm, alpha: *mut f64) -> CuspStatus {
    guard(|| {
        let g = handle(germ)?;
        if alpha.is_null() {
            return Err(null("alpha"));
        }
        let a = with_tower!(g, p => {
            let fnf = p.reduced.as_ref().ok_or(Error::NotReducedC1)?;
            trajectory_series(fnf)?.alpha
        });
        ptr::copy_nonoverlapping(a.as_ptr(), alpha, 3);
        Ok(())
    })
}

/// Bias `r_b` and secondary cuspidal curvature `r_c` at the S2 point on the
/// `+s~` side of the trajectory.
///
/// # Safety
/// `germ` must be a live handle; `r_b` and `r_c` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cusp_bias_secondary(
    germ: *const CuspGerm,
    s_tilde: f64,
    r_b: *mut f64,
    r_c: *mut f64,
) -> CuspStatus {
    guard(|| {
        let g = handle(germ)?;
        if r_b.is_null() || r_c.is_null() {
            return Err(null("r_b/r_c"));
        }
        if !(s_tilde > 0.0 && s_tilde.is_finite()) {
            return Err(Failure(CuspStatus::InvalidInput, format!("s_tilde must be positive, got {s_tilde}")));
        }
        let (b, c) = with_tower!(g, p => {
            let fnf = p.reduced.as_ref().ok_or(Error::NotReducedC1)?;
            let roots = solve_singular_u(fnf, s_tilde)?;
            let u0 = *roots.last().ok_or(Error::NoRealBranch)?;
            bias_secondary(&eta_frame(fnf, u0, s_tilde)?)?
        });
        *r_b = b;
        *r_c = c;
        Ok(())
    })
}

/// CSV of invariants at both S2 points for `count` values of `s~` in
/// `[s_min, s_max]`.
///
/// # Safety
/// `germ` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cusp_sweep_csv(
    germ: *const CuspGerm,
    s_min: f64,
    s_max: f64,
    count: usize,
    out: *mut *mut c_char,
) -> CuspStatus {
    guard(|| {
        let g = handle(germ)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let opts = SweepOptions { s_min, s_max, count };
        let csv = with_tower!(g, p => {
            let fnf = p.reduced.as_ref().ok_or(Error::NotReducedC1)?;
            sweep_csv(fnf, &opts)?
        });
        write_string(out, csv)
    })
}

/// OBJ mesh of the surface at parameter `s` on a `grid x grid` lattice over
/// `[-extent, extent]^2`.
///
/// # Safety
/// `germ` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cusp_mesh_obj(
    germ: *const CuspGerm,
    s: f64,
    grid: usize,
    extent: f64,
    frontalize: bool,
    out: *mut *mut c_char,
) -> CuspStatus {
    guard(|| {
        let g = handle(germ)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let opts = MeshOptions { s, grid, extent, frontalize };
        let mesh = match &g.tower {
            Tower::Exact(p) => mesh_obj(&g.germ, p, &opts)?,
            Tower::Float(p) => mesh_obj(&g.germ.to_f64(), p, &opts)?,
        };
        write_string(out, mesh.obj)
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cusp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or null after a success.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn cusp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
