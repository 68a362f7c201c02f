//! C ABI over the `tripartite` simulator.
//!
//! Every function returns a [`TpStatus`]; on failure the message is kept per
//! thread and can be copied out with [`tp_last_error`]. Handles are opaque and
//! must be released with the matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tripartite::dynamics::ConvergedTrajectory;
use tripartite::model::{derive_params, Constants, DerivedParams, PhysicalParams, Platform};
use tripartite::sweep::{fig3_panel, Fig3Config};
use tripartite::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// Physical inputs admit no solution (e.g. no squeezing for Ω_p ≥ δ_m).
    InvalidParameter = 3,
    /// Integration or linear-algebra failure.
    Numerical = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TpPlatform {
    TrappedDiamond = 0,
    Cantilever = 1,
    LevitatedYig = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TpSeries {
    Time = 0,
    Spin = 1,
    Magnon = 2,
    Phonon = 3,
}

/// Physical inputs plus the constants table they are evaluated with.
pub struct TpParams {
    params: PhysicalParams,
    constants: Constants,
}

pub struct TpDerived(DerivedParams);

pub struct TpTrajectory(ConvergedTrajectory);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn fail(status: TpStatus, msg: impl Into<String>) -> TpStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
    status
}

fn status_of(e: &Error) -> TpStatus {
    match e {
        Error::InvalidParameter { .. } | Error::NoSqueezingSolution { .. } => TpStatus::InvalidParameter,
        Error::Config(_) | Error::Io(_) | Error::InvalidCutoff(_) | Error::InvalidTimeGrid(_) => {
            TpStatus::InvalidArgument
        }
        _ => TpStatus::Numerical,
    }
}

fn guard(f: impl FnOnce() -> Result<(), TpStatus>) -> TpStatus {
    LAST_ERROR.with(|e| e.borrow_mut().clear());
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TpStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(TpStatus::Panic, "internal panic"),
    }
}

fn check<T>(r: tripartite::Result<T>) -> Result<T, TpStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn name_arg<'a>(name: *const c_char) -> Result<&'a str, TpStatus> {
    if name.is_null() {
        return Err(fail(TpStatus::NullPointer, "name is null"));
    }
    CStr::from_ptr(name).to_str().map_err(|_| fail(TpStatus::InvalidArgument, "name is not UTF-8"))
}

unsafe fn out_arg<'a, T>(out: *mut T) -> Result<&'a mut T, TpStatus> {
    out.as_mut().ok_or_else(|| fail(TpStatus::NullPointer, "output pointer is null"))
}

unsafe fn handle<'a, T>(h: *const T) -> Result<&'a T, TpStatus> {
    h.as_ref().ok_or_else(|| fail(TpStatus::NullPointer, "handle is null"))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length in bytes.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn tp_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr().cast(), buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Creates a parameter set from a [`TpPlatform`] preset with default constants.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tp_params_new(platform: u32, out: *mut *mut TpParams) -> TpStatus {
    guard(|| {
        let out = out_arg(out)?;
        let platform = match platform {
            p if p == TpPlatform::TrappedDiamond as u32 => Platform::TrappedDiamond,
            p if p == TpPlatform::Cantilever as u32 => Platform::Cantilever,
            p if p == TpPlatform::LevitatedYig as u32 => Platform::LevitatedYig,
            p => return Err(fail(TpStatus::InvalidArgument, format!("unknown platform {p}"))),
        };
        let constants = Constants::default();
        let params = PhysicalParams::preset(platform, &constants);
        *out = Box::into_raw(Box::new(TpParams { params, constants }));
        Ok(())
    })
}

/// Sets one numeric input by name (SI units), e.g. `"yig_radius"` or `"r"`.
///
/// # Safety
/// `params` must come from [`tp_params_new`]; `name` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn tp_params_set(params: *mut TpParams, name: *const c_char, value: f64) -> TpStatus {
    guard(|| {
        let p = params.as_mut().ok_or_else(|| fail(TpStatus::NullPointer, "handle is null"))?;
        let name = name_arg(name)?;
        check(p.params.set(name, value))
    })
}

/// # Safety
/// `params` must be null or come from [`tp_params_new`], and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tp_params_free(params: *mut TpParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// Derives couplings, drive and decay rates.
///
/// # Safety
/// `params` must come from [`tp_params_new`]; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tp_derive(params: *const TpParams, out: *mut *mut TpDerived) -> TpStatus {
    guard(|| {
        let p = handle(params)?;
        let out = out_arg(out)?;
        let d = check(derive_params(&p.params, &p.constants))?;
        *out = Box::into_raw(Box::new(TpDerived(d)));
        Ok(())
    })
}

/// Reads one derived field by name (`"lambda"`, `"lambda_eff"`,
/// `"cooperativity"`, ...). Rates are angular frequencies in rad/s.
///
/// # Safety
/// `derived` must come from [`tp_derive`]; `name` must be NUL-terminated; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn tp_derived_get(derived: *const TpDerived, name: *const c_char, out: *mut f64) -> TpStatus {
    guard(|| {
        let d = handle(derived)?;
        let name = name_arg(name)?;
        let out = out_arg(out)?;
        let fields = serde_json::to_value(&d.0).map_err(|e| fail(TpStatus::Numerical, e.to_string()))?;
        *out = fields
            .get(name)
            .and_then(|v| v.as_f64())
            .ok_or_else(|| fail(TpStatus::InvalidArgument, format!("unknown derived field `{name}`")))?;
        Ok(())
    })
}

/// # Safety
/// `derived` must be null or come from [`tp_derive`], and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tp_derived_free(derived: *mut TpDerived) {
    if !derived.is_null() {
        drop(Box::from_raw(derived));
    }
}

/// Dissipative run from |e,0,0⟩ in units of λ with the reference decay rates
/// (γ_s = 0.05, Γ_m = 1.1, g₀ = 30, Δ_m = 15·e^r), sampled at `points + 1`
/// uniform times over `[0, t_end]`, with phonon-cutoff doubling.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tp_dissipative_run(
    r: f64,
    gamma_k: f64,
    t_end: f64,
    points: usize,
    out: *mut *mut TpTrajectory,
) -> TpStatus {
    guard(|| {
        let out = out_arg(out)?;
        if !(r.is_finite() && r >= 0.0 && gamma_k.is_finite() && gamma_k >= 0.0 && t_end > 0.0 && points > 0) {
            return Err(fail(TpStatus::InvalidArgument, "need r ≥ 0, gamma_k ≥ 0, t_end > 0 and points > 0"));
        }
        let cfg = Fig3Config { t_end, points, ..Default::default() };
        let run = check(fig3_panel(&cfg, r, gamma_k))?;
        *out = Box::into_raw(Box::new(TpTrajectory(run)));
        Ok(())
    })
}

/// Number of samples in a trajectory.
///
/// # Safety
/// `traj` must come from [`tp_dissipative_run`]; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn tp_trajectory_len(traj: *const TpTrajectory, out: *mut usize) -> TpStatus {
    guard(|| {
        *out_arg(out)? = handle(traj)?.0.trajectory.times.len();
        Ok(())
    })
}

/// Phonon cutoff reached and whether the cutoff study converged.
///
/// # Safety
/// `traj` must come from [`tp_dissipative_run`]; both outputs valid.
#[no_mangle]
pub unsafe extern "C" fn tp_trajectory_cutoff(
    traj: *const TpTrajectory,
    n_phonon: *mut usize,
    converged: *mut bool,
) -> TpStatus {
    guard(|| {
        let t = handle(traj)?;
        *out_arg(n_phonon)? = t.0.n_phonon;
        *out_arg(converged)? = t.0.converged;
        Ok(())
    })
}

/// Copies one [`TpSeries`] into `buf`, which must hold at least
/// [`tp_trajectory_len`] values.
///
/// # Safety
/// `traj` must come from [`tp_dissipative_run`]; `buf` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn tp_trajectory_copy(
    traj: *const TpTrajectory,
    series: u32,
    buf: *mut f64,
    len: usize,
) -> TpStatus {
    guard(|| {
        let t = &handle(traj)?.0.trajectory;
        if buf.is_null() {
            return Err(fail(TpStatus::NullPointer, "buffer is null"));
        }
        let src = match series {
            s if s == TpSeries::Time as u32 => &t.times,
            s if s == TpSeries::Spin as u32 => &t.spin,
            s if s == TpSeries::Magnon as u32 => &t.magnon,
            s if s == TpSeries::Phonon as u32 => &t.phonon,
            s => return Err(fail(TpStatus::InvalidArgument, format!("unknown series {s}"))),
        };
        if len < src.len() {
            return Err(fail(TpStatus::BufferTooSmall, format!("need {} values, got {len}", src.len())));
        }
        ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
        Ok(())
    })
}

/// # Safety
/// `traj` must be null or come from [`tp_dissipative_run`], and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tp_trajectory_free(traj: *mut TpTrajectory) {
    if !traj.is_null() {
        drop(Box::from_raw(traj));
    }
}
