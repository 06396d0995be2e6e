//! C ABI over `cyclic-ic`.
//!
//! Channels and inequality systems cross the boundary as opaque handles
//! owned by the caller and released with the matching `_free` function.
//! Every fallible call returns a [`CicStatus`]; on failure a message is
//! available from [`cic_last_error_message`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cyclic_ic::fourier_motzkin::project_to_rates;
use cyclic_ic::gdof::dsym_formula;
use cyclic_ic::{
    achievable_region, certified_gap, classify_regime, etw_split, hk_params, make_channel,
    outer_params, outer_region, regions_equal, strong_region, symmetric_max, ts_region_3,
    ChannelInstance, Error, HkParams, InequalitySystem, PowerSplit, RegimeLabel,
};

/// Opaque channel handle.
pub struct CicChannel(ChannelInstance);

/// Opaque inequality-system handle.
pub struct CicSystem(InequalitySystem);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CicStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    WrongRegime = 3,
    Infeasible = 4,
    Unbounded = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CicRegime {
    Weak = 0,
    Strong = 1,
    VeryStrong = 2,
    Mixed = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CicSplit {
    Etw = 0,
    PrivateOnly = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> CicStatus {
    match err {
        Error::WrongRegime { .. } => CicStatus::WrongRegime,
        Error::Infeasible => CicStatus::Infeasible,
        Error::Unbounded => CicStatus::Unbounded,
        _ => CicStatus::InvalidArgument,
    }
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), CicStatus>) -> CicStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CicStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            CicStatus::Panic
        }
    }
}

fn lib<T>(r: cyclic_ic::Result<T>) -> Result<T, CicStatus> {
    r.map_err(|e| {
        set_error(&e.to_string());
        status_of(&e)
    })
}

fn null() -> CicStatus {
    set_error("null pointer argument");
    CicStatus::NullPointer
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, CicStatus> {
    p.as_ref().ok_or_else(null)
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), CicStatus> {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

/// Message for the last failed call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cic_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a channel from `k` linear SNR and INR values.
///
/// # Safety
/// `snr` and `inr` must point to `k` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cic_channel_new(
    k: usize,
    snr: *const f64,
    inr: *const f64,
    out: *mut *mut CicChannel,
) -> CicStatus {
    guard(|| {
        if snr.is_null() || inr.is_null() {
            return Err(null());
        }
        let snr = std::slice::from_raw_parts(snr, k);
        let inr = std::slice::from_raw_parts(inr, k);
        let ch = lib(make_channel(k, snr, inr))?;
        write(out, Box::into_raw(Box::new(CicChannel(ch))))
    })
}

/// # Safety
/// `ch` must come from [`cic_channel_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cic_channel_free(ch: *mut CicChannel) {
    if !ch.is_null() {
        drop(Box::from_raw(ch));
    }
}

/// # Safety
/// `ch` must be a live channel handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cic_channel_regime(
    ch: *const CicChannel,
    out: *mut CicRegime,
) -> CicStatus {
    guard(|| {
        let regime = match classify_regime(&deref(ch)?.0) {
            RegimeLabel::Weak => CicRegime::Weak,
            RegimeLabel::Strong => CicRegime::Strong,
            RegimeLabel::VeryStrong => CicRegime::VeryStrong,
            RegimeLabel::Mixed => CicRegime::Mixed,
        };
        write(out, regime)
    })
}

fn hk(ch: &ChannelInstance, split: CicSplit) -> Result<HkParams, CicStatus> {
    let split = match split {
        CicSplit::Etw => etw_split(ch),
        CicSplit::PrivateOnly => PowerSplit::private_only(ch),
    };
    lib(hk_params(ch, &split))
}

unsafe fn emit(out: *mut *mut CicSystem, sys: InequalitySystem) -> Result<(), CicStatus> {
    write(out, Box::into_raw(Box::new(CicSystem(sys))))
}

/// Achievable region of the channel under `split`.
///
/// # Safety
/// `ch` must be a live channel handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cic_achievable_region(
    ch: *const CicChannel,
    split: CicSplit,
    out: *mut *mut CicSystem,
) -> CicStatus {
    guard(|| {
        let ch = &deref(ch)?.0;
        emit(out, lib(achievable_region(&hk(ch, split)?, ch.k()))?)
    })
}

/// Weak-regime outer bound.
///
/// # Safety
/// `ch` must be a live channel handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cic_outer_region(
    ch: *const CicChannel,
    out: *mut *mut CicSystem,
) -> CicStatus {
    guard(|| {
        let ch = &deref(ch)?.0;
        emit(out, lib(outer_region(&outer_params(ch), ch.k()))?)
    })
}

/// Three-user time-sharing region; fails unless the channel has three users.
///
/// # Safety
/// `ch` must be a live channel handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cic_ts3_region(
    ch: *const CicChannel,
    split: CicSplit,
    out: *mut *mut CicSystem,
) -> CicStatus {
    guard(|| {
        let ch = &deref(ch)?.0;
        emit(out, lib(ts_region_3(&hk(ch, split)?))?)
    })
}

/// Strong-regime capacity region; `CIC_STATUS_WRONG_REGIME` otherwise.
///
/// # Safety
/// `ch` must be a live channel handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cic_strong_region(
    ch: *const CicChannel,
    out: *mut *mut CicSystem,
) -> CicStatus {
    guard(|| emit(out, lib(strong_region(&deref(ch)?.0))?))
}

/// Achievable region rebuilt by Fourier-Motzkin elimination.
///
/// # Safety
/// `ch` must be a live channel handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cic_project_to_rates(
    ch: *const CicChannel,
    split: CicSplit,
    out: *mut *mut CicSystem,
) -> CicStatus {
    guard(|| {
        let ch = &deref(ch)?.0;
        emit(out, lib(project_to_rates(&hk(ch, split)?, ch.k()))?)
    })
}

/// # Safety
/// `sys` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cic_system_free(sys: *mut CicSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// # Safety
/// `sys` must be a live system handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cic_system_num_vars(sys: *const CicSystem, out: *mut usize) -> CicStatus {
    guard(|| write(out, deref(sys)?.0.dim()))
}

/// # Safety
/// `sys` must be a live system handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cic_system_num_rows(sys: *const CicSystem, out: *mut usize) -> CicStatus {
    guard(|| write(out, deref(sys)?.0.len()))
}

/// Copies row `index` into `coeffs` (room for `num_vars` ints) and `rhs`.
///
/// # Safety
/// `sys` must be a live system handle; `coeffs` must hold `num_vars`
/// ints and `rhs` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cic_system_row(
    sys: *const CicSystem,
    index: usize,
    coeffs: *mut i32,
    rhs: *mut f64,
) -> CicStatus {
    guard(|| {
        let sys = &deref(sys)?.0;
        let Some(row) = sys.rows.get(index) else {
            set_error(&format!("row {index} out of range ({} rows)", sys.len()));
            return Err(CicStatus::InvalidArgument);
        };
        if coeffs.is_null() {
            return Err(null());
        }
        ptr::copy_nonoverlapping(row.coeffs.as_ptr(), coeffs, row.coeffs.len());
        write(rhs, row.rhs)
    })
}

/// Renders the system as JSON; release the string with [`cic_string_free`].
///
/// # Safety
/// `sys` must be a live system handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cic_system_to_json(
    sys: *const CicSystem,
    out: *mut *mut c_char,
) -> CicStatus {
    guard(|| {
        let text = cyclic_ic::cli::render_json(&deref(sys)?.0);
        let c = CString::new(text).map_err(|_| CicStatus::Panic)?;
        write(out, c.into_raw())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cic_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Smallest per-user shift `b` that moves `outer` inside `inner`.
///
/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cic_certified_gap(
    inner: *const CicSystem,
    outer: *const CicSystem,
    out: *mut f64,
) -> CicStatus {
    guard(|| write(out, lib(certified_gap(&deref(inner)?.0, &deref(outer)?.0))?))
}

/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cic_regions_equal(
    a: *const CicSystem,
    b: *const CicSystem,
    out: *mut bool,
) -> CicStatus {
    guard(|| write(out, lib(regions_equal(&deref(a)?.0, &deref(b)?.0))?))
}

/// Largest common rate `t` with `(t, .., t)` in the region.
///
/// # Safety
/// `sys` must be a live system handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cic_symmetric_max(sys: *const CicSystem, out: *mut f64) -> CicStatus {
    guard(|| write(out, lib(symmetric_max(&deref(sys)?.0))?))
}

/// Closed-form symmetric GDoF at `alpha = log INR / log SNR`.
#[no_mangle]
pub extern "C" fn cic_dsym_formula(alpha: f64) -> f64 {
    dsym_formula(alpha)
}
