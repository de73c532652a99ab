//! C ABI over `nucoh`.
//!
//! A `NucohModel` holds oscillation parameters, the wave-packet settings and
//! the particle kind. Every fallible call returns a `NucohStatus`; on failure
//! `nucoh_last_error_message` describes the error for the calling thread.
//!
//! Units: meters, eV, eV², radians.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use nucoh::{
    averaged_probability, find_infinite_coherence_potentials, find_resonance_potentials,
    l1_from_probabilities, Error, Flavor, MatterEigenSystem, OscillationParams, ParticleKind,
    Propagator, Treatment, WavePacketConfig,
};

pub const NUCOH_MODE_PLANE_WAVE: i32 = 0;
pub const NUCOH_MODE_WAVE_PACKET: i32 = 1;
pub const NUCOH_KIND_NEUTRINO: i32 = 0;
pub const NUCOH_KIND_ANTINEUTRINO: i32 = 1;
pub const NUCOH_FLAVOR_E: i32 = 0;
pub const NUCOH_FLAVOR_MU: i32 = 1;
pub const NUCOH_FLAVOR_TAU: i32 = 2;
/// Pair codes used by the length and root queries, in output order.
pub const NUCOH_PAIR_21: i32 = 0;
pub const NUCOH_PAIR_31: i32 = 1;
pub const NUCOH_PAIR_32: i32 = 2;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NucohStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    Degenerate = 4,
    NotFound = 5,
    Numerical = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// Model parameters; angles in radians, splittings in eV², `sigma_x` in m.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct NucohParams {
    pub theta12: f64,
    pub theta13: f64,
    pub theta23: f64,
    pub delta_cp: f64,
    pub dm21_sq: f64,
    pub dm31_sq: f64,
    pub sigma_x: f64,
    pub rho: f64,
    pub mode: i32,
    pub kind: i32,
}

/// Opaque handle.
pub struct NucohModel {
    params: OscillationParams,
    wp: WavePacketConfig,
    kind: ParticleKind,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(NucohStatus, String);

fn status_of(e: &Error) -> NucohStatus {
    match e {
        Error::Domain(_) => NucohStatus::Domain,
        Error::Degenerate { .. } => NucohStatus::Degenerate,
        Error::NotFound(_) => NucohStatus::NotFound,
        Error::Numerical(_) => NucohStatus::Numerical,
        Error::AtPoint { source, .. } => status_of(source),
        _ => NucohStatus::InvalidArgument,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(NucohStatus::InvalidArgument, msg.into())
}

fn null(what: &str) -> Failure {
    Failure(NucohStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, turning errors and panics into a status and a stored message.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> NucohStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NucohStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            set_error(format!("panic: {msg}"));
            NucohStatus::Panic
        }
    }
}

fn mode_from(code: i32) -> Result<Treatment, Failure> {
    match code {
        NUCOH_MODE_PLANE_WAVE => Ok(Treatment::PlaneWave),
        NUCOH_MODE_WAVE_PACKET => Ok(Treatment::WavePacket),
        _ => Err(invalid(format!("unknown mode {code}"))),
    }
}

fn kind_from(code: i32) -> Result<ParticleKind, Failure> {
    match code {
        NUCOH_KIND_NEUTRINO => Ok(ParticleKind::Neutrino),
        NUCOH_KIND_ANTINEUTRINO => Ok(ParticleKind::Antineutrino),
        _ => Err(invalid(format!("unknown particle kind {code}"))),
    }
}

fn flavor_from(code: i32) -> Result<Flavor, Failure> {
    usize::try_from(code)
        .ok()
        .and_then(Flavor::from_index)
        .ok_or_else(|| invalid(format!("unknown flavor {code}")))
}

unsafe fn handle<'a>(m: *const NucohModel) -> Result<&'a NucohModel, Failure> {
    m.as_ref().ok_or_else(|| null("model"))
}

unsafe fn out3<'a>(out: *mut f64) -> Result<&'a mut [f64; 3], Failure> {
    (out as *mut [f64; 3])
        .as_mut()
        .ok_or_else(|| null("output buffer"))
}

/// Model with the default parameters, wave-packet mode, neutrinos.
/// Never returns null; release with `nucoh_model_free`.
#[no_mangle]
pub extern "C" fn nucoh_model_new_default() -> *mut NucohModel {
    Box::into_raw(Box::new(NucohModel {
        params: OscillationParams::default(),
        wp: WavePacketConfig::default(),
        kind: ParticleKind::Neutrino,
    }))
}

/// Default values for `NucohParams`.
#[no_mangle]
pub extern "C" fn nucoh_params_default() -> NucohParams {
    let p = OscillationParams::default();
    let wp = WavePacketConfig::default();
    NucohParams {
        theta12: p.theta12,
        theta13: p.theta13,
        theta23: p.theta23,
        delta_cp: p.delta_cp,
        dm21_sq: p.dm21_sq,
        dm31_sq: p.dm31_sq,
        sigma_x: wp.sigma_x,
        rho: wp.rho,
        mode: NUCOH_MODE_WAVE_PACKET,
        kind: NUCOH_KIND_NEUTRINO,
    }
}

/// # Safety
/// `params` must be null or point to a valid `NucohParams`; `out` must be
/// null or writable.
#[no_mangle]
pub unsafe extern "C" fn nucoh_model_new(
    params: *const NucohParams,
    out: *mut *mut NucohModel,
) -> NucohStatus {
    guard(|| {
        let c = params.as_ref().ok_or_else(|| null("params"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let p = OscillationParams {
            theta12: c.theta12,
            theta13: c.theta13,
            theta23: c.theta23,
            delta_cp: c.delta_cp,
            dm21_sq: c.dm21_sq,
            dm31_sq: c.dm31_sq,
        };
        p.validate()?;
        let wp = WavePacketConfig {
            sigma_x: c.sigma_x,
            rho: c.rho,
            mode: mode_from(c.mode)?,
        };
        wp.validate()?;
        let kind = kind_from(c.kind)?;
        *out = Box::into_raw(Box::new(NucohModel {
            params: p,
            wp,
            kind,
        }));
        Ok(())
    })
}

/// # Safety
/// `model` must be null or a pointer returned by a `nucoh_model_new*`
/// function that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn nucoh_model_free(model: *mut NucohModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// # Safety
/// `model` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn nucoh_model_set_kind(model: *mut NucohModel, kind: i32) -> NucohStatus {
    guard(|| {
        let m = model.as_mut().ok_or_else(|| null("model"))?;
        m.kind = kind_from(kind)?;
        Ok(())
    })
}

/// # Safety
/// `model` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn nucoh_model_set_mode(model: *mut NucohModel, mode: i32) -> NucohStatus {
    guard(|| {
        let m = model.as_mut().ok_or_else(|| null("model"))?;
        m.wp.mode = mode_from(mode)?;
        Ok(())
    })
}

/// Row (P_αe, P_αμ, P_ατ) in matter at baseline `l_m`, energy `e_ev`,
/// potential `v_ev` (>= 0).
///
/// # Safety
/// `model` must be a live handle; `out` must hold three doubles.
#[no_mangle]
pub unsafe extern "C" fn nucoh_probability_row(
    model: *const NucohModel,
    flavor: i32,
    l_m: f64,
    e_ev: f64,
    v_ev: f64,
    out: *mut f64,
) -> NucohStatus {
    guard(|| {
        let m = handle(model)?;
        let alpha = flavor_from(flavor)?;
        let out = out3(out)?;
        *out = Propagator::matter(&m.params, &m.wp, e_ev, v_ev, m.kind)?.row(alpha, l_m)?;
        Ok(())
    })
}

/// Vacuum row at baseline `l_m` and energy `e_ev`.
///
/// # Safety
/// As for `nucoh_probability_row`.
#[no_mangle]
pub unsafe extern "C" fn nucoh_vacuum_probability_row(
    model: *const NucohModel,
    flavor: i32,
    l_m: f64,
    e_ev: f64,
    out: *mut f64,
) -> NucohStatus {
    guard(|| {
        let m = handle(model)?;
        let alpha = flavor_from(flavor)?;
        let out = out3(out)?;
        *out = Propagator::vacuum(&m.params, &m.wp, e_ev, m.kind)?.row(alpha, l_m)?;
        Ok(())
    })
}

/// Fully decohered row.
///
/// # Safety
/// As for `nucoh_probability_row`.
#[no_mangle]
pub unsafe extern "C" fn nucoh_averaged_probability_row(
    model: *const NucohModel,
    flavor: i32,
    e_ev: f64,
    v_ev: f64,
    out: *mut f64,
) -> NucohStatus {
    guard(|| {
        let m = handle(model)?;
        let alpha = flavor_from(flavor)?;
        let out = out3(out)?;
        for beta in Flavor::ALL {
            out[beta.index()] = averaged_probability(&m.params, alpha, beta, e_ev, v_ev, m.kind)?;
        }
        Ok(())
    })
}

/// l1-norm of coherence from a probability row of three doubles.
///
/// # Safety
/// `row` must hold three doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nucoh_l1_from_probabilities(
    row: *const f64,
    out: *mut f64,
) -> NucohStatus {
    guard(|| {
        let row = (row as *const [f64; 3])
            .as_ref()
            .ok_or_else(|| null("row"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = l1_from_probabilities(*row)?.value();
        Ok(())
    })
}

/// Oscillation and coherence lengths in m, ordered 21, 31, 32. An infinite
/// coherence length is written as +INFINITY. The coherence lengths follow
/// the packet width whatever the mode.
///
/// # Safety
/// `model` must be a live handle; both outputs must hold three doubles.
#[no_mangle]
pub unsafe extern "C" fn nucoh_matter_lengths(
    model: *const NucohModel,
    e_ev: f64,
    v_ev: f64,
    out_osc: *mut f64,
    out_coh: *mut f64,
) -> NucohStatus {
    guard(|| {
        let m = handle(model)?;
        let osc = out3(out_osc)?;
        let coh = out3(out_coh)?;
        let lengths = MatterEigenSystem::new(&m.params, e_ev, v_ev, m.kind)?
            .lengths(&m.wp, nucoh::kinematics::DEFAULT_DEGENERACY_FLOOR)?;
        for (k, pl) in lengths.iter().enumerate() {
            osc[k] = pl.l_osc;
            coh[k] = pl.l_coh;
        }
        Ok(())
    })
}

/// Writes (V_res1, V_res2) in eV to `out`.
///
/// # Safety
/// `model` must be a live handle; `out` must hold two doubles.
#[no_mangle]
pub unsafe extern "C" fn nucoh_resonance_potentials(
    model: *const NucohModel,
    e_ev: f64,
    out: *mut f64,
) -> NucohStatus {
    guard(|| {
        let m = handle(model)?;
        let out = (out as *mut [f64; 2]).as_mut().ok_or_else(|| null("out"))?;
        let (a, b) = find_resonance_potentials(&m.params, e_ev, m.kind)?;
        *out = [a, b];
        Ok(())
    })
}

/// Potentials where a velocity difference vanishes, ascending. Writes up to
/// `capacity` entries to `out_v` and `out_pair`, and the total found to
/// `count`. Returns `BUFFER_TOO_SMALL` when `capacity < *count`.
///
/// # Safety
/// `model` must be a live handle; the arrays must hold `capacity` entries
/// and `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nucoh_infinite_coherence_potentials(
    model: *const NucohModel,
    e_ev: f64,
    out_v: *mut f64,
    out_pair: *mut i32,
    capacity: usize,
    count: *mut usize,
) -> NucohStatus {
    guard(|| {
        let m = handle(model)?;
        let count = count.as_mut().ok_or_else(|| null("count"))?;
        let roots = find_infinite_coherence_potentials(&m.params, e_ev, m.kind)?;
        *count = roots.len();
        if capacity > 0 && (out_v.is_null() || out_pair.is_null()) {
            return Err(null("output arrays"));
        }
        for (k, (pair, v)) in roots.iter().take(capacity).enumerate() {
            *out_v.add(k) = *v;
            *out_pair.add(k) = *pair as i32;
        }
        if capacity < roots.len() {
            return Err(Failure(
                NucohStatus::BufferTooSmall,
                format!("{} roots, capacity {capacity}", roots.len()),
            ));
        }
        Ok(())
    })
}

/// Message of the last failed call on this thread; empty if none. Valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn nucoh_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub extern "C" fn nucoh_version() -> *const c_char {
    static VERSION: &CStr =
        match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
            Ok(s) => s,
            Err(_) => panic!("version string"),
        };
    VERSION.as_ptr()
}
