//! Flavor transition probabilities in vacuum and uniform matter.
//!
//! Both media share one kernel:
//!
//! P_αβ(L) = Re Σ_ij U*_αi U_βi U_αj U*_βj
//!           · exp[−i ΔE_ij L − (L/L^coh_ij)² − 2π²ρ²(σx/L^osc_ij)²]
//!
//! The two Gaussian exponents are dropped in plane-wave mode. Diagonal terms
//! carry no damping, so rows stay normalized.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kinematics::{vacuum_lengths, Pair, PairLengths, DEFAULT_DEGENERACY_FLOOR};
use crate::matter::MatterEigenSystem;
use crate::params::{build_pmns, ComplexMatrix3, OscillationParams, ParticleKind};
use crate::units::HBAR_C_EV_M;

/// Slack allowed outside [0, 1] before clipping.
pub const CLIP_SLACK: f64 = 1e-12;

/// Largest tolerated imaginary residue of the double sum.
pub const IMAGINARY_RESIDUE_LIMIT: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    Electron,
    Muon,
    Tau,
}

impl Flavor {
    pub const ALL: [Flavor; 3] = [Flavor::Electron, Flavor::Muon, Flavor::Tau];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Flavor> {
        Flavor::ALL.get(i).copied()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Flavor::Electron => "e",
            Flavor::Muon => "mu",
            Flavor::Tau => "tau",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Treatment {
    PlaneWave,
    WavePacket,
}

impl Treatment {
    pub fn as_str(self) -> &'static str {
        match self {
            Treatment::PlaneWave => "pw",
            Treatment::WavePacket => "wp",
        }
    }
}

/// Wave-packet description. `sigma_x` is the combined production/detection
/// width in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavePacketConfig {
    pub sigma_x: f64,
    pub rho: f64,
    pub mode: Treatment,
}

impl WavePacketConfig {
    pub fn plane_wave() -> Self {
        WavePacketConfig {
            mode: Treatment::PlaneWave,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma_x > 0.0 && self.sigma_x.is_finite()) {
            return Err(Error::domain(format!(
                "sigma_x must be positive, got {}",
                self.sigma_x
            )));
        }
        if !(self.rho >= 0.0 && self.rho.is_finite()) {
            return Err(Error::domain(format!(
                "rho must be non-negative, got {}",
                self.rho
            )));
        }
        Ok(())
    }
}

impl Default for WavePacketConfig {
    fn default() -> Self {
        WavePacketConfig {
            sigma_x: 0.5e-9,
            rho: 1.0,
            mode: Treatment::WavePacket,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Medium {
    Vacuum,
    /// Uniform matter with potential V in eV.
    Matter(f64),
}

impl Medium {
    pub fn potential(self) -> f64 {
        match self {
            Medium::Vacuum => 0.0,
            Medium::Matter(v) => v,
        }
    }
}

/// Probabilities P[α][β] at one baseline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlavorProbabilities {
    pub matrix: [[f64; 3]; 3],
    /// Baseline, m.
    pub baseline: f64,
    pub medium: Medium,
    pub mode: Treatment,
}

impl FlavorProbabilities {
    pub fn get(&self, alpha: Flavor, beta: Flavor) -> f64 {
        self.matrix[alpha.index()][beta.index()]
    }

    pub fn row(&self, alpha: Flavor) -> [f64; 3] {
        self.matrix[alpha.index()]
    }
}

/// Everything needed to evaluate probabilities at many baselines for one
/// (E, medium, kind).
#[derive(Debug, Clone, Copy)]
pub struct Propagator {
    mixing: ComplexMatrix3,
    /// ΔE_ij, eV.
    splittings: [[f64; 3]; 3],
    lengths: [PairLengths; 3],
    wp: WavePacketConfig,
    medium: Medium,
}

fn check_baseline(l: f64) -> Result<()> {
    if !(l >= 0.0 && l.is_finite()) {
        return Err(Error::domain(format!(
            "baseline must be finite and >= 0, got {l}"
        )));
    }
    Ok(())
}

fn clip(p: f64) -> f64 {
    if (-CLIP_SLACK..0.0).contains(&p) {
        0.0
    } else if p > 1.0 && p <= 1.0 + CLIP_SLACK {
        1.0
    } else {
        p
    }
}

impl Propagator {
    pub fn vacuum(
        p: &OscillationParams,
        wp: &WavePacketConfig,
        energy: f64,
        kind: ParticleKind,
    ) -> Result<Self> {
        wp.validate()?;
        let lengths = vacuum_lengths(p, energy, wp)?;
        let two_e = 2.0 * energy;
        let e21 = p.dm21_sq / two_e;
        let e31 = p.dm31_sq / two_e;
        let e32 = (p.dm31_sq - p.dm21_sq) / two_e;
        Ok(Propagator {
            mixing: build_pmns(p, kind),
            splittings: [[0.0, -e21, -e31], [e21, 0.0, -e32], [e31, e32, 0.0]],
            lengths,
            wp: *wp,
            medium: Medium::Vacuum,
        })
    }

    pub fn matter(
        p: &OscillationParams,
        wp: &WavePacketConfig,
        energy: f64,
        potential: f64,
        kind: ParticleKind,
    ) -> Result<Self> {
        wp.validate()?;
        // NaN fails too.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(potential >= 0.0) {
            return Err(Error::domain(format!(
                "potential must be >= 0, got {potential}"
            )));
        }
        let m = MatterEigenSystem::new(p, energy, potential, kind)?;
        Self::from_eigensystem(&m, wp)
    }

    pub fn from_eigensystem(m: &MatterEigenSystem, wp: &WavePacketConfig) -> Result<Self> {
        wp.validate()?;
        // Plane waves never need Δv, so skip its degeneracy checks there.
        let lengths = match wp.mode {
            Treatment::WavePacket => m.lengths(wp, DEFAULT_DEGENERACY_FLOOR)?,
            Treatment::PlaneWave => {
                let s = m.splittings();
                Pair::ALL.map(|pair| {
                    let (i, j) = pair.indices();
                    PairLengths {
                        pair,
                        l_osc: 2.0 * PI / s[i][j].abs() * HBAR_C_EV_M,
                        l_coh: f64::INFINITY,
                    }
                })
            }
        };
        Ok(Propagator {
            mixing: m.mixing,
            splittings: m.splittings(),
            lengths,
            wp: *wp,
            medium: Medium::Matter(m.potential),
        })
    }

    pub fn mixing(&self) -> &ComplexMatrix3 {
        &self.mixing
    }

    pub fn lengths(&self) -> &[PairLengths; 3] {
        &self.lengths
    }

    pub fn splittings(&self) -> &[[f64; 3]; 3] {
        &self.splittings
    }

    pub fn medium(&self) -> Medium {
        self.medium
    }

    /// Damping exponent for pair (i, j) at baseline `l` meters.
    fn damping(&self, i: usize, j: usize, l: f64) -> f64 {
        if self.wp.mode == Treatment::PlaneWave {
            return 0.0;
        }
        let pl = self.lengths[Pair::from_indices(i, j).expect("i != j") as usize];
        let coh = if pl.l_coh.is_infinite() {
            0.0
        } else {
            (l / pl.l_coh).powi(2)
        };
        let loc = if pl.l_osc.is_infinite() {
            0.0
        } else {
            2.0 * PI * PI * self.wp.rho * self.wp.rho * (self.wp.sigma_x / pl.l_osc).powi(2)
        };
        coh + loc
    }

    /// P(α → β) at baseline `l` meters.
    pub fn probability(&self, alpha: Flavor, beta: Flavor, l: f64) -> Result<f64> {
        check_baseline(l)?;
        self.probability_unchecked(alpha.index(), beta.index(), l / HBAR_C_EV_M, l)
    }

    fn probability_unchecked(&self, a: usize, b: usize, l_nat: f64, l: f64) -> Result<f64> {
        let u = &self.mixing;
        // Pair phases are built as z_i z_j* from one phase per eigenstate.
        // Rounding ΔE_ij·L separately breaks φ31 = φ32 + φ21 once phases
        // reach ~1e13 rad, and the sum can then go negative.
        let z = self.phase_factors(l_nat);
        let mut sum = Complex64::new(0.0, 0.0);
        for i in 0..3 {
            for j in 0..3 {
                let w = u[(a, i)].conj() * u[(b, i)] * u[(a, j)] * u[(b, j)].conj();
                if i == j {
                    sum += w;
                } else {
                    let envelope = (-self.damping(i, j, l)).exp();
                    sum += w * z[i] * z[j].conj() * envelope;
                }
            }
        }
        if sum.im.abs() > IMAGINARY_RESIDUE_LIMIT {
            return Err(Error::Numerical(format!(
                "imaginary residue {:e} in P({a}->{b})",
                sum.im
            )));
        }
        Ok(clip(sum.re))
    }

    /// Row α of the probability matrix at baseline `l` meters.
    pub fn row(&self, alpha: Flavor, l: f64) -> Result<[f64; 3]> {
        check_baseline(l)?;
        let l_nat = l / HBAR_C_EV_M;
        let a = alpha.index();
        Ok([
            self.probability_unchecked(a, 0, l_nat, l)?,
            self.probability_unchecked(a, 1, l_nat, l)?,
            self.probability_unchecked(a, 2, l_nat, l)?,
        ])
    }

    pub fn matrix(&self, l: f64) -> Result<FlavorProbabilities> {
        let mut matrix = [[0.0; 3]; 3];
        for alpha in Flavor::ALL {
            matrix[alpha.index()] = self.row(alpha, l)?;
        }
        Ok(FlavorProbabilities {
            matrix,
            baseline: l,
            medium: self.medium,
            mode: self.wp.mode,
        })
    }

    /// Plane-wave amplitudes A_αβ(L) = Σ_i U*_αi U_βi e^{−i(E_i − E_1)L},
    /// up to a global phase.
    pub fn amplitudes(&self, alpha: Flavor, l: f64) -> Result<[Complex64; 3]> {
        check_baseline(l)?;
        let l_nat = l / HBAR_C_EV_M;
        let a = alpha.index();
        let u = &self.mixing;
        let z = self.phase_factors(l_nat);
        let mut out = [Complex64::new(0.0, 0.0); 3];
        for (b, slot) in out.iter_mut().enumerate() {
            for i in 0..3 {
                *slot += u[(a, i)].conj() * u[(b, i)] * z[i];
            }
        }
        Ok(out)
    }

    /// e^{−i(E_i − E_1)L} with L in natural units.
    fn phase_factors(&self, l_nat: f64) -> [Complex64; 3] {
        [0, 1, 2].map(|i| Complex64::from_polar(1.0, -self.splittings[i][0] * l_nat))
    }

    /// L → ∞ limit: Σ_i |U_αi|² |U_βi|².
    pub fn averaged(&self, alpha: Flavor, beta: Flavor) -> f64 {
        let u = &self.mixing;
        (0..3)
            .map(|i| u[(alpha.index(), i)].norm_sqr() * u[(beta.index(), i)].norm_sqr())
            .sum()
    }
}

pub fn vacuum_probability(
    p: &OscillationParams,
    wp: &WavePacketConfig,
    alpha: Flavor,
    beta: Flavor,
    baseline: f64,
    energy: f64,
    kind: ParticleKind,
) -> Result<f64> {
    Propagator::vacuum(p, wp, energy, kind)?.probability(alpha, beta, baseline)
}

#[allow(clippy::too_many_arguments)]
pub fn matter_probability(
    p: &OscillationParams,
    wp: &WavePacketConfig,
    alpha: Flavor,
    beta: Flavor,
    baseline: f64,
    energy: f64,
    potential: f64,
    kind: ParticleKind,
) -> Result<f64> {
    Propagator::matter(p, wp, energy, potential, kind)?.probability(alpha, beta, baseline)
}

/// All nine probabilities in matter at one baseline.
pub fn probability_matrix(
    p: &OscillationParams,
    wp: &WavePacketConfig,
    baseline: f64,
    energy: f64,
    potential: f64,
    kind: ParticleKind,
) -> Result<FlavorProbabilities> {
    Propagator::matter(p, wp, energy, potential, kind)?.matrix(baseline)
}

/// Fully decohered probability Σ_i |U^m_αi|² |U^m_βi|².
pub fn averaged_probability(
    p: &OscillationParams,
    alpha: Flavor,
    beta: Flavor,
    energy: f64,
    potential: f64,
    kind: ParticleKind,
) -> Result<f64> {
    let m = MatterEigenSystem::new(p, energy, potential, kind)?;
    let u = &m.mixing;
    Ok((0..3)
        .map(|i| u[(alpha.index(), i)].norm_sqr() * u[(beta.index(), i)].norm_sqr())
        .sum())
}
