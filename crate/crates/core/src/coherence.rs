//! Flavor-basis density matrices and the l1-norm of coherence.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::params::{ComplexMatrix3, OscillationParams, ParticleKind};
use crate::probability::{Flavor, Propagator, WavePacketConfig, CLIP_SLACK};
use crate::sweep::{Axis, AxisSpec, ScanPoint};

/// Largest l1-norm for a qutrit, d − 1.
pub const L1_MAX: f64 = 2.0;

const HERMITIAN_TOL: f64 = 1e-13;
const TRACE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlavorDensityMatrix {
    rho: ComplexMatrix3,
    initial: Flavor,
}

impl FlavorDensityMatrix {
    pub fn new(rho: ComplexMatrix3, initial: Flavor) -> Result<Self> {
        if !rho.is_finite() {
            return Err(Error::domain("density matrix has non-finite entries"));
        }
        let herm = rho.max_abs_diff(&rho.adjoint());
        if herm > HERMITIAN_TOL {
            return Err(Error::domain(format!(
                "density matrix not Hermitian ({herm:e})"
            )));
        }
        let tr = rho.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::domain(format!("density matrix trace {tr} != 1")));
        }
        for i in 0..3 {
            if rho[(i, i)].re < -CLIP_SLACK {
                return Err(Error::domain(format!("negative population rho[{i}][{i}]")));
            }
        }
        Ok(FlavorDensityMatrix { rho, initial })
    }

    /// Pure state |ψ⟩⟨ψ| from a normalized amplitude vector.
    pub fn from_amplitudes(amps: [Complex64; 3], initial: Flavor) -> Result<Self> {
        let rho = ComplexMatrix3::from_fn(|i, j| amps[i] * amps[j].conj());
        Self::new(rho, initial)
    }

    pub fn matrix(&self) -> &ComplexMatrix3 {
        &self.rho
    }

    pub fn initial(&self) -> Flavor {
        self.initial
    }

    pub fn populations(&self) -> [f64; 3] {
        [
            self.rho[(0, 0)].re,
            self.rho[(1, 1)].re,
            self.rho[(2, 2)].re,
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct L1Norm(f64);

impl L1Norm {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// Sum of the moduli of the six off-diagonal entries.
pub fn l1_norm(rho: &FlavorDensityMatrix) -> L1Norm {
    let m = rho.matrix();
    let mut c = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                c += m[(i, j)].norm();
            }
        }
    }
    L1Norm(c)
}

/// 2(√(P₁P₂) + √(P₁P₃) + √(P₂P₃)) for one probability row.
pub fn l1_from_probabilities(row: [f64; 3]) -> Result<L1Norm> {
    let mut p = [0.0; 3];
    for (k, &x) in row.iter().enumerate() {
        if !x.is_finite() || x < -CLIP_SLACK {
            return Err(Error::domain(format!("probability {k} is {x}")));
        }
        p[k] = x.max(0.0);
    }
    let c = 2.0 * ((p[0] * p[1]).sqrt() + (p[0] * p[2]).sqrt() + (p[1] * p[2]).sqrt());
    Ok(L1Norm(c))
}

/// ρ(L) = |A⟩⟨A| with A_β the plane-wave amplitude α → β in matter.
pub fn plane_wave_density_matrix(
    p: &OscillationParams,
    alpha: Flavor,
    baseline: f64,
    energy: f64,
    potential: f64,
    kind: ParticleKind,
) -> Result<FlavorDensityMatrix> {
    let prop = Propagator::matter(p, &WavePacketConfig::plane_wave(), energy, potential, kind)?;
    FlavorDensityMatrix::from_amplitudes(prop.amplitudes(alpha, baseline)?, alpha)
}

/// l1-norm at every point of `axis`, with the other quantities taken from
/// `fixed`. Output is in ascending axis order.
pub fn l1_scan(
    p: &OscillationParams,
    wp: &WavePacketConfig,
    alpha: Flavor,
    axis: &AxisSpec,
    fixed: ScanPoint,
    kind: ParticleKind,
) -> Result<Vec<(f64, L1Norm)>> {
    let values = axis.values()?;
    let name = axis.axis.as_str();
    if axis.axis == Axis::Baseline {
        // One propagator serves the whole baseline scan.
        let prop = Propagator::matter(p, wp, fixed.energy, fixed.potential, kind)?;
        return values
            .par_iter()
            .map(|&l| {
                let row = prop.row(alpha, l).map_err(|e| e.at(name, l))?;
                Ok((l, l1_from_probabilities(row).map_err(|e| e.at(name, l))?))
            })
            .collect();
    }
    values
        .par_iter()
        .map(|&x| {
            let pt = fixed.with(axis.axis, x);
            let run = || -> Result<L1Norm> {
                let prop = Propagator::matter(p, wp, pt.energy, pt.potential, kind)?;
                l1_from_probabilities(prop.row(alpha, pt.baseline)?)
            };
            Ok((x, run().map_err(|e| e.at(name, x))?))
        })
        .collect()
}

/// l1-norm of the fully decohered row.
pub fn averaged_l1(
    p: &OscillationParams,
    alpha: Flavor,
    energy: f64,
    potential: f64,
    kind: ParticleKind,
) -> Result<L1Norm> {
    let mut row = [0.0; 3];
    for b in Flavor::ALL {
        row[b.index()] =
            crate::probability::averaged_probability(p, alpha, b, energy, potential, kind)?;
    }
    l1_from_probabilities(row)
}
