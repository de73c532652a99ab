//! Constant-density matter: effective mixing angles and eigenvalues.
//!
//! The flavor Hamiltonian `(1/2E)[U diag(0, Δm²21, Δm²31) U† + diag(2EV, 0, 0)]`
//! is brought to near-diagonal form by a 13 rotation through θ13m, which
//! leaves diag(l1, l2, l3) plus a small 12/23 coupling, and then a 12
//! rotation through θ12m. The remaining 23 coupling (of size
//! `Δm²21 sin2θ12 sin(θ13 - θ13m) / 4E`) is dropped, giving the eigenvalues
//! E1m, E2m, E3m used for propagation. [`exact_eigensystem`] diagonalizes the
//! full Hamiltonian numerically and bounds that approximation.
//!
//! Antineutrinos flip the sign of both V and δ.
//!
//! The closed forms are evaluated as deviations from their vacuum values
//! (`l1 - Δm²21 s12²`, `l3 - Δm²31`, `√R - Δm²21`), rewritten so that no
//! subtraction of nearly equal quantities occurs. At V = 0 every deviation
//! is exactly zero and the splittings coincide bit for bit with Δm²/2E.

mod eigen;

use std::f64::consts::PI;

pub use eigen::{hermitian_eigen, HermitianEigen};

use crate::error::{Error, Result};
use crate::params::{
    build_pmns, pmns_closed_form, ComplexMatrix3, OscillationParams, ParticleKind,
};

/// ε = Δm²31 − Δm²21 sin²θ12.
pub fn epsilon(p: &OscillationParams) -> f64 {
    p.dm31_sq - p.dm21_sq * p.theta12.sin().powi(2)
}

/// The l-eigenvalues in eV² of the Hamiltonian after the θ13m rotation
/// (scaled by 2E).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LEigenvalues {
    pub l1: f64,
    pub l2: f64,
    pub l3: f64,
}

/// Zeroth-order matter eigensystem at one (E, V, kind).
#[derive(Debug, Clone, Copy)]
pub struct MatterEigenSystem {
    pub params: OscillationParams,
    pub energy: f64,
    pub potential: f64,
    pub kind: ParticleKind,
    pub epsilon: f64,
    pub theta13m: f64,
    pub theta12m: f64,
    pub l1: f64,
    pub l2: f64,
    pub l3: f64,
    pub e1m: f64,
    pub e2m: f64,
    pub e3m: f64,
    pub mixing: ComplexMatrix3,
    /// Signed 2EV (negated for antineutrinos), eV².
    pub(crate) w: f64,
    /// √((2EV)² + ε² − 4EVε cos2θ13), eV².
    pub(crate) root13: f64,
    /// l3 − Δm²31.
    delta3: f64,
    /// √R − Δm²21 where √R = 4E·E2m − (l1 + l2).
    q_excess: f64,
    /// 4E·E1m = (l1 + l2) − √R.
    s_minus: f64,
}

fn check_energy(energy: f64) -> Result<()> {
    if !(energy > 0.0 && energy.is_finite()) {
        return Err(Error::domain(format!(
            "energy must be positive, got {energy}"
        )));
    }
    Ok(())
}

fn check_potential(potential: f64) -> Result<()> {
    if !potential.is_finite() {
        return Err(Error::domain("potential must be finite"));
    }
    Ok(())
}

/// Half of the two-argument arctangent mapped to [0, π).
fn half_angle(num: f64, den: f64) -> f64 {
    let mut a = num.atan2(den).rem_euclid(PI);
    if a >= PI {
        a -= PI;
    }
    0.5 * a
}

impl MatterEigenSystem {
    /// Builds the eigensystem. `potential` may be any finite value; negative
    /// values are the mirror image used for antineutrino consistency checks.
    pub fn new(
        p: &OscillationParams,
        energy: f64,
        potential: f64,
        kind: ParticleKind,
    ) -> Result<Self> {
        check_energy(energy)?;
        check_potential(potential)?;
        let eps = epsilon(p);
        if eps == 0.0 {
            return Err(Error::domain(
                "epsilon = dm31^2 - dm21^2 sin^2(theta12) vanishes",
            ));
        }
        let sg = eps.signum();
        let w = 2.0 * energy * potential * kind.sign();
        let (s13, c13) = p.theta13.sin_cos();
        let (s2t13, c2t13) = (2.0 * p.theta13).sin_cos();
        let (s12, c12) = p.theta12.sin_cos();
        let (s2t12, c2t12) = (2.0 * p.theta12).sin_cos();
        let dm21 = p.dm21_sq;

        // 13 sector.
        let a13 = eps * s2t13;
        let b13 = eps * c2t13 - w;
        let theta13m = half_angle(a13, b13);
        let root13 = a13.hypot(b13);

        // δ1 = ½[(ε + w) − sg·r], δ3 = ½[(w − ε) + sg·r], each in the form
        // free of cancellation.
        let u = eps + w;
        let delta1 = if u * sg > 0.0 {
            2.0 * w * eps * c13 * c13 / (u + sg * root13)
        } else {
            0.5 * (u - sg * root13)
        };
        let t = w - eps;
        let delta3 = if t * sg < 0.0 {
            -2.0 * w * eps * s13 * s13 / (t - sg * root13)
        } else {
            0.5 * (t + sg * root13)
        };
        let l1 = dm21 * s12 * s12 + delta1;
        let l2 = dm21 * c12 * c12;
        let l3 = p.dm31_sq + delta3;

        // 12 sector.
        let x = p.theta13 - theta13m;
        let (sx, cx) = x.sin_cos();
        let coupling = dm21 * s2t12 * cx;
        let gap = dm21 * c2t12 - delta1; // l2 − l1
        let theta12m = half_angle(coupling, gap);
        let q_raw = gap.hypot(coupling);
        // R − (Δm²21)² = δ1(δ1 − 2Δm²21 cos2θ12) − (Δm²21 sin2θ12 sin x)²
        let sin_term = dm21 * s2t12 * sx;
        let q_excess_num = delta1 * (delta1 - 2.0 * dm21 * c2t12) - sin_term * sin_term;
        let q_excess = if q_raw + dm21 > 0.0 {
            q_excess_num / (q_raw + dm21)
        } else {
            0.0
        };
        let q = dm21 + q_excess;
        let sum12 = dm21 + delta1; // l1 + l2
                                   // (l1 + l2)² − R = 4 l2 δ1 + (Δm²21 sin2θ12 sin x)²
        let product = 4.0 * l2 * delta1 + sin_term * sin_term;
        let s_minus = if sum12 >= 0.0 {
            let s_plus = sum12 + q;
            if s_plus > 0.0 {
                product / s_plus
            } else {
                0.0
            }
        } else {
            sum12 - q
        };
        let s_plus = s_minus + 2.0 * q;

        let four_e = 4.0 * energy;
        let mixing = pmns_closed_form(theta12m, theta13m, p.theta23, kind.sign() * p.delta_cp);
        Ok(MatterEigenSystem {
            params: *p,
            energy,
            potential,
            kind,
            epsilon: eps,
            theta13m,
            theta12m,
            l1,
            l2,
            l3,
            e1m: s_minus / four_e,
            e2m: s_plus / four_e,
            e3m: l3 / (2.0 * energy),
            mixing,
            w,
            root13,
            delta3,
            q_excess,
            s_minus,
        })
    }

    /// √R = 4E·E2m − (l1 + l2), in eV².
    pub fn sqrt_r(&self) -> f64 {
        self.params.dm21_sq + self.q_excess
    }

    pub fn eigenvalues(&self) -> [f64; 3] {
        [self.e1m, self.e2m, self.e3m]
    }

    /// Signed splittings ΔE_ij = E_i − E_j in eV, indexed `[i][j]` from 0.
    ///
    /// Computed from the deviation terms so that at V = 0 they equal
    /// Δm²_ij / 2E exactly.
    pub fn splittings(&self) -> [[f64; 3]; 3] {
        let p = &self.params;
        let four_e = 4.0 * self.energy;
        let e21 = self.sqrt_r() / (2.0 * self.energy);
        let e31 = (2.0 * p.dm31_sq + 2.0 * self.delta3 - self.s_minus) / four_e;
        let e32 = (2.0 * (p.dm31_sq - p.dm21_sq) + 2.0 * (self.delta3 - self.q_excess)
            - self.s_minus)
            / four_e;
        [[0.0, -e21, -e31], [e21, 0.0, -e32], [e31, e32, 0.0]]
    }

    pub fn l_eigenvalues(&self) -> LEigenvalues {
        LEigenvalues {
            l1: self.l1,
            l2: self.l2,
            l3: self.l3,
        }
    }
}

pub fn theta13_matter(
    p: &OscillationParams,
    energy: f64,
    potential: f64,
    kind: ParticleKind,
) -> Result<f64> {
    Ok(MatterEigenSystem::new(p, energy, potential, kind)?.theta13m)
}

pub fn theta12_matter(
    p: &OscillationParams,
    energy: f64,
    potential: f64,
    kind: ParticleKind,
) -> Result<f64> {
    Ok(MatterEigenSystem::new(p, energy, potential, kind)?.theta12m)
}

pub fn l_eigenvalues(
    p: &OscillationParams,
    energy: f64,
    potential: f64,
    kind: ParticleKind,
) -> Result<LEigenvalues> {
    Ok(MatterEigenSystem::new(p, energy, potential, kind)?.l_eigenvalues())
}

/// (E1m, E2m, E3m) in eV.
pub fn matter_eigenvalues(
    p: &OscillationParams,
    energy: f64,
    potential: f64,
    kind: ParticleKind,
) -> Result<[f64; 3]> {
    Ok(MatterEigenSystem::new(p, energy, potential, kind)?.eigenvalues())
}

/// PMNS form with θ12 → θ12m and θ13 → θ13m.
pub fn matter_mixing(
    p: &OscillationParams,
    energy: f64,
    potential: f64,
    kind: ParticleKind,
) -> Result<ComplexMatrix3> {
    Ok(MatterEigenSystem::new(p, energy, potential, kind)?.mixing)
}

/// Full flavor-basis Hamiltonian and its numerical eigen-decomposition.
#[derive(Debug, Clone, Copy)]
pub struct ExactEigensystem {
    /// Ascending eigenvalues, eV.
    pub eigenvalues: [f64; 3],
    /// Unit eigenvectors as columns.
    pub eigenvectors: ComplexMatrix3,
    /// The Hamiltonian that was diagonalized, eV.
    pub hamiltonian: ComplexMatrix3,
}

/// Flavor-basis Hamiltonian `(1/2E)[U diag(0, Δm²21, Δm²31) U† + diag(±2EV, 0, 0)]`.
pub fn flavor_hamiltonian(
    p: &OscillationParams,
    energy: f64,
    potential: f64,
    kind: ParticleKind,
) -> Result<ComplexMatrix3> {
    Ok(scaled_hamiltonian(p, energy, potential, kind)?.scale(1.0 / (2.0 * energy)))
}

fn scaled_hamiltonian(
    p: &OscillationParams,
    energy: f64,
    potential: f64,
    kind: ParticleKind,
) -> Result<ComplexMatrix3> {
    check_energy(energy)?;
    check_potential(potential)?;
    let u = build_pmns(p, kind);
    let mut m = u * ComplexMatrix3::diagonal([0.0, p.dm21_sq, p.dm31_sq]) * u.adjoint();
    m[(0, 0)] += 2.0 * energy * potential * kind.sign();
    Ok(m)
}

pub fn exact_eigensystem(
    p: &OscillationParams,
    energy: f64,
    potential: f64,
    kind: ParticleKind,
) -> Result<ExactEigensystem> {
    let m = scaled_hamiltonian(p, energy, potential, kind)?;
    let eig = hermitian_eigen(&m);
    let to_ev = 1.0 / (2.0 * energy);
    Ok(ExactEigensystem {
        eigenvalues: eig.values.map(|v| v * to_ev),
        eigenvectors: eig.vectors,
        hamiltonian: m.scale(to_ev),
    })
}
