//! Oscillation parameters and the PMNS mixing matrix.

use std::f64::consts::{FRAC_PI_2, PI};
use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Vacuum oscillation parameters. Angles in radians, splittings in eV².
///
/// The sign of `dm31_sq` encodes the mass ordering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillationParams {
    pub theta12: f64,
    pub theta13: f64,
    pub theta23: f64,
    pub delta_cp: f64,
    pub dm21_sq: f64,
    pub dm31_sq: f64,
}

impl OscillationParams {
    /// Builds parameters from angles given in degrees.
    pub fn from_degrees(
        theta12_deg: f64,
        theta13_deg: f64,
        theta23_deg: f64,
        delta_deg: f64,
        dm21_sq: f64,
        dm31_sq: f64,
    ) -> Result<Self> {
        let p = OscillationParams {
            theta12: theta12_deg.to_radians(),
            theta13: theta13_deg.to_radians(),
            theta23: theta23_deg.to_radians(),
            delta_cp: delta_deg.to_radians().rem_euclid(2.0 * PI),
            dm21_sq,
            dm31_sq,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, angle) in [
            ("theta12", self.theta12),
            ("theta13", self.theta13),
            ("theta23", self.theta23),
        ] {
            if !(0.0..FRAC_PI_2).contains(&angle) {
                return Err(Error::domain(format!(
                    "{name} must lie in [0, pi/2), got {angle}"
                )));
            }
        }
        if !(0.0..2.0 * PI).contains(&self.delta_cp) {
            return Err(Error::domain(format!(
                "delta_cp must lie in [0, 2pi), got {}",
                self.delta_cp
            )));
        }
        if !(self.dm21_sq > 0.0 && self.dm21_sq.is_finite()) {
            return Err(Error::domain(format!(
                "dm21_sq must be positive, got {}",
                self.dm21_sq
            )));
        }
        if self.dm31_sq == 0.0 || !self.dm31_sq.is_finite() {
            return Err(Error::domain("dm31_sq must be finite and non-zero"));
        }
        Ok(())
    }
}

impl Default for OscillationParams {
    fn default() -> Self {
        default_params()
    }
}

/// Global-fit values at E = 45 GeV used throughout: θ12 = 33.82°,
/// θ13 = 8.61°, θ23 = 49.7°, δ = 217°, Δm²21 = 7.39e-5 eV², Δm²31 = 2.451e-3 eV².
pub fn default_params() -> OscillationParams {
    OscillationParams {
        theta12: 33.82f64.to_radians(),
        theta13: 8.61f64.to_radians(),
        theta23: 49.7f64.to_radians(),
        delta_cp: 217f64.to_radians(),
        dm21_sq: 7.39e-5,
        dm31_sq: 2.451e-3,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParticleKind {
    Neutrino,
    Antineutrino,
}

impl ParticleKind {
    /// +1 for neutrinos, -1 for antineutrinos. Multiplies both the matter
    /// potential and the CP phase.
    pub fn sign(self) -> f64 {
        match self {
            ParticleKind::Neutrino => 1.0,
            ParticleKind::Antineutrino => -1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ParticleKind::Neutrino => "neutrino",
            ParticleKind::Antineutrino => "antineutrino",
        }
    }
}

/// Dense 3×3 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix3(pub [[Complex64; 3]; 3]);

impl ComplexMatrix3 {
    pub fn zeros() -> Self {
        ComplexMatrix3([[Complex64::new(0.0, 0.0); 3]; 3])
    }

    pub fn identity() -> Self {
        Self::from_fn(|r, c| if r == c { 1.0.into() } else { 0.0.into() })
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros();
        for r in 0..3 {
            for c in 0..3 {
                m.0[r][c] = f(r, c);
            }
        }
        m
    }

    pub fn from_real(rows: [[f64; 3]; 3]) -> Self {
        Self::from_fn(|r, c| rows[r][c].into())
    }

    pub fn diagonal(d: [f64; 3]) -> Self {
        Self::from_fn(|r, c| if r == c { d[r].into() } else { 0.0.into() })
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|r, c| self.0[c][r].conj())
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(|r, c| self.0[r][c].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|r, c| self.0[c][r])
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::from_fn(|r, c| self.0[r][c] * k)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(|r, c| self.0[r][c] + other.0[r][c])
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..3 {
            for c in 0..3 {
                worst = worst.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.max_abs_diff(&Self::zeros())
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn row(&self, r: usize) -> [Complex64; 3] {
        self.0[r]
    }
}

impl Index<(usize, usize)> for ComplexMatrix3 {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.0[r][c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix3 {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.0[r][c]
    }
}

impl Mul for ComplexMatrix3 {
    type Output = ComplexMatrix3;

    fn mul(self, rhs: ComplexMatrix3) -> ComplexMatrix3 {
        ComplexMatrix3::from_fn(|r, c| (0..3).map(|k| self.0[r][k] * rhs.0[k][c]).sum())
    }
}

impl Mul for &ComplexMatrix3 {
    type Output = ComplexMatrix3;

    fn mul(self, rhs: &ComplexMatrix3) -> ComplexMatrix3 {
        *self * *rhs
    }
}

/// Plane of a real rotation in flavor space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotationPlane {
    P12,
    P13,
    P23,
}

impl RotationPlane {
    /// Maps a 1-based index pair such as (1, 3) to its plane.
    pub fn from_indices(i: usize, j: usize) -> Result<Self> {
        match (i.min(j), i.max(j)) {
            (1, 2) => Ok(RotationPlane::P12),
            (1, 3) => Ok(RotationPlane::P13),
            (2, 3) => Ok(RotationPlane::P23),
            _ => Err(Error::domain(format!("no rotation plane ({i},{j})"))),
        }
    }

    fn indices(self) -> (usize, usize) {
        match self {
            RotationPlane::P12 => (0, 1),
            RotationPlane::P13 => (0, 2),
            RotationPlane::P23 => (1, 2),
        }
    }
}

/// Real rotation by `angle` in the given plane, with `+sin` above the
/// diagonal.
pub fn build_rotation(plane: RotationPlane, angle: f64) -> Result<ComplexMatrix3> {
    if !angle.is_finite() {
        return Err(Error::domain("rotation angle must be finite"));
    }
    let (i, j) = plane.indices();
    let (s, c) = angle.sin_cos();
    let mut m = ComplexMatrix3::identity();
    m[(i, i)] = c.into();
    m[(j, j)] = c.into();
    m[(i, j)] = s.into();
    m[(j, i)] = (-s).into();
    Ok(m)
}

/// diag(1, 1, e^{iδ}).
pub fn phase_matrix(delta: f64) -> ComplexMatrix3 {
    let mut m = ComplexMatrix3::identity();
    m[(2, 2)] = Complex64::from_polar(1.0, delta);
    m
}

/// Standard PMNS closed form for arbitrary angles and phase.
pub(crate) fn pmns_closed_form(
    theta12: f64,
    theta13: f64,
    theta23: f64,
    delta: f64,
) -> ComplexMatrix3 {
    let (s12, c12) = theta12.sin_cos();
    let (s13, c13) = theta13.sin_cos();
    let (s23, c23) = theta23.sin_cos();
    let e = Complex64::from_polar(1.0, delta);
    let c = |x: f64| Complex64::new(x, 0.0);
    ComplexMatrix3([
        [c(c13 * c12), c(c13 * s12), e.conj() * s13],
        [
            c(-s12 * c23) - e * (c12 * s23 * s13),
            c(c12 * c23) - e * (s12 * s23 * s13),
            c(c13 * s23),
        ],
        [
            c(s12 * s23) - e * (c12 * c23 * s13),
            c(-c12 * s23) - e * (s12 * c23 * s13),
            c(c13 * c23),
        ],
    ])
}

/// The PMNS matrix. Antineutrinos use δ → −δ.
pub fn build_pmns(p: &OscillationParams, kind: ParticleKind) -> ComplexMatrix3 {
    pmns_closed_form(p.theta12, p.theta13, p.theta23, kind.sign() * p.delta_cp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn unitarity_defect(u: &ComplexMatrix3) -> f64 {
        (u * &u.adjoint()).max_abs_diff(&ComplexMatrix3::identity())
    }

    #[test]
    fn defaults_match_global_fit() {
        let p = default_params();
        assert_eq!(p.dm21_sq, 7.39e-5);
        assert_eq!(p.dm31_sq, 2.451e-3);
        assert_relative_eq!(p.theta23, 0.86743, epsilon = 1e-5);
        assert_relative_eq!(p.delta_cp, 3.78736, epsilon = 1e-5);
        p.validate().unwrap();
    }

    #[test]
    fn zero_angles_give_identity() {
        let p = OscillationParams {
            theta12: 0.0,
            theta13: 0.0,
            theta23: 0.0,
            delta_cp: 0.0,
            ..default_params()
        };
        let u = build_pmns(&p, ParticleKind::Neutrino);
        assert!(u.max_abs_diff(&ComplexMatrix3::identity()) == 0.0);
    }

    #[test]
    fn e3_entry_at_defaults() {
        let p = default_params();
        let u = build_pmns(&p, ParticleKind::Neutrino);
        let expected = Complex64::from_polar(p.theta13.sin(), -p.delta_cp);
        assert!((u[(0, 2)] - expected).norm() < 1e-16);
        // sin(8.61 deg)
        assert_relative_eq!(u[(0, 2)].norm(), 0.1497079117, epsilon = 1e-9);
    }

    #[test]
    fn factorized_form_matches_closed_form() {
        let p = default_params();
        let u23 = build_rotation(RotationPlane::P23, p.theta23).unwrap();
        let u13 = build_rotation(RotationPlane::P13, p.theta13).unwrap();
        let u12 = build_rotation(RotationPlane::P12, p.theta12).unwrap();
        let id = phase_matrix(p.delta_cp);
        let product = u23 * id * u13 * id.conj() * u12;
        let closed = build_pmns(&p, ParticleKind::Neutrino);
        assert!(product.max_abs_diff(&closed) <= 1e-14);
    }

    #[test]
    fn rotation_examples() {
        let r = build_rotation(RotationPlane::P12, 0.0).unwrap();
        assert_eq!(r, ComplexMatrix3::identity());

        let q = build_rotation(RotationPlane::P13, FRAC_PI_2).unwrap();
        assert!(q[(0, 0)].norm() < 1e-16 && q[(2, 2)].norm() < 1e-16);
        assert_eq!(q[(0, 2)].re, 1.0);
        assert_eq!(q[(2, 0)].re, -1.0);

        let r23 = build_rotation(RotationPlane::P23, 0.7).unwrap();
        let rtr = r23.transpose() * r23;
        assert!(rtr.max_abs_diff(&ComplexMatrix3::identity()) <= 1e-15);
    }

    #[test]
    fn rotation_plane_validation() {
        assert_eq!(
            RotationPlane::from_indices(3, 1).unwrap(),
            RotationPlane::P13
        );
        assert!(RotationPlane::from_indices(1, 1).is_err());
        assert!(RotationPlane::from_indices(2, 4).is_err());
        assert!(build_rotation(RotationPlane::P12, f64::NAN).is_err());
    }

    #[test]
    fn validation_rejects_out_of_range() {
        let mut p = default_params();
        p.theta12 = FRAC_PI_2;
        assert!(p.validate().is_err());
        let mut p = default_params();
        p.dm21_sq = 0.0;
        assert!(p.validate().is_err());
        let mut p = default_params();
        p.dm31_sq = 0.0;
        assert!(p.validate().is_err());
        let mut p = default_params();
        p.delta_cp = 2.0 * PI;
        assert!(p.validate().is_err());
        assert!(
            OscillationParams::from_degrees(33.82, 8.61, 49.7, -143.0, 7.39e-5, 2.451e-3)
                .unwrap()
                .validate()
                .is_ok()
        );
    }

    fn arb_params() -> impl Strategy<Value = OscillationParams> {
        (
            0.0..FRAC_PI_2,
            0.0..FRAC_PI_2,
            0.0..FRAC_PI_2,
            0.0..2.0 * PI,
        )
            .prop_map(|(t12, t13, t23, d)| OscillationParams {
                theta12: t12,
                theta13: t13,
                theta23: t23,
                delta_cp: d,
                ..default_params()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn pmns_is_unitary(p in arb_params()) {
            for kind in [ParticleKind::Neutrino, ParticleKind::Antineutrino] {
                prop_assert!(unitarity_defect(&build_pmns(&p, kind)) <= 1e-14);
            }
        }

        #[test]
        fn antineutrino_is_conjugate(p in arb_params()) {
            let nu = build_pmns(&p, ParticleKind::Neutrino);
            let anu = build_pmns(&p, ParticleKind::Antineutrino);
            prop_assert!(anu.max_abs_diff(&nu.conj()) <= 1e-15);
        }
    }
}
