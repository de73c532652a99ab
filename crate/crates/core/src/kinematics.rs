//! Group-velocity differences, oscillation and coherence lengths, and the
//! potentials at which resonances occur or coherence lengths diverge.

use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};

use crate::error::{Error, Result};
use crate::matter::MatterEigenSystem;
use crate::params::{OscillationParams, ParticleKind};
use crate::probability::WavePacketConfig;
use crate::units::HBAR_C_EV_M;

/// Floor for the √R denominator (eV²) and the 13-sector root.
pub const DEFAULT_DEGENERACY_FLOOR: f64 = 1e-30;

/// |Δv_ij| at or below this fraction of |ΔE_ij|/E (the vacuum-like scale of
/// a velocity difference) is treated as zero, giving an infinite coherence
/// length. Roundoff in Δv sits near 1e-16 of that scale.
pub const COHERENCE_ZERO_TOLERANCE: f64 = 1e-12;

/// Bracket searched by the potential finders, eV.
pub const SEARCH_BRACKET: (f64, f64) = (1e-18, 1e-11);

/// Log-spaced scan points used to bracket roots.
pub const SEARCH_GRID_POINTS: usize = 400;

/// Mass-eigenstate pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pair {
    P21,
    P31,
    P32,
}

impl Pair {
    pub const ALL: [Pair; 3] = [Pair::P21, Pair::P31, Pair::P32];

    /// Zero-based (i, j) with i > j.
    pub fn indices(self) -> (usize, usize) {
        match self {
            Pair::P21 => (1, 0),
            Pair::P31 => (2, 0),
            Pair::P32 => (2, 1),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Pair::P21 => "21",
            Pair::P31 => "31",
            Pair::P32 => "32",
        }
    }

    /// Pair of two distinct zero-based indices, in either order.
    pub fn from_indices(i: usize, j: usize) -> Option<Pair> {
        match (i.max(j), i.min(j)) {
            (1, 0) => Some(Pair::P21),
            (2, 0) => Some(Pair::P31),
            (2, 1) => Some(Pair::P32),
            _ => None,
        }
    }
}

/// Dimensionless group-velocity differences Δv_ij = dΔE_ij/dE.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VelocityDifferences {
    pub dv21: f64,
    pub dv32: f64,
    pub dv31: f64,
}

impl VelocityDifferences {
    pub fn get(&self, pair: Pair) -> f64 {
        match pair {
            Pair::P21 => self.dv21,
            Pair::P31 => self.dv31,
            Pair::P32 => self.dv32,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairLengths {
    pub pair: Pair,
    /// Oscillation length, m.
    pub l_osc: f64,
    /// Coherence length, m; `f64::INFINITY` when Δv vanishes.
    pub l_coh: f64,
}

/// (dl1/dE, dl3/dE) in eV, each computed without cancellation.
fn l_derivatives(m: &MatterEigenSystem, floor: f64) -> Result<(f64, f64)> {
    let r = m.root13;
    if r <= floor {
        return Err(Error::Degenerate {
            term: "sqrt((2EV)^2 + eps^2 - 4EV eps cos2theta13)",
            value: r,
            floor,
        });
    }
    let p = &m.params;
    let vs = m.potential * m.kind.sign();
    let a13 = m.epsilon * (2.0 * p.theta13).sin();
    let z = m.epsilon.signum() * (m.w - m.epsilon * (2.0 * p.theta13).cos());
    let dl1 = if z > 0.0 {
        vs * a13 * a13 / (r * (r + z))
    } else {
        vs * (1.0 - z / r)
    };
    let dl3 = if z < 0.0 {
        vs * a13 * a13 / (r * (r - z))
    } else {
        vs * (1.0 + z / r)
    };
    Ok((dl1, dl3))
}

/// dl1/dE and dl3/dE, eV. Their sum is 2V (−2V for antineutrinos).
pub fn dl_de(
    p: &OscillationParams,
    energy: f64,
    potential: f64,
    kind: ParticleKind,
) -> Result<(f64, f64)> {
    let m = MatterEigenSystem::new(p, energy, potential, kind)?;
    l_derivatives(&m, DEFAULT_DEGENERACY_FLOOR)
}

impl MatterEigenSystem {
    /// Group-velocity differences of the zeroth-order eigenstates.
    ///
    /// Δv21 = (−8ΔE21 + ξ)/8E and Δv32 = (6 dl3/dE − 4V − 8ΔE32 − ξ/2)/8E
    /// with ξ = [8(l1 − l2) dl1/dE + ζ/(ε cos2θ13 − 2EV)²] / 2√R. The ratio
    /// cos²2θ13m/(ε cos2θ13 − 2EV)² inside ζ is evaluated as 1/r², its
    /// finite value at the 13 resonance.
    pub fn velocity_differences(&self, floor: f64) -> Result<VelocityDifferences> {
        let sqrt_r = self.sqrt_r();
        if sqrt_r.abs() <= floor {
            return Err(Error::Degenerate {
                term: "4E*E2m - (l1 + l2)",
                value: sqrt_r,
                floor,
            });
        }
        let (dl1, dl3) = l_derivatives(self, floor)?;
        let p = &self.params;
        let vs = self.potential * self.kind.sign();
        let r = self.root13;
        let a13 = self.epsilon * (2.0 * p.theta13).sin();
        let s2t12 = (2.0 * p.theta12).sin();
        let zeta_term = 4.0
            * p.dm21_sq
            * p.dm21_sq
            * vs
            * s2t12
            * s2t12
            * a13
            * (2.0 * (p.theta13 - self.theta13m)).sin()
            / (r * r);
        let xi = (8.0 * (self.l1 - self.l2) * dl1 + zeta_term) / (2.0 * sqrt_r);
        let s = self.splittings();
        let eight_e = 8.0 * self.energy;
        let dv21 = (-8.0 * s[1][0] + xi) / eight_e;
        let dv32 = (6.0 * dl3 - 4.0 * vs - 8.0 * s[2][1] - 0.5 * xi) / eight_e;
        Ok(VelocityDifferences {
            dv21,
            dv32,
            dv31: dv32 + dv21,
        })
    }

    /// Oscillation and coherence lengths for the three pairs, meters.
    pub fn lengths(&self, wp: &WavePacketConfig, floor: f64) -> Result<[PairLengths; 3]> {
        let dv = self.velocity_differences(floor)?;
        let s = self.splittings();
        Ok(Pair::ALL.map(|pair| {
            let (i, j) = pair.indices();
            let de = s[i][j].abs();
            let v = dv.get(pair).abs();
            let l_coh = if v <= COHERENCE_ZERO_TOLERANCE * de / self.energy {
                f64::INFINITY
            } else {
                2.0 * SQRT_2 * wp.sigma_x / v
            };
            PairLengths {
                pair,
                l_osc: 2.0 * PI / de * HBAR_C_EV_M,
                l_coh,
            }
        }))
    }
}

pub fn velocity_differences(
    p: &OscillationParams,
    energy: f64,
    potential: f64,
    kind: ParticleKind,
) -> Result<VelocityDifferences> {
    MatterEigenSystem::new(p, energy, potential, kind)?
        .velocity_differences(DEFAULT_DEGENERACY_FLOOR)
}

pub fn matter_lengths(
    p: &OscillationParams,
    energy: f64,
    potential: f64,
    kind: ParticleKind,
    wp: &WavePacketConfig,
) -> Result<[PairLengths; 3]> {
    MatterEigenSystem::new(p, energy, potential, kind)?.lengths(wp, DEFAULT_DEGENERACY_FLOOR)
}

/// Vacuum lengths L_osc = 4πE/|Δm²_ij| and L_coh = 4√2 σx E²/|Δm²_ij|.
pub fn vacuum_lengths(
    p: &OscillationParams,
    energy: f64,
    wp: &WavePacketConfig,
) -> Result<[PairLengths; 3]> {
    if !(energy > 0.0 && energy.is_finite()) {
        return Err(Error::domain(format!(
            "energy must be positive, got {energy}"
        )));
    }
    Ok(Pair::ALL.map(|pair| {
        let dm = match pair {
            Pair::P21 => p.dm21_sq,
            Pair::P31 => p.dm31_sq,
            Pair::P32 => p.dm31_sq - p.dm21_sq,
        }
        .abs();
        PairLengths {
            pair,
            l_osc: 4.0 * PI * energy / dm * HBAR_C_EV_M,
            l_coh: 4.0 * SQRT_2 * wp.sigma_x * energy * energy / dm,
        }
    }))
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|k| {
            if k + 1 == n {
                hi
            } else {
                (a + (b - a) * k as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

/// Bisection in ln V on a bracket with f(lo) and f(hi) of opposite sign.
/// Runs until the bracket stops shrinking in floating point.
fn bisect_log<F>(f: &F, mut lo: f64, mut hi: f64, mut f_lo: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    for _ in 0..200 {
        let mid = (lo.ln() + 0.5 * (hi.ln() - lo.ln())).exp();
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    // Whichever end is closer in value.
    let f_hi = f(hi)?;
    Ok(if f_lo.abs() <= f_hi.abs() { lo } else { hi })
}

/// Every sign change of `f` on the search grid, refined by bisection. Grid
/// points where `f` fails are skipped.
fn scan_roots<F>(f: &F) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64>,
{
    let grid = log_grid(SEARCH_BRACKET.0, SEARCH_BRACKET.1, SEARCH_GRID_POINTS);
    let values: Vec<Option<f64>> = grid.iter().map(|&v| f(v).ok()).collect();
    let mut roots = Vec::new();
    for k in 0..grid.len() - 1 {
        let (Some(a), Some(b)) = (values[k], values[k + 1]) else {
            continue;
        };
        if a == 0.0 {
            roots.push(grid[k]);
        } else if (a > 0.0) != (b > 0.0) && b != 0.0 {
            roots.push(bisect_log(f, grid[k], grid[k + 1], a)?);
        }
    }
    if let Some(&last) = values.last().and_then(|v| v.as_ref()) {
        if last == 0.0 {
            roots.push(SEARCH_BRACKET.1);
        }
    }
    Ok(roots)
}

fn first_root<F>(f: &F, what: &str) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    scan_roots(f)?.into_iter().next().ok_or_else(|| {
        Error::NotFound(format!(
            "{what} has no sign change on [{:e}, {:e}] eV",
            SEARCH_BRACKET.0, SEARCH_BRACKET.1
        ))
    })
}

/// (V_res1, V_res2): potentials where θ12m and θ13m reach π/4.
pub fn find_resonance_potentials(
    p: &OscillationParams,
    energy: f64,
    kind: ParticleKind,
) -> Result<(f64, f64)> {
    let t12 = |v: f64| Ok(MatterEigenSystem::new(p, energy, v, kind)?.theta12m - FRAC_PI_4);
    let t13 = |v: f64| Ok(MatterEigenSystem::new(p, energy, v, kind)?.theta13m - FRAC_PI_4);
    // Surface input errors instead of reporting "not found".
    MatterEigenSystem::new(p, energy, SEARCH_BRACKET.0, kind)?;
    Ok((
        first_root(&t12, "theta12m - pi/4")?,
        first_root(&t13, "theta13m - pi/4")?,
    ))
}

/// Potentials where Δv21 or Δv32 vanish, sorted by potential.
pub fn find_infinite_coherence_potentials(
    p: &OscillationParams,
    energy: f64,
    kind: ParticleKind,
) -> Result<Vec<(Pair, f64)>> {
    MatterEigenSystem::new(p, energy, SEARCH_BRACKET.0, kind)?;
    let dv = |pair: Pair| {
        move |v: f64| {
            Ok(MatterEigenSystem::new(p, energy, v, kind)?
                .velocity_differences(DEFAULT_DEGENERACY_FLOOR)?
                .get(pair))
        }
    };
    let mut out = Vec::new();
    for pair in [Pair::P21, Pair::P32] {
        out.extend(scan_roots(&dv(pair))?.into_iter().map(|v| (pair, v)));
    }
    out.sort_by(|a, b| a.1.total_cmp(&b.1));
    Ok(out)
}
