//! `key = value` run configuration.
//!
//! Units: angles in degrees, lengths in meters, energies and potentials in eV,
//! mass splittings in eV². Lines may carry a trailing `#` comment.

use std::collections::HashMap;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::params::{OscillationParams, ParticleKind};
use crate::probability::{Flavor, Treatment, WavePacketConfig};
use crate::sweep::{Axis, AxisSpec, ScanPoint, Spacing};

/// Line number used for values coming from command-line flags.
pub const FLAG_LINE: usize = 0;

pub const KEYS: [&str; 20] = [
    "theta12_deg",
    "theta13_deg",
    "theta23_deg",
    "delta_deg",
    "dm21_sq_eV2",
    "dm31_sq_eV2",
    "energy_eV",
    "sigma_x_m",
    "rho",
    "potential_eV",
    "baseline_m",
    "scan",
    "min",
    "max",
    "points",
    "spacing",
    "flavor",
    "kind",
    "mode",
    "output",
];

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub axis: AxisSpec,
    /// Fixed energy, eV (ignored by energy scans).
    pub energy: f64,
    /// Fixed baseline, m (ignored by baseline scans).
    pub baseline: f64,
    pub flavor: Flavor,
    pub kind: ParticleKind,
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: OscillationParams,
    pub wp: WavePacketConfig,
    pub sweep: SweepSpec,
    /// One curve per entry, in file order. Unused by potential scans.
    pub potentials: Vec<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            params: OscillationParams::default(),
            wp: WavePacketConfig::default(),
            sweep: SweepSpec {
                axis: AxisSpec {
                    axis: Axis::Baseline,
                    min: 1e13,
                    max: 1e18,
                    points: 1000,
                    spacing: Spacing::Log,
                },
                energy: 4.5e10,
                baseline: 1e15,
                flavor: Flavor::Electron,
                kind: ParticleKind::Neutrino,
                output: None,
            },
            potentials: vec![0.0],
        }
    }
}

impl RunConfig {
    /// Fixed values of one curve.
    pub fn curve_point(&self, potential: f64) -> ScanPoint {
        ScanPoint {
            baseline: self.sweep.baseline,
            energy: self.sweep.energy,
            potential,
        }
    }

    /// Potentials that label the curves of a scan.
    pub fn curves(&self) -> Vec<f64> {
        if self.sweep.axis.axis == Axis::Potential {
            vec![f64::NAN]
        } else {
            self.potentials.clone()
        }
    }
}

/// Accumulates settings from a file and then from flags.
#[derive(Debug, Clone, Default)]
pub struct ConfigBuilder {
    cfg: RunConfig,
    angles: [Option<f64>; 4],
    seen: HashMap<&'static str, usize>,
    potentials_from: Option<usize>,
}

fn number(key: &str, value: &str, line: usize) -> Result<f64> {
    let x: f64 = value
        .parse()
        .map_err(|_| Error::config(line, format!("{key}: cannot parse '{value}' as a number")))?;
    if !x.is_finite() {
        return Err(Error::config(line, format!("{key}: value must be finite")));
    }
    Ok(x)
}

fn positive(key: &str, value: &str, line: usize) -> Result<f64> {
    let x = number(key, value, line)?;
    if x <= 0.0 {
        return Err(Error::config(line, format!("{key}: must be > 0, got {x}")));
    }
    Ok(x)
}

fn non_negative(key: &str, value: &str, line: usize) -> Result<f64> {
    let x = number(key, value, line)?;
    if x < 0.0 {
        return Err(Error::config(line, format!("{key}: must be >= 0, got {x}")));
    }
    Ok(x)
}

fn angle(key: &str, value: &str, line: usize) -> Result<f64> {
    let x = number(key, value, line)?;
    if !(0.0..90.0).contains(&x) {
        return Err(Error::config(
            line,
            format!("{key}: must lie in [0, 90), got {x}"),
        ));
    }
    Ok(x)
}

impl ConfigBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Applies every line of `text`.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        let mut unknown = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let Some((key, value)) = body.split_once('=') else {
                return Err(Error::config(
                    line,
                    format!("expected `key = value`, got '{body}'"),
                ));
            };
            let (key, value) = (key.trim(), value.trim());
            if key.is_empty() || value.is_empty() {
                return Err(Error::config(
                    line,
                    format!("expected `key = value`, got '{body}'"),
                ));
            }
            if !KEYS.contains(&key) {
                unknown.push((line, key.to_string()));
                continue;
            }
            self.set(key, value, line)?;
        }
        if let Some(&(line, _)) = unknown.first() {
            let names: Vec<String> = unknown
                .iter()
                .map(|(l, k)| format!("'{k}' (line {l})"))
                .collect();
            return Err(Error::config(
                line,
                format!("unknown keys: {}", names.join(", ")),
            ));
        }
        Ok(())
    }

    /// Sets one key. `potential_eV` appends, except that the first value
    /// from a new source replaces the list inherited from an earlier one.
    pub fn set(&mut self, key: &str, value: &str, line: usize) -> Result<()> {
        let Some(&key) = KEYS.iter().find(|k| **k == key) else {
            return Err(Error::config(line, format!("unknown key '{key}'")));
        };
        let cfg = &mut self.cfg;
        match key {
            "theta12_deg" => self.angles[0] = Some(angle(key, value, line)?),
            "theta13_deg" => self.angles[1] = Some(angle(key, value, line)?),
            "theta23_deg" => self.angles[2] = Some(angle(key, value, line)?),
            "delta_deg" => self.angles[3] = Some(number(key, value, line)?),
            "dm21_sq_eV2" => cfg.params.dm21_sq = positive(key, value, line)?,
            "dm31_sq_eV2" => {
                let x = number(key, value, line)?;
                if x == 0.0 {
                    return Err(Error::config(line, "dm31_sq_eV2: must be non-zero"));
                }
                cfg.params.dm31_sq = x;
            }
            "energy_eV" => cfg.sweep.energy = positive(key, value, line)?,
            "sigma_x_m" => cfg.wp.sigma_x = positive(key, value, line)?,
            "rho" => cfg.wp.rho = non_negative(key, value, line)?,
            "potential_eV" => {
                let x = non_negative(key, value, line)?;
                let fresh = match self.potentials_from {
                    None => true,
                    Some(prev) => (prev == FLAG_LINE) != (line == FLAG_LINE),
                };
                if fresh {
                    cfg.potentials.clear();
                }
                self.potentials_from = Some(line);
                cfg.potentials.push(x);
            }
            "baseline_m" => cfg.sweep.baseline = non_negative(key, value, line)?,
            "scan" => {
                cfg.sweep.axis.axis = Axis::parse(value).ok_or_else(|| {
                    Error::config(
                        line,
                        format!("scan: expected baseline, potential or energy, got '{value}'"),
                    )
                })?
            }
            "min" => cfg.sweep.axis.min = number(key, value, line)?,
            "max" => cfg.sweep.axis.max = number(key, value, line)?,
            "points" => {
                let n: usize = value.parse().map_err(|_| {
                    Error::config(
                        line,
                        format!("points: cannot parse '{value}' as an integer"),
                    )
                })?;
                if n < 2 {
                    return Err(Error::config(
                        line,
                        format!("points: must be >= 2, got {n}"),
                    ));
                }
                cfg.sweep.axis.points = n;
            }
            "spacing" => {
                cfg.sweep.axis.spacing = Spacing::parse(value).ok_or_else(|| {
                    Error::config(
                        line,
                        format!("spacing: expected linear or log, got '{value}'"),
                    )
                })?
            }
            "flavor" => {
                cfg.sweep.flavor = match value {
                    "e" => Flavor::Electron,
                    "mu" => Flavor::Muon,
                    "tau" => Flavor::Tau,
                    _ => {
                        return Err(Error::config(
                            line,
                            format!("flavor: expected e, mu or tau, got '{value}'"),
                        ))
                    }
                }
            }
            "kind" => {
                cfg.sweep.kind = match value {
                    "neutrino" | "nu" => ParticleKind::Neutrino,
                    "antineutrino" | "nubar" => ParticleKind::Antineutrino,
                    _ => {
                        return Err(Error::config(
                            line,
                            format!("kind: expected neutrino or antineutrino, got '{value}'"),
                        ))
                    }
                }
            }
            "mode" => {
                cfg.wp.mode = match value {
                    "pw" => Treatment::PlaneWave,
                    "wp" => Treatment::WavePacket,
                    _ => {
                        return Err(Error::config(
                            line,
                            format!("mode: expected pw or wp, got '{value}'"),
                        ))
                    }
                }
            }
            "output" => cfg.sweep.output = Some(PathBuf::from(value)),
            _ => unreachable!("key list and match arms disagree"),
        }
        self.seen.insert(key, line);
        Ok(())
    }

    fn line_of(&self, key: &str) -> usize {
        self.seen.get(key).copied().unwrap_or(FLAG_LINE)
    }

    /// Checks the cross-key invariants and returns the configuration.
    pub fn finish(self) -> Result<RunConfig> {
        let mut cfg = self.cfg.clone();
        let p = &mut cfg.params;
        let [t12, t13, t23, d] = self.angles;
        for (slot, deg) in [
            (&mut p.theta12, t12),
            (&mut p.theta13, t13),
            (&mut p.theta23, t23),
        ] {
            if let Some(deg) = deg {
                *slot = deg.to_radians();
            }
        }
        if let Some(d) = d {
            p.delta_cp = d.to_radians().rem_euclid(2.0 * std::f64::consts::PI);
        }
        p.validate()
            .map_err(|e| Error::config(self.line_of("delta_deg"), e.to_string()))?;

        let axis = cfg.sweep.axis;
        let bound_line = self.line_of("min").max(self.line_of("max"));
        if axis.min >= axis.max {
            return Err(Error::config(
                bound_line,
                format!("min ({:e}) must be below max ({:e})", axis.min, axis.max),
            ));
        }
        if axis.spacing == Spacing::Log && axis.min <= 0.0 {
            return Err(Error::config(
                bound_line.max(self.line_of("spacing")),
                "min must be > 0 with log spacing",
            ));
        }
        let floor = match axis.axis {
            Axis::Energy => f64::MIN_POSITIVE,
            _ => 0.0,
        };
        if axis.min < floor {
            return Err(Error::config(
                bound_line.max(self.line_of("scan")),
                format!(
                    "{} scans need min >= 0 (> 0 for energy)",
                    axis.axis.as_str()
                ),
            ));
        }
        if axis.axis == Axis::Potential && self.seen.contains_key("potential_eV") {
            return Err(Error::config(
                self.line_of("potential_eV"),
                "potential_eV conflicts with scan = potential",
            ));
        }
        if cfg.potentials.is_empty() {
            return Err(Error::config(FLAG_LINE, "no potentials given"));
        }
        Ok(cfg)
    }
}

/// Parses a configuration file body. Missing keys keep their defaults.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut b = ConfigBuilder::new();
    b.apply_text(text)?;
    b.finish()
}
