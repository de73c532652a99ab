//! Scan axes and grids shared by the library scans and the CLI.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// Baseline L in meters.
    Baseline,
    /// Matter potential V in eV.
    Potential,
    /// Neutrino energy E in eV.
    Energy,
}

impl Axis {
    pub fn as_str(self) -> &'static str {
        match self {
            Axis::Baseline => "baseline",
            Axis::Potential => "potential",
            Axis::Energy => "energy",
        }
    }

    pub fn parse(s: &str) -> Option<Axis> {
        match s {
            "baseline" | "L" => Some(Axis::Baseline),
            "potential" | "V" => Some(Axis::Potential),
            "energy" | "E" => Some(Axis::Energy),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

impl Spacing {
    pub fn parse(s: &str) -> Option<Spacing> {
        match s {
            "linear" | "lin" => Some(Spacing::Linear),
            "log" => Some(Spacing::Log),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Spacing::Linear => "linear",
            Spacing::Log => "log",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisSpec {
    pub axis: Axis,
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl AxisSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.min.is_finite() && self.max.is_finite()) {
            return Err(Error::domain("scan bounds must be finite"));
        }
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(self.min < self.max) {
            return Err(Error::domain(format!(
                "scan min ({:e}) must be below max ({:e})",
                self.min, self.max
            )));
        }
        if self.points < 2 {
            return Err(Error::domain(format!(
                "points must be >= 2, got {}",
                self.points
            )));
        }
        if self.spacing == Spacing::Log && self.min <= 0.0 {
            return Err(Error::domain("log spacing needs min > 0"));
        }
        Ok(())
    }

    /// Ascending grid; endpoints are hit exactly.
    pub fn values(&self) -> Result<Vec<f64>> {
        self.validate()?;
        let n = self.points;
        let last = (n - 1) as f64;
        let out = (0..n)
            .map(|k| {
                if k == 0 {
                    return self.min;
                }
                if k == n - 1 {
                    return self.max;
                }
                let t = k as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.min + (self.max - self.min) * t,
                    Spacing::Log => {
                        let (a, b) = (self.min.ln(), self.max.ln());
                        (a + (b - a) * t).exp()
                    }
                }
            })
            .collect();
        Ok(out)
    }
}

/// The non-scanned quantities of a scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanPoint {
    /// m
    pub baseline: f64,
    /// eV
    pub energy: f64,
    /// eV
    pub potential: f64,
}

impl ScanPoint {
    pub fn with(self, axis: Axis, value: f64) -> ScanPoint {
        let mut p = self;
        match axis {
            Axis::Baseline => p.baseline = value,
            Axis::Potential => p.potential = value,
            Axis::Energy => p.energy = value,
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_grid_endpoints_and_ratio() {
        let s = AxisSpec {
            axis: Axis::Baseline,
            min: 1e13,
            max: 1e18,
            points: 6,
            spacing: Spacing::Log,
        };
        let v = s.values().unwrap();
        assert_eq!(v[0], 1e13);
        assert_eq!(v[5], 1e18);
        for w in v.windows(2) {
            assert!((w[1] / w[0] - 10.0).abs() < 1e-12);
        }
    }

    #[test]
    fn linear_grid() {
        let s = AxisSpec {
            axis: Axis::Potential,
            min: 0.0,
            max: 1.0,
            points: 5,
            spacing: Spacing::Linear,
        };
        assert_eq!(s.values().unwrap(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn invalid_specs() {
        let ok = AxisSpec {
            axis: Axis::Energy,
            min: 1.0,
            max: 2.0,
            points: 2,
            spacing: Spacing::Log,
        };
        assert!(ok.validate().is_ok());
        assert!(AxisSpec { points: 1, ..ok }.validate().is_err());
        assert!(AxisSpec { min: 2.0, ..ok }.validate().is_err());
        assert!(AxisSpec { min: 0.0, ..ok }.validate().is_err());
        assert!(AxisSpec {
            min: 0.0,
            spacing: Spacing::Linear,
            ..ok
        }
        .validate()
        .is_ok());
    }
}
