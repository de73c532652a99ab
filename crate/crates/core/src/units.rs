//! eV / meter bookkeeping. Everything internal is in powers of eV; lengths
//! enter and leave in meters.

use crate::error::{Error, Result};

/// ħc in eV·m (CODATA).
pub const HBAR_C_EV_M: f64 = 1.973269804e-7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalScales {
    hbar_c: f64,
}

impl PhysicalScales {
    pub const CODATA: PhysicalScales = PhysicalScales {
        hbar_c: HBAR_C_EV_M,
    };

    pub fn hbar_c(&self) -> f64 {
        self.hbar_c
    }

    /// Meters to eV⁻¹.
    pub fn length_to_natural(&self, meters: f64) -> Result<f64> {
        check_length(meters, "length")?;
        Ok(meters / self.hbar_c)
    }

    /// eV⁻¹ to meters.
    pub fn natural_to_length(&self, inverse_ev: f64) -> Result<f64> {
        check_length(inverse_ev, "inverse energy")?;
        Ok(inverse_ev * self.hbar_c)
    }
}

impl Default for PhysicalScales {
    fn default() -> Self {
        Self::CODATA
    }
}

fn check_length(x: f64, what: &str) -> Result<()> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::domain(format!(
            "{what} must be finite and non-negative, got {x}"
        )));
    }
    Ok(())
}

pub fn length_to_natural(meters: f64) -> Result<f64> {
    PhysicalScales::CODATA.length_to_natural(meters)
}

pub fn natural_to_length(inverse_ev: f64) -> Result<f64> {
    PhysicalScales::CODATA.natural_to_length(inverse_ev)
}
