//! Sweeps, special-potential reports and CSV tables behind the `nucoh` binary.

mod config;
mod table;

pub use config::{parse_config, ConfigBuilder, RunConfig, SweepSpec, FLAG_LINE, KEYS};
pub use table::{format_number, write_csv, Cell, Table};

use std::f64::consts::FRAC_PI_4;

use rayon::prelude::*;

use crate::coherence::l1_from_probabilities;
use crate::error::{Error, Result};
use crate::kinematics::{
    find_infinite_coherence_potentials, find_resonance_potentials, DEFAULT_DEGENERACY_FLOOR,
};
use crate::matter::MatterEigenSystem;
use crate::probability::Propagator;
use crate::sweep::Axis;

pub const PROB_HEADER: [&str; 8] = [
    "axis_value",
    "V_eV",
    "E_eV",
    "mode",
    "kind",
    "P_e",
    "P_mu",
    "P_tau",
];
pub const L1_HEADER: [&str; 6] = ["axis_value", "V_eV", "E_eV", "mode", "kind", "c_l1"];
pub const LENGTHS_HEADER: [&str; 4] = ["V_eV", "pair", "L_osc_m", "L_coh_m"];
pub const SPECIAL_HEADER: [&str; 3] = ["label", "V_eV", "residual"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    /// Probability row of the initial flavor.
    Probability,
    /// l1-norm of that row.
    L1,
}

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::AtPoint { source, .. } => exit_code(source),
        Error::Io { .. } => 1,
        Error::Config { .. } | Error::Domain(_) => 2,
        _ => 3,
    }
}

/// Evaluates the scan: outer loop over curves, inner ascending axis.
pub fn run_sweep(cfg: &RunConfig, quantity: Quantity) -> Result<Table> {
    let sweep = &cfg.sweep;
    let axis = sweep.axis;
    let grid = axis.values()?;
    let name = axis.axis.as_str();
    let mut table = Table::new(match quantity {
        Quantity::Probability => &PROB_HEADER,
        Quantity::L1 => &L1_HEADER,
    });
    for potential in cfg.curves() {
        let fixed = cfg.curve_point(potential);
        // Baseline scans share one propagator per curve.
        let shared = match axis.axis {
            Axis::Baseline => Some(
                Propagator::matter(
                    &cfg.params,
                    &cfg.wp,
                    fixed.energy,
                    fixed.potential,
                    sweep.kind,
                )
                .map_err(|e| e.at("V_eV", fixed.potential))?,
            ),
            _ => None,
        };
        let rows: Vec<(f64, f64, [f64; 3])> = grid
            .par_iter()
            .map(|&x| {
                let pt = fixed.with(axis.axis, x);
                let eval = || -> Result<[f64; 3]> {
                    match &shared {
                        Some(prop) => prop.row(sweep.flavor, pt.baseline),
                        None => Propagator::matter(
                            &cfg.params,
                            &cfg.wp,
                            pt.energy,
                            pt.potential,
                            sweep.kind,
                        )?
                        .row(sweep.flavor, pt.baseline),
                    }
                };
                let row = eval().map_err(|e| e.at(name, x))?;
                Ok((x, pt.potential, row))
            })
            .collect::<Result<_>>()?;
        for (x, v, row) in rows {
            let energy = fixed.with(axis.axis, x).energy;
            let mut cells = vec![
                Cell::Num(x),
                Cell::Num(v),
                Cell::Num(energy),
                cfg.wp.mode.as_str().into(),
                sweep.kind.as_str().into(),
            ];
            match quantity {
                Quantity::Probability => cells.extend(row.map(Cell::Num)),
                Quantity::L1 => cells.push(Cell::Num(
                    l1_from_probabilities(row)
                        .map_err(|e| e.at(name, x))?
                        .value(),
                )),
            }
            table.push(cells);
        }
    }
    Ok(table)
}

/// Oscillation and coherence lengths per pair. Potentials come from the
/// potential axis for potential scans, otherwise from the curve list.
pub fn lengths_table(cfg: &RunConfig) -> Result<Table> {
    let potentials = match cfg.sweep.axis.axis {
        Axis::Potential => cfg.sweep.axis.values()?,
        _ => cfg.potentials.clone(),
    };
    let mut table = Table::new(&LENGTHS_HEADER);
    let all: Vec<_> = potentials
        .par_iter()
        .map(|&v| {
            let m = MatterEigenSystem::new(&cfg.params, cfg.sweep.energy, v, cfg.sweep.kind)
                .and_then(|m| m.lengths(&cfg.wp, DEFAULT_DEGENERACY_FLOOR))
                .map_err(|e| e.at("V_eV", v))?;
            Ok((v, m))
        })
        .collect::<Result<_>>()?;
    for (v, lengths) in all {
        for pl in lengths {
            table.push(vec![
                Cell::Num(v),
                pl.pair.label().into(),
                Cell::Num(pl.l_osc),
                Cell::Num(pl.l_coh),
            ]);
        }
    }
    Ok(table)
}

/// Resonances and zero-velocity-difference potentials with residuals:
/// θm − π/4 for the resonances, Δv for the zeros.
pub fn report_special_potentials(cfg: &RunConfig) -> Result<Table> {
    let (p, e, kind) = (&cfg.params, cfg.sweep.energy, cfg.sweep.kind);
    let (v1, v2) = find_resonance_potentials(p, e, kind)?;
    let mut table = Table::new(&SPECIAL_HEADER);
    let m1 = MatterEigenSystem::new(p, e, v1, kind)?;
    let m2 = MatterEigenSystem::new(p, e, v2, kind)?;
    table.push(vec![
        "V_res1".into(),
        Cell::Num(v1),
        Cell::Num(m1.theta12m - FRAC_PI_4),
    ]);
    table.push(vec![
        "V_res2".into(),
        Cell::Num(v2),
        Cell::Num(m2.theta13m - FRAC_PI_4),
    ]);
    let mut counts = [0usize; 3];
    for (pair, v) in find_infinite_coherence_potentials(p, e, kind)? {
        let dv = MatterEigenSystem::new(p, e, v, kind)?
            .velocity_differences(DEFAULT_DEGENERACY_FLOOR)?
            .get(pair);
        counts[pair as usize] += 1;
        let label = format!("dv{}_zero_{}", pair.label(), counts[pair as usize]);
        table.push(vec![Cell::Text(label), Cell::Num(v), Cell::Num(dv)]);
    }
    Ok(table)
}
