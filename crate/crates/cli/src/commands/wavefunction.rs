use ac_spectra::ac_ho::{
    ho_general_ln_normalization, ho_regular_normalization, ho_wavefunction_general_log, ho_wavefunction_regular,
};
use ac_spectra::ac_pure::{self, BoundState};
use ac_spectra::specfun::SignedLogValue;
use ac_spectra::{Channel, PhysicalParams};

use super::{resolve_levels, Level, Outcome};
use crate::config::{Mode, RunConfig};
use crate::error::{CliError, CliResult};
use crate::table::{Cell, Table};

const COLUMNS: [&str; 6] = ["m", "s", "n", "energy", "r", "phi"];

fn sample(cfg: &RunConfig, params: &PhysicalParams, ch: &Channel, level: &Level, grid: &[f64]) -> CliResult<Vec<f64>> {
    let (mass, gamma) = (params.mass(), params.gamma());
    if params.omega() == 0.0 {
        let state = BoundState {
            energy: level.energy,
            channel: *ch,
            mass,
            kappa: (-2.0 * mass * level.energy).sqrt(),
            log_deriv_residual: level.residual.unwrap_or(f64::NAN),
        };
        let scale = if cfg.normalize { ac_pure::normalization(&state)? } else { 1.0 };
        return grid.iter().map(|&r| Ok(scale * ac_pure::wavefunction(&state, r)?)).collect();
    }
    if cfg.mode == Mode::Regular {
        let n = level.n as u32;
        let scale = if cfg.normalize { ho_regular_normalization(ch, gamma, n)? } else { 1.0 };
        return grid.iter().map(|&r| Ok(scale * ho_wavefunction_regular(ch, gamma, n, r)?)).collect();
    }
    let ln_scale = if cfg.normalize { ho_general_ln_normalization(ch, mass, gamma, level.energy)? } else { 0.0 };
    grid.iter()
        .map(|&r| {
            let v = ho_wavefunction_general_log(ch, mass, gamma, level.energy, r)?;
            Ok((v * SignedLogValue::positive(ln_scale)).value())
        })
        .collect()
}

/// `phi(r)` of the selected level of every channel on a log-spaced grid.
pub fn run(cfg: &RunConfig) -> CliResult<Outcome> {
    let params = cfg.params;
    let grid = cfg.r_grid();
    let mut out = Outcome::new(Table::new("wavefunction", &COLUMNS));
    for ch in cfg.channel_list(&params) {
        let levels = resolve_levels(&params, &ch, cfg.mode, cfg.alpha, cfg.n_roots.max(cfg.state + 1))?;
        let level = levels.levels.get(cfg.state).ok_or_else(|| {
            CliError::Config(format!(
                "state = {} not available for m={} s={}: {} level(s)",
                cfg.state,
                ch.m(),
                ch.spin(),
                levels.levels.len()
            ))
        })?;
        let values = sample(cfg, &params, &ch, level, &grid)?;
        for (&r, &phi) in grid.iter().zip(&values) {
            out.table.push(vec![
                Cell::Int(ch.m()),
                Cell::Int(i64::from(ch.spin().sign())),
                Cell::Int(level.n),
                Cell::Float(level.energy),
                Cell::Float(r),
                Cell::Float(phi),
            ]);
        }
    }
    Ok(out)
}
