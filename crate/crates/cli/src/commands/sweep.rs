use ac_spectra::sae::ExtendedReal;
use ac_spectra::Error as CoreError;

use super::{push_level_rows, resolve_levels, Levels, Outcome, RunStatus, LEVEL_COLUMNS};
use crate::config::{RunConfig, SweepVar};
use crate::error::{CliError, CliResult};
use crate::table::{Cell, Table};

/// Spectrum rows for every sweep value, channel and level, in that order.
/// Rejected points become rows and do not fail the run.
pub fn run(cfg: &RunConfig) -> CliResult<Outcome> {
    let sweep = cfg.sweep.ok_or_else(|| CliError::Config("sweep needs sweep_var, sweep_from and sweep_to".into()))?;
    let mut columns = vec!["variable", "value"];
    columns.extend(LEVEL_COLUMNS);
    let mut out = Outcome::new(Table::new("sweep", &columns));
    for value in sweep.values() {
        let prefix = [Cell::text(sweep.var.label()), Cell::Float(value)];
        let (params, alpha) = match sweep.var {
            SweepVar::Eta => (cfg.params.with_eta(value), cfg.alpha),
            SweepVar::R0 => (cfg.params.with_r0(value), cfg.alpha),
            SweepVar::Omega => (cfg.params.with_omega(value), cfg.alpha),
            SweepVar::Alpha => (Ok(cfg.params), Some(ExtendedReal::Finite(value))),
        };
        for &(m, spin) in &cfg.channels {
            let eta = params.as_ref().map_or(cfg.params.eta(), |p| p.eta());
            let ch = ac_spectra::Channel::new(eta, m, spin);
            let resolved: Result<Levels, CoreError> = match &params {
                Ok(p) => resolve_levels(p, &ch, cfg.mode, alpha, cfg.n_roots),
                Err(e) => Err(CoreError::Regime(e.to_string())),
            };
            push_level_rows(&mut out, &prefix, &ch, resolved);
        }
    }
    if out.status == RunStatus::Rejected {
        out.status = RunStatus::Ok;
    }
    Ok(out)
}
