use ac_spectra::ac_ho::{limit_r0_to_zero, limit_vanishing_oscillator, BracketKind, LatticeBranch};
use ac_spectra::sae::spectrum_from_alpha_pure;
use ac_spectra::{Channel, Error as CoreError, PhysicalParams};

use super::{resolve_levels, Level, Outcome, RunStatus};
use crate::config::{Mode, RunConfig};
use crate::error::{classify, CliResult};
use crate::table::{Cell, Table};

const R0_SEQUENCE: [f64; 6] = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6];
const OMEGA_SEQUENCE: [f64; 4] = [1e-1, 1e-2, 1e-3, 1e-4];
const COLUMNS: [&str; 10] = ["sequence", "m", "s", "parameter", "n", "kind", "root", "target", "abs_err", "status"];

/// Where a level ends up as `r0 -> 0`: its lattice point, or for the root
/// below the lattice the closed-form energy of the shell alone.
fn r0_target(params: &PhysicalParams, ch: &Channel, mode: Mode, level: &Level) -> Result<f64, CoreError> {
    if level.kind == BracketKind::BelowLattice.label() {
        return limit_vanishing_oscillator(params, ch);
    }
    let n = level.n.max(0) as usize;
    let branch = if mode == Mode::Singular || level.kind == BracketKind::MinusLattice.label() {
        LatticeBranch::Singular
    } else {
        LatticeBranch::Regular
    };
    Ok(limit_r0_to_zero(params, ch, n)?.branch(branch)[n])
}

fn push_row(out: &mut Outcome, head: [Cell; 4], level: &Level, target: Result<f64, CoreError>) {
    let mut row = head.to_vec();
    row.extend([Cell::Int(level.n), Cell::text(level.kind), Cell::Float(level.energy)]);
    match target {
        Ok(t) => row.extend([Cell::Float(t), Cell::Float((level.energy - t).abs()), Cell::text("ok")]),
        Err(e) => {
            let e = classify(e);
            out.note(RunStatus::of(&e), e.to_string());
            row.extend([Cell::Empty, Cell::Empty, Cell::text(e.to_string())]);
        }
    }
    out.table.push(row);
}

fn push_rejection(out: &mut Outcome, head: [Cell; 4], err: CoreError) {
    let err = classify(err);
    out.note(RunStatus::of(&err), err.to_string());
    let mut row = head.to_vec();
    row.extend([Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty, Cell::text(err.to_string())]);
    out.table.push(row);
}

/// The `r0 -> 0` and `omega -> 0` sequences for every channel.
pub fn run(cfg: &RunConfig) -> CliResult<Outcome> {
    let omega = if cfg.params.omega() > 0.0 { cfg.params.omega() } else { 1.0 };
    let base = cfg.params.with_omega(omega)?;
    let mut out = Outcome::new(Table::new("limits", &COLUMNS));
    for ch in cfg.channel_list(&base) {
        let spin = i64::from(ch.spin().sign());
        // An explicit alpha does not depend on r0, so only the omega sequence applies.
        let r0_sequence: &[f64] = if cfg.alpha.is_some() { &[] } else { &R0_SEQUENCE };
        for &r0 in r0_sequence {
            let params = base.with_r0(r0)?;
            let head = [Cell::text("r0"), Cell::Int(ch.m()), Cell::Int(spin), Cell::Float(r0)];
            match resolve_levels(&params, &ch, cfg.mode, cfg.alpha, cfg.n_roots + 1) {
                Ok(levels) => {
                    for level in &levels.levels {
                        push_row(&mut out, head.clone(), level, r0_target(&params, &ch, cfg.mode, level));
                    }
                    for err in levels.missing {
                        push_rejection(&mut out, head.clone(), err);
                    }
                }
                Err(e) => push_rejection(&mut out, head, e),
            }
        }
        if cfg.mode != Mode::SelfAdjoint {
            continue;
        }
        for &w in &OMEGA_SEQUENCE {
            let params = cfg.params.with_omega(w)?;
            let head = [Cell::text("omega"), Cell::Int(ch.m()), Cell::Int(spin), Cell::Float(w)];
            match resolve_levels(&params, &ch, cfg.mode, cfg.alpha, 1) {
                Ok(levels) => match levels.levels.first() {
                    Some(level) => {
                        let target = match cfg.alpha {
                            None => limit_vanishing_oscillator(&params, &ch),
                            Some(a) => spectrum_from_alpha_pure(a, &ch, params.mass()),
                        };
                        push_row(&mut out, head, level, target);
                    }
                    None => {
                        let err = levels
                            .missing
                            .into_iter()
                            .next()
                            .unwrap_or_else(|| CoreError::Convergence("no root below the lattice".into()));
                        push_rejection(&mut out, head, err);
                    }
                },
                Err(e) => push_rejection(&mut out, head, e),
            }
        }
    }
    Ok(out)
}
