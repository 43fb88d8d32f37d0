use ac_spectra::oracle::{run_suite, VerifySettings};

use super::{Outcome, RunStatus};
use crate::config::RunConfig;
use crate::error::CliResult;
use crate::table::{Cell, Table};

const COLUMNS: [&str; 7] = ["quantity", "method", "primary", "oracle", "rel_err", "bound", "status"];

/// The oracle suite; fails when any row exceeds its bound.
pub fn run(cfg: &RunConfig) -> CliResult<Outcome> {
    let settings =
        VerifySettings { n_roots: cfg.n_roots, bound_override: cfg.tol, perturbation: cfg.inject_perturbation };
    let rows = run_suite(&cfg.params, &cfg.channel_list(&cfg.params), &settings)?;
    let mut out = Outcome::new(Table::new("verify", &COLUMNS));
    for row in rows {
        let r = &row.report;
        let passed = row.passed();
        out.table.push(vec![
            Cell::text(r.quantity.clone()),
            Cell::text(r.method.clone()),
            Cell::Float(r.primary_value),
            Cell::Float(r.oracle_value),
            Cell::Float(r.rel_err),
            Cell::Float(row.bound),
            Cell::text(if passed { "pass" } else { "fail" }),
        ]);
        if !passed {
            out.note(
                RunStatus::Failed,
                format!("{} ({}): rel_err {:e} above {:e}", r.quantity, r.method, r.rel_err, row.bound),
            );
        }
    }
    Ok(out)
}
