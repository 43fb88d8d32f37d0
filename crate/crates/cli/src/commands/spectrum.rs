use super::{push_level_rows, resolve_levels, Outcome, LEVEL_COLUMNS};
use crate::config::RunConfig;
use crate::error::CliResult;
use crate::table::Table;

/// Closed-form energy without the oscillator, the spectral-condition roots with it.
pub fn run(cfg: &RunConfig) -> CliResult<Outcome> {
    let mut out = Outcome::new(Table::new("spectrum", &LEVEL_COLUMNS));
    for ch in cfg.channel_list(&cfg.params) {
        let resolved = resolve_levels(&cfg.params, &ch, cfg.mode, cfg.alpha, cfg.n_roots);
        push_level_rows(&mut out, &[], &ch, resolved);
    }
    Ok(out)
}
