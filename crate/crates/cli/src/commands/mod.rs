mod limits;
mod spectrum;
mod sweep;
mod verify;
mod wavefunction;

use std::process::ExitCode;

use ac_spectra::ac_ho::{regular_spectrum, solve_spectrum, BracketKind};
use ac_spectra::ac_pure::{check_boundary_match, energy_closed_form};
use ac_spectra::sae::{
    alpha_from_physics_ho, alpha_from_physics_pure, spectrum_from_alpha_ho, spectrum_from_alpha_pure, ExtendedReal,
};
use ac_spectra::{Channel, Error as CoreError, PhysicalParams};

use crate::config::Mode;
use crate::error::{classify, CliError};
use crate::table::{Cell, Table};

pub use limits::run as limits;
pub use spectrum::run as spectrum;
pub use sweep::run as sweep;
pub use verify::run as verify;
pub use wavefunction::run as wavefunction;

/// Worst condition met while producing a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RunStatus {
    Ok,
    Rejected,
    Failed,
}

impl RunStatus {
    pub fn exit_code(self) -> ExitCode {
        match self {
            RunStatus::Ok => ExitCode::SUCCESS,
            RunStatus::Rejected => ExitCode::from(2),
            RunStatus::Failed => ExitCode::from(3),
        }
    }

    fn of(err: &CliError) -> Self {
        match err {
            CliError::Regime(_) => RunStatus::Rejected,
            _ => RunStatus::Failed,
        }
    }
}

pub struct Outcome {
    pub table: Table,
    pub status: RunStatus,
    /// One line per rejected or failed row, for stderr.
    pub diagnostics: Vec<String>,
}

impl Outcome {
    fn new(table: Table) -> Self {
        Self { table, status: RunStatus::Ok, diagnostics: Vec::new() }
    }

    fn note(&mut self, status: RunStatus, line: String) {
        self.status = self.status.max(status);
        self.diagnostics.push(line);
    }
}

/// One energy level as printed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub n: i64,
    pub kind: &'static str,
    pub energy: f64,
    pub residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Levels {
    pub alpha: Option<ExtendedReal>,
    pub levels: Vec<Level>,
    /// Brackets where the expected root was not found.
    pub missing: Vec<CoreError>,
}

fn ho_levels(spectrum: ac_spectra::ac_ho::Spectrum) -> (Vec<Level>, Vec<CoreError>) {
    let levels = spectrum
        .states
        .iter()
        .map(|s| Level { n: s.n_bracket, kind: s.kind.label(), energy: s.energy, residual: Some(s.residual) })
        .collect();
    (levels, spectrum.skipped)
}

/// Energy levels of one channel under the configured boundary condition.
pub fn resolve_levels(
    params: &PhysicalParams,
    ch: &Channel,
    mode: Mode,
    alpha: Option<ExtendedReal>,
    n_roots: usize,
) -> Result<Levels, CoreError> {
    let mass = params.mass();
    if params.omega() == 0.0 {
        let (alpha, energy, residual) = match (mode, alpha) {
            (Mode::SelfAdjoint, None) => {
                let e = energy_closed_form(params, ch)?;
                (alpha_from_physics_pure(params, ch)?.alpha, e, Some(check_boundary_match(params, ch, e)?))
            }
            (Mode::SelfAdjoint, Some(a)) => (a, spectrum_from_alpha_pure(a, ch, mass)?, None),
            (Mode::Regular, _) | (Mode::Singular, _) => {
                return Err(CoreError::Regime(format!(
                    "mode {:?} has no bound state without the oscillator (omega = 0)",
                    mode
                )))
            }
        };
        let level = Level { n: 0, kind: "closed-form", energy, residual };
        return Ok(Levels { alpha: Some(alpha), levels: vec![level], missing: Vec::new() });
    }
    let gamma = params.gamma();
    let opts = Default::default();
    let (alpha, (levels, missing)) = match (mode, alpha) {
        (Mode::SelfAdjoint, None) => {
            let spectrum = solve_spectrum(params, ch, n_roots)?;
            (Some(alpha_from_physics_ho(params, ch)?.alpha), ho_levels(spectrum))
        }
        (Mode::SelfAdjoint, Some(a)) => {
            (Some(a), ho_levels(spectrum_from_alpha_ho(a, ch, mass, gamma, n_roots, &opts)?))
        }
        (Mode::Singular, _) => {
            let a = ExtendedReal::Infinite;
            (Some(a), ho_levels(spectrum_from_alpha_ho(a, ch, mass, gamma, n_roots, &opts)?))
        }
        (Mode::Regular, _) => {
            let energies = regular_spectrum(ch, params.omega(), n_roots - 1)?;
            let levels = energies
                .iter()
                .enumerate()
                .map(|(n, &energy)| Level {
                    n: n as i64,
                    kind: BracketKind::PlusLattice.label(),
                    energy,
                    residual: Some(0.0),
                })
                .collect();
            let alpha = ch.is_singular().then_some(ExtendedReal::Finite(0.0));
            (alpha, (levels, Vec::new()))
        }
    };
    Ok(Levels { alpha, levels, missing })
}

pub const LEVEL_COLUMNS: [&str; 11] =
    ["m", "s", "xi", "branch", "n", "kind", "energy", "residual", "alpha", "alpha_length_exponent", "status"];

fn channel_cells(ch: &Channel) -> Vec<Cell> {
    vec![
        Cell::Int(ch.m()),
        Cell::Int(i64::from(ch.spin().sign())),
        Cell::Float(ch.xi()),
        Cell::text(ch.branch().label()),
    ]
}

/// Appends the rows for one channel after `prefix`: its levels, one row per
/// missing root, or a single rejection row.
fn push_level_rows(out: &mut Outcome, prefix: &[Cell], ch: &Channel, resolved: Result<Levels, CoreError>) {
    let tag = format!("m={} s={}", ch.m(), ch.spin());
    let row_start = || -> Vec<Cell> {
        let mut row = prefix.to_vec();
        row.extend(channel_cells(ch));
        row
    };
    match resolved {
        Ok(levels) => {
            let alpha = levels.alpha.map_or(Cell::Empty, Cell::alpha);
            let exponent = if levels.alpha.is_some() { Cell::Float(2.0 * ch.abs_xi()) } else { Cell::Empty };
            for level in &levels.levels {
                let mut row = row_start();
                row.extend([
                    Cell::Int(level.n),
                    Cell::text(level.kind),
                    Cell::Float(level.energy),
                    level.residual.map_or(Cell::Empty, Cell::Float),
                    alpha.clone(),
                    exponent.clone(),
                    Cell::text("ok"),
                ]);
                out.table.push(row);
            }
            for err in &levels.missing {
                let mut row = row_start();
                row.extend([Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty, alpha.clone(), exponent.clone()]);
                row.push(Cell::text(format!("error: {err}")));
                out.table.push(row);
                out.note(RunStatus::Failed, format!("{tag}: {err}"));
            }
        }
        Err(err) => {
            let err = classify(err);
            let status = RunStatus::of(&err);
            let mut row = row_start();
            row.extend([Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty]);
            row.push(Cell::text(err.to_string()));
            out.table.push(row);
            out.note(status, format!("{tag}: {err}"));
        }
    }
}
