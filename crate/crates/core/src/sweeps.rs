//! Time sweeps, `φ`-window searches and sudden-death detection.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::correlations::{
    concurrence, horodecki_m_of, linear_entropy, report_with, CorrelationReport, DiscordOptions,
    ReportOptions,
};
use crate::dynamics::{evolve, paper_evolved_state, paper_linear_entropy, EvolutionMode, HamiltonianSpec};
use crate::error::{check_range, Error, Result};
use crate::states::{rho_m_matrix, DensityMatrix, StateSpec};

/// Points in the uniform pre-scan before bisection.
pub const SCAN_POINTS: usize = 2048;
/// Upper bound on bisection steps per endpoint.
pub const BISECTION_ITERATIONS: usize = 60;
/// Concurrence at or below this counts as dead.
pub const DEFAULT_DEATH_THRESHOLD: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub state: StateSpec,
    pub ham: HamiltonianSpec,
    pub t_grid: Vec<f64>,
    pub mode: EvolutionMode,
    /// Feed non-physical printed matrices to the discord optimizer anyway.
    #[serde(default)]
    pub force_discord: bool,
}

impl SweepSpec {
    pub fn new(state: StateSpec, ham: HamiltonianSpec, t_grid: Vec<f64>, mode: EvolutionMode) -> Self {
        Self { state, ham, t_grid, mode, force_discord: false }
    }

    fn check_grid(&self) -> Result<()> {
        if self.t_grid.is_empty() {
            return Err(Error::InvalidGrid("empty"));
        }
        if self.t_grid.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidGrid("non-finite time"));
        }
        if self.t_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidGrid("times must be strictly ascending"));
        }
        Ok(())
    }

    /// State at time `t` under this sweep's mode.
    pub fn state_at(&self, t: f64) -> Result<DensityMatrix> {
        match self.mode {
            EvolutionMode::Physical => evolve(&self.state.build()?, &self.ham, t),
            EvolutionMode::PaperPrinted => paper_evolved_state(&self.state, &self.ham, t),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub t: f64,
    pub report: CorrelationReport,
    /// Always true in physical mode; false when a printed matrix fails validation.
    pub physical: bool,
    /// The discord optimizer did not converge; `report.discord` is NaN.
    pub optimizer_failed: bool,
    /// Paper mode only: the printed linear-entropy curve at `t`.
    pub paper_linear_entropy: Option<f64>,
    /// Paper mode only: printed curve minus the exact (constant) linear entropy.
    pub divergence: Option<f64>,
}

struct SweepContext {
    initial: Option<DensityMatrix>,
    exact_linear_entropy: Option<f64>,
    opts: ReportOptions,
}

fn context(spec: &SweepSpec) -> Result<SweepContext> {
    let opts = ReportOptions {
        discord: DiscordOptions { allow_unphysical: spec.force_discord, ..Default::default() },
    };
    match spec.mode {
        EvolutionMode::Physical => {
            let rho = spec.state.build()?;
            Ok(SweepContext { initial: Some(rho), exact_linear_entropy: None, opts })
        }
        EvolutionMode::PaperPrinted => {
            // the printed curves are compared against the exact state, if there is one
            let exact = spec.state.build().ok().map(|r| linear_entropy(&r));
            Ok(SweepContext { initial: None, exact_linear_entropy: exact, opts })
        }
    }
}

fn row_at(spec: &SweepSpec, ctx: &SweepContext, t: f64) -> Result<SweepRow> {
    let (rho, paper_s) = match (&ctx.initial, spec.mode) {
        (Some(rho0), EvolutionMode::Physical) => (evolve(rho0, &spec.ham, t)?, None),
        _ => (
            paper_evolved_state(&spec.state, &spec.ham, t)?,
            Some(paper_linear_entropy(&spec.state, &spec.ham, t)?),
        ),
    };
    let (report, optimizer_failed) = match report_with(&rho, &ctx.opts) {
        Ok(r) => (r, false),
        Err(Error::OptimizerFailure { .. }) => {
            let no_discord = ReportOptions {
                discord: DiscordOptions { allow_unphysical: false, ..ctx.opts.discord },
            };
            let mut r = report_with(&DensityMatrix::as_printed(*rho.matrix()), &no_discord)?;
            r.discord = f64::NAN;
            r.concurrence = concurrence(&rho)?;
            (r, true)
        }
        Err(e) => return Err(e),
    };
    Ok(SweepRow {
        t,
        report,
        physical: rho.is_physical(),
        optimizer_failed,
        paper_linear_entropy: paper_s,
        divergence: paper_s.zip(ctx.exact_linear_entropy).map(|(p, e)| p - e),
    })
}

/// One row per grid time, in grid order. Rows are evaluated in parallel.
pub fn time_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.check_grid()?;
    let ctx = context(spec)?;
    spec.t_grid.par_iter().map(|&t| row_at(spec, &ctx, t)).collect()
}

/// [`time_sweep`] on the calling thread only.
pub fn time_sweep_serial(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.check_grid()?;
    let ctx = context(spec)?;
    spec.t_grid.iter().map(|&t| row_at(spec, &ctx, t)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WindowKind {
    Physicality,
    Violation,
    SuddenDeath,
}

/// Open interval `(lo, hi)` in `φ` or `t`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
    pub kind: WindowKind,
}

impl Window {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }
}

/// Bisects the flip of `pred` inside `[a, b]`, where `pred(a) != pred(b)`.
fn bisect_flip(pred: &impl Fn(f64) -> bool, mut a: f64, mut b: f64, resolution: f64) -> f64 {
    let pa = pred(a);
    for _ in 0..BISECTION_ITERATIONS {
        if b - a <= resolution {
            break;
        }
        let mid = 0.5 * (a + b);
        if pred(mid) == pa {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// Maximal runs of `pred` on `grid`, with inner endpoints refined by bisection.
fn windows_of(
    pred: impl Fn(f64) -> bool,
    grid: &[f64],
    flags: &[bool],
    resolution: f64,
    kind: WindowKind,
) -> Vec<Window> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < grid.len() {
        if !flags[i] {
            i += 1;
            continue;
        }
        let start = i;
        while i + 1 < grid.len() && flags[i + 1] {
            i += 1;
        }
        let end = i;
        let lo = if start == 0 {
            grid[0]
        } else {
            bisect_flip(&pred, grid[start - 1], grid[start], resolution)
        };
        let hi = if end + 1 == grid.len() {
            grid[end]
        } else {
            bisect_flip(&pred, grid[end], grid[end + 1], resolution)
        };
        if lo < hi {
            out.push(Window { lo, hi, kind });
        }
        i += 1;
    }
    out
}

fn phi_grid() -> Vec<f64> {
    (0..=SCAN_POINTS).map(|k| TAU * k as f64 / SCAN_POINTS as f64).collect()
}

fn check_resolution(resolution: f64) -> Result<()> {
    check_range("resolution", resolution, "(0, 1e-3]", resolution > 0.0 && resolution <= 1e-3)
}

fn rho_m_min_eigenvalue(c: f64, s: f64, phi: f64) -> f64 {
    rho_m_matrix(c, s, phi, 0.0).map(|m| m.hermitian_part_eig().min()).unwrap_or(f64::NEG_INFINITY)
}

/// Intervals of `φ ∈ [0, 2π]` on which `ρᵐ(c, s, φ)` is positive semidefinite.
pub fn phi_window_physical(c: f64, s: f64, resolution: f64) -> Result<Vec<Window>> {
    check_resolution(resolution)?;
    rho_m_matrix(c, s, 0.0, 0.0)?;
    let pred = |phi: f64| rho_m_min_eigenvalue(c, s, phi) >= 0.0;
    let grid = phi_grid();
    let flags: Vec<bool> = grid.iter().map(|&p| pred(p)).collect();
    Ok(windows_of(pred, &grid, &flags, resolution, WindowKind::Physicality))
}

/// Intervals of `φ` on which `ρᵐ(c, s, φ)` is physical and violates
/// Bell-CHSH (Horodecki quantity above 1).
pub fn phi_window_violation(c: f64, s: f64, resolution: f64) -> Result<Vec<Window>> {
    check_resolution(resolution)?;
    rho_m_matrix(c, s, 0.0, 0.0)?;
    let pred = |phi: f64| match rho_m_matrix(c, s, phi, 0.0) {
        Ok(m) => m.hermitian_part_eig().min() >= 0.0 && horodecki_m_of(&m) > 1.0,
        Err(_) => false,
    };
    let grid = phi_grid();
    let flags: Vec<bool> = grid.iter().map(|&p| pred(p)).collect();
    Ok(windows_of(pred, &grid, &flags, resolution, WindowKind::Violation))
}

/// Time intervals where the concurrence is at most `threshold`. Endpoints
/// between grid points are bisected on the exact state at each trial time.
pub fn sudden_death_intervals(
    spec: &SweepSpec,
    rows: &[SweepRow],
    threshold: f64,
) -> Result<Vec<Window>> {
    let grid: Vec<f64> = rows.iter().map(|r| r.t).collect();
    let flags: Vec<bool> = rows.iter().map(|r| r.report.concurrence <= threshold).collect();
    if !flags.iter().any(|&f| f) {
        return Ok(Vec::new());
    }
    let initial = match spec.mode {
        EvolutionMode::Physical => Some(spec.state.build()?),
        EvolutionMode::PaperPrinted => None,
    };
    let concurrence_at = |t: f64| -> f64 {
        let rho = match &initial {
            Some(r0) => evolve(r0, &spec.ham, t),
            None => paper_evolved_state(&spec.state, &spec.ham, t),
        };
        rho.and_then(|r| concurrence(&r)).unwrap_or(f64::NAN)
    };
    let pred = |t: f64| concurrence_at(t) <= threshold;
    Ok(windows_of(pred, &grid, &flags, 0.0, WindowKind::SuddenDeath))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::uniform_grid;

    #[test]
    fn grid_validation() {
        let ham = HamiltonianSpec::new(1.0, 0.0).unwrap();
        let state = StateSpec::Mems { gamma: 0.4 };
        for grid in [vec![], vec![0.0, 0.0], vec![1.0, 0.5], vec![0.0, f64::NAN]] {
            let spec = SweepSpec::new(state, ham, grid, EvolutionMode::Physical);
            assert!(matches!(time_sweep(&spec), Err(Error::InvalidGrid(_))));
        }
    }

    #[test]
    fn bisection_respects_resolution() {
        let pred = |x: f64| x > 0.3;
        let r = bisect_flip(&pred, 0.0, 1.0, 1e-3);
        assert!((r - 0.3).abs() <= 1e-3);
    }

    #[test]
    fn windows_of_reports_edges() {
        let grid: Vec<f64> = (0..=10).map(|k| k as f64).collect();
        let pred = |x: f64| !(2.5..=6.5).contains(&x);
        let flags: Vec<bool> = grid.iter().map(|&x| pred(x)).collect();
        let w = windows_of(pred, &grid, &flags, 1e-9, WindowKind::Physicality);
        assert_eq!(w.len(), 2);
        assert_eq!(w[0].lo, 0.0);
        assert!((w[0].hi - 2.5).abs() < 1e-8);
        assert!((w[1].lo - 6.5).abs() < 1e-8);
        assert_eq!(w[1].hi, 10.0);
    }

    #[test]
    fn resolution_precondition() {
        assert!(phi_window_physical(0.5, 0.125, 1e-2).is_err());
        assert!(matches!(phi_window_physical(0.5, 0.9, 1e-4), Err(Error::NegativeD { .. })));
    }

    #[test]
    fn mems_sweep_is_flat_in_linear_entropy() {
        let ham = HamiltonianSpec::new(1.0, 0.0).unwrap();
        let spec = SweepSpec::new(
            StateSpec::Mems { gamma: 0.4 },
            ham,
            uniform_grid(3.0, 7).unwrap(),
            EvolutionMode::Physical,
        );
        let rows = time_sweep(&spec).unwrap();
        let s0 = rows[0].report.linear_entropy;
        assert!(rows.iter().all(|r| (r.report.linear_entropy - s0).abs() < 1e-12 && r.physical));
        assert!(sudden_death_intervals(&spec, &rows, DEFAULT_DEATH_THRESHOLD).unwrap().is_empty());
    }
}
