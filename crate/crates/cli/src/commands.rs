use std::path::PathBuf;

use clap::ValueEnum;
use mixcorr::correlations::{report_with, DiscordOptions, ReportOptions};
use mixcorr::dynamics::EvolutionMode;
use mixcorr::states::{s_max, Family, StateSpec};
use mixcorr::sweeps::{phi_window_physical, phi_window_violation, time_sweep, SweepRow, SweepSpec, Window};
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::output::{self, short, Series};
use crate::Failure;

fn describe(state: &StateSpec) -> String {
    match *state {
        StateSpec::Mems { gamma } => format!("mems gamma={gamma}"),
        StateSpec::Werner { gamma } => format!("werner gamma={gamma}"),
        StateSpec::RhoN { c, theta } => format!("rho-n c={c} theta={theta}"),
        StateSpec::RhoM { c, s, phi, theta } => format!("rho-m c={c} s={s} phi={phi} theta={theta}"),
    }
}

#[derive(Serialize)]
struct InfoJson {
    state: StateSpec,
    physical: bool,
    report: mixcorr::correlations::CorrelationReport,
    eigenvalues: [f64; 4],
    s_max: f64,
    admissible: bool,
}

pub fn info(cfg: &RunConfig) -> Result<(), Failure> {
    let mut text = String::new();
    let mut docs = Vec::new();
    for state in cfg.state_specs()? {
        let rho = if cfg.as_printed { state.build_as_printed()? } else { state.build()? };
        let opts = ReportOptions {
            discord: DiscordOptions { allow_unphysical: cfg.force_discord, ..Default::default() },
        };
        let rep = report_with(&rho, &opts)?;
        let eig = rho.matrix().hermitian_part_eig().values;
        let smax = s_max(rep.concurrence.clamp(0.0, 1.0))?;
        let admissible = rep.linear_entropy <= smax + 1e-12;
        if cfg.format == Format::Json {
            docs.push(InfoJson { state, physical: rho.is_physical(), report: rep, eigenvalues: eig, s_max: smax, admissible });
            continue;
        }
        let diag = rho.diagnostics();
        let lines = [
            ("state", describe(&state)),
            (
                "matrix",
                if rho.is_physical() {
                    "physical".into()
                } else {
                    format!(
                        "NOT physical (trace {}, min eigenvalue {})",
                        short(diag.trace),
                        short(diag.min_eigenvalue)
                    )
                },
            ),
            ("concurrence", short(rep.concurrence)),
            ("discord", short(rep.discord)),
            ("linear_entropy", short(rep.linear_entropy)),
            ("purity", short(rep.purity)),
            ("horodecki_m", short(rep.horodecki_m)),
            ("lambda", short(rep.lambda)),
            ("bell_violated", rep.bell_violated.to_string()),
            ("min_eig", short(rep.min_eigenvalue)),
            ("eigenvalues", eig.iter().map(|&x| short(x)).collect::<Vec<_>>().join(" ")),
            ("s_max(C)", short(smax)),
            (
                "admissible",
                if admissible {
                    format!("yes (S_L {} <= S_max(C))", short(rep.linear_entropy))
                } else {
                    format!("no (S_L {} > S_max(C), outside the ρⁿ/ρᵐ region)", short(rep.linear_entropy))
                },
            ),
        ];
        if !text.is_empty() {
            text.push('\n');
        }
        for (k, v) in lines {
            text.push_str(&format!("{k:<15} {v}\n"));
        }
    }
    if cfg.format == Format::Json {
        text = serde_json::to_string_pretty(&docs).map_err(|e| Failure::invalid(e.to_string()))?;
        text.push('\n');
    }
    output::emit(cfg.out.as_deref(), &text)
}

fn sweep(cfg: &RunConfig, state: StateSpec, mode: EvolutionMode) -> Result<Vec<SweepRow>, Failure> {
    let mut spec = SweepSpec::new(state, cfg.ham, cfg.time_grid()?, mode);
    spec.force_discord = cfg.force_discord;
    Ok(time_sweep(&spec)?)
}

fn optimizer_status(rows: &[SweepRow], label: &str) -> Option<Failure> {
    let failed = rows.iter().filter(|r| r.optimizer_failed).count();
    (failed > 0).then(|| Failure::numerical(format!("{label}: discord optimizer failed on {failed} rows")))
}

fn render(cfg: &RunConfig, series: &[Series<'_>]) -> Result<String, Failure> {
    match cfg.format {
        Format::Csv => Ok(output::csv(series)),
        Format::Json => output::json(series),
    }
}

pub fn evolve(cfg: &RunConfig) -> Result<(), Failure> {
    if cfg.as_printed {
        return Err(Failure::invalid("evolve uses --mode paper for printed dynamics; --as-printed is for info and validate"));
    }
    let states = cfg.state_specs()?;
    let mut all = Vec::new();
    for state in &states {
        all.push(sweep(cfg, *state, cfg.mode)?);
    }
    let series: Vec<Series<'_>> = states
        .iter()
        .zip(&all)
        .map(|(state, rows)| Series { state: *state, ham: cfg.ham, mode: cfg.mode, rows })
        .collect();
    output::emit(cfg.out.as_deref(), &render(cfg, &series)?)?;
    for (state, rows) in states.iter().zip(&all) {
        if let Some(f) = optimizer_status(rows, &describe(state)) {
            return Err(f);
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct WindowsJson {
    c: f64,
    s: f64,
    physical: Vec<[f64; 2]>,
    violating: Vec<[f64; 2]>,
    resolution: f64,
}

fn pairs(ws: &[Window]) -> Vec<[f64; 2]> {
    ws.iter().map(|w| [w.lo, w.hi]).collect()
}

pub fn windows(cfg: &RunConfig) -> Result<(), Failure> {
    if let Some(f) = cfg.family.filter(|&f| f != Family::RhoM) {
        return Err(Failure::invalid(format!("windows needs family rho-m, not {f}")));
    }
    let c = cfg.c.ok_or_else(|| Failure::invalid("windows needs --c"))?;
    let s = cfg.s.ok_or_else(|| Failure::invalid("windows needs --s"))?;
    let physical = phi_window_physical(c, s, cfg.resolution)?;
    let violating = phi_window_violation(c, s, cfg.resolution)?;
    let text = match cfg.format {
        Format::Json => {
            let doc = WindowsJson { c, s, physical: pairs(&physical), violating: pairs(&violating), resolution: cfg.resolution };
            let mut t = serde_json::to_string(&doc).map_err(|e| Failure::invalid(e.to_string()))?;
            t.push('\n');
            t
        }
        Format::Csv => {
            let mut t = String::from("kind,lo,hi\n");
            for (kind, ws) in [("physical", &physical), ("violating", &violating)] {
                for w in ws.iter() {
                    t.push_str(&format!("{kind},{},{}\n", output::full(w.lo), output::full(w.hi)));
                }
            }
            t
        }
    };
    output::emit(cfg.out.as_deref(), &text)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    Fig1,
    Fig2,
    Fig3,
}

impl Figure {
    fn name(self) -> &'static str {
        match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
        }
    }

    /// `(s, default φ list)` of the paired `ρᵐ` variant, all at `c = 1/2`.
    fn rho_m(self) -> (f64, Vec<f64>) {
        match self {
            Figure::Fig1 => (0.125, vec![0.54657, 0.65605]),
            Figure::Fig2 => (0.5, vec![0.25, 1.45]),
            Figure::Fig3 => (0.7, vec![0.0, std::f64::consts::TAU]),
        }
    }
}

pub const FIGURE_GAMMAS: [f64; 3] = [0.0, 0.4, 0.6];

pub fn reproduce(figure: Figure, cfg: &RunConfig) -> Result<(), Failure> {
    if cfg.family.is_some() || cfg.gamma.is_some() || cfg.c.is_some() || cfg.s.is_some() {
        return Err(Failure::invalid("reproduce fixes the states; only --phi, --theta and the grid flags apply"));
    }
    let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir)
        .map_err(|e| Failure::invalid(format!("cannot create {}: {e}", dir.display())))?;

    let (s, default_phis) = figure.rho_m();
    let phis = if cfg.phi.is_empty() { default_phis } else { cfg.phi.clone() };
    let theta = cfg.theta.unwrap_or(0.0);
    let mut states: Vec<(StateSpec, String)> =
        FIGURE_GAMMAS.iter().map(|&gamma| (StateSpec::Mems { gamma }, format!("mems-gamma{gamma}"))).collect();
    states.extend(phis.iter().map(|&phi| (StateSpec::RhoM { c: 0.5, s, phi, theta }, format!("rho-m-phi{phi}"))));

    let ext = match cfg.format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    let mut first_failure: Option<Failure> = None;
    for (state, tag) in &states {
        for (mode, mode_name) in [(EvolutionMode::Physical, "physical"), (EvolutionMode::PaperPrinted, "paper")] {
            let label = format!("{} {} {}", figure.name(), describe(state), mode_name);
            let rows = match sweep(cfg, *state, mode) {
                Ok(rows) => rows,
                Err(f) => {
                    eprintln!("skipping {label}: {}", f.message);
                    first_failure.get_or_insert(f);
                    continue;
                }
            };
            let series = [Series { state: *state, ham: cfg.ham, mode, rows: &rows }];
            let path = dir.join(format!("{}-{tag}-{mode_name}.{ext}", figure.name()));
            output::emit(Some(&path), &render(cfg, &series)?)?;
            println!("wrote {} ({} rows)", path.display(), rows.len());
            if let Some(f) = optimizer_status(&rows, &label) {
                eprintln!("{}", f.message);
                first_failure.get_or_insert(f);
            }
        }
    }
    match first_failure {
        Some(f) => Err(f),
        None => Ok(()),
    }
}
