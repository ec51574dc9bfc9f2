use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use mixcorr::dynamics::{EvolutionMode, HamiltonianSpec};
use mixcorr::states::StateSpec;
use mixcorr::sweeps::SweepRow;
use serde::Serialize;

use crate::Failure;

pub const CSV_HEADER: &str = "family,gamma,c,s,phi,theta,J,B,t,concurrence,discord,linear_entropy,purity,horodecki_m,bell_violated,min_eig,physical";
const PAPER_COLUMNS: &str = "paper_linear_entropy,linear_entropy_divergence";

/// 17 significant digits, enough to round-trip an f64.
pub fn full(x: f64) -> String {
    format!("{x:.16e}")
}

/// Six significant digits for terminal summaries.
pub fn short(x: f64) -> String {
    if x == 0.0 || !x.is_finite() || (1e-3..1e6).contains(&x.abs()) {
        let digits = if x.abs() >= 1.0 { 5 - x.abs().log10().floor() as usize } else { 6 };
        format!("{x:.digits$}")
    } else {
        format!("{x:.5e}")
    }
}

struct Params {
    gamma: Option<f64>,
    c: Option<f64>,
    s: Option<f64>,
    phi: Option<f64>,
    theta: Option<f64>,
}

fn params(state: &StateSpec) -> Params {
    let none = Params { gamma: None, c: None, s: None, phi: None, theta: None };
    match *state {
        StateSpec::Mems { gamma } | StateSpec::Werner { gamma } => Params { gamma: Some(gamma), ..none },
        StateSpec::RhoN { c, theta } => Params { c: Some(c), theta: Some(theta), ..none },
        StateSpec::RhoM { c, s, phi, theta } => {
            Params { gamma: None, c: Some(c), s: Some(s), phi: Some(phi), theta: Some(theta) }
        }
    }
}

/// One evaluated series: a state, its Hamiltonian and the rows.
pub struct Series<'a> {
    pub state: StateSpec,
    pub ham: HamiltonianSpec,
    pub mode: EvolutionMode,
    pub rows: &'a [SweepRow],
}

pub fn csv(series: &[Series<'_>]) -> String {
    let paper = series.iter().any(|s| s.mode == EvolutionMode::PaperPrinted);
    let mut out = String::from(CSV_HEADER);
    if paper {
        out.push(',');
        out.push_str(PAPER_COLUMNS);
    }
    out.push('\n');
    let opt = |x: Option<f64>| x.map(full).unwrap_or_default();
    for s in series {
        let p = params(&s.state);
        for row in s.rows {
            let r = &row.report;
            let _ = write!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                s.state.family(),
                opt(p.gamma),
                opt(p.c),
                opt(p.s),
                opt(p.phi),
                opt(p.theta),
                full(s.ham.j),
                full(s.ham.b),
                full(row.t),
                full(r.concurrence),
                full(r.discord),
                full(r.linear_entropy),
                full(r.purity),
                full(r.horodecki_m),
                r.bell_violated,
                full(r.min_eigenvalue),
                row.physical,
            );
            if paper {
                let _ = write!(out, ",{},{}", opt(row.paper_linear_entropy), opt(row.divergence));
            }
            out.push('\n');
        }
    }
    out
}

#[derive(Serialize)]
struct JsonRow<'a> {
    #[serde(flatten)]
    state: &'a StateSpec,
    #[serde(rename = "J")]
    j: f64,
    #[serde(rename = "B")]
    b: f64,
    mode: EvolutionMode,
    #[serde(flatten)]
    row: &'a SweepRow,
}

pub fn json(series: &[Series<'_>]) -> Result<String, Failure> {
    let rows: Vec<JsonRow<'_>> = series
        .iter()
        .flat_map(|s| {
            s.rows.iter().map(move |row| JsonRow { state: &s.state, j: s.ham.j, b: s.ham.b, mode: s.mode, row })
        })
        .collect();
    let mut text = serde_json::to_string_pretty(&rows).map_err(|e| Failure::invalid(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

/// Writes to `path`, or to stdout when there is none.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::invalid(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::invalid(format!("cannot write to stdout: {e}")))
        }
    }
}
