use std::f64::consts::{PI, TAU};

use mixcorr::correlations::{concurrence, concurrence_x, linear_entropy, quantum_discord, report};
use mixcorr::dynamics::{closed_form_evolve, evolve, uniform_grid, EvolutionMode, HamiltonianSpec};
use mixcorr::states::{
    make_mems, make_mems_as_printed, make_rho_m, make_rho_n, s_max, swap_unitary, validate_state,
    x_state, DensityMatrix, StateSpec,
};
use mixcorr::sweeps::{
    phi_window_violation, sudden_death_intervals, time_sweep, SweepSpec, DEFAULT_DEATH_THRESHOLD,
};
use num_complex::Complex64 as C64;

use crate::config::RunConfig;

type Check = Result<String, String>;

fn fail_if(bad: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if bad {
        Err(msg())
    } else {
        Ok(())
    }
}

fn lift<T>(r: mixcorr::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

struct Suite {
    as_printed: bool,
    ham: HamiltonianSpec,
}

impl Suite {
    fn mems(&self, gamma: f64) -> mixcorr::Result<DensityMatrix> {
        if self.as_printed {
            make_mems_as_printed(gamma)
        } else {
            make_mems(gamma)
        }
    }

    fn families() -> Vec<StateSpec> {
        vec![
            StateSpec::Mems { gamma: 0.2 },
            StateSpec::Mems { gamma: 0.8 },
            StateSpec::RhoN { c: 0.4, theta: 0.9 },
            StateSpec::RhoN { c: 0.85, theta: 0.0 },
            StateSpec::RhoM { c: 0.5, s: 0.125, phi: 0.6, theta: 0.0 },
            StateSpec::RhoM { c: 0.5, s: 0.5, phi: 1.2, theta: 0.4 },
            StateSpec::RhoM { c: 0.5, s: 0.7, phi: 4.0, theta: 0.0 },
        ]
    }

    fn trace_one(&self) -> Check {
        for gamma in [0.2, 0.4, 0.6, 0.7, 0.9] {
            let rho = lift(self.mems(gamma))?;
            let d = rho.diagnostics();
            fail_if(d.trace_deviation() > 1e-10, || format!("MEMS γ={gamma}: trace {}", d.trace))?;
        }
        Ok("MEMS branches have unit trace".into())
    }

    fn unitary_equivalence(&self) -> Check {
        let u = swap_unitary();
        let mut worst: f64 = 0.0;
        for gamma in [0.2, 0.4, 0.6, 0.7, 0.8, 0.9] {
            let moved = lift(self.mems(gamma))?.matrix().conjugate_by(&u);
            let d = moved.distance(lift(make_rho_n(gamma, 0.0))?.matrix());
            worst = worst.max(d);
            fail_if(d >= 1e-12, || format!("γ={gamma}: ‖UρU† − ρⁿ‖ = {d:e}"))?;
        }
        Ok(format!("max distance {worst:.1e}"))
    }

    fn purity_and_closed_form(&self) -> Check {
        let grid = lift(uniform_grid(TAU, 20))?;
        let mut n = 0;
        for state in Self::families() {
            let rho = lift(state.build())?;
            for &t in &grid {
                let exact = lift(evolve(&rho, &self.ham, t))?;
                let dp = (exact.purity() - rho.purity()).abs();
                fail_if(dp >= 1e-12, || format!("{state:?} t={t}: purity drift {dp:e}"))?;
                let fast = lift(closed_form_evolve(&state, &self.ham, t))?;
                let d = fast.matrix().max_abs_diff(exact.matrix());
                fail_if(d >= 1e-12, || format!("{state:?} t={t}: closed form off by {d:e}"))?;
                n += 1;
            }
        }
        Ok(format!("{n} evolutions"))
    }

    fn field_independence(&self) -> Check {
        let mut fields = vec![0.0, 0.5, 2.0];
        if !fields.contains(&self.ham.b) {
            fields.push(self.ham.b);
        }
        for state in Self::families() {
            let rho = lift(state.build())?;
            for t in [0.4, 1.3] {
                let at = |b: f64| -> Result<_, String> {
                    let ham = lift(HamiltonianSpec::new(self.ham.j, b))?;
                    lift(report(&lift(evolve(&rho, &ham, t))?))
                };
                let base = at(fields[0])?;
                for &b in &fields[1..] {
                    let r = at(b)?;
                    let gap = (r.concurrence - base.concurrence)
                        .abs()
                        .max((r.discord - base.discord).abs())
                        .max((r.linear_entropy - base.linear_entropy).abs());
                    fail_if(gap > 1e-9, || format!("{state:?} B={b} t={t}: gap {gap:e}"))?;
                }
            }
        }
        Ok(format!("B ∈ {fields:?}"))
    }

    fn x_state_concurrence(&self) -> Check {
        // low-discrepancy walk over populations, coherence sizes and phases
        let frac = |k: usize, a: f64| (k as f64 * a).fract();
        let mut worst: f64 = 0.0;
        for k in 1..=500 {
            let w = [frac(k, 0.618034), frac(k, 0.414214), frac(k, 0.732051), frac(k, 0.236068)];
            let total: f64 = w.iter().sum::<f64>() + 1e-3;
            let d = w.map(|x| (x + 2.5e-4) / total);
            let r14 = C64::from_polar(frac(k, 0.302776) * (d[0] * d[3]).sqrt(), TAU * frac(k, 0.162278));
            let r23 = C64::from_polar(frac(k, 0.645751) * (d[1] * d[2]).sqrt(), TAU * frac(k, 0.123106));
            let rho = lift(validate_state(x_state(d, r14, r23)))?;
            let gap = (lift(concurrence_x(&rho))? - lift(concurrence(&rho))?).abs();
            worst = worst.max(gap);
            fail_if(gap > 1e-10, || format!("X state {k}: gap {gap:e}"))?;
        }
        Ok(format!("500 X states, max gap {worst:.1e}"))
    }

    fn identities(&self) -> Check {
        for s in [0.125, 0.5, 0.7] {
            for i in 0..400 {
                let phi = TAU * i as f64 / 400.0;
                if let Ok(rho) = make_rho_m(0.5, s, phi, 0.0) {
                    let sl = linear_entropy(&rho);
                    fail_if((sl - s).abs() > 1e-12, || format!("ρᵐ s={s} φ={phi}: S_L {sl}"))?;
                    let c = lift(concurrence(&rho))?;
                    fail_if((c - 0.5).abs() > 1e-10, || format!("ρᵐ s={s} φ={phi}: C {c}"))?;
                }
            }
        }
        for i in 1..50 {
            let c = i as f64 / 50.0;
            let sl = linear_entropy(&lift(make_rho_n(c, 0.0))?);
            let smax = lift(s_max(c))?;
            fail_if((sl - smax).abs() > 1e-12, || format!("ρⁿ c={c}: S_L {sl} vs S_max {smax}"))?;
        }
        Ok("S_L(ρᵐ) = s, S_L(ρⁿ) = S_max, C = c".into())
    }

    fn windows(&self) -> Check {
        let w1 = lift(phi_window_violation(0.5, 0.125, 1e-6))?;
        let first = w1.first().ok_or("ρ₁ᵐ: no violation window")?;
        fail_if((first.lo - 0.54657).abs() > 5e-3 || (first.hi - 0.65605).abs() > 1e-3, || {
            format!("ρ₁ᵐ window ({}, {})", first.lo, first.hi)
        })?;
        let w2 = lift(phi_window_violation(0.5, 0.5, 1e-6))?;
        let onset = w2.first().map(|w| w.lo).ok_or("ρ₂ᵐ: no violation window")?;
        fail_if((onset - 0.926).abs() > 5e-3, || format!("ρ₂ᵐ onset {onset}"))?;
        let w3 = lift(phi_window_violation(0.5, 0.7, 1e-6))?;
        fail_if(!w3.is_empty(), || format!("ρ₃ᵐ violates on {w3:?}"))?;
        Ok(format!("ρ₁ᵐ ({:.5}, {:.5}), ρ₂ᵐ onset {onset:.5}, ρ₃ᵐ none", first.lo, first.hi))
    }

    fn sudden_death(&self) -> Check {
        let ham = lift(HamiltonianSpec::new(1.0, self.ham.b))?;
        let deaths = |gamma: f64| -> Result<_, String> {
            let spec = SweepSpec::new(StateSpec::Mems { gamma }, ham, lift(uniform_grid(TAU, 400))?, EvolutionMode::Physical);
            let rows = lift(time_sweep(&spec))?;
            Ok((lift(sudden_death_intervals(&spec, &rows, DEFAULT_DEATH_THRESHOLD))?, spec))
        };
        let (w, spec) = deaths(0.2)?;
        let first = w.first().ok_or("MEMS γ=0.2: no death window")?;
        let root = 0.6f64.asin() / 2.0;
        fail_if((first.lo - root).abs() > 1e-4 || (first.hi - (PI / 2.0 - root)).abs() > 1e-4, || {
            format!("MEMS γ=0.2 window ({}, {})", first.lo, first.hi)
        })?;
        for win in &w {
            let q = lift(quantum_discord(&lift(spec.state_at(win.midpoint()))?))?;
            fail_if(q <= 1e-4, || format!("discord {q} inside death window {win:?}"))?;
        }
        let (none, _) = deaths(0.4)?;
        fail_if(!none.is_empty(), || format!("MEMS γ=0.4 dies on {none:?}"))?;
        Ok(format!("γ=0.2 first window ({:.5}, {:.5}), discord survives", first.lo, first.hi))
    }
}

/// Runs every check, prints one line each, and returns the number of failures.
pub fn run(cfg: &RunConfig) -> usize {
    let suite = Suite { as_printed: cfg.as_printed, ham: cfg.ham };
    let checks: [(&str, fn(&Suite) -> Check); 8] = [
        ("trace", Suite::trace_one),
        ("unitary-equivalence", Suite::unitary_equivalence),
        ("purity-and-closed-form", Suite::purity_and_closed_form),
        ("field-independence", Suite::field_independence),
        ("x-state-concurrence", Suite::x_state_concurrence),
        ("entropy-identities", Suite::identities),
        ("bell-windows", Suite::windows),
        ("sudden-death", Suite::sudden_death),
    ];
    let mut failures = 0;
    for (name, check) in checks {
        match check(&suite) {
            Ok(detail) => println!("PASS  {name:<24} {detail}"),
            Err(why) => {
                failures += 1;
                println!("FAIL  {name:<24} {why}");
            }
        }
    }
    println!("{} of {} checks passed", checks.len() - failures, checks.len());
    failures
}
