//! Unitary dynamics under the two-spin XX Hamiltonian in a uniform field,
//!
//! ```text
//! H = (J/2)(σx⊗σx + σy⊗σy) + B(σz⊗I + I⊗σz)
//! ```
//!
//! In the computational basis `H` is `diag(2B, 0, 0, −2B)` plus the inner
//! block `((0, J), (J, 0))`. X states stay X states: the corners only pick up
//! the phase `e^{−4iBt}` on `ρ14`, and the inner block rotates with angle `Jt`.
//!
//! Besides exact propagation this module carries the printed closed forms for
//! the evolved MEMS and `ρᵐ` states ("paper mode"). Those are reproduced
//! verbatim, inconsistencies included, and never validated on construction.

use std::f64::consts::TAU;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kron, pauli, ComplexMat4};
use crate::states::{x_state, DensityMatrix, Family, StateSpec};

/// Coupling `j` and field `b`, in units where `ħ = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianSpec {
    pub j: f64,
    pub b: f64,
}

impl HamiltonianSpec {
    pub fn new(j: f64, b: f64) -> Result<Self> {
        for (name, v) in [("J", j), ("B", b)] {
            if !v.is_finite() {
                return Err(Error::ParamOutOfRange { name, value: v, range: "finite" });
            }
        }
        Ok(Self { j, b })
    }

    /// Same field, coupling multiplied by `k`. Off (k = 1) unless a caller
    /// wants a different normalization of the exchange term.
    pub fn with_coupling_scale(self, k: f64) -> Self {
        Self { j: self.j * k, ..self }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvolutionMode {
    /// Exact unitary evolution of the corrected state.
    #[default]
    Physical,
    /// The printed evolved matrices and linear-entropy formulas.
    PaperPrinted,
}

pub fn build_hamiltonian(spec: &HamiltonianSpec) -> ComplexMat4 {
    let xx = kron(&pauli::x(), &pauli::x());
    let yy = kron(&pauli::y(), &pauli::y());
    let zi = kron(&pauli::z(), &pauli::id());
    let iz = kron(&pauli::id(), &pauli::z());
    (xx + yy).scale_re(spec.j / 2.0) + (zi + iz).scale_re(spec.b)
}

/// `U(t)·ρ·U†(t)` with `U(t) = exp(−iHt)`.
pub fn evolve(rho: &DensityMatrix, spec: &HamiltonianSpec, t: f64) -> Result<DensityMatrix> {
    if !t.is_finite() {
        return Err(Error::ParamOutOfRange { name: "t", value: t, range: "finite" });
    }
    let u = build_hamiltonian(spec).expm_i(t)?;
    rho.derive(rho.matrix().conjugate_by(&u))
}

/// Closed-form evolution of any X-form matrix.
pub fn evolve_x_form(m: &ComplexMat4, spec: &HamiltonianSpec, t: f64) -> ComplexMat4 {
    let jt = spec.j * t;
    let (s, c) = jt.sin_cos();
    let (c2, s2) = (c * c, s * s);
    let sin2 = (2.0 * jt).sin();

    let d = m.diag_re();
    let (p, r, q) = (d[1], d[2], m[(1, 2)]);
    let p_t = c2 * p + s2 * r - sin2 * q.im;
    let r_t = s2 * p + c2 * r + sin2 * q.im;
    let q_t = q * c2 + q.conj() * s2 + C64::new(0.0, 0.5 * sin2 * (p - r));

    let corner = m[(0, 3)] * C64::from_polar(1.0, -4.0 * spec.b * t);
    x_state([d[0], p_t, r_t, d[3]], corner, q_t)
}

/// Analytic evolution of the MEMS, `ρⁿ` and `ρᵐ` families.
pub fn closed_form_evolve(
    state: &StateSpec,
    spec: &HamiltonianSpec,
    t: f64,
) -> Result<DensityMatrix> {
    if let StateSpec::Werner { .. } = state {
        return Err(Error::UnsupportedFamily {
            family: Family::Werner,
            reason: "has no closed form here; use evolve()",
        });
    }
    let rho = state.build()?;
    rho.derive(evolve_x_form(rho.matrix(), spec, t))
}

/// Which printed evolved matrix applies to a state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PaperVariant {
    /// Lower MEMS branch (`γ ≤ 2/3`), printed under the `ρ₁ⁿ(t)` label.
    Mems,
    /// `c = 1/2`, `s = 1/8`.
    RhoM1,
    /// `c = 1/2`, `s = 1/2`.
    RhoM2,
    /// `c = 1/2`, `s = 7/10`.
    RhoM3,
}

impl PaperVariant {
    pub fn of(state: &StateSpec) -> Result<Self> {
        const TOL: f64 = 1e-12;
        match *state {
            StateSpec::Mems { gamma } if gamma <= 2.0 / 3.0 => Ok(PaperVariant::Mems),
            StateSpec::Mems { .. } => Err(Error::UnsupportedFamily {
                family: Family::Mems,
                reason: "printed dynamics exist only for the γ ≤ 2/3 branch",
            }),
            StateSpec::RhoM { c, s, theta, .. } if (c - 0.5).abs() < TOL && theta.abs() < TOL => {
                if (s - 0.125).abs() < TOL {
                    Ok(PaperVariant::RhoM1)
                } else if (s - 0.5).abs() < TOL {
                    Ok(PaperVariant::RhoM2)
                } else if (s - 0.7).abs() < TOL {
                    Ok(PaperVariant::RhoM3)
                } else {
                    Err(Error::UnsupportedFamily {
                        family: Family::RhoM,
                        reason: "printed dynamics exist only for s ∈ {1/8, 1/2, 7/10}",
                    })
                }
            }
            StateSpec::RhoM { .. } => Err(Error::UnsupportedFamily {
                family: Family::RhoM,
                reason: "printed dynamics exist only for c = 1/2, θ = 0",
            }),
            other => Err(Error::UnsupportedFamily {
                family: other.family(),
                reason: "has no printed evolved matrix",
            }),
        }
    }
}

fn phi_of(state: &StateSpec) -> f64 {
    match *state {
        StateSpec::RhoM { phi, .. } => phi,
        _ => 0.0,
    }
}

/// The printed evolved matrix, tagged as-printed with its diagnostics.
pub fn paper_evolved_state(
    state: &StateSpec,
    spec: &HamiltonianSpec,
    t: f64,
) -> Result<DensityMatrix> {
    let variant = PaperVariant::of(state)?;
    let jt = spec.j * t;
    let (sin2, cos2) = (2.0 * jt).sin_cos();
    let phi = phi_of(state);
    let (sp, cp) = phi.sin_cos();
    let re = |x: f64| C64::new(x, 0.0);

    let m = match variant {
        PaperVariant::Mems => {
            let gamma = match *state {
                StateSpec::Mems { gamma } => gamma,
                _ => unreachable!(),
            };
            let (s, c) = jt.sin_cos();
            x_state(
                [1.0 / 3.0, c * c / 3.0, s * s / 3.0, 1.0 / 3.0],
                C64::from_polar(gamma / 2.0, -4.0 * spec.b * t),
                C64::new(0.0, sin2 / 6.0),
            )
        }
        PaperVariant::RhoM1 => {
            let x = 129f64.sqrt() * cos2 * cp;
            let y = 43f64.sqrt() * sp;
            x_state(
                [0.0, (x + y + 8.0) / 24.0, (-x + y + 8.0) / 24.0, (4.0 - y) / 12.0],
                re(0.0),
                C64::new(6.0, x) / 24.0,
            )
        }
        PaperVariant::RhoM2 => {
            let a = 3f64.sqrt() / 6.0 * cos2 * cp + sp;
            // the coherence term is read as the single product (√3 i/6)·cosφ·sin(2Jt)
            let b = C64::new(0.0, 3f64.sqrt() / 6.0 * cp * sin2);
            x_state([0.0, 1.0 / 3.0 + a, 1.0 / 3.0 - a, 0.0], re(0.0), re(0.25) + b)
        }
        PaperVariant::RhoM3 => {
            let g = 30f64.sqrt() / 60.0 * cos2 * cp + 10f64.sqrt() / 60.0 * sp;
            let h = C64::new(0.0, cp * sin2 / (2.0 * 30f64.sqrt()));
            x_state([0.0, 1.0 / 3.0 + g, 1.0 / 3.0 - g, 0.0], re(0.0), re(0.25) + h)
        }
    };
    Ok(DensityMatrix::as_printed(m))
}

/// The printed linear-entropy curves, evaluated as written.
pub fn paper_linear_entropy(state: &StateSpec, spec: &HamiltonianSpec, t: f64) -> Result<f64> {
    let variant = PaperVariant::of(state)?;
    let jt = spec.j * t;
    let (sp, cp) = phi_of(state).sin_cos();
    let c2 = (2.0 * jt).cos().powi(2) * cp * cp;
    Ok(match variant {
        PaperVariant::Mems => (25.0 - (4.0 * jt).cos()) / 36.0,
        PaperVariant::RhoM1 => (-43.0 * c2 - 43.0 * sp * sp + 64.0) / 96.0,
        PaperVariant::RhoM2 => (-c2 - sp * sp + 4.0) / 6.0,
        // unbalanced in print; read as (−cos²(2Jt)cos²φ − sin²φ + 40)/60
        PaperVariant::RhoM3 => (-c2 - sp * sp + 40.0) / 60.0,
    })
}

/// `samples` uniform points on `[0, t_max]`, endpoints included.
pub fn uniform_grid(t_max: f64, samples: usize) -> Result<Vec<f64>> {
    if samples < 2 {
        return Err(Error::InvalidGrid("need at least two samples"));
    }
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(Error::InvalidGrid("t_max must be finite and positive"));
    }
    let n = (samples - 1) as f64;
    Ok((0..samples).map(|i| t_max * i as f64 / n).collect())
}

/// End of the default time window: `Jt` from 0 to 2π.
pub fn default_t_max(spec: &HamiltonianSpec) -> f64 {
    if spec.j == 0.0 {
        TAU
    } else {
        TAU / spec.j.abs()
    }
}

pub const DEFAULT_SAMPLES: usize = 400;
