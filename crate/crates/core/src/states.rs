//! State families: maximally entangled mixed states (MEMS), Werner states,
//! the one-parameter `ρⁿ` family and its two-parameter extension `ρᵐ`.
//!
//! All of them except Werner have an empty `|00⟩` population and only one
//! coherence sector, which is what makes their dynamics and correlation
//! measures tractable in closed form.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{check_range, Error, Result};
use crate::linalg::{kron, pauli, ComplexMat4};

pub const TRACE_TOL: f64 = 1e-10;
/// Smallest eigenvalue still accepted as positive semidefinite.
pub const PSD_TOL: f64 = -1e-9;

/// Numbers describing how far a matrix is from being a density matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub trace: f64,
    pub hermiticity_deviation: f64,
    pub min_eigenvalue: f64,
}

impl Diagnostics {
    pub fn of(m: &ComplexMat4) -> Self {
        Self {
            trace: m.trace().re,
            hermiticity_deviation: m.hermiticity_deviation(),
            min_eigenvalue: m.hermitian_part_eig().min(),
        }
    }

    pub fn trace_deviation(&self) -> f64 {
        (self.trace - 1.0).abs()
    }

    /// First failed invariant, checked in the order Hermitian, trace, PSD.
    pub fn check(&self) -> Result<()> {
        if self.hermiticity_deviation > crate::linalg::HERMITIAN_TOL {
            Err(Error::NotHermitian { deviation: self.hermiticity_deviation })
        } else if self.trace_deviation() > TRACE_TOL {
            Err(Error::TraceNotOne { trace: self.trace })
        } else if self.min_eigenvalue < PSD_TOL {
            Err(Error::NotPsd { min_eigenvalue: self.min_eigenvalue })
        } else {
            Ok(())
        }
    }

    pub fn is_physical(&self) -> bool {
        self.check().is_ok()
    }
}

/// Where a [`DensityMatrix`] came from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Provenance {
    /// Passed every invariant on construction.
    Validated,
    /// Built verbatim from a printed formula; invariants were not enforced.
    AsPrinted(Diagnostics),
}

/// A two-qubit state. Unless tagged [`Provenance::AsPrinted`] it is Hermitian,
/// has unit trace, and is positive semidefinite within tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityMatrix {
    m: ComplexMat4,
    provenance: Provenance,
}

impl DensityMatrix {
    /// Wraps `m` as a tagged, unvalidated state.
    pub fn as_printed(m: ComplexMat4) -> Self {
        Self { m, provenance: Provenance::AsPrinted(Diagnostics::of(&m)) }
    }

    pub fn matrix(&self) -> &ComplexMat4 {
        &self.m
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// False only for as-printed matrices that fail an invariant.
    pub fn is_physical(&self) -> bool {
        match self.provenance {
            Provenance::Validated => true,
            Provenance::AsPrinted(d) => d.is_physical(),
        }
    }

    pub fn diagnostics(&self) -> Diagnostics {
        match self.provenance {
            Provenance::AsPrinted(d) => d,
            Provenance::Validated => Diagnostics::of(&self.m),
        }
    }

    /// Entry `ρ_{ij}` with one-based indices, as states are usually written.
    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.m[(i - 1, j - 1)]
    }

    pub fn purity(&self) -> f64 {
        self.m.purity()
    }

    pub fn into_matrix(self) -> ComplexMat4 {
        self.m
    }

    /// Re-applies the tag of `self` to a matrix derived from it (for example
    /// by unitary conjugation), revalidating validated states.
    pub(crate) fn derive(&self, m: ComplexMat4) -> Result<Self> {
        match self.provenance {
            Provenance::Validated => validate_state(m),
            Provenance::AsPrinted(_) => Ok(Self::as_printed(m)),
        }
    }
}

impl TryFrom<ComplexMat4> for DensityMatrix {
    type Error = Error;
    fn try_from(m: ComplexMat4) -> Result<Self> {
        validate_state(m)
    }
}

/// Checks every density-matrix invariant and wraps `m` if they all hold.
pub fn validate_state(m: ComplexMat4) -> Result<DensityMatrix> {
    Diagnostics::of(&m).check()?;
    Ok(DensityMatrix { m, provenance: Provenance::Validated })
}

/// State family tags, named as on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Mems,
    Werner,
    RhoN,
    RhoM,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Mems => "mems",
            Family::Werner => "werner",
            Family::RhoN => "rho-n",
            Family::RhoM => "rho-m",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "mems" => Ok(Family::Mems),
            "werner" => Ok(Family::Werner),
            "rho-n" => Ok(Family::RhoN),
            "rho-m" => Ok(Family::RhoM),
            other => Err(format!("unknown family `{other}` (mems, werner, rho-n, rho-m)")),
        }
    }
}

/// A family together with exactly the parameters it needs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum StateSpec {
    Mems { gamma: f64 },
    Werner { gamma: f64 },
    RhoN { c: f64, theta: f64 },
    RhoM { c: f64, s: f64, phi: f64, theta: f64 },
}

impl StateSpec {
    pub fn family(&self) -> Family {
        match self {
            StateSpec::Mems { .. } => Family::Mems,
            StateSpec::Werner { .. } => Family::Werner,
            StateSpec::RhoN { .. } => Family::RhoN,
            StateSpec::RhoM { .. } => Family::RhoM,
        }
    }

    pub fn build(&self) -> Result<DensityMatrix> {
        match *self {
            StateSpec::Mems { gamma } => make_mems(gamma),
            StateSpec::Werner { gamma } => make_werner(gamma),
            StateSpec::RhoN { c, theta } => make_rho_n(c, theta),
            StateSpec::RhoM { c, s, phi, theta } => make_rho_m(c, s, phi, theta),
        }
    }

    /// The state exactly as printed, tagged and unvalidated. Only the lower
    /// MEMS branch differs from [`StateSpec::build`]; parameter ranges are
    /// still enforced.
    pub fn build_as_printed(&self) -> Result<DensityMatrix> {
        match *self {
            StateSpec::Mems { gamma } => make_mems_as_printed(gamma),
            StateSpec::RhoM { c, s, phi, theta } => {
                Ok(DensityMatrix::as_printed(rho_m_matrix(c, s, phi, theta)?))
            }
            _ => Ok(DensityMatrix::as_printed(self.build()?.into_matrix())),
        }
    }
}

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Matrix with the given diagonal and the two X-state coherences
/// `ρ14` and `ρ23` (one-based), Hermitian by construction.
pub fn x_state(diag: [f64; 4], rho14: C64, rho23: C64) -> ComplexMat4 {
    let mut m = ComplexMat4::from_real_diag(diag);
    m[(0, 3)] = rho14;
    m[(3, 0)] = rho14.conj();
    m[(1, 2)] = rho23;
    m[(2, 1)] = rho23.conj();
    m
}

fn mems_upper(gamma: f64) -> ComplexMat4 {
    let h = gamma / 2.0;
    x_state([h, 1.0 - gamma, 0.0, h], real(h), real(0.0))
}

fn mems_lower(gamma: f64) -> ComplexMat4 {
    let third = 1.0 / 3.0;
    x_state([third, third, 0.0, third], real(gamma / 2.0), real(0.0))
}

/// MEMS ansatz. For `γ ≥ 2/3` the upper branch
/// `diag(γ/2, 1−γ, 0, γ/2)`; below it `diag(1/3, 1/3, 0, 1/3)`; both with
/// corners `ρ14 = γ/2`.
pub fn make_mems(gamma: f64) -> Result<DensityMatrix> {
    check_range("gamma", gamma, "[0, 1]", (0.0..=1.0).contains(&gamma))?;
    let m = if gamma >= 2.0 / 3.0 { mems_upper(gamma) } else { mems_lower(gamma) };
    validate_state(m)
}

/// The lower MEMS branch with `ρ44 = γ/2`, as printed; its trace is
/// `2/3 + γ/2`.
pub fn make_mems_as_printed(gamma: f64) -> Result<DensityMatrix> {
    check_range("gamma", gamma, "[0, 1]", (0.0..=1.0).contains(&gamma))?;
    let m = if gamma >= 2.0 / 3.0 {
        mems_upper(gamma)
    } else {
        let third = 1.0 / 3.0;
        x_state([third, third, 0.0, gamma / 2.0], real(gamma / 2.0), real(0.0))
    };
    Ok(DensityMatrix::as_printed(m))
}

/// `|φ+⟩⟨φ+|` with `|φ+⟩ = (|00⟩ + |11⟩)/√2`.
pub fn bell_phi_plus() -> ComplexMat4 {
    x_state([0.5, 0.0, 0.0, 0.5], real(0.5), real(0.0))
}

/// Werner state `γ|φ+⟩⟨φ+| + (1−γ)/4·I`.
pub fn make_werner(gamma: f64) -> Result<DensityMatrix> {
    check_range("gamma", gamma, "[0, 1]", (0.0..=1.0).contains(&gamma))?;
    let m = bell_phi_plus().scale_re(gamma) + ComplexMat4::identity().scale_re((1.0 - gamma) / 4.0);
    validate_state(m)
}

/// One-parameter family with concurrence `c`: the `1/3` fragment below
/// `c = 2/3`, the `c/2` fragment above. Inner coherence `ρ23 = (c/2)e^{iθ}`.
pub fn make_rho_n(c: f64, theta: f64) -> Result<DensityMatrix> {
    check_range("c", c, "(0, 1)", c > 0.0 && c < 1.0)?;
    check_range("theta", theta, "finite", true)?;
    let coherence = C64::from_polar(c / 2.0, theta);
    let diag = if c < 2.0 / 3.0 {
        [0.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]
    } else {
        [0.0, c / 2.0, c / 2.0, 1.0 - c]
    };
    validate_state(x_state(diag, real(0.0), coherence))
}

/// `D = 1/9 − c²/12 − s/8`. The matrix entries of `ρᵐ` use `√D`.
pub fn d_parameter(c: f64, s: f64) -> f64 {
    -c * c / 12.0 - s / 8.0 + 1.0 / 9.0
}

/// Largest linear entropy reachable at concurrence `c`.
pub fn s_max(c: f64) -> Result<f64> {
    check_range("c", c, "[0, 1]", (0.0..=1.0).contains(&c))?;
    Ok(if c < 2.0 / 3.0 {
        8.0 / 9.0 - 2.0 / 3.0 * c * c
    } else {
        8.0 / 3.0 * c * (1.0 - c)
    })
}

/// The `ρᵐ` matrix without the positivity check. Fails only on parameter
/// ranges and on `D < 0`.
pub fn rho_m_matrix(c: f64, s: f64, phi: f64, theta: f64) -> Result<ComplexMat4> {
    check_range("c", c, "(0, 1/√2]", c > 0.0 && c <= FRAC_1_SQRT_2 + 1e-15)?;
    check_range("s", s, "[0, 1]", (0.0..=1.0).contains(&s))?;
    check_range("phi", phi, "finite", true)?;
    check_range("theta", theta, "finite", true)?;
    let d = d_parameter(c, s);
    if d < 0.0 {
        return Err(Error::NegativeD { d });
    }
    let root_d = d.sqrt();
    let (sin, cos) = phi.sin_cos();
    let sqrt3 = 3f64.sqrt();
    let diag = [
        0.0,
        1.0 / 3.0 + root_d * (sin + sqrt3 * cos),
        1.0 / 3.0 + root_d * (sin - sqrt3 * cos),
        1.0 / 3.0 - 2.0 * root_d * sin,
    ];
    Ok(x_state(diag, real(0.0), C64::from_polar(c / 2.0, theta)))
}

/// Two-parameter family at concurrence `c` and linear entropy `s`.
/// Only a window of `φ` gives a positive semidefinite matrix; outside it
/// this returns [`Error::Unphysical`].
pub fn make_rho_m(c: f64, s: f64, phi: f64, theta: f64) -> Result<DensityMatrix> {
    let m = rho_m_matrix(c, s, phi, theta)?;
    validate_state(m).map_err(|e| match e {
        Error::NotPsd { min_eigenvalue } => Error::Unphysical { min_eigenvalue },
        other => other,
    })
}

/// Permutation `|i j⟩ → |(1−i) j⟩`, i.e. `σx ⊗ I`. Maps the upper MEMS
/// branch onto the `c/2` fragment of `ρⁿ` and the lower one onto the `1/3`
/// fragment.
pub fn swap_unitary() -> ComplexMat4 {
    kron(&pauli::x(), &pauli::id())
}
