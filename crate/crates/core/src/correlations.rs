//! Scalar correlation measures for two-qubit states.
//!
//! Entropies are in bits. Discord is computed with projective measurements on
//! one qubit (A by default) and minimized numerically over the Bloch sphere.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    herm_eigenvalues_2x2, kron, partial_trace, pauli, CMat, ComplexMat2, ComplexMat4, Subsystem,
    ZERO,
};
use crate::states::{DensityMatrix, PSD_TOL};

/// Tolerance on entries outside the X pattern.
pub const X_FORM_TOL: f64 = 1e-12;

/// Eigenvalues of `ρ` or of `√ρ·ρ̃·√ρ` below this are rounding noise and are
/// treated as exact zeros before square roots are taken.
const EIG_FLOOR: f64 = 1e-14;

/// Outcome probabilities below this contribute nothing to the conditional entropy.
const OUTCOME_FLOOR: f64 = 1e-14;

/// Measurement direction on the Bloch sphere.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    nx: f64,
    ny: f64,
    nz: f64,
}

impl BlochVector {
    pub const X: BlochVector = BlochVector { nx: 1.0, ny: 0.0, nz: 0.0 };
    pub const Y: BlochVector = BlochVector { nx: 0.0, ny: 1.0, nz: 0.0 };
    pub const Z: BlochVector = BlochVector { nx: 0.0, ny: 0.0, nz: 1.0 };

    /// Normalizes `(x, y, z)`; `None` for the zero vector or non-finite input.
    pub fn new(x: f64, y: f64, z: f64) -> Option<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        (norm.is_finite() && norm > 0.0).then(|| Self { nx: x / norm, ny: y / norm, nz: z / norm })
    }

    /// Polar angle `theta` from +z, azimuth `phi` from +x.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self { nx: st * cp, ny: st * sp, nz: ct }
    }

    pub fn components(&self) -> [f64; 3] {
        [self.nx, self.ny, self.nz]
    }

    /// Projector `(I + s·n·σ)/2` for `sign = ±1`.
    pub fn projector(&self, sign: f64) -> ComplexMat2 {
        let half = 0.5 * sign;
        CMat::from_rows_unchecked([
            [C64::new(0.5 + half * self.nz, 0.0), C64::new(half * self.nx, -half * self.ny)],
            [C64::new(half * self.nx, half * self.ny), C64::new(0.5 - half * self.nz, 0.0)],
        ])
    }
}

fn shannon_bits(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        -p * p.log2()
    }
}

/// Von Neumann entropy in bits of a Hermitian PSD matrix (2×2 or 4×4).
/// Eigenvalues are clamped to `[0, 1]` before the logarithm.
pub fn vn_entropy<const N: usize>(m: &CMat<N>) -> Result<f64> {
    let values = m.herm_eigenvalues()?;
    if values[0] < PSD_TOL {
        return Err(Error::NotPsd { min_eigenvalue: values[0] });
    }
    Ok(values.iter().map(|l| shannon_bits(l.clamp(0.0, 1.0))).sum())
}

fn entropy_2x2_fast(m: &ComplexMat2) -> f64 {
    herm_eigenvalues_2x2(m).iter().map(|l| shannon_bits(l.clamp(0.0, 1.0))).sum()
}

/// `(4/3)(1 − Tr ρ²)`.
pub fn linear_entropy(rho: &DensityMatrix) -> f64 {
    linear_entropy_of(rho.matrix())
}

pub(crate) fn linear_entropy_of(m: &ComplexMat4) -> f64 {
    4.0 / 3.0 * (1.0 - m.purity())
}

/// `(σy⊗σy) ρ* (σy⊗σy)`.
pub fn spin_flip(rho: &DensityMatrix) -> ComplexMat4 {
    spin_flip_of(rho.matrix())
}

fn spin_flip_of(m: &ComplexMat4) -> ComplexMat4 {
    let yy = kron(&pauli::y(), &pauli::y());
    yy * m.conj() * yy
}

fn floored_sqrt_matrix(m: &ComplexMat4) -> Result<ComplexMat4> {
    let eig = m.herm_eig()?;
    if eig.min() < PSD_TOL {
        return Err(Error::NotPsd { min_eigenvalue: eig.min() });
    }
    Ok(eig.map_spectrum(|l| C64::new(if l < EIG_FLOOR { 0.0 } else { l.sqrt() }, 0.0)))
}

/// Wootters concurrence.
///
/// Validated states go through the Hermitian form `√ρ·ρ̃·√ρ`, which has the
/// same spectrum as `ρ·ρ̃`. As-printed states that fail an invariant are only
/// accepted in X form and use [`concurrence_x`].
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if !rho.is_physical() {
        return concurrence_x(rho);
    }
    wootters(rho.matrix())
}

fn wootters(m: &ComplexMat4) -> Result<f64> {
    let root = floored_sqrt_matrix(m)?;
    let r = root * spin_flip_of(m) * root;
    let mu = r.hermitian_part_eig().values;
    // ascending, so the largest is last
    let l: Vec<f64> = mu.iter().map(|&x| if x < EIG_FLOOR { 0.0 } else { x.sqrt() }).collect();
    Ok((l[3] - l[2] - l[1] - l[0]).max(0.0))
}

fn check_x_form(m: &ComplexMat4) -> Result<()> {
    for i in 0..4 {
        for j in 0..4 {
            let modulus = m[(i, j)].norm();
            if i != j && i + j != 3 && modulus > X_FORM_TOL {
                return Err(Error::NotXForm { row: i + 1, col: j + 1, modulus });
            }
        }
    }
    Ok(())
}

/// X-state closed form `2·max(0, |ρ14| − √(ρ22ρ33), |ρ23| − √(ρ11ρ44))`.
///
/// Negative population products (only possible for unphysical input) are
/// taken as zero under the square root.
pub fn concurrence_x(rho: &DensityMatrix) -> Result<f64> {
    concurrence_x_of(rho.matrix())
}

pub(crate) fn concurrence_x_of(m: &ComplexMat4) -> Result<f64> {
    check_x_form(m)?;
    let d = m.diag_re();
    let outer = m[(0, 3)].norm() - (d[1] * d[2]).max(0.0).sqrt();
    let inner = m[(1, 2)].norm() - (d[0] * d[3]).max(0.0).sqrt();
    Ok(2.0 * outer.max(inner).max(0.0))
}

/// Unnormalized conditional state of the unmeasured qubit B,
/// `Tr_A[(P⊗I)ρ]`, for a projector `P` on A.
fn conditional_block(m: &ComplexMat4, p: &ComplexMat2) -> ComplexMat2 {
    let mut out = ComplexMat2::zeros();
    for k in 0..2 {
        for l in 0..2 {
            let mut acc = ZERO;
            for i in 0..2 {
                for j in 0..2 {
                    acc += p[(i, j)] * m[(2 * j + k, 2 * i + l)];
                }
            }
            out[(k, l)] = acc;
        }
    }
    out
}

fn conditional_entropy_of(m: &ComplexMat4, axis: &BlochVector) -> f64 {
    let mut total = 0.0;
    for sign in [1.0, -1.0] {
        let block = conditional_block(m, &axis.projector(sign));
        let p = block.trace().re;
        if p < OUTCOME_FLOOR {
            continue;
        }
        total += p * entropy_2x2_fast(&block.scale_re(1.0 / p));
    }
    total
}

/// `Σ± p± S(ρ_B|±)` for the projective measurement along `axis` on qubit A.
pub fn conditional_entropy(rho: &DensityMatrix, axis: &BlochVector) -> Result<f64> {
    require_physical(rho)?;
    Ok(conditional_entropy_of(rho.matrix(), axis))
}

fn require_physical(rho: &DensityMatrix) -> Result<()> {
    rho.diagnostics().check()
}

/// Options for [`quantum_discord_with`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscordOptions {
    /// The qubit that is measured.
    pub measured: Subsystem,
    /// Evaluate as-printed matrices that fail validation. Entropies then see
    /// clamped eigenvalues and the number has no operational meaning.
    pub allow_unphysical: bool,
}

impl Default for DiscordOptions {
    fn default() -> Self {
        Self { measured: Subsystem::A, allow_unphysical: false }
    }
}

/// Discord optimizer settings. The defaults are the documented contract.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiscordSearch {
    pub grid_theta: usize,
    pub grid_phi: usize,
    pub max_iterations: usize,
    pub tolerance: f64,
}

impl Default for DiscordSearch {
    fn default() -> Self {
        Self { grid_theta: 64, grid_phi: 128, max_iterations: 200, tolerance: 1e-10 }
    }
}

/// Result of minimizing the conditional entropy over measurement axes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Minimum {
    pub axis: BlochVector,
    pub conditional_entropy: f64,
    pub iterations: usize,
}

fn qubit_swap() -> ComplexMat4 {
    let mut s = ComplexMat4::zeros();
    for (i, j) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
        s[(i, j)] = C64::new(1.0, 0.0);
    }
    s
}

/// Quantum discord in bits with measurement on A.
pub fn quantum_discord(rho: &DensityMatrix) -> Result<f64> {
    quantum_discord_with(rho, &DiscordOptions::default())
}

pub fn quantum_discord_with(rho: &DensityMatrix, opts: &DiscordOptions) -> Result<f64> {
    if !opts.allow_unphysical {
        require_physical(rho)?;
    }
    let m = match opts.measured {
        Subsystem::A => *rho.matrix(),
        Subsystem::B => rho.matrix().conjugate_by(&qubit_swap()),
    };
    let s_measured = clamped_entropy(&partial_trace(&m, Subsystem::A).hermitian_part_eig().values);
    let s_joint = clamped_entropy(&m.hermitian_part_eig().values);
    let min = minimize_conditional_entropy(&m, &DiscordSearch::default())?;
    let q = s_measured - s_joint + min.conditional_entropy;
    Ok(if q < 0.0 && q >= -1e-9 { 0.0 } else { q })
}

fn clamped_entropy(values: &[f64]) -> f64 {
    values.iter().map(|l| shannon_bits(l.clamp(0.0, 1.0))).sum()
}

/// Minimizes `Σ± p± S(ρ_B|±)` over axes on A: the three coordinate axes, a
/// `grid_theta × grid_phi` angular grid, then Nelder–Mead from the best grid
/// point.
pub fn minimize_conditional_entropy(m: &ComplexMat4, search: &DiscordSearch) -> Result<Minimum> {
    let f = |theta: f64, phi: f64| conditional_entropy_of(m, &BlochVector::from_angles(theta, phi));

    let mut best = Minimum { axis: BlochVector::Z, conditional_entropy: f64::INFINITY, iterations: 0 };
    for axis in [BlochVector::X, BlochVector::Y, BlochVector::Z] {
        let v = conditional_entropy_of(m, &axis);
        if v < best.conditional_entropy {
            best = Minimum { axis, conditional_entropy: v, iterations: 0 };
        }
    }

    let mut start = (0.0, 0.0);
    let mut start_value = f64::INFINITY;
    let nt = search.grid_theta.max(2);
    for i in 0..nt {
        let theta = PI * i as f64 / (nt - 1) as f64;
        for j in 0..search.grid_phi {
            let phi = TAU * j as f64 / search.grid_phi as f64;
            let v = f(theta, phi);
            if v < start_value {
                start_value = v;
                start = (theta, phi);
            }
        }
    }

    let step = PI / nt as f64;
    let nm = nelder_mead(
        |x| f(x[0], x[1]),
        [start.0, start.1],
        step,
        search.tolerance,
        search.max_iterations,
    );
    if !nm.converged {
        return Err(Error::OptimizerFailure { iterations: nm.iterations, spread: nm.spread });
    }
    if start_value < best.conditional_entropy {
        best = Minimum {
            axis: BlochVector::from_angles(start.0, start.1),
            conditional_entropy: start_value,
            iterations: 0,
        };
    }
    if nm.value < best.conditional_entropy {
        best = Minimum {
            axis: BlochVector::from_angles(nm.point[0], nm.point[1]),
            conditional_entropy: nm.value,
            iterations: nm.iterations,
        };
    } else {
        best.iterations = nm.iterations;
    }
    Ok(best)
}

struct NelderMead {
    point: [f64; 2],
    value: f64,
    iterations: usize,
    spread: f64,
    converged: bool,
}

fn nelder_mead(
    f: impl Fn([f64; 2]) -> f64,
    x0: [f64; 2],
    step: f64,
    tol: f64,
    max_iter: usize,
) -> NelderMead {
    let mut simplex = [x0, [x0[0] + step, x0[1]], [x0[0], x0[1] + step]];
    let mut values = simplex.map(&f);
    let lerp = |a: [f64; 2], b: [f64; 2], t: f64| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];

    let mut iterations = 0;
    loop {
        // order: best, middle, worst
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = idx.map(|k| simplex[k]);
        values = idx.map(|k| values[k]);

        let spread = values[2] - values[0];
        if spread < tol {
            return NelderMead { point: simplex[0], value: values[0], iterations, spread, converged: true };
        }
        if iterations >= max_iter {
            return NelderMead { point: simplex[0], value: values[0], iterations, spread, converged: false };
        }
        iterations += 1;

        let centroid = lerp(simplex[0], simplex[1], 0.5);
        let reflected = lerp(centroid, simplex[2], -1.0);
        let fr = f(reflected);
        if fr < values[0] {
            let expanded = lerp(centroid, simplex[2], -2.0);
            let fe = f(expanded);
            if fe < fr {
                simplex[2] = expanded;
                values[2] = fe;
            } else {
                simplex[2] = reflected;
                values[2] = fr;
            }
        } else if fr < values[1] {
            simplex[2] = reflected;
            values[2] = fr;
        } else {
            let (contracted, fc) = if fr < values[2] {
                let c = lerp(centroid, reflected, 0.5);
                (c, f(c))
            } else {
                let c = lerp(centroid, simplex[2], 0.5);
                (c, f(c))
            };
            if fc < values[2].min(fr) {
                simplex[2] = contracted;
                values[2] = fc;
            } else {
                for k in 1..3 {
                    simplex[k] = lerp(simplex[0], simplex[k], 0.5);
                    values[k] = f(simplex[k]);
                }
            }
        }
    }
}

/// Spin correlation matrix `T_ij = Tr(ρ σi⊗σj)`.
pub fn correlation_tensor(m: &ComplexMat4) -> [[f64; 3]; 3] {
    let paulis = pauli::xyz();
    let mut t = [[0.0; 3]; 3];
    for (i, si) in paulis.iter().enumerate() {
        for (j, sj) in paulis.iter().enumerate() {
            t[i][j] = (*m * kron(si, sj)).trace().re;
        }
    }
    t
}

/// Horodecki quantity: sum of the two largest eigenvalues of `TᵀT`.
/// The Bell-CHSH inequality is violated iff it exceeds 1.
///
/// Defined for any matrix, so it is also evaluated on as-printed states.
pub fn horodecki_m(rho: &DensityMatrix) -> f64 {
    horodecki_m_of(rho.matrix())
}

pub(crate) fn horodecki_m_of(m: &ComplexMat4) -> f64 {
    let t = correlation_tensor(m);
    let mut tt = CMat::<3>::zeros();
    for i in 0..3 {
        for j in 0..3 {
            let v: f64 = (0..3).map(|k| t[k][i] * t[k][j]).sum();
            tt[(i, j)] = C64::new(v, 0.0);
        }
    }
    let u = tt.hermitian_part_eig().values;
    u[1] + u[2]
}

/// `(1 − 2ρ44)²`.
pub fn lambda_param(rho: &DensityMatrix) -> f64 {
    lambda_of(rho.matrix())
}

fn lambda_of(m: &ComplexMat4) -> f64 {
    (1.0 - 2.0 * m[(3, 3)].re).powi(2)
}

/// Closed form `C² + max(C², λ)` for X states with a single coherence sector.
/// Coincides with [`horodecki_m`] when `ρ11 = 0` and only `ρ23` is nonzero.
pub fn x_state_m(rho: &DensityMatrix) -> Result<f64> {
    let m = rho.matrix();
    check_x_form(m)?;
    let (outer, inner) = (m[(0, 3)].norm(), m[(1, 2)].norm());
    if outer > X_FORM_TOL && inner > X_FORM_TOL {
        return Err(Error::NotXForm { row: 1, col: 4, modulus: outer });
    }
    let c = concurrence_x_of(m)?;
    let c2 = c * c;
    Ok(c2 + c2.max(lambda_of(m)))
}

/// All correlation measures for one state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub concurrence: f64,
    /// NaN when the state is not physical and discord was not forced.
    pub discord: f64,
    pub linear_entropy: f64,
    pub purity: f64,
    pub horodecki_m: f64,
    pub lambda: f64,
    pub bell_violated: bool,
    pub min_eigenvalue: f64,
}

/// Options for [`report_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportOptions {
    pub discord: DiscordOptions,
}

pub fn report(rho: &DensityMatrix) -> Result<CorrelationReport> {
    report_with(rho, &ReportOptions::default())
}

/// Full report. For as-printed states that fail validation the discord is
/// NaN unless `opts.discord.allow_unphysical` is set; concurrence then uses
/// the X-state formula.
pub fn report_with(rho: &DensityMatrix, opts: &ReportOptions) -> Result<CorrelationReport> {
    let m = rho.matrix();
    let physical = rho.is_physical();
    let discord = if physical || opts.discord.allow_unphysical {
        quantum_discord_with(rho, &opts.discord)?
    } else {
        f64::NAN
    };
    let purity = m.purity();
    let horodecki = horodecki_m_of(m);
    Ok(CorrelationReport {
        concurrence: concurrence(rho)?,
        discord,
        linear_entropy: 4.0 / 3.0 * (1.0 - purity),
        purity,
        horodecki_m: horodecki,
        lambda: lambda_of(m),
        bell_violated: horodecki > 1.0,
        min_eigenvalue: rho.diagnostics().min_eigenvalue,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{
        bell_phi_plus, make_mems, make_rho_m, make_rho_n, make_werner, validate_state, x_state,
    };

    fn state(m: ComplexMat4) -> DensityMatrix {
        validate_state(m).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn entropies() {
        assert!(vn_entropy(&bell_phi_plus()).unwrap().abs() < 1e-12);
        assert!(close(vn_entropy(&ComplexMat4::identity().scale_re(0.25)).unwrap(), 2.0, 1e-14));
        let d = ComplexMat4::from_real_diag([0.5, 0.5, 0.0, 0.0]);
        assert!(close(vn_entropy(&d).unwrap(), 1.0, 1e-14));
        let neg = ComplexMat2::from_real_diag([1.1, -0.1]);
        assert!(matches!(vn_entropy(&neg), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn linear_entropy_limits() {
        assert!(close(linear_entropy(&state(ComplexMat4::identity().scale_re(0.25))), 1.0, 1e-15));
        assert!(linear_entropy(&state(bell_phi_plus())).abs() < 1e-15);
        for phi in [0.55, 0.6, 0.65] {
            let s = make_rho_m(0.5, 0.125, phi, 0.0).unwrap();
            assert!(close(linear_entropy(&s), 0.125, 1e-12));
        }
    }

    #[test]
    fn spin_flip_examples() {
        let bell = state(bell_phi_plus());
        assert!(spin_flip(&bell).max_abs_diff(&bell_phi_plus()) < 1e-16);
        let mixed = ComplexMat4::identity().scale_re(0.25);
        assert!(spin_flip(&state(mixed)).max_abs_diff(&mixed) < 1e-16);
        let e00 = ComplexMat4::from_real_diag([1.0, 0.0, 0.0, 0.0]);
        let flipped = spin_flip(&state(e00));
        assert!(flipped.max_abs_diff(&ComplexMat4::from_real_diag([0.0, 0.0, 0.0, 1.0])) < 1e-16);
    }

    #[test]
    fn concurrence_examples() {
        assert!(close(concurrence(&state(bell_phi_plus())).unwrap(), 1.0, 1e-12));
        assert!(close(concurrence(&make_werner(0.8).unwrap()).unwrap(), 0.7, 1e-10));
        assert!(close(concurrence(&make_rho_n(0.5, 1.2).unwrap()).unwrap(), 0.5, 1e-10));
    }

    #[test]
    fn concurrence_x_examples_and_errors() {
        let mixed = state(ComplexMat4::identity().scale_re(0.25));
        assert_eq!(concurrence_x(&mixed).unwrap(), 0.0);
        let mut m = ComplexMat4::identity().scale_re(0.25);
        m[(0, 1)] = C64::new(0.01, 0.0);
        m[(1, 0)] = C64::new(0.01, 0.0);
        assert!(matches!(concurrence_x(&state(m)), Err(Error::NotXForm { row: 1, col: 2, .. })));
    }

    #[test]
    fn conditional_entropy_examples() {
        let bell = state(bell_phi_plus());
        assert!(conditional_entropy(&bell, &BlochVector::Z).unwrap().abs() < 1e-14);

        let pa = ComplexMat2::from_real_diag([0.8, 0.2]);
        let mut pb = ComplexMat2::from_real_diag([0.6, 0.4]);
        pb[(0, 1)] = C64::new(0.1, 0.2);
        pb[(1, 0)] = C64::new(0.1, -0.2);
        let product = state(kron(&pa, &pb));
        let sb = vn_entropy(&pb).unwrap();
        for axis in [BlochVector::X, BlochVector::Z, BlochVector::new(1.0, -2.0, 0.5).unwrap()] {
            assert!(close(conditional_entropy(&product, &axis).unwrap(), sb, 1e-12));
        }

        let w = make_werner(0.5).unwrap();
        let z = conditional_entropy(&w, &BlochVector::Z).unwrap();
        let x = conditional_entropy(&w, &BlochVector::X).unwrap();
        assert!(close(z, x, 1e-12));
    }

    #[test]
    fn discord_examples() {
        assert!(close(quantum_discord(&state(bell_phi_plus())).unwrap(), 1.0, 1e-9));
        let diag = state(ComplexMat4::from_real_diag([0.1, 0.2, 0.3, 0.4]));
        assert!(quantum_discord(&diag).unwrap().abs() < 1e-8);
        let w = make_werner(1.0 / 3.0).unwrap();
        assert!(concurrence(&w).unwrap() < 1e-12);
        assert!(quantum_discord(&w).unwrap() > 0.05);
    }

    #[test]
    fn discord_refuses_unphysical_unless_forced() {
        let printed = crate::states::make_mems_as_printed(0.4).unwrap();
        assert!(matches!(quantum_discord(&printed), Err(Error::TraceNotOne { .. })));
        let forced = DiscordOptions { allow_unphysical: true, ..Default::default() };
        assert!(quantum_discord_with(&printed, &forced).unwrap().is_finite());
        let r = report(&printed).unwrap();
        assert!(r.discord.is_nan());
    }

    #[test]
    fn discord_measured_side_switch() {
        // product states have zero discord from either side
        let pa = ComplexMat2::from_real_diag([0.7, 0.3]);
        let pb = ComplexMat2::from_real_diag([0.1, 0.9]);
        let s = state(kron(&pa, &pb));
        let opts = DiscordOptions { measured: Subsystem::B, allow_unphysical: false };
        assert!(quantum_discord_with(&s, &opts).unwrap().abs() < 1e-8);
        let bell = state(bell_phi_plus());
        assert!(close(quantum_discord_with(&bell, &opts).unwrap(), 1.0, 1e-9));
    }

    #[test]
    fn horodecki_examples() {
        assert!(close(horodecki_m(&state(bell_phi_plus())), 2.0, 1e-12));
        assert!(horodecki_m(&state(ComplexMat4::identity().scale_re(0.25))).abs() < 1e-15);
        assert!(horodecki_m(&make_rho_m(0.5, 0.125, 0.6, 0.0).unwrap()) > 1.0);
    }

    #[test]
    fn lambda_examples() {
        let half = state(x_state([0.0, 0.25, 0.25, 0.5], ZERO, ZERO));
        assert!(lambda_param(&half).abs() < 1e-16);
        let empty = state(x_state([0.5, 0.25, 0.25, 0.0], ZERO, ZERO));
        assert!(close(lambda_param(&empty), 1.0, 1e-16));
        let s = make_rho_m(0.5, 0.125, 0.6, 0.0).unwrap();
        let want = (1.0 / 3.0 + 43f64.sqrt() / 6.0 * 0.6f64.sin()).powi(2);
        assert!(close(lambda_param(&s), want, 1e-14));
    }

    #[test]
    fn x_state_m_matches_horodecki_on_families() {
        for c in [0.2, 0.5, 0.7, 0.9] {
            let s = make_rho_n(c, 0.7).unwrap();
            assert!(close(x_state_m(&s).unwrap(), horodecki_m(&s), 1e-12));
        }
        for phi in [0.55, 0.6, 0.65] {
            let s = make_rho_m(0.5, 0.125, phi, 0.3).unwrap();
            assert!(close(x_state_m(&s).unwrap(), horodecki_m(&s), 1e-12));
        }
        let bell = state(bell_phi_plus());
        assert!(close(x_state_m(&bell).unwrap(), 2.0, 1e-12));
        let both = state(x_state([0.25; 4], C64::new(0.1, 0.0), C64::new(0.1, 0.0)));
        assert!(matches!(x_state_m(&both), Err(Error::NotXForm { .. })));
    }

    #[test]
    fn report_examples() {
        let r = report(&state(ComplexMat4::identity().scale_re(0.25))).unwrap();
        assert!(r.concurrence.abs() < 1e-12);
        assert!(r.discord.abs() < 1e-8);
        assert!(close(r.linear_entropy, 1.0, 1e-15));
        assert!(close(r.purity, 0.25, 1e-15));
        assert!(r.horodecki_m.abs() < 1e-15);
        assert!(!r.bell_violated);

        let r = report(&state(bell_phi_plus())).unwrap();
        assert!(close(r.concurrence, 1.0, 1e-12));
        assert!(close(r.discord, 1.0, 1e-9));
        assert!(r.linear_entropy.abs() < 1e-14);
        assert!(close(r.horodecki_m, 2.0, 1e-12));
        assert!(r.bell_violated);

        let r = report(&make_mems(0.4).unwrap()).unwrap();
        assert!(close(r.linear_entropy, 4.0 / 3.0 * (1.0 - r.purity), 1e-12));
    }
}
