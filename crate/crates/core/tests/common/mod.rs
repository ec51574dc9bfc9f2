#![allow(dead_code)]

use mixcorr::linalg::{ComplexMat2, ComplexMat4};
use mixcorr::states::{validate_state, x_state, DensityMatrix};
use num_complex::Complex64 as C64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn cuniform(rng: &mut impl Rng) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_hermitian(rng: &mut impl Rng) -> ComplexMat4 {
    let mut m = ComplexMat4::zeros();
    for i in 0..4 {
        m[(i, i)] = C64::new(rng.gen_range(-1.0..1.0), 0.0);
        for j in i + 1..4 {
            let z = cuniform(rng);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

/// `G·G†` normalized, mixed with a little white noise so it is full rank.
pub fn random_density(rng: &mut impl Rng) -> DensityMatrix {
    let mut g = ComplexMat4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            g[(i, j)] = cuniform(rng);
        }
    }
    let gg = g * g.adjoint();
    let tr = gg.trace().re;
    let m = gg.scale_re(0.95 / tr) + ComplexMat4::identity().scale_re(0.05 / 4.0);
    validate_state(m.hermitian_part()).unwrap()
}

/// Physical X state with random populations and coherence phases.
pub fn random_x_state(rng: &mut impl Rng) -> DensityMatrix {
    let mut w = [0.0; 4];
    for wi in &mut w {
        *wi = rng.gen_range(0.0..1.0);
    }
    let total: f64 = w.iter().sum();
    let d = w.map(|x| x / total);
    let r14 = C64::from_polar(
        rng.gen_range(0.0..1.0) * (d[0] * d[3]).sqrt(),
        rng.gen_range(0.0..std::f64::consts::TAU),
    );
    let r23 = C64::from_polar(
        rng.gen_range(0.0..1.0) * (d[1] * d[2]).sqrt(),
        rng.gen_range(0.0..std::f64::consts::TAU),
    );
    validate_state(x_state(d, r14, r23)).unwrap()
}

/// Haar-ish single-qubit unitary `e^{iα}·exp(−i β n·σ)`.
pub fn random_unitary2(rng: &mut impl Rng) -> ComplexMat2 {
    let theta = rng.gen_range(0.0..std::f64::consts::PI);
    let phi = rng.gen_range(0.0..std::f64::consts::TAU);
    let beta = rng.gen_range(0.0..std::f64::consts::TAU);
    let alpha = rng.gen_range(0.0..std::f64::consts::TAU);
    let n = [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()];
    let (sb, cb) = beta.sin_cos();
    let g = C64::from_polar(1.0, alpha);
    let rows = [
        [C64::new(cb, -sb * n[2]), C64::new(-sb * n[1], -sb * n[0])],
        [C64::new(sb * n[1], -sb * n[0]), C64::new(cb, sb * n[2])],
    ];
    ComplexMat2::from_rows(rows.map(|r| r.map(|z| z * g))).unwrap()
}

fn h2(p: f64) -> f64 {
    let term = |x: f64| if x <= 0.0 { 0.0 } else { -x * x.log2() };
    term(p) + term(1.0 - p)
}

fn pauli_expectation(m: &ComplexMat4, a: usize, b: usize) -> f64 {
    // Tr(ρ σa⊗σb) summed entry by entry; index 0 is the identity
    let s: [[[C64; 2]; 2]; 4] = [
        [[C64::new(1.0, 0.0), C64::new(0.0, 0.0)], [C64::new(0.0, 0.0), C64::new(1.0, 0.0)]],
        [[C64::new(0.0, 0.0), C64::new(1.0, 0.0)], [C64::new(1.0, 0.0), C64::new(0.0, 0.0)]],
        [[C64::new(0.0, 0.0), C64::new(0.0, -1.0)], [C64::new(0.0, 1.0), C64::new(0.0, 0.0)]],
        [[C64::new(1.0, 0.0), C64::new(0.0, 0.0)], [C64::new(0.0, 0.0), C64::new(-1.0, 0.0)]],
    ];
    let mut acc = C64::new(0.0, 0.0);
    for i1 in 0..2 {
        for i2 in 0..2 {
            for j1 in 0..2 {
                for j2 in 0..2 {
                    acc += m[(2 * i1 + i2, 2 * j1 + j2)] * s[a][j1][i1] * s[b][j2][i2];
                }
            }
        }
    }
    acc.re
}

/// Discord (measurement on A) of an X state by brute force over a
/// `1024 × 2048` grid of axes, using Bloch-vector algebra only. Axes `n` and
/// `−n` give the same measurement, so the azimuth only spans `[0, π)`.
pub fn grid_discord_x(m: &ComplexMat4) -> f64 {
    let a = [1, 2, 3].map(|i| pauli_expectation(m, i, 0));
    let b = [1, 2, 3].map(|j| pauli_expectation(m, 0, j));
    let t = [1, 2, 3].map(|i| [1, 2, 3].map(|j| pauli_expectation(m, i, j)));

    let block = |x: f64, y: f64, z: C64| {
        let mid = 0.5 * (x + y);
        let rad = (0.25 * (x - y) * (x - y) + z.norm_sqr()).sqrt();
        [mid + rad, mid - rad]
    };
    let d = m.diag_re();
    let mut joint = block(d[0], d[3], m[(0, 3)]).to_vec();
    joint.extend(block(d[1], d[2], m[(1, 2)]));
    let s_ab: f64 = joint.iter().map(|&l| if l <= 0.0 { 0.0 } else { -l * l.log2() }).sum();
    let s_a = h2(0.5 * (1.0 + (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()));

    let conditional = |n: [f64; 3]| {
        let na = n[0] * a[0] + n[1] * a[1] + n[2] * a[2];
        let tn = [0, 1, 2].map(|j| n[0] * t[0][j] + n[1] * t[1][j] + n[2] * t[2][j]);
        let mut acc = 0.0;
        for sign in [1.0, -1.0] {
            let w = 1.0 + sign * na;
            if w < 2e-14 {
                continue;
            }
            let r = [0, 1, 2].map(|j| (b[j] + sign * tn[j]) / w);
            let len = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt().min(1.0);
            acc += 0.5 * w * h2(0.5 * (1.0 + len));
        }
        acc
    };

    let (nt, np) = (1024usize, 2048usize);
    let mut best = f64::INFINITY;
    for i in 0..=nt {
        let theta = std::f64::consts::PI * i as f64 / nt as f64;
        let (st, ct) = theta.sin_cos();
        for j in 0..np {
            let phi = std::f64::consts::PI * j as f64 / np as f64;
            let (sp, cp) = phi.sin_cos();
            best = best.min(conditional([st * cp, st * sp, ct]));
        }
    }
    s_a - s_ab + best
}
