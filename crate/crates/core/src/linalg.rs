//! Fixed-size complex matrices for one and two qubits.
//!
//! Everything here works on stack-allocated `N×N` arrays. The index convention
//! for two-qubit operators is the usual Kronecker one: basis state `|i j⟩`
//! (qubit A first) sits at row `2·i + j`.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest tolerated `|m − m†|` entry for a matrix to count as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;

const JACOBI_OFF_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 50;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Dense row-major complex `N×N` matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CMat<const N: usize> {
    #[serde(with = "serde_entries")]
    entries: [[C64; N]; N],
}

pub type ComplexMat2 = CMat<2>;
pub type ComplexMat4 = CMat<4>;

impl<const N: usize> CMat<N> {
    pub fn zeros() -> Self {
        Self { entries: [[ZERO; N]; N] }
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.entries[i][i] = ONE;
        }
        m
    }

    /// Builds a matrix from rows, rejecting NaN or infinite entries.
    pub fn from_rows(rows: [[C64; N]; N]) -> Result<Self> {
        if rows.iter().flatten().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { entries: rows })
    }

    /// Row-major slice constructor; the slice must hold exactly `N²` entries.
    pub fn from_slice(values: &[C64]) -> Result<Self> {
        if values.len() != N * N {
            return Err(Error::DimensionMismatch { expected: N * N, got: values.len() });
        }
        let mut rows = [[ZERO; N]; N];
        for (k, v) in values.iter().enumerate() {
            rows[k / N][k % N] = *v;
        }
        Self::from_rows(rows)
    }

    pub(crate) fn from_rows_unchecked(rows: [[C64; N]; N]) -> Self {
        Self { entries: rows }
    }

    pub fn from_real_diag(diag: [f64; N]) -> Self {
        let mut m = Self::zeros();
        for (i, d) in diag.iter().enumerate() {
            m.entries[i][i] = C64::new(*d, 0.0);
        }
        m
    }

    pub fn rows(&self) -> &[[C64; N]; N] {
        &self.entries
    }

    pub fn to_vec(&self) -> Vec<C64> {
        self.entries.iter().flatten().copied().collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                out.entries[i][j] = self.entries[j][i].conj();
            }
        }
        out
    }

    /// Entrywise complex conjugate (not the adjoint).
    pub fn conj(&self) -> Self {
        let mut out = *self;
        out.entries.iter_mut().flatten().for_each(|z| *z = z.conj());
        out
    }

    pub fn scale(&self, k: C64) -> Self {
        let mut out = *self;
        out.entries.iter_mut().flatten().for_each(|z| *z *= k);
        out
    }

    pub fn scale_re(&self, k: f64) -> Self {
        self.scale(C64::new(k, 0.0))
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|i| self.entries[i][i]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Frobenius norm of `self − other`.
    pub fn distance(&self, other: &Self) -> f64 {
        (*self - *other).frobenius_norm()
    }

    /// Largest entry modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entry of `|m − m†|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_deviation() <= HERMITIAN_TOL
    }

    /// `(m + m†)/2`.
    pub fn hermitian_part(&self) -> Self {
        (*self + self.adjoint()).scale_re(0.5)
    }

    /// `U · self · U†`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        *u * *self * u.adjoint()
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi.
    pub fn herm_eig(&self) -> Result<HermitianEigen<N>> {
        let dev = self.hermiticity_deviation();
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation: dev });
        }
        Ok(jacobi_eig(self))
    }

    /// Eigendecomposition of the Hermitian part, whatever the asymmetry.
    pub fn hermitian_part_eig(&self) -> HermitianEigen<N> {
        jacobi_eig(self)
    }

    /// Hermitian eigenvalues only, ascending.
    pub fn herm_eigenvalues(&self) -> Result<[f64; N]> {
        self.herm_eig().map(|e| e.values)
    }

    /// `exp(−i·self·t)` via the spectral decomposition.
    pub fn expm_i(&self, t: f64) -> Result<Self> {
        let eig = self.herm_eig()?;
        Ok(eig.map_spectrum(|lambda| C64::new(0.0, -lambda * t).exp()))
    }

    /// `Re Tr(self²)`.
    pub fn purity(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..N {
            for j in 0..N {
                acc += (self.entries[i][j] * self.entries[j][i]).re;
            }
        }
        acc
    }
}

impl ComplexMat4 {
    /// True when every entry off the diagonal and the two anti-diagonal
    /// coherences (1,4) and (2,3) is below `tol`.
    pub fn is_x_form(&self, tol: f64) -> bool {
        for i in 0..4 {
            for j in 0..4 {
                if i != j && i + j != 3 && self.entries[i][j].norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    pub fn diag_re(&self) -> [f64; 4] {
        [0, 1, 2, 3].map(|i| self.entries[i][i].re)
    }
}

impl<const N: usize> Index<(usize, usize)> for CMat<N> {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for CMat<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.entries[i][j]
    }
}

impl<const N: usize> Mul for CMat<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.entries[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..N {
                    out.entries[i][j] += a * rhs.entries[k][j];
                }
            }
        }
        out
    }
}

impl<const N: usize> Add for CMat<N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (a, b) in self.entries.iter_mut().flatten().zip(rhs.entries.iter().flatten()) {
            *a += b;
        }
        self
    }
}

impl<const N: usize> Sub for CMat<N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (a, b) in self.entries.iter_mut().flatten().zip(rhs.entries.iter().flatten()) {
            *a -= b;
        }
        self
    }
}

impl<const N: usize> Neg for CMat<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale_re(-1.0)
    }
}

/// Pauli matrices and the 2×2 identity.
pub mod pauli {
    use super::*;

    pub fn id() -> ComplexMat2 {
        ComplexMat2::identity()
    }

    pub fn x() -> ComplexMat2 {
        CMat::from_rows_unchecked([[ZERO, ONE], [ONE, ZERO]])
    }

    pub fn y() -> ComplexMat2 {
        CMat::from_rows_unchecked([[ZERO, -I], [I, ZERO]])
    }

    pub fn z() -> ComplexMat2 {
        CMat::from_rows_unchecked([[ONE, ZERO], [ZERO, -ONE]])
    }

    /// `[σx, σy, σz]`.
    pub fn xyz() -> [ComplexMat2; 3] {
        [x(), y(), z()]
    }
}

/// Kronecker product `a ⊗ b`; row `2·i1 + i2`, column `2·j1 + j2`.
pub fn kron(a: &ComplexMat2, b: &ComplexMat2) -> ComplexMat4 {
    let mut out = ComplexMat4::zeros();
    for i1 in 0..2 {
        for j1 in 0..2 {
            for i2 in 0..2 {
                for j2 in 0..2 {
                    out.entries[2 * i1 + i2][2 * j1 + j2] = a.entries[i1][j1] * b.entries[i2][j2];
                }
            }
        }
    }
    out
}

/// Which qubit survives a partial trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
}

impl Subsystem {
    pub fn other(self) -> Self {
        match self {
            Subsystem::A => Subsystem::B,
            Subsystem::B => Subsystem::A,
        }
    }
}

/// Traces out the qubit that is not `keep`.
pub fn partial_trace(m: &ComplexMat4, keep: Subsystem) -> ComplexMat2 {
    let mut out = ComplexMat2::zeros();
    for r in 0..2 {
        for c in 0..2 {
            out.entries[r][c] = match keep {
                Subsystem::A => m.entries[2 * r][2 * c] + m.entries[2 * r + 1][2 * c + 1],
                Subsystem::B => m.entries[r][c] + m.entries[2 + r][2 + c],
            };
        }
    }
    out
}

/// Spectral decomposition `m = V·diag(values)·V†`, eigenvalues ascending.
#[derive(Clone, Copy, Debug)]
pub struct HermitianEigen<const N: usize> {
    pub values: [f64; N],
    /// Columns are the orthonormal eigenvectors, in the order of `values`.
    pub vectors: CMat<N>,
}

impl<const N: usize> HermitianEigen<N> {
    /// `V · diag(f(λ)) · V†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> C64) -> CMat<N> {
        let v = &self.vectors;
        let fl: [C64; N] = self.values.map(&f);
        let mut out = CMat::<N>::zeros();
        for i in 0..N {
            for j in 0..N {
                let mut acc = ZERO;
                for k in 0..N {
                    acc += v.entries[i][k] * fl[k] * v.entries[j][k].conj();
                }
                out.entries[i][j] = acc;
            }
        }
        out
    }

    pub fn reconstruct(&self) -> CMat<N> {
        self.map_spectrum(|l| C64::new(l, 0.0))
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[N - 1]
    }
}

fn off_diagonal_norm<const N: usize>(a: &CMat<N>) -> f64 {
    let mut acc = 0.0;
    for i in 0..N {
        for j in 0..N {
            if i != j {
                acc += a.entries[i][j].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn jacobi_eig<const N: usize>(m: &CMat<N>) -> HermitianEigen<N> {
    // Work on the Hermitian part so that sub-tolerance asymmetry cannot leak in.
    let mut a = m.hermitian_part();
    let mut v = CMat::<N>::identity();
    let scale = a.frobenius_norm().max(1.0);

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) < JACOBI_OFF_TOL * scale {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: [usize; N] = std::array::from_fn(|i| i);
    let diag: [f64; N] = std::array::from_fn(|i| a.entries[i][i].re);
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]).then(i.cmp(&j)));

    let values = order.map(|k| diag[k]);
    let mut vectors = CMat::<N>::zeros();
    for (col, &k) in order.iter().enumerate() {
        for row in 0..N {
            vectors.entries[row][col] = v.entries[row][k];
        }
    }
    HermitianEigen { values, vectors }
}

/// One complex Jacobi rotation annihilating `a[p][q]`.
///
/// The rotation is `J = W·P` where `W` removes the phase of `a[p][q]` and `P`
/// is the classical real Jacobi rotation, so `a ← J†·a·J` and `v ← v·J`.
fn rotate<const N: usize>(a: &mut CMat<N>, v: &mut CMat<N>, p: usize, q: usize) {
    let apq = a.entries[p][q];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let app = a.entries[p][p].re;
    let aqq = a.entries[q][q].re;

    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // Column p of J is (c, −s·e^{−iα}) on rows (p, q); column q is (s, c·e^{−iα}).
    let jpp = C64::new(c, 0.0);
    let jqp = -phase.conj() * s;
    let jpq = C64::new(s, 0.0);
    let jqq = phase.conj() * c;

    // a ← a·J (columns p, q)
    for k in 0..N {
        let akp = a.entries[k][p];
        let akq = a.entries[k][q];
        a.entries[k][p] = akp * jpp + akq * jqp;
        a.entries[k][q] = akp * jpq + akq * jqq;
    }
    // a ← J†·a (rows p, q)
    for k in 0..N {
        let apk = a.entries[p][k];
        let aqk = a.entries[q][k];
        a.entries[p][k] = jpp.conj() * apk + jqp.conj() * aqk;
        a.entries[q][k] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a.entries[p][q] = ZERO;
    a.entries[q][p] = ZERO;
    a.entries[p][p].im = 0.0;
    a.entries[q][q].im = 0.0;

    for k in 0..N {
        let vkp = v.entries[k][p];
        let vkq = v.entries[k][q];
        v.entries[k][p] = vkp * jpp + vkq * jqp;
        v.entries[k][q] = vkp * jpq + vkq * jqq;
    }
}

/// Eigenvalues of a 2×2 Hermitian matrix in closed form, ascending.
pub fn herm_eigenvalues_2x2(m: &ComplexMat2) -> [f64; 2] {
    let a = m.entries[0][0].re;
    let d = m.entries[1][1].re;
    let b = m.entries[0][1];
    let mean = 0.5 * (a + d);
    let half_gap = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    [mean - half_gap, mean + half_gap]
}

mod serde_entries {
    use num_complex::Complex64 as C64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer, const N: usize>(
        m: &[[C64; N]; N],
        ser: S,
    ) -> Result<S::Ok, S::Error> {
        let flat: Vec<[f64; 2]> = m.iter().flatten().map(|z| [z.re, z.im]).collect();
        flat.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>, const N: usize>(
        de: D,
    ) -> Result<[[C64; N]; N], D::Error> {
        let flat = Vec::<[f64; 2]>::deserialize(de)?;
        if flat.len() != N * N {
            return Err(serde::de::Error::invalid_length(flat.len(), &"N*N complex entries"));
        }
        let mut out = [[C64::new(0.0, 0.0); N]; N];
        for (k, [re, im]) in flat.into_iter().enumerate() {
            out[k / N][k % N] = C64::new(re, im);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn bell_projector() -> ComplexMat4 {
        let mut m = ComplexMat4::zeros();
        for &(i, j) in &[(0, 0), (0, 3), (3, 0), (3, 3)] {
            m[(i, j)] = c(0.5);
        }
        m
    }

    fn herm_from(vals: [f64; 16]) -> ComplexMat4 {
        let mut m = ComplexMat4::zeros();
        for i in 0..4 {
            for j in i..4 {
                let z = if i == j {
                    c(vals[4 * i + j])
                } else {
                    C64::new(vals[4 * i + j], vals[4 * j + i])
                };
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        m
    }

    #[test]
    fn kron_identity_and_sigma_z() {
        let id4 = kron(&pauli::id(), &pauli::id());
        assert_eq!(id4, ComplexMat4::identity());
        let zi = kron(&pauli::z(), &pauli::id());
        assert_eq!(zi, ComplexMat4::from_real_diag([1.0, 1.0, -1.0, -1.0]));
    }

    #[test]
    fn kron_yy_is_signed_antidiagonal() {
        let yy = kron(&pauli::y(), &pauli::y());
        // top-right to bottom-left: (0,3), (1,2), (2,1), (3,0)
        let expected = [c(-1.0), c(1.0), c(1.0), c(-1.0)];
        for (k, e) in expected.iter().enumerate() {
            assert_eq!(yy[(k, 3 - k)], *e);
        }
        for i in 0..4 {
            for j in 0..4 {
                if i + j != 3 {
                    assert_eq!(yy[(i, j)], ZERO);
                }
            }
        }
    }

    #[test]
    fn eig_of_diagonal_and_projector() {
        let d = ComplexMat4::from_real_diag([0.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]);
        let e = d.herm_eig().unwrap();
        for (got, want) in e.values.iter().zip([0.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]) {
            assert!((got - want).abs() < 1e-15);
        }
        let e = bell_projector().herm_eig().unwrap();
        for (got, want) in e.values.iter().zip([0.0, 0.0, 0.0, 1.0]) {
            assert!((got - want).abs() < 1e-14, "{:?}", e.values);
        }
    }

    #[test]
    fn eig_of_inner_block_state() {
        // diag(0, 1/3, 1/3, 1/3) with inner coherence 1/4: block eigenvalues 1/3 ± 1/4
        let mut m = ComplexMat4::from_real_diag([0.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]);
        m[(1, 2)] = c(0.25);
        m[(2, 1)] = c(0.25);
        let vals = m.herm_eigenvalues().unwrap();
        let want = [0.0, 1.0 / 12.0, 1.0 / 3.0, 7.0 / 12.0];
        for (g, w) in vals.iter().zip(want) {
            assert!((g - w).abs() < 1e-14, "{vals:?}");
        }
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let mut m = ComplexMat4::identity();
        m[(0, 1)] = c(1e-6);
        assert!(matches!(m.herm_eig(), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn eig_is_deterministic() {
        let m = herm_from([
            0.3, 0.1, -0.2, 0.05, 0.4, -0.7, 0.2, 0.1, 0.3, 0.6, 0.1, -0.3, 0.0, 0.2, 0.5, 0.9,
        ]);
        let a = m.herm_eig().unwrap();
        let b = m.herm_eig().unwrap();
        assert_eq!(a.values, b.values);
        assert_eq!(a.vectors, b.vectors);
    }

    #[test]
    fn expm_trivial_cases() {
        let z = ComplexMat4::zeros();
        assert!(z.expm_i(3.0).unwrap().max_abs_diff(&ComplexMat4::identity()) < 1e-15);
        let h = herm_from([
            1.0, 0.2, 0.0, 0.3, 0.0, -1.0, 0.5, 0.0, 0.1, 0.0, 2.0, 0.0, 0.0, 0.0, 0.0, 0.5,
        ]);
        assert!(h.expm_i(0.0).unwrap().max_abs_diff(&ComplexMat4::identity()) < 1e-14);
    }

    #[test]
    fn expm_of_xx_hamiltonian_is_unitary() {
        let xx = kron(&pauli::x(), &pauli::x());
        let yy = kron(&pauli::y(), &pauli::y());
        let h = (xx + yy).scale_re(0.5);
        for t in [0.1, 1.0, 10.0] {
            let u = h.expm_i(t).unwrap();
            let err = (u * u.adjoint()).max_abs_diff(&ComplexMat4::identity());
            assert!(err < 1e-12, "t={t} err={err}");
        }
    }

    #[test]
    fn partial_traces() {
        let ra = partial_trace(&bell_projector(), Subsystem::A);
        assert!(ra.max_abs_diff(&ComplexMat2::identity().scale_re(0.5)) < 1e-15);

        let p = CMat::from_rows([[c(0.7), C64::new(0.1, 0.2)], [C64::new(0.1, -0.2), c(0.3)]])
            .unwrap();
        let q = CMat::from_rows([[c(0.4), C64::new(0.0, 0.3)], [C64::new(0.0, -0.3), c(0.6)]])
            .unwrap();
        let pq = kron(&p, &q);
        assert!(partial_trace(&pq, Subsystem::A).max_abs_diff(&p) < 1e-15);
        assert!(partial_trace(&pq, Subsystem::B).max_abs_diff(&q) < 1e-15);

        let mut rho = ComplexMat4::from_real_diag([0.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]);
        rho[(1, 2)] = c(0.25);
        rho[(2, 1)] = c(0.25);
        let rb = partial_trace(&rho, Subsystem::B);
        assert!(rb.max_abs_diff(&ComplexMat2::from_real_diag([1.0 / 3.0, 2.0 / 3.0])) < 1e-15);
    }

    #[test]
    fn purity_values() {
        assert!((ComplexMat4::identity().scale_re(0.25).purity() - 0.25).abs() < 1e-15);
        assert!((bell_projector().purity() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn from_slice_checks_length_and_finiteness() {
        assert!(matches!(
            ComplexMat2::from_slice(&[ONE; 3]),
            Err(Error::DimensionMismatch { expected: 4, got: 3 })
        ));
        assert!(matches!(
            ComplexMat2::from_slice(&[ONE, ONE, ONE, C64::new(f64::NAN, 0.0)]),
            Err(Error::NonFinite)
        ));
    }

    #[test]
    fn closed_form_2x2_matches_jacobi() {
        let m = CMat::from_rows([[c(0.2), C64::new(0.3, -0.1)], [C64::new(0.3, 0.1), c(0.8)]])
            .unwrap();
        let a = herm_eigenvalues_2x2(&m);
        let b = m.herm_eigenvalues().unwrap();
        assert!((a[0] - b[0]).abs() < 1e-15 && (a[1] - b[1]).abs() < 1e-15);
    }

    #[test]
    fn x_form_detection() {
        let mut m = bell_projector();
        assert!(m.is_x_form(1e-12));
        m[(0, 1)] = c(1e-3);
        assert!(!m.is_x_form(1e-12));
    }
}
