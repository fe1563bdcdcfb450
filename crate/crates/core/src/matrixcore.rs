//! Dense complex linear algebra for small bipartite operators.
//!
//! Everything here works on square matrices of at most a few dozen rows.
//! Bipartite index convention: for a system of dimension `d_sys` and an
//! ancilla of dimension `d_anc`, the joint basis index of `|s⟩|a⟩` is
//! `s * d_anc + a` (system is the first tensor factor).

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerances::Tolerances;

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<C64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|c| {
                    let z = self[(r, c)];
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl ComplexMatrix {
    pub fn new(dim: usize, entries: Vec<C64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch("matrix dimension must be positive".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "{} entries cannot form a {dim}x{dim} matrix",
                entries.len()
            )));
        }
        Ok(Self { dim, entries })
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self { dim, entries: vec![ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        Self { dim, entries }
    }

    /// Real diagonal matrix.
    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        m
    }

    /// Projector-like outer product `|v⟩⟨v|`.
    pub fn outer(v: &[C64]) -> Self {
        Self::outer2(v, v)
    }

    /// `|a⟩⟨b|`.
    pub fn outer2(a: &[C64], b: &[C64]) -> Self {
        assert_eq!(a.len(), b.len());
        Self::from_fn(a.len(), |r, c| a[r] * b[c].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)])
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { dim: self.dim, entries: self.entries.iter().map(|z| z * s).collect() }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch in max_abs_diff");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn hermitian_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for c in r..self.dim {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Hilbert–Schmidt inner product `Tr(self† other)`.
    pub fn hs_inner(&self, other: &Self) -> C64 {
        self.entries.iter().zip(&other.entries).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self[(r, c)] * v[c]).sum())
            .collect()
    }

    /// Matrix built from the rows/columns listed in `indices`.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Self {
        Self::from_fn(indices.len(), |r, c| self[(indices[r], indices[c])])
    }

    /// Determinant by LU factorization with partial pivoting.
    pub fn determinant(&self) -> C64 {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut det = ONE;
        for k in 0..n {
            let pivot = (k..n)
                .max_by(|&i, &j| a[i * n + k].norm().total_cmp(&a[j * n + k].norm()))
                .unwrap_or(k);
            if a[pivot * n + k].norm() == 0.0 {
                return ZERO;
            }
            if pivot != k {
                for c in 0..n {
                    a.swap(k * n + c, pivot * n + c);
                }
                det = -det;
            }
            let p = a[k * n + k];
            det *= p;
            for r in (k + 1)..n {
                let factor = a[r * n + k] / p;
                for c in k..n {
                    let v = a[k * n + c];
                    a[r * n + c] -= factor * v;
                }
            }
        }
        det
    }

    pub(crate) fn to_nalgebra(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.dim, self.dim, &self.entries)
    }

    /// Column `c` as a vector.
    pub fn column(&self, c: usize) -> Vec<C64> {
        (0..self.dim).map(|r| self[(r, c)]).collect()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.entries[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.entries[r * self.dim + c]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix product");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.entries[r * n + k];
                if a == ZERO {
                    continue;
                }
                for c in 0..n {
                    out.entries[r * n + c] += a * rhs.entries[k * n + c];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix sum");
        ComplexMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix difference");
        ComplexMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Tensor product with `a` as the first (system) factor.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (da, db) = (a.dim, b.dim);
    ComplexMatrix::from_fn(da * db, |r, c| a[(r / db, c / db)] * b[(r % db, c % db)])
}

pub fn kron_vec(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

/// `⟨a|b⟩`.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Computational basis vector `|i⟩` in dimension `dim`.
pub fn basis_ket(dim: usize, i: usize) -> Vec<C64> {
    let mut v = vec![ZERO; dim];
    v[i] = ONE;
    v
}

/// Which tensor factor of a bipartite operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subsystem {
    System,
    Ancilla,
}

impl Subsystem {
    pub fn other(self) -> Self {
        match self {
            Subsystem::System => Subsystem::Ancilla,
            Subsystem::Ancilla => Subsystem::System,
        }
    }
}

/// Hermitian, unit-trace, positive semidefinite operator on `d_sys ⊗ d_anc`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    dims: (usize, usize),
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix, dims: (usize, usize)) -> Result<Self> {
        Self::with_tolerances(mat, dims, &Tolerances::default())
    }

    pub fn with_tolerances(mat: ComplexMatrix, dims: (usize, usize), tol: &Tolerances) -> Result<Self> {
        if dims.0 == 0 || dims.1 == 0 || dims.0 * dims.1 != mat.dim() {
            return Err(Error::DimensionMismatch(format!(
                "dims {}x{} do not match matrix dimension {}",
                dims.0,
                dims.1,
                mat.dim()
            )));
        }
        let herm = mat.hermitian_deviation();
        if herm > tol.hermitian_state {
            return Err(Error::NotHermitian(herm));
        }
        let tr = mat.trace();
        if (tr - ONE).norm() > tol.trace {
            return Err(Error::BadTrace(tr.re));
        }
        let min = hermitian_spectrum(&mat)?.min();
        if min < -tol.psd {
            return Err(Error::NotPsd(min));
        }
        Ok(Self { mat, dims })
    }

    /// Single-system state (ancilla dimension 1).
    pub fn single(mat: ComplexMatrix) -> Result<Self> {
        let d = mat.dim();
        Self::new(mat, (d, 1))
    }

    pub fn from_pure(psi: &[C64], dims: (usize, usize)) -> Result<Self> {
        Self::new(ComplexMatrix::outer(psi), dims)
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn dim_of(&self, part: Subsystem) -> usize {
        match part {
            Subsystem::System => self.dims.0,
            Subsystem::Ancilla => self.dims.1,
        }
    }

    pub fn product(a: &DensityMatrix, b: &DensityMatrix) -> Result<Self> {
        Self::new(kron(&a.mat, &b.mat), (a.mat.dim(), b.mat.dim()))
    }

    pub fn entropy(&self) -> Result<f64> {
        von_neumann_entropy(&self.mat)
    }
}

/// Reduced state of the `keep` factor.
pub fn partial_trace(rho: &DensityMatrix, keep: Subsystem) -> DensityMatrix {
    let mat = partial_trace_mat(rho.mat(), rho.dims(), keep);
    let d = mat.dim();
    DensityMatrix { mat, dims: (d, 1) }
}

pub(crate) fn partial_trace_mat(m: &ComplexMatrix, (ds, da): (usize, usize), keep: Subsystem) -> ComplexMatrix {
    match keep {
        Subsystem::System => ComplexMatrix::from_fn(ds, |r, c| (0..da).map(|a| m[(r * da + a, c * da + a)]).sum()),
        Subsystem::Ancilla => ComplexMatrix::from_fn(da, |r, c| (0..ds).map(|s| m[(s * da + r, s * da + c)]).sum()),
    }
}

/// Partial transpose on the chosen factor.
pub fn partial_transpose(rho: &DensityMatrix, side: Subsystem) -> ComplexMatrix {
    partial_transpose_mat(rho.mat(), rho.dims(), side)
}

pub(crate) fn partial_transpose_mat(m: &ComplexMatrix, (ds, da): (usize, usize), side: Subsystem) -> ComplexMatrix {
    ComplexMatrix::from_fn(ds * da, |r, c| {
        let (s1, a1) = (r / da, r % da);
        let (s2, a2) = (c / da, c % da);
        match side {
            Subsystem::System => m[(s2 * da + a1, s1 * da + a2)],
            Subsystem::Ancilla => m[(s1 * da + a2, s2 * da + a1)],
        }
    })
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Sorted descending.
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the eigenvector of `eigenvalues[k]`.
    pub eigenvectors: ComplexMatrix,
}

impl Spectrum {
    pub fn min(&self) -> f64 {
        *self.eigenvalues.last().expect("spectrum is never empty")
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// `V Λ V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        ComplexMatrix::from_fn(n, |r, c| {
            (0..n).map(|k| v[(r, k)] * v[(c, k)].conj() * self.eigenvalues[k]).sum()
        })
    }
}

pub fn hermitian_spectrum(h: &ComplexMatrix) -> Result<Spectrum> {
    hermitian_spectrum_tol(h, Tolerances::default().hermitian_input)
}

pub fn hermitian_spectrum_tol(h: &ComplexMatrix, herm_tol: f64) -> Result<Spectrum> {
    let dev = h.hermitian_deviation();
    if dev > herm_tol {
        return Err(Error::NotHermitian(dev));
    }
    // Symmetrize so the solver sees an exactly Hermitian input.
    let n = h.dim();
    let sym = ComplexMatrix::from_fn(n, |r, c| (h[(r, c)] + h[(c, r)].conj()) * 0.5);
    let eig = sym.to_nalgebra().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]).then(a.cmp(&b)));
    let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(Spectrum { eigenvalues, eigenvectors })
}

/// Eigenvalues of a matrix assumed Hermitian, without validation. Unsorted.
pub(crate) fn hermitian_eigenvalues(h: &ComplexMatrix) -> Vec<f64> {
    match h.dim() {
        1 => vec![h[(0, 0)].re],
        2 => {
            let (a, d) = (h[(0, 0)].re, h[(1, 1)].re);
            let b = (h[(0, 1)] + h[(1, 0)].conj()) * 0.5;
            let mean = 0.5 * (a + d);
            let r = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
            vec![mean + r, mean - r]
        }
        n => {
            let sym = ComplexMatrix::from_fn(n, |r, c| (h[(r, c)] + h[(c, r)].conj()) * 0.5);
            sym.to_nalgebra().symmetric_eigenvalues().iter().copied().collect()
        }
    }
}

/// Shannon entropy in bits of a list of (possibly slightly negative) weights.
pub(crate) fn entropy_bits(values: impl IntoIterator<Item = f64>, clip: f64) -> f64 {
    values
        .into_iter()
        .filter(|&x| x > clip)
        .map(|x| -x * x.log2())
        .sum::<f64>()
        .max(0.0)
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &ComplexMatrix) -> Result<f64> {
    von_neumann_entropy_tol(rho, &Tolerances::default())
}

pub fn von_neumann_entropy_tol(rho: &ComplexMatrix, tol: &Tolerances) -> Result<f64> {
    let spec = hermitian_spectrum_tol(rho, tol.hermitian_input)?;
    if spec.min() < -tol.psd {
        return Err(Error::NotPsd(spec.min()));
    }
    Ok(entropy_bits(spec.eigenvalues, tol.entropy_clip))
}

/// `S(ρ_sys) + S(ρ_anc) − S(ρ)` in bits.
pub fn mutual_information(rho: &DensityMatrix) -> Result<f64> {
    let s_sys = partial_trace(rho, Subsystem::System).entropy()?;
    let s_anc = partial_trace(rho, Subsystem::Ancilla).entropy()?;
    let s_joint = rho.entropy()?;
    Ok(s_sys + s_anc - s_joint)
}

/// Commonly used fixtures.
pub mod states {
    use super::*;

    pub fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::new(2, vec![ZERO, ONE, ONE, ZERO]).unwrap()
    }

    pub fn pauli_y() -> ComplexMatrix {
        let i = C64::new(0.0, 1.0);
        ComplexMatrix::new(2, vec![ZERO, -i, i, ZERO]).unwrap()
    }

    pub fn pauli_z() -> ComplexMatrix {
        ComplexMatrix::diag(&[1.0, -1.0])
    }

    /// `(|00⟩ + |11⟩)/√2`.
    pub fn bell_phi_plus() -> DensityMatrix {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let psi = [C64::new(h, 0.0), ZERO, ZERO, C64::new(h, 0.0)];
        DensityMatrix::from_pure(&psi, (2, 2)).unwrap()
    }

    pub fn maximally_mixed(d: usize) -> DensityMatrix {
        DensityMatrix::single(ComplexMatrix::identity(d).scale_re(1.0 / d as f64)).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::states::*;
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn kron_examples() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
        assert_eq!(kron(&pauli_z(), &i2), ComplexMatrix::diag(&[1.0, 1.0, -1.0, -1.0]));
        let p0 = ComplexMatrix::outer(&basis_ket(2, 0));
        let p1 = ComplexMatrix::outer(&basis_ket(2, 1));
        let k = kron(&p0, &p1);
        let mut expected = ComplexMatrix::zeros(4);
        expected[(1, 1)] = ONE;
        assert_eq!(k, expected);
    }

    #[test]
    fn construction_rejects_bad_shapes() {
        assert!(matches!(ComplexMatrix::new(2, vec![ONE; 3]), Err(Error::DimensionMismatch(_))));
        assert!(matches!(ComplexMatrix::new(0, vec![]), Err(Error::DimensionMismatch(_))));
        let m = ComplexMatrix::identity(4).scale_re(0.25);
        assert!(matches!(DensityMatrix::new(m, (3, 2)), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn density_matrix_validation() {
        assert!(matches!(DensityMatrix::single(ComplexMatrix::identity(2)), Err(Error::BadTrace(_))));
        assert!(matches!(DensityMatrix::single(ComplexMatrix::diag(&[1.5, -0.5])), Err(Error::NotPsd(_))));
        let mut m = ComplexMatrix::identity(2).scale_re(0.5);
        m[(0, 1)] = c(0.1, 0.0);
        assert!(matches!(DensityMatrix::single(m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn partial_trace_examples() {
        let bell = bell_phi_plus();
        let red = partial_trace(&bell, Subsystem::System);
        assert!(red.mat().max_abs_diff(&ComplexMatrix::identity(2).scale_re(0.5)) < 1e-15);

        let a = DensityMatrix::single(ComplexMatrix::diag(&[0.7, 0.3])).unwrap();
        let mut bm = ComplexMatrix::diag(&[0.2, 0.5, 0.3]);
        bm[(0, 2)] = c(0.1, 0.05);
        bm[(2, 0)] = c(0.1, -0.05);
        let b = DensityMatrix::single(bm).unwrap();
        let prod = DensityMatrix::product(&a, &b).unwrap();
        assert!(partial_trace(&prod, Subsystem::System).mat().max_abs_diff(a.mat()) < 1e-15);
        assert!(partial_trace(&prod, Subsystem::Ancilla).mat().max_abs_diff(b.mat()) < 1e-15);
    }

    #[test]
    fn partial_transpose_examples() {
        let a = DensityMatrix::single(ComplexMatrix::diag(&[0.6, 0.4])).unwrap();
        let mut bm = ComplexMatrix::diag(&[0.5, 0.5]);
        bm[(0, 1)] = c(0.2, 0.3);
        bm[(1, 0)] = c(0.2, -0.3);
        let b = DensityMatrix::single(bm.clone()).unwrap();
        let prod = DensityMatrix::product(&a, &b).unwrap();
        let pt = partial_transpose(&prod, Subsystem::Ancilla);
        assert!(pt.max_abs_diff(&kron(a.mat(), &bm.transpose())) < 1e-15);

        let pt_bell = partial_transpose(&bell_phi_plus(), Subsystem::System);
        let spec = hermitian_spectrum(&pt_bell).unwrap();
        let expected = [0.5, 0.5, 0.5, -0.5];
        for (x, e) in spec.eigenvalues.iter().zip(expected) {
            assert!((x - e).abs() < 1e-12);
        }

        let diag = DensityMatrix::new(ComplexMatrix::diag(&[0.1, 0.2, 0.3, 0.4]), (2, 2)).unwrap();
        assert_eq!(&partial_transpose(&diag, Subsystem::System), diag.mat());
        assert_eq!(&partial_transpose(&diag, Subsystem::Ancilla), diag.mat());
    }

    #[test]
    fn spectrum_examples() {
        let s = hermitian_spectrum(&ComplexMatrix::identity(4)).unwrap();
        assert_eq!(s.eigenvalues.len(), 4);
        assert!(s.eigenvalues.iter().all(|&x| (x - 1.0).abs() < 1e-14));

        let s = hermitian_spectrum(&pauli_x()).unwrap();
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((s.eigenvalues[1] + 1.0).abs() < 1e-14);

        let s = hermitian_spectrum(&ComplexMatrix::diag(&[3.0, 1.0, 4.0, 1.0])).unwrap();
        let expected = [4.0, 3.0, 1.0, 1.0];
        for (x, e) in s.eigenvalues.iter().zip(expected) {
            assert!((x - e).abs() < 1e-14);
        }
    }

    #[test]
    fn spectrum_rejects_non_hermitian() {
        let mut m = ComplexMatrix::identity(2);
        m[(0, 1)] = c(1.0, 0.0);
        assert!(matches!(hermitian_spectrum(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn entropy_examples() {
        let pure = ComplexMatrix::outer(&[c(0.6, 0.0), c(0.0, 0.8)]);
        assert!(von_neumann_entropy(&pure).unwrap().abs() < 1e-12);
        let mixed = maximally_mixed(2);
        assert!((mixed.entropy().unwrap() - 1.0).abs() < 1e-14);
        // -(3/4) log2(3/4) - (1/4) log2(1/4)
        let h = -(0.75f64 * 0.75f64.log2()) - 0.25 * 0.25f64.log2();
        let e = von_neumann_entropy(&ComplexMatrix::diag(&[0.75, 0.25])).unwrap();
        assert!((e - h).abs() < 1e-14);
        assert!((e - 0.811_278_124_459_132_8).abs() < 1e-12);
        assert!(matches!(
            von_neumann_entropy(&ComplexMatrix::diag(&[1.1, -0.1])),
            Err(Error::NotPsd(_))
        ));
    }

    #[test]
    fn mutual_information_examples() {
        let bell = bell_phi_plus();
        assert!((mutual_information(&bell).unwrap() - 2.0).abs() < 1e-12);
        let a = DensityMatrix::single(ComplexMatrix::diag(&[0.7, 0.3])).unwrap();
        let b = maximally_mixed(3);
        let prod = DensityMatrix::product(&a, &b).unwrap();
        assert!(mutual_information(&prod).unwrap().abs() < 1e-12);
    }

    #[test]
    fn determinant_matches_diagonal_product() {
        let mut m = ComplexMatrix::diag(&[2.0, 3.0, 0.5]);
        m[(0, 2)] = c(0.0, 1.0);
        // upper triangular
        assert!((m.determinant() - c(3.0, 0.0)).norm() < 1e-14);
        let swap = ComplexMatrix::new(2, vec![ZERO, ONE, ONE, ZERO]).unwrap();
        assert!((swap.determinant() + ONE).norm() < 1e-15);
    }
}
