//! Rank-1 projective measurements on one tensor factor.

use serde::{Deserialize, Serialize};

use crate::matrixcore::{ComplexMatrix, C64, ONE};

use super::Side;

/// Orthonormal measurement basis on the `subsystem` factor.
///
/// For `dim == 2` the angles are a Bloch pair `(θ, φ)` and the first
/// vector is `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`. For larger `dim` the
/// angles are `(θ, φ)` pairs of complex Givens rotations `G_jk` taken in
/// lexicographic `(j, k)` order; the measurement vectors are the columns of
/// their product.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementBasis {
    pub subsystem: Side,
    pub dim: usize,
    pub angles: Vec<f64>,
}

impl MeasurementBasis {
    pub fn new(subsystem: Side, dim: usize, angles: Vec<f64>) -> Self {
        assert_eq!(angles.len(), parameter_count(dim), "wrong number of angles for dimension {dim}");
        Self { subsystem, dim, angles }
    }

    /// The computational basis.
    pub fn computational(subsystem: Side, dim: usize) -> Self {
        Self::new(subsystem, dim, vec![0.0; parameter_count(dim)])
    }

    /// Basis whose vectors are the columns of `u` (phases of columns are gauge).
    pub fn from_unitary(subsystem: Side, u: &ComplexMatrix) -> Self {
        Self::new(subsystem, u.dim(), angles_from_unitary(u))
    }

    pub fn vectors(&self) -> Vec<Vec<C64>> {
        basis_vectors(self.dim, &self.angles)
    }

    pub fn projectors(&self) -> Vec<ComplexMatrix> {
        self.vectors().iter().map(|v| ComplexMatrix::outer(v)).collect()
    }
}

pub fn parameter_count(dim: usize) -> usize {
    if dim <= 1 {
        0
    } else {
        dim * (dim - 1)
    }
}

fn pairs(dim: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..dim).flat_map(move |j| ((j + 1)..dim).map(move |k| (j, k)))
}

/// Left-multiplies `m` by `G_jk(θ, φ)`.
fn apply_givens(m: &mut ComplexMatrix, j: usize, k: usize, theta: f64, phi: f64) {
    let (s, c) = theta.sin_cos();
    let e = C64::from_polar(1.0, phi);
    for col in 0..m.dim() {
        let xj = m[(j, col)];
        let xk = m[(k, col)];
        m[(j, col)] = xj * c - e.conj() * xk * s;
        m[(k, col)] = e * xj * s + xk * c;
    }
}

pub(crate) fn basis_unitary(dim: usize, angles: &[f64]) -> ComplexMatrix {
    if dim == 2 {
        let (s, c) = (angles[0] / 2.0).sin_cos();
        let e = C64::from_polar(1.0, angles[1]);
        // columns: (c, e s) and (−e* s, c)
        return ComplexMatrix::new(2, vec![C64::new(c, 0.0), -e.conj() * s, e * s, C64::new(c, 0.0)]).unwrap();
    }
    let mut u = ComplexMatrix::identity(dim);
    // product G_p1 G_p2 ... : apply the last factor first
    let ps: Vec<_> = pairs(dim).collect();
    for (idx, &(j, k)) in ps.iter().enumerate().rev() {
        apply_givens(&mut u, j, k, angles[2 * idx], angles[2 * idx + 1]);
    }
    u
}

pub(crate) fn basis_vectors(dim: usize, angles: &[f64]) -> Vec<Vec<C64>> {
    if dim == 1 {
        return vec![vec![ONE]];
    }
    let u = basis_unitary(dim, angles);
    (0..dim).map(|c| u.column(c)).collect()
}

fn phase_of(z: C64) -> f64 {
    if z.norm() == 0.0 {
        0.0
    } else {
        z.arg()
    }
}

/// Inverse of [`basis_unitary`] up to column phases.
pub(crate) fn angles_from_unitary(u: &ComplexMatrix) -> Vec<f64> {
    let dim = u.dim();
    if dim == 1 {
        return vec![];
    }
    if dim == 2 {
        let (a, b) = (u[(0, 0)], u[(1, 0)]);
        let theta = 2.0 * b.norm().atan2(a.norm());
        return vec![theta, phase_of(b) - phase_of(a)];
    }
    let mut work = u.clone();
    let mut angles = Vec::with_capacity(parameter_count(dim));
    for (j, k) in pairs(dim) {
        let (xj, xk) = (work[(j, j)], work[(k, j)]);
        let theta = xk.norm().atan2(xj.norm());
        let phi = phase_of(xk) - phase_of(xj);
        // G† = G(−θ, φ)
        apply_givens(&mut work, j, k, -theta, phi);
        angles.push(theta);
        angles.push(phi);
    }
    debug_assert!((0..dim).all(|r| (0..dim).all(|c| r == c || work[(r, c)].norm() < 1e-8)));
    angles
}
