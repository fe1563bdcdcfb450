//! Operator Schmidt decomposition and the commutator test for zero discord.
//!
//! `ρ = Σ_n c_n S_n ⊗ F_n` is read off the singular value decomposition of
//! the realigned matrix `R[(i,i'),(j,j')] = ρ[(i,j),(i',j')]`. The span of
//! the `S_n` with `c_n > 0` does not depend on which decomposition is
//! picked, and a set of operators closed under adjoint commutes pairwise
//! iff any basis of its span does, so the commutator test is independent of
//! the SVD's freedom in degenerate subspaces.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::matrixcore::{ComplexMatrix, DensityMatrix, C64};
use crate::tolerances::Tolerances;

use super::Side;

#[derive(Debug, Clone)]
pub struct OperatorSchmidtDecomposition {
    /// All singular values, descending.
    pub coefficients: Vec<f64>,
    /// `S_n`, Hilbert–Schmidt orthonormal.
    pub left_ops: Vec<ComplexMatrix>,
    /// `F_n`, Hilbert–Schmidt orthonormal.
    pub right_ops: Vec<ComplexMatrix>,
    /// Number of coefficients above the rank tolerance.
    pub rank: usize,
}

impl OperatorSchmidtDecomposition {
    /// `Σ_{n<rank} c_n S_n ⊗ F_n`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let ds = self.left_ops[0].dim();
        let da = self.right_ops[0].dim();
        let mut out = ComplexMatrix::zeros(ds * da);
        for n in 0..self.rank {
            let term = crate::matrixcore::kron(&self.left_ops[n], &self.right_ops[n]).scale_re(self.coefficients[n]);
            out = &out + &term;
        }
        out
    }

    pub fn ops(&self, side: Side) -> &[ComplexMatrix] {
        match side {
            Side::Left => &self.left_ops[..self.rank],
            Side::Right => &self.right_ops[..self.rank],
        }
    }
}

pub fn operator_schmidt(rho: &DensityMatrix) -> OperatorSchmidtDecomposition {
    operator_schmidt_tol(rho, &Tolerances::default())
}

pub fn operator_schmidt_tol(rho: &DensityMatrix, tol: &Tolerances) -> OperatorSchmidtDecomposition {
    let (ds, da) = rho.dims();
    let m = rho.mat();
    let realigned = DMatrix::<C64>::from_fn(ds * ds, da * da, |row, col| {
        let (i, ip) = (row / ds, row % ds);
        let (j, jp) = (col / da, col % da);
        m[(i * da + j, ip * da + jp)]
    });
    let svd = realigned.svd(true, true);
    let u = svd.u.expect("left singular vectors requested");
    let v_t = svd.v_t.expect("right singular vectors requested");
    let k = svd.singular_values.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]).then(a.cmp(&b)));

    let coefficients: Vec<f64> = order.iter().map(|&n| svd.singular_values[n]).collect();
    let left_ops = order
        .iter()
        .map(|&n| ComplexMatrix::from_fn(ds, |i, ip| u[(i * ds + ip, n)]))
        .collect();
    let right_ops = order
        .iter()
        .map(|&n| ComplexMatrix::from_fn(da, |j, jp| v_t[(n, j * da + jp)]))
        .collect();
    let rank = coefficients.iter().filter(|&&c| c > tol.schmidt_rank).count();
    OperatorSchmidtDecomposition { coefficients, left_ops, right_ops, rank }
}

/// Result of the commutator test on one side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroDiscordCertificate {
    pub side: Side,
    pub zero: bool,
    /// Largest commutator entry over all operator pairs.
    pub residual: f64,
    pub schmidt_rank: usize,
}

/// Decides whether the discord measured on `side` vanishes, by checking
/// that that side's Schmidt operators commute pairwise.
pub fn zero_discord_certify(rho: &DensityMatrix, side: Side) -> ZeroDiscordCertificate {
    zero_discord_certify_tol(rho, side, &Tolerances::default())
}

pub fn zero_discord_certify_tol(rho: &DensityMatrix, side: Side, tol: &Tolerances) -> ZeroDiscordCertificate {
    let dec = operator_schmidt_tol(rho, tol);
    let ops = dec.ops(side);
    let mut residual = 0.0f64;
    for i in 0..ops.len() {
        for j in (i + 1)..ops.len() {
            residual = residual.max(ops[i].commutator(&ops[j]).max_abs());
        }
    }
    ZeroDiscordCertificate { side, zero: residual <= tol.commutator, residual, schmidt_rank: dec.rank }
}
