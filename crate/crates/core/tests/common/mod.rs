#![allow(dead_code)]

use assisted_usd::ensembles::Ensemble;
use assisted_usd::matrixcore::{hermitian_spectrum, kron};
use assisted_usd::{ComplexMatrix, DensityMatrix, C64};
use rand::Rng;

pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Hermitian matrix from `n²` reals: diagonal, then upper-triangle re/im pairs.
pub fn hermitian_from(n: usize, xs: &[f64]) -> ComplexMatrix {
    let mut h = ComplexMatrix::zeros(n);
    let mut k = 0;
    for i in 0..n {
        h[(i, i)] = re(xs[k]);
        k += 1;
    }
    for i in 0..n {
        for j in i + 1..n {
            let z = C64::new(xs[k], xs[k + 1]);
            k += 2;
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
        }
    }
    h
}

/// `exp(iH)`.
pub fn unitary_from(n: usize, xs: &[f64]) -> ComplexMatrix {
    let s = hermitian_spectrum(&hermitian_from(n, xs)).unwrap();
    let v = &s.eigenvectors;
    ComplexMatrix::from_fn(n, |r, c| {
        (0..n).map(|k| v[(r, k)] * v[(c, k)].conj() * C64::from_polar(1.0, s.eigenvalues[k])).sum()
    })
}

pub fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> ComplexMatrix {
    let xs: Vec<f64> = (0..n * n).map(|_| rng.random_range(-3.0..3.0)).collect();
    unitary_from(n, &xs)
}

/// `A A† / tr` for a random complex `A`.
pub fn random_density<R: Rng>(dims: (usize, usize), rng: &mut R) -> DensityMatrix {
    let n = dims.0 * dims.1;
    let a = ComplexMatrix::from_fn(n, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    let m = &a * &a.dagger();
    let t = m.trace().re;
    let m = ComplexMatrix::from_fn(n, |r, c| {
        let z = m[(r, c)] / t;
        if r == c { re(z.re) } else { z }
    });
    DensityMatrix::new(m, dims).unwrap()
}

pub fn local(rho: &DensityMatrix, us: &ComplexMatrix, ua: &ComplexMatrix) -> DensityMatrix {
    let u = kron(us, ua);
    let m = &(&u * rho.mat()) * &u.dagger();
    let n = m.dim();
    let m = ComplexMatrix::from_fn(n, |r, c| {
        let z = (m[(r, c)] + m[(c, r)].conj()) * 0.5;
        if r == c { re(z.re) } else { z }
    });
    DensityMatrix::new(m, rho.dims()).unwrap()
}

/// Priors proportional to `1/(|α_i| √(1−|α_i|²))` with a shared phase: the
/// products `p_i α_i √(1−|α_i|²)` all coincide.
pub fn satisfying(mods: &[f64], phase: f64) -> Ensemble {
    let raw: Vec<f64> = mods.iter().map(|m| 1.0 / (m * (1.0 - m * m).sqrt())).collect();
    let total: f64 = raw.iter().sum();
    let priors = raw.iter().map(|r| r / total).collect();
    Ensemble::new(priors, mods.iter().map(|&m| C64::from_polar(m, phase)).collect()).unwrap()
}

pub fn random_priors<R: Rng>(d: usize, rng: &mut R) -> Vec<f64> {
    let raw: Vec<f64> = (0..d).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    raw.iter().map(|r| r / total).collect()
}

pub fn random_ensemble<R: Rng>(d: usize, rng: &mut R) -> Ensemble {
    let alphas = (0..d)
        .map(|_| C64::from_polar(rng.random_range(0.05..0.95), rng.random_range(0.0..std::f64::consts::TAU)))
        .collect();
    Ensemble::new(random_priors(d, rng), alphas).unwrap()
}
