//! Derivative-free minimization used to polish grid seeds.

use std::cell::Cell;

/// Result of one Nelder–Mead run.
#[derive(Debug, Clone)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct NelderMead {
    pub initial_step: f64,
    /// Stop once every vertex lies within this distance of the best one.
    pub step_tol: f64,
    /// Stop once the value spread across the simplex drops below this.
    pub value_tol: f64,
    pub max_evals: usize,
}

impl NelderMead {
    pub fn minimize(&self, f: impl Fn(&[f64]) -> f64, start: &[f64]) -> Minimum {
        let n = start.len();
        let counter = Cell::new(0usize);
        let eval = |x: &[f64]| {
            counter.set(counter.get() + 1);
            f(x)
        };
        if n == 0 {
            let value = eval(start);
            return Minimum { x: vec![], value, evals: counter.get() };
        }
        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
        simplex.push((start.to_vec(), eval(start)));
        for i in 0..n {
            let mut x = start.to_vec();
            x[i] += self.initial_step;
            let v = eval(&x);
            simplex.push((x, v));
        }

        loop {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let best = &simplex[0];
            let spread = simplex[n].1 - best.1;
            let size = simplex[1..]
                .iter()
                .map(|(x, _)| x.iter().zip(&best.0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
                .fold(0.0, f64::max);
            if size < self.step_tol || spread < self.value_tol || counter.get() >= self.max_evals {
                break;
            }

            let centroid: Vec<f64> =
                (0..n).map(|k| simplex[..n].iter().map(|(x, _)| x[k]).sum::<f64>() / n as f64).collect();
            let toward = |t: f64, worst: &[f64]| -> Vec<f64> {
                centroid.iter().zip(worst).map(|(c, w)| c + t * (w - c)).collect()
            };
            let worst = simplex[n].0.clone();
            let worst_v = simplex[n].1;

            let xr = toward(-1.0, &worst);
            let vr = eval(&xr);
            if vr < simplex[0].1 {
                let xe = toward(-2.0, &worst);
                let ve = eval(&xe);
                simplex[n] = if ve < vr { (xe, ve) } else { (xr, vr) };
                continue;
            }
            if vr < simplex[n - 1].1 {
                simplex[n] = (xr, vr);
                continue;
            }
            let (xc, vc) = if vr < worst_v {
                let x = toward(-0.5, &worst);
                let v = eval(&x);
                (x, v)
            } else {
                let x = toward(0.5, &worst);
                let v = eval(&x);
                (x, v)
            };
            if vc < worst_v.min(vr) {
                simplex[n] = (xc, vc);
                continue;
            }
            // shrink toward the best vertex
            let best_x = simplex[0].0.clone();
            for vertex in simplex.iter_mut().skip(1) {
                let x: Vec<f64> = best_x.iter().zip(&vertex.0).map(|(b, v)| b + 0.5 * (v - b)).collect();
                let v = eval(&x);
                *vertex = (x, v);
            }
        }
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (x, value) = simplex.swap_remove(0);
        Minimum { x, value, evals: counter.get() }
    }
}
