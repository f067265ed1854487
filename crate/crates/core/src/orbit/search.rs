//! Bounded Levenberg-Marquardt with finite-difference Jacobians, restarted
//! from a Halton sequence.

use nalgebra::{DMatrix, DVector};

const PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const JACOBIAN_STEP: f64 = 1e-7;

/// Radical inverse of `index` in `base`.
pub fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut out = 0.0;
    while index > 0 {
        out += f * (index % base) as f64;
        index /= base;
        f *= inv;
    }
    out
}

pub fn halton_point(index: u64, dim: usize) -> Vec<f64> {
    (0..dim)
        .map(|d| radical_inverse(index, PRIMES[d % PRIMES.len()]))
        .collect()
}

/// Start of restart `k`: the origin first, then Halton points offset by the seed.
pub fn start_point(k: usize, seed: u64, bounds: &[(f64, f64)]) -> Vec<f64> {
    if k == 0 {
        return bounds
            .iter()
            .map(|&(lo, hi)| 0.0f64.clamp(lo, hi))
            .collect();
    }
    halton_point(seed.wrapping_add(k as u64), bounds.len())
        .into_iter()
        .zip(bounds)
        .map(|(u, &(lo, hi))| lo + u * (hi - lo))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    /// `‖r(x)‖`.
    pub residual: f64,
    pub evaluations: usize,
}

fn project(x: &mut [f64], bounds: &[(f64, f64)]) {
    for (v, &(lo, hi)) in x.iter_mut().zip(bounds) {
        *v = v.clamp(lo, hi);
    }
}

fn norm(r: &[f64]) -> f64 {
    r.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Minimizes `‖r(x)‖²` over the box from `start`, stopping when
/// `‖r‖ < tol` or after `budget` evaluations of `r`.
pub fn levenberg_marquardt(
    residual: &dyn Fn(&[f64]) -> Vec<f64>,
    start: &[f64],
    bounds: &[(f64, f64)],
    tol: f64,
    budget: usize,
) -> Minimum {
    let n = start.len();
    let mut x = start.to_vec();
    project(&mut x, bounds);
    let mut r = residual(&x);
    let mut evals = 1;
    let mut cost = norm(&r);
    let mut damping = 1e-3;
    while cost >= tol && evals + 2 * n < budget {
        let m = r.len();
        let mut jac = DMatrix::zeros(m, n);
        for j in 0..n {
            let mut p = x.clone();
            let mut q = x.clone();
            p[j] += JACOBIAN_STEP;
            q[j] -= JACOBIAN_STEP;
            let (rp, rq) = (residual(&p), residual(&q));
            for i in 0..m {
                jac[(i, j)] = (rp[i] - rq[i]) / (2.0 * JACOBIAN_STEP);
            }
        }
        evals += 2 * n;
        let rv = DVector::from_column_slice(&r);
        let grad = jac.transpose() * &rv;
        let normal = jac.transpose() * &jac;
        if grad.amax() < 1e-15 {
            break;
        }
        let mut improved = false;
        while evals < budget && damping <= 1e12 {
            let mut a = normal.clone();
            for d in 0..n {
                a[(d, d)] += damping * (normal[(d, d)] + 1.0);
            }
            let Some(step) = a.lu().solve(&(-&grad)) else {
                damping *= 4.0;
                continue;
            };
            let mut trial: Vec<f64> = x.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
            project(&mut trial, bounds);
            let rt = residual(&trial);
            evals += 1;
            let ct = norm(&rt);
            if ct < cost {
                x = trial;
                r = rt;
                cost = ct;
                damping = (damping / 3.0).max(1e-12);
                improved = true;
                break;
            }
            damping *= 4.0;
        }
        if !improved {
            break;
        }
    }
    Minimum {
        x,
        residual: cost,
        evaluations: evals,
    }
}
