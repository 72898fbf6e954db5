//! Small derivative-free and finite-difference optimization toolkit.
//!
//! Every public routine speaks in maxima; minimization of `-f` happens
//! internally.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimSettings {
    pub max_iter: usize,
    pub x_tol: f64,
    pub f_tol: f64,
    /// Relative finite-difference step. `None` uses `cbrt(eps)`, scaled by
    /// `max(|x|, 1)` per coordinate.
    pub fd_step: Option<f64>,
}

impl Default for OptimSettings {
    fn default() -> Self {
        Self {
            max_iter: 500,
            x_tol: 1e-10,
            f_tol: 1e-12,
            fd_step: None,
        }
    }
}

impl OptimSettings {
    fn step_for(&self, x: f64) -> f64 {
        let rel = self.fd_step.unwrap_or_else(|| f64::EPSILON.cbrt());
        rel * x.abs().max(1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum1d {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Maximum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
}

/// Brent's method (golden section with parabolic steps) for a local
/// maximum of `f` on `[lo, hi]`.
///
/// The achievable location accuracy is bounded below by roughly
/// `sqrt(eps)·|x|`, since function values cannot resolve a flatter peak.
pub fn maximize_1d<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    settings: &OptimSettings,
) -> Result<Maximum1d> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "bracket must satisfy lo < hi, got [{lo}, {hi}]"
        )));
    }
    const GOLDEN: f64 = 0.381_966_011_250_105_1;
    let sqrt_eps = f64::EPSILON.sqrt();
    let g = |x: f64| -> Result<f64> {
        let v = f(x);
        if v.is_nan() {
            Err(Error::NonFinite { point: vec![x] })
        } else {
            Ok(-v)
        }
    };

    let (mut a, mut b) = (lo, hi);
    let mut x = a + GOLDEN * (b - a);
    let (mut w, mut v) = (x, x);
    let mut fx = g(x)?;
    let (mut fw, mut fv) = (fx, fx);
    let mut d: f64 = 0.0;
    let mut e: f64 = 0.0;

    for iter in 0..settings.max_iter {
        let mid = 0.5 * (a + b);
        let tol1 = sqrt_eps * x.abs() + settings.x_tol / 3.0;
        let tol2 = 2.0 * tol1;
        if (x - mid).abs() <= tol2 - 0.5 * (b - a) {
            return Ok(Maximum1d {
                x,
                value: -fx,
                iterations: iter,
            });
        }

        let mut golden_step = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let e_prev = e;
            e = d;
            if p.abs() < (0.5 * q * e_prev).abs() && p > q * (a - x) && p < q * (b - x) {
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = if mid >= x { tol1 } else { -tol1 };
                }
                golden_step = false;
            }
        }
        if golden_step {
            e = if x >= mid { a - x } else { b - x };
            d = GOLDEN * e;
        }

        let u = if d.abs() >= tol1 {
            x + d
        } else if d > 0.0 {
            x + tol1
        } else {
            x - tol1
        };
        let fu = g(u)?;

        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    Err(Error::MaxIterations {
        iterations: settings.max_iter,
        best_x: vec![x],
        best_f: -fx,
    })
}

/// Nelder–Mead simplex maximization of `f` from `x0`.
///
/// The initial simplex is deterministic: each coordinate is perturbed by 5%
/// of its value, or by 0.00025 when it is zero. Points where `f` is not
/// finite are treated as infinitely bad.
pub fn nelder_mead<F: Fn(&[f64]) -> f64>(
    f: F,
    x0: &[f64],
    settings: &OptimSettings,
) -> Result<Maximum> {
    let dim = x0.len();
    if dim == 0 {
        return Err(Error::InvalidArgument("nelder_mead needs at least one coordinate".into()));
    }
    let f0 = f(x0);
    if !f0.is_finite() {
        return Err(Error::NonFinite { point: x0.to_vec() });
    }
    // Minimize the negated objective.
    let cost = |x: &[f64]| -> f64 {
        let v = f(x);
        if v.is_finite() {
            -v
        } else {
            f64::INFINITY
        }
    };

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    simplex.push(x0.to_vec());
    for i in 0..dim {
        let mut v = x0.to_vec();
        v[i] = if v[i] != 0.0 { v[i] * 1.05 } else { 0.00025 };
        simplex.push(v);
    }
    let mut costs: Vec<f64> = simplex.iter().map(|v| cost(v)).collect();

    let centroid = |simplex: &[Vec<f64>], skip: usize| -> Vec<f64> {
        let mut c = vec![0.0; dim];
        for (j, v) in simplex.iter().enumerate() {
            if j != skip {
                for (ci, vi) in c.iter_mut().zip(v) {
                    *ci += vi;
                }
            }
        }
        c.iter_mut().for_each(|ci| *ci /= dim as f64);
        c
    };
    let along = |c: &[f64], v: &[f64], t: f64| -> Vec<f64> {
        c.iter().zip(v).map(|(ci, vi)| ci + t * (vi - ci)).collect()
    };

    for iter in 0..settings.max_iter {
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&i, &j| costs[i].total_cmp(&costs[j]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        costs = order.iter().map(|&i| costs[i]).collect();

        let diameter = simplex[1..]
            .iter()
            .flat_map(|v| v.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        let spread = costs[dim] - costs[0];
        if diameter < settings.x_tol || spread.abs() < settings.f_tol {
            return Ok(Maximum {
                x: simplex[0].clone(),
                value: -costs[0],
                iterations: iter,
            });
        }

        let c = centroid(&simplex, dim);
        let worst = simplex[dim].clone();
        let reflected = along(&c, &worst, -1.0);
        let fr = cost(&reflected);
        if fr < costs[0] {
            let expanded = along(&c, &worst, -2.0);
            let fe = cost(&expanded);
            if fe < fr {
                simplex[dim] = expanded;
                costs[dim] = fe;
            } else {
                simplex[dim] = reflected;
                costs[dim] = fr;
            }
            continue;
        }
        if fr < costs[dim - 1] {
            simplex[dim] = reflected;
            costs[dim] = fr;
            continue;
        }
        let (contracted, fc) = if fr < costs[dim] {
            let p = along(&c, &worst, -0.5);
            let fp = cost(&p);
            (p, fp)
        } else {
            let p = along(&c, &worst, 0.5);
            let fp = cost(&p);
            (p, fp)
        };
        if fc < fr.min(costs[dim]) {
            simplex[dim] = contracted;
            costs[dim] = fc;
            continue;
        }
        let best = simplex[0].clone();
        for j in 1..=dim {
            simplex[j] = along(&best, &simplex[j], 0.5);
            costs[j] = cost(&simplex[j]);
        }
    }

    let best = (0..=dim)
        .min_by(|&i, &j| costs[i].total_cmp(&costs[j]))
        .expect("simplex is nonempty");
    Err(Error::MaxIterations {
        iterations: settings.max_iter,
        best_x: simplex[best].clone(),
        best_f: -costs[best],
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Root {
    pub x: Vec<f64>,
    pub residual_norm: f64,
    pub iterations: usize,
}

/// Damped Newton iteration for `score(x) = 0` with a central-difference
/// Jacobian. Steps are halved until they stay inside `in_domain` and reduce
/// the residual norm. Converges when the residual norm drops below `tol`.
pub fn newton_solve<S, D>(
    score: S,
    in_domain: D,
    x0: &[f64],
    tol: f64,
    settings: &OptimSettings,
) -> Result<Root>
where
    S: Fn(&[f64]) -> Vec<f64>,
    D: Fn(&[f64]) -> bool,
{
    let dim = x0.len();
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut x = x0.to_vec();
    let mut r = score(&x);
    if r.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite { point: x });
    }
    let mut rn = norm(&r);

    for iter in 0..settings.max_iter {
        if rn < tol {
            return Ok(Root {
                x,
                residual_norm: rn,
                iterations: iter,
            });
        }
        // Jacobian columns by central differences of the score.
        let mut jac = vec![vec![0.0; dim]; dim];
        for j in 0..dim {
            let h = settings.step_for(x[j]);
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[j] += h;
            xm[j] -= h;
            if !in_domain(&xm) {
                xm = x.clone();
            }
            let span = xp[j] - xm[j];
            let rp = score(&xp);
            let rm = score(&xm);
            for i in 0..dim {
                jac[i][j] = (rp[i] - rm[i]) / span;
            }
        }
        let step = solve_linear(jac, r.iter().map(|v| -v).collect())
            .ok_or_else(|| Error::NonFinite { point: x.clone() })?;

        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let cand: Vec<f64> = x.iter().zip(&step).map(|(xi, si)| xi + t * si).collect();
            if in_domain(&cand) {
                let rc = score(&cand);
                let rcn = norm(&rc);
                if rcn.is_finite() && rcn < rn {
                    x = cand;
                    r = rc;
                    rn = rcn;
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !accepted {
            return Err(Error::MaxIterations {
                iterations: iter,
                best_x: x,
                best_f: rn,
            });
        }
    }
    if rn < tol {
        return Ok(Root {
            x,
            residual_norm: rn,
            iterations: settings.max_iter,
        });
    }
    Err(Error::MaxIterations {
        iterations: settings.max_iter,
        best_x: x,
        best_f: rn,
    })
}

// Gaussian elimination with partial pivoting; `None` when singular.
fn solve_linear(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col] == 0.0 || !a[pivot][col].is_finite() {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// Inverse of a small dense matrix, `None` when singular.
pub fn invert(matrix: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = matrix.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        cols.push(solve_linear(matrix.to_vec(), e)?);
    }
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect())
}

fn eval_finite<F: Fn(&[f64]) -> f64>(f: &F, x: &[f64]) -> Result<f64> {
    let v = f(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { point: x.to_vec() })
    }
}

/// Central-difference gradient.
pub fn fd_gradient<F: Fn(&[f64]) -> f64>(
    f: F,
    x: &[f64],
    settings: &OptimSettings,
) -> Result<Vec<f64>> {
    let mut grad = Vec::with_capacity(x.len());
    let mut probe = x.to_vec();
    for i in 0..x.len() {
        let h = settings.step_for(x[i]);
        probe[i] = x[i] + h;
        let fp = eval_finite(&f, &probe)?;
        probe[i] = x[i] - h;
        let fm = eval_finite(&f, &probe)?;
        probe[i] = x[i];
        grad.push((fp - fm) / (2.0 * h));
    }
    Ok(grad)
}

/// Central-difference Hessian, symmetrized as `(H + Hᵀ)/2`.
pub fn fd_hessian<F: Fn(&[f64]) -> f64>(
    f: F,
    x: &[f64],
    settings: &OptimSettings,
) -> Result<Vec<Vec<f64>>> {
    let n = x.len();
    let f0 = eval_finite(&f, x)?;
    let steps: Vec<f64> = x.iter().map(|&xi| settings.step_for(xi)).collect();
    let mut h = vec![vec![0.0; n]; n];
    let mut probe = x.to_vec();
    for i in 0..n {
        probe[i] = x[i] + steps[i];
        let fp = eval_finite(&f, &probe)?;
        probe[i] = x[i] - steps[i];
        let fm = eval_finite(&f, &probe)?;
        probe[i] = x[i];
        h[i][i] = (fp - 2.0 * f0 + fm) / (steps[i] * steps[i]);

        for j in 0..i {
            let mut corner = |si: f64, sj: f64| -> Result<f64> {
                probe[i] = x[i] + si * steps[i];
                probe[j] = x[j] + sj * steps[j];
                let v = eval_finite(&f, &probe);
                probe[i] = x[i];
                probe[j] = x[j];
                v
            };
            let pp = corner(1.0, 1.0)?;
            let pm = corner(1.0, -1.0)?;
            let mp = corner(-1.0, 1.0)?;
            let mm = corner(-1.0, -1.0)?;
            let v = (pp - pm - mp + mm) / (4.0 * steps[i] * steps[j]);
            h[i][j] = v;
            h[j][i] = v;
        }
    }
    for i in 0..n {
        for j in 0..i {
            let avg = 0.5 * (h[i][j] + h[j][i]);
            h[i][j] = avg;
            h[j][i] = avg;
        }
    }
    Ok(h)
}
