//! Derivative-free minimizers used by the maximum-likelihood fits.

/// Golden-section search for the minimum of a unimodal `f` on [lo, hi].
pub fn golden_section<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    while (hi - lo).abs() > tol * (1.0 + c.abs()) {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    if fc < fd {
        c
    } else {
        d
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub point: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoConvergence {
    pub iterations: usize,
    /// Best objective value at regular intervals of the run.
    pub trace: Vec<f64>,
    pub best: Minimum,
}

/// Nelder–Mead simplex minimization.
///
/// Stops when the spread of objective values across the simplex is at most
/// `ftol`, or when the simplex has collapsed below `xtol` in every coordinate.
pub fn nelder_mead<F: Fn(&[f64]) -> f64>(
    f: F,
    start: &[f64],
    step: &[f64],
    ftol: f64,
    xtol: f64,
    max_iter: usize,
) -> Result<Minimum, NoConvergence> {
    let n = start.len();
    let eval = |x: &[f64]| {
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((start.to_vec(), eval(start)));
    for i in 0..n {
        let mut x = start.to_vec();
        x[i] += step[i];
        let v = eval(&x);
        simplex.push((x, v));
    }
    let mut trace = Vec::new();
    for iter in 0..max_iter {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if iter % 50 == 0 {
            trace.push(simplex[0].1);
        }
        let spread = simplex[n].1 - simplex[0].1;
        let size = (0..n)
            .map(|i| simplex.iter().map(|p| (p.0[i] - simplex[0].0[i]).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if (simplex[0].1.is_finite() && spread <= ftol) || size <= xtol {
            return Ok(Minimum { point: simplex[0].0.clone(), value: simplex[0].1, iterations: iter });
        }
        let centroid: Vec<f64> =
            (0..n).map(|i| simplex[..n].iter().map(|p| p.0[i]).sum::<f64>() / n as f64).collect();
        let along = |t: f64| -> Vec<f64> {
            (0..n).map(|i| centroid[i] + t * (simplex[n].0[i] - centroid[i])).collect()
        };
        let xr = along(-1.0);
        let fr = eval(&xr);
        if fr < simplex[0].1 {
            let xe = along(-2.0);
            let fe = eval(&xe);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
        } else {
            let (xc, fc) = if fr < simplex[n].1 {
                let x = along(-0.5);
                let v = eval(&x);
                (x, v)
            } else {
                let x = along(0.5);
                let v = eval(&x);
                (x, v)
            };
            if fc < simplex[n].1.min(fr) {
                simplex[n] = (xc, fc);
            } else {
                let best = simplex[0].0.clone();
                for p in simplex.iter_mut().skip(1) {
                    for i in 0..n {
                        p.0[i] = best[i] + 0.5 * (p.0[i] - best[i]);
                    }
                    p.1 = eval(&p.0);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    trace.push(simplex[0].1);
    Err(NoConvergence {
        iterations: max_iter,
        trace,
        best: Minimum { point: simplex[0].0.clone(), value: simplex[0].1, iterations: max_iter },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_minimum() {
        let x = golden_section(|x| (x - 1.3).powi(2), 0.0, 5.0, 1e-12);
        assert!((x - 1.3).abs() < 1e-8);
    }

    #[test]
    fn nelder_mead_rosenbrock() {
        let rosen = |p: &[f64]| (1.0 - p[0]).powi(2) + 100.0 * (p[1] - p[0] * p[0]).powi(2);
        let m = nelder_mead(rosen, &[-1.2, 1.0], &[0.5, 0.5], 1e-14, 1e-12, 10_000).unwrap();
        assert!((m.point[0] - 1.0).abs() < 1e-4 && (m.point[1] - 1.0).abs() < 1e-4, "{:?}", m.point);
    }

    #[test]
    fn nelder_mead_reports_trace_on_budget_exhaustion() {
        let rosen = |p: &[f64]| (1.0 - p[0]).powi(2) + 100.0 * (p[1] - p[0] * p[0]).powi(2);
        let err = nelder_mead(rosen, &[-1.2, 1.0], &[0.5, 0.5], 0.0, 0.0, 20).unwrap_err();
        assert_eq!(err.iterations, 20);
        assert!(!err.trace.is_empty());
    }
}
