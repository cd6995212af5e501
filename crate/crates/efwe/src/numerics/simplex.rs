//! Derivative-free minimization with the Nelder-Mead simplex.

/// Outcome of [`minimize`]: best point, its objective value, whether the
/// simplex collapsed below tolerance, and the iteration count.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimizeResult {
    pub x: Vec<f64>,
    pub fx: f64,
    pub converged: bool,
    pub iters: usize,
}

/// Minimizes `f` from `init` with the Nelder-Mead reflect/expand/contract/
/// shrink moves (coefficients 1, 2, 1/2, 1/2).
///
/// Convergence requires both the simplex diameter and the objective spread
/// across vertices to fall below `tol`. Non-finite objective values are
/// treated as `+inf`, so the simplex walks away from overflow regions
/// instead of aborting. The iteration cap is `400 * dim`; hitting it
/// returns the best vertex with `converged = false`.
pub fn minimize<F>(mut f: F, init: &[f64], tol: f64) -> MinimizeResult
where
    F: FnMut(&[f64]) -> f64,
{
    minimize_with_step(&mut f, init, tol, 0.25)
}

/// Same as [`minimize`] but with a caller-chosen initial step fraction used
/// to build the starting simplex; restart loops shrink this to polish.
pub fn minimize_with_step<F>(f: &mut F, init: &[f64], tol: f64, step: f64) -> MinimizeResult
where
    F: FnMut(&[f64]) -> f64,
{
    assert!(
        !init.is_empty(),
        "minimize requires at least one coordinate"
    );
    assert!(tol > 0.0 && tol.is_finite(), "tolerance must be positive");
    let n = init.len();
    let clean = |v: f64| if v.is_finite() { v } else { f64::INFINITY };

    // Initial simplex: init plus one vertex displaced along each axis.
    let mut verts: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    let mut fvals: Vec<f64> = Vec::with_capacity(n + 1);
    verts.push(init.to_vec());
    fvals.push(clean(f(init)));
    for i in 0..n {
        let mut v = init.to_vec();
        let d = step * v[i].abs().max(1.0);
        v[i] += d;
        fvals.push(clean(f(&v)));
        verts.push(v);
    }

    let max_iters = 400 * n;
    let mut iters = 0;
    loop {
        // Order vertices by objective value.
        let mut idx: Vec<usize> = (0..=n).collect();
        idx.sort_by(|&a, &b| fvals[a].total_cmp(&fvals[b]));
        let best = idx[0];
        let worst = idx[n];
        let second_worst = idx[n - 1];

        let diameter = verts
            .iter()
            .map(|v| {
                v.iter()
                    .zip(&verts[best])
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0f64, f64::max)
            })
            .fold(0.0f64, f64::max);
        let spread = fvals[worst] - fvals[best];
        if diameter < tol && (spread.abs() < tol || !spread.is_finite() && fvals[best].is_finite())
        {
            return MinimizeResult {
                x: verts[best].clone(),
                fx: fvals[best],
                converged: true,
                iters,
            };
        }
        if iters >= max_iters {
            return MinimizeResult {
                x: verts[best].clone(),
                fx: fvals[best],
                converged: false,
                iters,
            };
        }
        iters += 1;

        // Centroid of all vertices except the worst.
        let mut centroid = vec![0.0; n];
        for (k, v) in verts.iter().enumerate() {
            if k != worst {
                for (c, x) in centroid.iter_mut().zip(v) {
                    *c += x / n as f64;
                }
            }
        }
        let lerp = |to: &[f64], coef: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(to)
                .map(|(c, w)| c + coef * (w - c))
                .collect()
        };

        let reflected = lerp(&verts[worst], -1.0);
        let fr = clean(f(&reflected));
        if fr < fvals[best] {
            let expanded = lerp(&verts[worst], -2.0);
            let fe = clean(f(&expanded));
            if fe < fr {
                verts[worst] = expanded;
                fvals[worst] = fe;
            } else {
                verts[worst] = reflected;
                fvals[worst] = fr;
            }
        } else if fr < fvals[second_worst] {
            verts[worst] = reflected;
            fvals[worst] = fr;
        } else {
            // Contract toward the better of the worst vertex and its reflection.
            let (toward, f_toward) = if fr < fvals[worst] {
                (reflected.clone(), fr)
            } else {
                (verts[worst].clone(), fvals[worst])
            };
            let contracted: Vec<f64> = centroid
                .iter()
                .zip(&toward)
                .map(|(c, w)| c + 0.5 * (w - c))
                .collect();
            let fc = clean(f(&contracted));
            if fc < f_toward {
                verts[worst] = contracted;
                fvals[worst] = fc;
            } else {
                // Shrink every vertex toward the best.
                let anchor = verts[best].clone();
                for (k, v) in verts.iter_mut().enumerate() {
                    if k != best {
                        for (x, a) in v.iter_mut().zip(&anchor) {
                            *x = a + 0.5 * (*x - a);
                        }
                        fvals[k] = clean(f(v));
                    }
                }
            }
        }
    }
}

// ======================================================================
// tests
// ======================================================================

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bowl() {
        let f = |v: &[f64]| (v[0] - 3.0).powi(2) + 2.0 * (v[1] + 1.0).powi(2);
        let r = minimize(f, &[0.0, 0.0], 1e-10);
        assert!(r.converged);
        assert!((r.x[0] - 3.0).abs() < 1e-6, "x0 = {}", r.x[0]);
        assert!((r.x[1] + 1.0).abs() < 1e-6, "x1 = {}", r.x[1]);
        assert!(r.fx < 1e-10);
    }

    #[test]
    fn rosenbrock_valley() {
        let f = |v: &[f64]| (1.0 - v[0]).powi(2) + 100.0 * (v[1] - v[0] * v[0]).powi(2);
        let r = minimize(f, &[-1.2, 1.0], 1e-12);
        assert!(r.converged, "iters {}", r.iters);
        assert!((r.x[0] - 1.0).abs() < 1e-4);
        assert!((r.x[1] - 1.0).abs() < 1e-4);
    }

    #[test]
    fn overflow_region_is_avoided() {
        // Objective overflows left of the origin; the minimum is at 2.
        let f = |v: &[f64]| {
            if v[0] < 0.0 {
                f64::INFINITY
            } else {
                (v[0] - 2.0).powi(2)
            }
        };
        let r = minimize(f, &[0.5], 1e-10);
        assert!(r.converged);
        assert!((r.x[0] - 2.0).abs() < 1e-6);
    }

    #[test]
    fn iteration_cap_reports_nonconvergence() {
        // A needle-thin scaled valley cannot converge to 1e-14 in few moves.
        let f = |v: &[f64]| v[0].powi(2) * 1e8 + v[1].powi(2) * 1e-8;
        let mut budget = 0usize;
        let mut wrapped = |v: &[f64]| {
            budget += 1;
            f(v)
        };
        let r = minimize_with_step(&mut wrapped, &[5.0e3, 5.0e3], 1e-14, 0.25);
        assert!(r.iters <= 400 * 2);
        if !r.converged {
            assert!(r.fx.is_finite());
        }
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        // A convex quadratic is minimized from any nearby start.
        #[test]
        fn convex_quadratic_from_random_starts(
            x0 in -8.0f64..8.0,
            y0 in -8.0f64..8.0,
            a in 0.5f64..4.0,
            b in 0.5f64..4.0,
        ) {
            let f = move |v: &[f64]| a * (v[0] - 1.5).powi(2) + b * (v[1] + 0.5).powi(2);
            let r = minimize(f, &[x0, y0], 1e-10);
            prop_assert!(r.converged);
            prop_assert!((r.x[0] - 1.5).abs() < 1e-5);
            prop_assert!((r.x[1] + 0.5).abs() < 1e-5);
        }
    }
}
