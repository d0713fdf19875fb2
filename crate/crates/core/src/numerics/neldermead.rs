//! Nelder-Mead simplex minimization (low dimension, derivative-free).
//! Standard reflection/expansion/contraction/shrink coefficients.

/// Outcome of a simplex search.
#[derive(Debug, Clone)]
pub struct NmResult {
    pub x: Vec<f64>,
    pub f: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Minimize `f` starting from `x0` with an axis-aligned initial simplex of
/// edge `scale`. Stops when the simplex collapses below `xtol` and the value
/// spread below `ftol`, or after `max_iter` reflections.
pub fn minimize<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    scale: f64,
    xtol: f64,
    ftol: f64,
    max_iter: usize,
) -> NmResult {
    let n = x0.len();
    assert!(n >= 1);
    let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += scale;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|x| f(x)).collect();

    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        iterations += 1;
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap());
        let best = order[0];
        let worst = order[n];
        let second_worst = order[n - 1];

        let diameter = (1..=n)
            .map(|k| {
                simplex[order[k]]
                    .iter()
                    .zip(&simplex[best])
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0f64, f64::max)
            })
            .fold(0.0f64, f64::max);
        if diameter < xtol && (values[worst] - values[best]).abs() < ftol {
            converged = true;
            break;
        }

        // Centroid of all but the worst vertex.
        let mut centroid = vec![0.0; n];
        for &idx in order.iter().take(n) {
            for (c, x) in centroid.iter_mut().zip(&simplex[idx]) {
                *c += x / n as f64;
            }
        }

        let blend = |a: &[f64], b: &[f64], w: f64| -> Vec<f64> {
            a.iter().zip(b).map(|(ai, bi)| ai + w * (ai - bi)).collect()
        };
        let reflected = blend(&centroid, &simplex[worst], alpha);
        let fr = f(&reflected);

        if fr < values[best] {
            let expanded = blend(&centroid, &simplex[worst], gamma);
            let fe = f(&expanded);
            if fe < fr {
                simplex[worst] = expanded;
                values[worst] = fe;
            } else {
                simplex[worst] = reflected;
                values[worst] = fr;
            }
        } else if fr < values[second_worst] {
            simplex[worst] = reflected;
            values[worst] = fr;
        } else {
            let contracted: Vec<f64> = if fr < values[worst] {
                centroid.iter().zip(&reflected).map(|(c, r)| c + rho * (r - c)).collect()
            } else {
                centroid.iter().zip(&simplex[worst]).map(|(c, w)| c + rho * (w - c)).collect()
            };
            let fc = f(&contracted);
            if fc < values[worst].min(fr) {
                simplex[worst] = contracted;
                values[worst] = fc;
            } else {
                // Shrink toward the best vertex.
                let best_x = simplex[best].clone();
                for idx in 0..=n {
                    if idx == best {
                        continue;
                    }
                    for (x, b) in simplex[idx].iter_mut().zip(&best_x) {
                        *x = b + sigma * (*x - b);
                    }
                    values[idx] = f(&simplex[idx]);
                }
            }
        }
    }

    let mut best = 0;
    for i in 1..=n {
        if values[i] < values[best] {
            best = i;
        }
    }
    NmResult { x: simplex[best].clone(), f: values[best], iterations, converged }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn quadratic_bowl() {
        let r = minimize(
            |x| (x[0] - 1.5).powi(2) + 3.0 * (x[1] + 0.5).powi(2),
            &[0.0, 0.0],
            0.5,
            1e-10,
            1e-12,
            500,
        );
        assert!(r.converged);
        assert_relative_eq!(r.x[0], 1.5, epsilon = 1e-6);
        assert_relative_eq!(r.x[1], -0.5, epsilon = 1e-6);
    }

    #[test]
    fn rosenbrock_from_standard_start() {
        let r = minimize(
            |x| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2),
            &[-1.2, 1.0],
            0.5,
            1e-10,
            1e-14,
            2000,
        );
        assert_relative_eq!(r.x[0], 1.0, epsilon = 1e-4);
        assert_relative_eq!(r.x[1], 1.0, epsilon = 1e-4);
    }

    #[test]
    fn periodic_objective_stays_finite() {
        // Smooth periodic surface: must terminate by simplex collapse.
        let r = minimize(
            |x| (x[0].sin() * x[1].cos()) + 0.1 * (x[0] * x[0] + x[1] * x[1]),
            &[1.0, 2.0],
            0.3,
            1e-9,
            1e-12,
            1000,
        );
        assert!(r.f.is_finite());
        assert!(r.converged);
    }
}
