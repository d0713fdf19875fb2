//! Cubic Hermite interpolation helpers shared by the dense trajectory output
//! and the sampled coefficient grids.

/// Cubic Hermite value at `t` on `[t0, t1]` from endpoint values and slopes.
pub fn hermite_value(t: f64, t0: f64, t1: f64, y0: f64, y1: f64, m0: f64, m1: f64) -> f64 {
    let h = t1 - t0;
    let s = (t - t0) / h;
    let s2 = s * s;
    let s3 = s2 * s;
    let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    let h10 = s3 - 2.0 * s2 + s;
    let h01 = -2.0 * s3 + 3.0 * s2;
    let h11 = s3 - s2;
    h00 * y0 + h10 * h * m0 + h01 * y1 + h11 * h * m1
}

/// Uniformly sampled scalar function with cubic Hermite evaluation.
///
/// Slopes come from five-point differences (cubic-fit one-sided stencils near
/// the ends), giving O(h^4) interpolation error for smooth data. Evaluation
/// outside the grid clamps to the end values.
#[derive(Debug, Clone)]
pub struct UniformGrid {
    pub t0: f64,
    pub dt: f64,
    pub values: Vec<f64>,
}

impl UniformGrid {
    pub fn new(t0: f64, dt: f64, values: Vec<f64>) -> Self {
        assert!(dt > 0.0 && values.len() >= 2);
        Self { t0, dt, values }
    }

    pub fn t_end(&self) -> f64 {
        self.t0 + self.dt * (self.values.len() - 1) as f64
    }

    fn slope(&self, k: usize) -> f64 {
        let v = &self.values;
        let n = v.len();
        let h = self.dt;
        if n < 4 {
            // Too few points for the high-order stencils.
            return if k == 0 {
                (v[1] - v[0]) / h
            } else if k == n - 1 {
                (v[n - 1] - v[n - 2]) / h
            } else {
                (v[k + 1] - v[k - 1]) / (2.0 * h)
            };
        }
        if k == 0 {
            (-11.0 * v[0] + 18.0 * v[1] - 9.0 * v[2] + 2.0 * v[3]) / (6.0 * h)
        } else if k == 1 {
            (-2.0 * v[0] - 3.0 * v[1] + 6.0 * v[2] - v[3]) / (6.0 * h)
        } else if k == n - 2 {
            (v[n - 4] - 6.0 * v[n - 3] + 3.0 * v[n - 2] + 2.0 * v[n - 1]) / (6.0 * h)
        } else if k == n - 1 {
            (-2.0 * v[n - 4] + 9.0 * v[n - 3] - 18.0 * v[n - 2] + 11.0 * v[n - 1]) / (6.0 * h)
        } else {
            (v[k - 2] - 8.0 * v[k - 1] + 8.0 * v[k + 1] - v[k + 2]) / (12.0 * h)
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        let n = self.values.len();
        if t <= self.t0 {
            return self.values[0];
        }
        if t >= self.t_end() {
            return self.values[n - 1];
        }
        let k = (((t - self.t0) / self.dt) as usize).min(n - 2);
        let tk = self.t0 + k as f64 * self.dt;
        hermite_value(
            t,
            tk,
            tk + self.dt,
            self.values[k],
            self.values[k + 1],
            self.slope(k),
            self.slope(k + 1),
        )
    }
}

/// Piecewise-linear interpolation over non-uniform knots, used when model
/// coefficients arrive as sampled tables. Clamps outside the knot range.
#[derive(Debug, Clone)]
pub struct LinearTable {
    pub knots: Vec<f64>,
    pub values: Vec<f64>,
}

impl LinearTable {
    pub fn new(knots: Vec<f64>, values: Vec<f64>) -> Self {
        assert_eq!(knots.len(), values.len());
        assert!(knots.len() >= 2);
        assert!(knots.windows(2).all(|w| w[1] > w[0]), "knots must increase");
        Self { knots, values }
    }

    pub fn eval(&self, t: f64) -> f64 {
        let n = self.knots.len();
        if t <= self.knots[0] {
            return self.values[0];
        }
        if t >= self.knots[n - 1] {
            return self.values[n - 1];
        }
        let k = match self.knots.binary_search_by(|x| x.partial_cmp(&t).unwrap()) {
            Ok(i) => return self.values[i],
            Err(i) => i - 1,
        };
        let w = (t - self.knots[k]) / (self.knots[k + 1] - self.knots[k]);
        self.values[k] * (1.0 - w) + self.values[k + 1] * w
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn hermite_reproduces_cubics_exactly() {
        // p(t) = 2t^3 - t^2 + 3t - 5 on [1, 2.5]; Hermite data from p, p'.
        let p = |t: f64| 2.0 * t.powi(3) - t * t + 3.0 * t - 5.0;
        let dp = |t: f64| 6.0 * t * t - 2.0 * t + 3.0;
        for i in 0..=20 {
            let t = 1.0 + 1.5 * i as f64 / 20.0;
            let v = hermite_value(t, 1.0, 2.5, p(1.0), p(2.5), dp(1.0), dp(2.5));
            assert_relative_eq!(v, p(t), max_relative = 1e-13);
        }
    }

    #[test]
    fn uniform_grid_converges_fourth_order() {
        let f = |t: f64| (1.3 * t).sin() * (-0.4 * t).exp();
        let build = |n: usize| {
            let dt = 2.0 / (n - 1) as f64;
            UniformGrid::new(0.0, dt, (0..n).map(|k| f(k as f64 * dt)).collect())
        };
        let err = |g: &UniformGrid| {
            (0..500)
                .map(|i| {
                    let t = 2.0 * (i as f64 + 0.5) / 500.0;
                    (g.eval(t) - f(t)).abs()
                })
                .fold(0.0f64, f64::max)
        };
        let e1 = err(&build(41));
        let e2 = err(&build(81));
        // Five-point-slope Hermite: error should drop by ~2^4.
        assert!(e2 < e1 / 10.0, "e1={e1:.3e} e2={e2:.3e}");
    }

    #[test]
    fn linear_table_interpolates_and_clamps() {
        let tab = LinearTable::new(vec![0.0, 1.0, 3.0], vec![2.0, 4.0, 0.0]);
        assert_relative_eq!(tab.eval(0.5), 3.0);
        assert_relative_eq!(tab.eval(2.0), 2.0);
        assert_relative_eq!(tab.eval(-1.0), 2.0);
        assert_relative_eq!(tab.eval(9.0), 0.0);
    }
}
