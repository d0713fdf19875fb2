//! Adaptive Gauss-Kronrod quadrature (7-15 pair) with globally greedy
//! subdivision: the segment with the largest error estimate is bisected until
//! the summed estimate meets the tolerance or the segment budget runs out.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Kronrod abscissae for the 7-15 rule (positive half, descending).
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// Embedded 7-point Gauss weights (odd Kronrod abscissae plus centre).
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Result of one 15-point Kronrod evaluation on a segment.
#[derive(Debug, Clone, Copy)]
pub struct Gk15 {
    pub value: f64,
    pub error: f64,
}

/// 15-point Kronrod rule with the embedded 7-point Gauss error estimate,
/// using the standard QUADPACK error rescaling.
pub fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Gk15 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);

    let fc = f(mid);
    let mut res_g = fc * WG[3];
    let mut res_k = fc * WGK[7];
    let mut resabs = fc.abs() * WGK[7];

    let mut fv = [0.0f64; 15];
    fv[7] = fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(mid - dx);
        let f2 = f(mid + dx);
        fv[j] = f1;
        fv[14 - j] = f2;
        let sum = f1 + f2;
        res_k += WGK[j] * sum;
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * sum;
        }
    }

    let mean = 0.5 * res_k;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv[j] - mean).abs() + (fv[14 - j] - mean).abs());
    }

    let value = res_k * half;
    resabs *= half.abs();
    resasc *= half.abs();
    let mut error = ((res_k - res_g) * half).abs();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * 1.0f64.min((200.0 * error / resasc).powf(1.5));
    }
    let tiny = f64::MIN_POSITIVE / (50.0 * f64::EPSILON);
    if resabs > tiny {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    Gk15 { value, error }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.partial_cmp(&other.error).unwrap_or(Ordering::Equal)
    }
}

/// Outcome of an adaptive integration. `converged` is false when the segment
/// budget ran out first; `error` is then the achieved estimate.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub segments: usize,
    pub converged: bool,
}

/// Adaptively integrate `f` over `[a, b]` to mixed tolerance
/// `abs_tol + rel_tol * |integral|`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_segments: usize,
) -> QuadResult {
    integrate_cells(f, &[a, b], abs_tol, rel_tol, max_segments)
}

/// Same as [`integrate`] but seeded with an initial partition `edges`
/// (ascending). Useful when integrand kinks are confined to known cells.
pub fn integrate_cells<F: Fn(f64) -> f64>(
    f: &F,
    edges: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_segments: usize,
) -> QuadResult {
    assert!(edges.len() >= 2, "need at least one cell");
    let mut heap = BinaryHeap::new();
    let mut total = 0.0;
    let mut total_err = 0.0;
    for w in edges.windows(2) {
        if w[1] <= w[0] {
            continue;
        }
        let r = gk15(f, w[0], w[1]);
        total += r.value;
        total_err += r.error;
        heap.push(Segment { a: w[0], b: w[1], value: r.value, error: r.error });
    }

    while total_err > abs_tol.max(rel_tol * total.abs()) && heap.len() < max_segments {
        let worst = match heap.pop() {
            Some(s) => s,
            None => break,
        };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval at floating-point resolution; put it back and stop.
            heap.push(worst);
            break;
        }
        let left = gk15(f, worst.a, mid);
        let right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(Segment { a: worst.a, b: mid, value: left.value, error: left.error });
        heap.push(Segment { a: mid, b: worst.b, value: right.value, error: right.error });
    }

    // Re-sum from segments to shed accumulated cancellation in the updates.
    let (mut value, mut error) = (0.0, 0.0);
    let n = heap.len();
    for s in heap.into_iter() {
        value += s.value;
        error += s.error;
    }
    let converged = error <= abs_tol.max(rel_tol * value.abs());
    QuadResult { value, error, segments: n, converged }
}

/// Cumulative Simpson integration of uniformly sampled values with step `dt`.
/// Returns the running integral at every sample point (same length as input).
///
/// Composite Simpson covers even-index prefixes; odd cells take the
/// three-point-fitted half-parabola correction, keeping O(dt^4) accuracy at
/// every grid point rather than only at even ones.
pub fn cumulative_simpson(values: &[f64], dt: f64) -> Vec<f64> {
    let n = values.len();
    let mut out = vec![0.0; n];
    if n < 2 {
        return out;
    }
    if n == 2 {
        out[1] = 0.5 * dt * (values[0] + values[1]);
        return out;
    }
    for k in (2..n).step_by(2) {
        out[k] = out[k - 2] + dt / 3.0 * (values[k - 2] + 4.0 * values[k - 1] + values[k]);
    }
    for k in (1..n).step_by(2) {
        // Integral over [k-1, k] of the parabola through k-1, k, k+1 (or the
        // trailing parabola when k is the last point).
        if k + 1 < n {
            out[k] = out[k - 1]
                + dt / 12.0 * (5.0 * values[k - 1] + 8.0 * values[k] - values[k + 1]);
        } else {
            out[k] = out[k - 1]
                + dt / 12.0 * (-values[k - 2] + 8.0 * values[k - 1] + 5.0 * values[k]);
        }
    }
    out
}
