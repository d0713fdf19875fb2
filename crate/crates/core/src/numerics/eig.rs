//! Cyclic Jacobi eigensolver for real symmetric matrices, with a Hermitian
//! front-end via the real-symmetric embedding
//! `H = A + iB  ->  S = [[A, -B], [B, A]]`.
//!
//! Every eigenvalue of `H` appears twice in `S`; a real eigenvector `(u; v)`
//! of `S` maps to the complex eigenvector `u + iv` of `H`. Within a
//! degenerate cluster the doubled real vectors are complex-linearly
//! dependent (`z` and `iz`), so the complex representatives are re-selected
//! by Gram-Schmidt with a rank threshold.

use nalgebra::{Complex, DMatrix, Matrix3};

type C64 = Complex<f64>;

/// Closed-form eigenvalues (ascending) of a symmetric 3×3 matrix by the
/// trigonometric method. Used on hot paths (map norms, rate envelopes) where
/// spinning up the iterative solver would dominate; agreement with the
/// Jacobi solver is pinned by tests.
pub fn sym3_eigenvalues(m: &Matrix3<f64>) -> [f64; 3] {
    let p1 = m[(0, 1)] * m[(0, 1)] + m[(0, 2)] * m[(0, 2)] + m[(1, 2)] * m[(1, 2)];
    if p1 == 0.0 {
        let mut d = [m[(0, 0)], m[(1, 1)], m[(2, 2)]];
        d.sort_by(|a, b| a.partial_cmp(b).unwrap());
        return d;
    }
    let q = (m[(0, 0)] + m[(1, 1)] + m[(2, 2)]) / 3.0;
    let p2 = (m[(0, 0)] - q).powi(2) + (m[(1, 1)] - q).powi(2) + (m[(2, 2)] - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    let b = (m - Matrix3::identity() * q) / p;
    let r = (0.5 * b.determinant()).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let e1 = q + 2.0 * p * phi.cos();
    let e3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::FRAC_PI_3).cos();
    let e2 = 3.0 * q - e1 - e3;
    [e3, e2, e1]
}

/// Eigendecomposition of a real symmetric matrix by cyclic Jacobi sweeps.
/// Returns eigenvalues ascending; `vectors` columns match their order.
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: Option<DMatrix<f64>>,
}

/// Cyclic Jacobi with the classic threshold schedule: the first sweeps skip
/// rotations below a shrinking off-diagonal threshold, later sweeps rotate
/// on every non-zero entry. Converges when the off-diagonal sum vanishes.
pub fn jacobi_symmetric(a: &DMatrix<f64>, want_vectors: bool) -> SymmetricEigen {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "matrix must be square");
    let mut m = a.clone();
    let mut vecs = want_vectors.then(|| DMatrix::<f64>::identity(n, n));

    const MAX_SWEEPS: usize = 60;
    for sweep in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m[(p, q)].abs();
            }
        }
        if off == 0.0 {
            break;
        }
        let threshold = if sweep < 3 { 0.2 * off / (n * n) as f64 } else { 0.0 };

        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let small = 100.0 * f64::EPSILON * (m[(p, p)].abs() + m[(q, q)].abs());
                if apq.abs() <= threshold.max(0.0) || apq.abs() < small.max(f64::MIN_POSITIVE) {
                    if apq.abs() < small.max(f64::MIN_POSITIVE) && apq != 0.0 {
                        m[(p, q)] = 0.0;
                        m[(q, p)] = 0.0;
                    }
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                let (app, aqq) = (m[(p, p)], m[(q, q)]);
                m[(p, p)] = app - t * apq;
                m[(q, q)] = aqq + t * apq;
                m[(p, q)] = 0.0;
                m[(q, p)] = 0.0;
                for r in 0..n {
                    if r != p && r != q {
                        let arp = m[(r, p)];
                        let arq = m[(r, q)];
                        m[(r, p)] = arp - s * (arq + tau * arp);
                        m[(r, q)] = arq + s * (arp - tau * arq);
                        m[(p, r)] = m[(r, p)];
                        m[(q, r)] = m[(r, q)];
                    }
                }
                if let Some(v) = vecs.as_mut() {
                    for r in 0..n {
                        let vrp = v[(r, p)];
                        let vrq = v[(r, q)];
                        v[(r, p)] = vrp - s * (vrq + tau * vrp);
                        v[(r, q)] = vrq + s * (vrp - tau * vrq);
                    }
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].partial_cmp(&m[(j, j)]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| m[(i, i)]).collect();
    let vectors = vecs.map(|v| {
        let mut out = DMatrix::<f64>::zeros(n, n);
        for (col, &src) in order.iter().enumerate() {
            out.set_column(col, &v.column(src));
        }
        out
    });
    SymmetricEigen { values, vectors }
}

/// Eigendecomposition of a complex Hermitian matrix.
pub struct HermitianEigen {
    /// Eigenvalues, ascending.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in eigenvalue order.
    pub vectors: Option<DMatrix<C64>>,
}

/// Diagonalize a Hermitian matrix through the real-symmetric embedding.
/// The input is symmetrized as `(h + h†)/2` first, so tiny Hermiticity
/// defects are averaged away rather than amplified.
pub fn hermitian_eigen(h: &DMatrix<C64>, want_vectors: bool) -> HermitianEigen {
    let n = h.nrows();
    assert_eq!(n, h.ncols(), "matrix must be square");

    let mut s = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let e = 0.5 * (h[(i, j)] + h[(j, i)].conj());
            s[(i, j)] = e.re;
            s[(n + i, n + j)] = e.re;
            s[(i, n + j)] = -e.im;
            s[(n + i, j)] = e.im;
        }
    }

    let eig = jacobi_symmetric(&s, want_vectors);
    let scale = h.iter().map(|z| z.norm()).fold(0.0f64, f64::max).max(1e-300);

    // Doubled spectrum: every other sorted value is the Hermitian spectrum.
    let values: Vec<f64> = (0..n).map(|k| 0.5 * (eig.values[2 * k] + eig.values[2 * k + 1])).collect();

    let vectors = if want_vectors {
        let real_vecs = eig.vectors.as_ref().unwrap();
        let mut out = DMatrix::<C64>::zeros(n, n);
        let mut col_out = 0usize;

        // Walk clusters of (numerically) equal doubled eigenvalues and pull
        // one complex representative per pair by Gram-Schmidt.
        let cluster_tol = (1e-11 * scale).max(1e-300);
        let mut start = 0usize;
        while start < 2 * n {
            let mut end = start + 1;
            while end < 2 * n && eig.values[end] - eig.values[end - 1] <= cluster_tol {
                end += 1;
            }
            let want = (end - start) / 2;
            let mut accepted: Vec<Vec<C64>> = Vec::with_capacity(want);
            let mut threshold = 0.5;
            while accepted.len() < want && threshold > 1e-12 {
                for src in start..end {
                    if accepted.len() == want {
                        break;
                    }
                    let mut z: Vec<C64> = (0..n)
                        .map(|i| C64::new(real_vecs[(i, src)], real_vecs[(n + i, src)]))
                        .collect();
                    for a in &accepted {
                        let overlap: C64 =
                            a.iter().zip(&z).map(|(ai, zi)| ai.conj() * zi).sum();
                        for (zi, ai) in z.iter_mut().zip(a) {
                            *zi -= ai * overlap;
                        }
                    }
                    let norm: f64 = z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
                    if norm > threshold {
                        for c in z.iter_mut() {
                            *c /= C64::new(norm, 0.0);
                        }
                        accepted.push(z);
                    }
                }
                threshold *= 0.1;
            }
            debug_assert_eq!(accepted.len(), want, "eigenvector extraction rank defect");
            for z in accepted {
                for i in 0..n {
                    out[(i, col_out)] = z[i];
                }
                col_out += 1;
            }
            start = end;
        }
        Some(out)
    } else {
        None
    };

    HermitianEigen { values, vectors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use nalgebra::dmatrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    // Frozen oracles from numpy.linalg.eigvalsh (numpy 2.2.6); see the
    // matrices reconstructed below.

    #[test]
    fn symmetric_3x3_matches_numpy() {
        let a = dmatrix![2.0, -1.0, 0.25; -1.0, 0.5, 1.5; 0.25, 1.5, -3.0];
        let eig = jacobi_symmetric(&a, true);
        let expected = [
            -3.61678001823669426e+00,
            5.74331205325600336e-01,
            2.54244881291109248e+00,
        ];
        for (v, e) in eig.values.iter().zip(expected) {
            assert_relative_eq!(*v, e, max_relative = 1e-13);
        }
        // Backward error: A V = V diag.
        let v = eig.vectors.unwrap();
        let av = &a * &v;
        for col in 0..3 {
            for row in 0..3 {
                assert_relative_eq!(av[(row, col)], eig.values[col] * v[(row, col)], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn hermitian_3x3_matches_numpy() {
        let h = dmatrix![
            c(1.0, 0.0), c(0.5, -0.75), c(-0.25, 1.0);
            c(0.5, 0.75), c(-2.0, 0.0), c(0.125, -0.5);
            c(-0.25, -1.0), c(0.125, 0.5), c(0.75, 0.0)
        ];
        let eig = hermitian_eigen(&h, false);
        let expected = [
            -2.41195376762337599e+00,
            1.61953767623374989e-01,
            2.00000000000000000e+00,
        ];
        for (v, e) in eig.values.iter().zip(expected) {
            assert_relative_eq!(*v, e, max_relative = 1e-13);
        }
    }

    #[test]
    fn hermitian_4x4_with_degeneracy() {
        let mut h = DMatrix::<C64>::zeros(4, 4);
        h[(0, 0)] = c(1.0, 0.0);
        h[(1, 1)] = c(1.0, 0.0);
        h[(2, 2)] = c(0.5, 0.0);
        h[(3, 3)] = c(-0.5, 0.0);
        h[(2, 3)] = c(0.25, 0.25);
        h[(3, 2)] = c(0.25, -0.25);
        let eig = hermitian_eigen(&h, true);
        let expected = [
            -6.12372435695794248e-01,
            6.12372435695794581e-01,
            1.0,
            1.0,
        ];
        for (v, e) in eig.values.iter().zip(expected) {
            assert_relative_eq!(*v, e, epsilon = 1e-13);
        }
        // Orthonormality must survive the degenerate cluster.
        let vecs = eig.vectors.unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let dot: C64 = (0..4).map(|r| vecs[(r, i)].conj() * vecs[(r, j)]).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_relative_eq!(dot.re, expect, epsilon = 1e-11);
                assert_relative_eq!(dot.im, 0.0, epsilon = 1e-11);
            }
        }
    }

    #[test]
    fn random_hermitian_backward_error_and_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &n in &[3usize, 8, 15] {
            for _ in 0..40 {
                let mut h = DMatrix::<C64>::zeros(n, n);
                for i in 0..n {
                    h[(i, i)] = c(rng.random_range(-2.0..2.0), 0.0);
                    for j in (i + 1)..n {
                        let z = c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
                        h[(i, j)] = z;
                        h[(j, i)] = z.conj();
                    }
                }
                let eig = hermitian_eigen(&h, true);
                let scale = h.iter().map(|z| z.norm()).fold(0.0f64, f64::max);

                let trace: f64 = (0..n).map(|i| h[(i, i)].re).sum();
                let sum: f64 = eig.values.iter().sum();
                assert_relative_eq!(trace, sum, epsilon = 1e-10 * scale.max(1.0));

                let v = eig.vectors.unwrap();
                let hv = &h * &v;
                let mut defect = 0.0f64;
                for col in 0..n {
                    for row in 0..n {
                        defect = defect
                            .max((hv[(row, col)] - v[(row, col)] * eig.values[col]).norm());
                    }
                }
                assert!(defect <= 1e-10 * scale.max(1.0), "defect {defect:.2e}");
                assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }

    #[test]
    fn sym3_closed_form_matches_jacobi() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..300 {
            let mut m = Matrix3::<f64>::zeros();
            for i in 0..3 {
                m[(i, i)] = rng.random_range(-2.0..2.0);
                for j in (i + 1)..3 {
                    let v = rng.random_range(-2.0..2.0);
                    m[(i, j)] = v;
                    m[(j, i)] = v;
                }
            }
            let fast = sym3_eigenvalues(&m);
            let slow = jacobi_symmetric(&DMatrix::from_fn(3, 3, |i, j| m[(i, j)]), false);
            for (a, b) in fast.iter().zip(&slow.values) {
                assert_relative_eq!(*a, *b, epsilon = 1e-12);
            }
        }
        // Diagonal fast path.
        let d = Matrix3::from_diagonal(&nalgebra::Vector3::new(2.0, -1.0, 0.5));
        assert_eq!(sym3_eigenvalues(&d), [-1.0, 0.5, 2.0]);
    }

    #[test]
    fn values_match_nalgebra_oracle() {
        // Independent oracle: nalgebra's Hermitian eigensolver on the same
        // random matrices.
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..25 {
            let n = 6;
            let mut h = DMatrix::<C64>::zeros(n, n);
            for i in 0..n {
                h[(i, i)] = c(rng.random_range(-3.0..3.0), 0.0);
                for j in (i + 1)..n {
                    let z = c(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
                    h[(i, j)] = z;
                    h[(j, i)] = z.conj();
                }
            }
            let mine = hermitian_eigen(&h, false);
            let mut theirs: Vec<f64> = h.clone().symmetric_eigenvalues().iter().copied().collect();
            theirs.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (a, b) in mine.values.iter().zip(theirs) {
                assert_relative_eq!(*a, b, epsilon = 1e-10);
            }
        }
    }
}
