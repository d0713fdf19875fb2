//! Bloch-vector and density-matrix representations, the trace-distance
//! identity for qubits, and generalized traceless Hermitian bases.

use nalgebra::{DMatrix, Matrix2, Vector3};
use num_complex::Complex64;

use crate::error::CoreError;

type C64 = Complex64;

const I: C64 = C64::new(0.0, 1.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Hermiticity / trace validation tolerance for incoming density matrices.
pub const DENSITY_TOL: f64 = 1e-10;

/// Bloch vector λ of a qubit state ρ = (I + λ·σ)/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector(pub Vector3<f64>);

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self(Vector3::new(x, y, z))
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    /// Inside (or on) the Bloch ball up to roundoff.
    pub fn is_physical(&self) -> bool {
        self.norm() <= 1.0 + 1e-12
    }
}

impl From<Vector3<f64>> for BlochVector {
    fn from(v: Vector3<f64>) -> Self {
        Self(v)
    }
}

/// Qubit density matrix plus a flag recording whether the generating Bloch
/// vector was inside the ball. Non-physical inputs are represented rather
/// than rejected so that map outputs can be inspected.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    pub matrix: Matrix2<C64>,
    pub physical: bool,
}

/// The Pauli matrices (σ₁, σ₂, σ₃).
pub fn pauli() -> [Matrix2<C64>; 3] {
    [
        Matrix2::new(C64::new(0.0, 0.0), ONE, ONE, C64::new(0.0, 0.0)),
        Matrix2::new(C64::new(0.0, 0.0), -I, I, C64::new(0.0, 0.0)),
        Matrix2::new(ONE, C64::new(0.0, 0.0), C64::new(0.0, 0.0), -ONE),
    ]
}

/// ρ = (I + λ·σ)/2. A Bloch vector outside the unit ball yields a matrix
/// with a negative eigenvalue; the result is flagged, not rejected.
pub fn bloch_to_density(lambda: BlochVector) -> DensityMatrix {
    let [sx, sy, sz] = pauli();
    let l = lambda.0;
    let m = (Matrix2::identity() + sx * C64::new(l.x, 0.0) + sy * C64::new(l.y, 0.0)
        + sz * C64::new(l.z, 0.0))
        * C64::new(0.5, 0.0);
    DensityMatrix { matrix: m, physical: lambda.is_physical() }
}

/// λ_i = Tr[ρ σ_i]. The input must be Hermitian with unit trace (within
/// [`DENSITY_TOL`]); positivity is not checked here.
pub fn density_to_bloch(rho: &Matrix2<C64>) -> Result<BlochVector, CoreError> {
    let defect = (rho[(0, 1)] - rho[(1, 0)].conj()).norm().max(rho[(0, 0)].im.abs()).max(rho[(1, 1)].im.abs());
    if defect > DENSITY_TOL {
        return Err(CoreError::NotHermitian { defect });
    }
    let trace = rho[(0, 0)].re + rho[(1, 1)].re;
    if (trace - 1.0).abs() > DENSITY_TOL {
        return Err(CoreError::NonUnitTrace { trace });
    }
    let x = 2.0 * rho[(1, 0)].re;
    let y = 2.0 * rho[(1, 0)].im;
    let z = rho[(0, 0)].re - rho[(1, 1)].re;
    Ok(BlochVector::new(x, y, z))
}

/// Trace distance ½‖ρ₁ − ρ₂‖₁ via the closed-form eigenvalues of the
/// Hermitian 2×2 difference.
pub fn trace_distance(rho1: &DensityMatrix, rho2: &DensityMatrix) -> f64 {
    let d = rho1.matrix - rho2.matrix;
    let a = d[(0, 0)].re;
    let b = d[(1, 1)].re;
    let off = d[(0, 1)].norm_sqr();
    let mid = 0.5 * (a + b);
    let rad = (0.25 * (a - b) * (a - b) + off).sqrt();
    0.5 * ((mid + rad).abs() + (mid - rad).abs())
}

/// Qubit identity: ½‖ρ₁ − ρ₂‖₁ = ½‖λ₁ − λ₂‖ (Euclidean).
pub fn trace_distance_bloch(l1: BlochVector, l2: BlochVector) -> f64 {
    0.5 * (l1.0 - l2.0).norm()
}

/// Orthonormal traceless Hermitian basis {G_i} of an n-level system:
/// Tr[G_i G_j] = δ_ij, Tr[G_i] = 0, i = 1..n²−1.
#[derive(Debug, Clone)]
pub struct HermitianBasis {
    pub n: usize,
    pub matrices: Vec<DMatrix<C64>>,
}

/// Generalized Gell-Mann construction. Ordering: for each index pair j < k
/// (lexicographic) the symmetric then the antisymmetric element, then the
/// diagonal ladder. For n = 2 this is exactly (σ₁, σ₂, σ₃)/√2.
pub fn generalized_basis(n: usize) -> Result<HermitianBasis, CoreError> {
    if n < 2 {
        return Err(CoreError::DimensionTooSmall { n });
    }
    let mut mats = Vec::with_capacity(n * n - 1);
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    for j in 0..n {
        for k in (j + 1)..n {
            let mut sym = DMatrix::<C64>::zeros(n, n);
            sym[(j, k)] = C64::new(inv_sqrt2, 0.0);
            sym[(k, j)] = C64::new(inv_sqrt2, 0.0);
            mats.push(sym);
            let mut asym = DMatrix::<C64>::zeros(n, n);
            asym[(j, k)] = C64::new(0.0, -inv_sqrt2);
            asym[(k, j)] = C64::new(0.0, inv_sqrt2);
            mats.push(asym);
        }
    }
    for l in 1..n {
        let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
        let mut diag = DMatrix::<C64>::zeros(n, n);
        for m in 0..l {
            diag[(m, m)] = C64::new(norm, 0.0);
        }
        diag[(l, l)] = C64::new(-(l as f64) * norm, 0.0);
        mats.push(diag);
    }
    Ok(HermitianBasis { n, matrices: mats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn poles_and_mixed_state() {
        let north = bloch_to_density(BlochVector::new(0.0, 0.0, 1.0));
        assert_relative_eq!(north.matrix[(0, 0)].re, 1.0);
        assert_relative_eq!(north.matrix[(1, 1)].re, 0.0);
        assert!(north.physical);

        let mixed = bloch_to_density(BlochVector::new(0.0, 0.0, 0.0));
        assert_relative_eq!(mixed.matrix[(0, 0)].re, 0.5);
        assert_relative_eq!(mixed.matrix[(1, 1)].re, 0.5);
    }

    #[test]
    fn ball_exterior_is_flagged() {
        let r = bloch_to_density(BlochVector::new(0.9, 0.9, 0.9));
        assert!(!r.physical);
        // Still a valid Hermitian unit-trace matrix.
        let back = density_to_bloch(&r.matrix).unwrap();
        assert_relative_eq!(back.0.x, 0.9, epsilon = 1e-14);
    }

    #[test]
    fn round_trip_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let l = BlochVector::new(
                rng.random_range(-0.57..0.57),
                rng.random_range(-0.57..0.57),
                rng.random_range(-0.57..0.57),
            );
            let back = density_to_bloch(&bloch_to_density(l).matrix).unwrap();
            assert_relative_eq!((back.0 - l.0).norm(), 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn invalid_density_inputs_are_rejected() {
        let mut bad = bloch_to_density(BlochVector::new(0.1, 0.2, 0.3)).matrix;
        bad[(0, 1)] += C64::new(1e-6, 0.0);
        assert!(matches!(density_to_bloch(&bad), Err(CoreError::NotHermitian { .. })));

        let scaled = bloch_to_density(BlochVector::new(0.0, 0.0, 0.0)).matrix * C64::new(1.5, 0.0);
        assert!(matches!(density_to_bloch(&scaled), Err(CoreError::NonUnitTrace { .. })));
    }

    #[test]
    fn trace_distance_limits() {
        let up = bloch_to_density(BlochVector::new(0.0, 0.0, 1.0));
        let down = bloch_to_density(BlochVector::new(0.0, 0.0, -1.0));
        assert_relative_eq!(trace_distance(&up, &down), 1.0, epsilon = 1e-14);
        assert_relative_eq!(trace_distance(&up, &up), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn trace_distance_equals_bloch_distance() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..500 {
            let l1 = BlochVector::new(
                rng.random_range(-0.5..0.5),
                rng.random_range(-0.5..0.5),
                rng.random_range(-0.5..0.5),
            );
            let l2 = BlochVector::new(
                rng.random_range(-0.5..0.5),
                rng.random_range(-0.5..0.5),
                rng.random_range(-0.5..0.5),
            );
            let td = trace_distance(&bloch_to_density(l1), &bloch_to_density(l2));
            assert_relative_eq!(td, trace_distance_bloch(l1, l2), epsilon = 1e-12);
        }
    }

    #[test]
    fn qubit_basis_is_scaled_pauli() {
        let basis = generalized_basis(2).unwrap();
        let [sx, sy, sz] = pauli();
        let expect = [sx, sy, sz];
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for (g, p) in basis.matrices.iter().zip(expect) {
            for i in 0..2 {
                for j in 0..2 {
                    assert_relative_eq!(g[(i, j)].re, s * p[(i, j)].re, epsilon = 1e-15);
                    assert_relative_eq!(g[(i, j)].im, s * p[(i, j)].im, epsilon = 1e-15);
                }
            }
        }
    }

    #[test]
    fn basis_orthonormal_traceless_hermitian() {
        for n in 2..=4 {
            let basis = generalized_basis(n).unwrap();
            assert_eq!(basis.matrices.len(), n * n - 1);
            for (i, gi) in basis.matrices.iter().enumerate() {
                let trace: C64 = (0..n).map(|d| gi[(d, d)]).sum();
                assert_relative_eq!(trace.norm(), 0.0, epsilon = 1e-14);
                for r in 0..n {
                    for c in 0..n {
                        let h = (gi[(r, c)] - gi[(c, r)].conj()).norm();
                        assert_relative_eq!(h, 0.0, epsilon = 1e-15);
                    }
                }
                for (j, gj) in basis.matrices.iter().enumerate() {
                    let prod = gi.adjoint() * gj;
                    let tr: C64 = (0..n).map(|d| prod[(d, d)]).sum();
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert_relative_eq!(tr.re, expect, epsilon = 1e-13);
                    assert_relative_eq!(tr.im, 0.0, epsilon = 1e-13);
                }
            }
        }
    }

    #[test]
    fn basis_expands_traceless_hermitian_matrices() {
        // Completeness: H = Σ Tr[G_i H] G_i for traceless Hermitian H.
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let n = 3;
        let basis = generalized_basis(n).unwrap();
        let mut h = DMatrix::<C64>::zeros(n, n);
        for i in 0..n {
            for j in (i + 1)..n {
                let z = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                h[(i, j)] = z;
                h[(j, i)] = z.conj();
            }
        }
        h[(0, 0)] = C64::new(0.7, 0.0);
        h[(1, 1)] = C64::new(-0.2, 0.0);
        h[(2, 2)] = C64::new(-0.5, 0.0);

        let mut rebuilt = DMatrix::<C64>::zeros(n, n);
        for g in &basis.matrices {
            let prod = g.adjoint() * &h;
            let coeff: C64 = (0..n).map(|d| prod[(d, d)]).sum();
            rebuilt += g * coeff;
        }
        for i in 0..n {
            for j in 0..n {
                assert_relative_eq!(rebuilt[(i, j)].re, h[(i, j)].re, epsilon = 1e-13);
                assert_relative_eq!(rebuilt[(i, j)].im, h[(i, j)].im, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn dimension_below_two_is_an_error() {
        assert!(matches!(generalized_basis(1), Err(CoreError::DimensionTooSmall { n: 1 })));
        assert!(matches!(generalized_basis(0), Err(CoreError::DimensionTooSmall { n: 0 })));
    }
}
