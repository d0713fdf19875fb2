//! Canonical form of a time-local generator: the decoherence matrix in an
//! orthonormal traceless Hermitian basis, its rate spectrum, the effective
//! Hamiltonian, and the diagonalizing Lindblad operators.

use nalgebra::{DMatrix, Matrix2, Matrix3, Vector3};
use num_complex::Complex64;

use crate::bloch::{generalized_basis, pauli, HermitianBasis};
use crate::error::CoreError;
use crate::numerics::eig::hermitian_eigen;

type C64 = Complex64;

/// Hermitian coefficient matrix of the dissipator
/// Σ_ij d_ij (G_i ρ G_j − ½{G_j G_i, ρ}) in the orthonormal basis {G_i};
/// size (n²−1) × (n²−1) for an n-level system.
#[derive(Debug, Clone)]
pub struct DecoherenceMatrix {
    pub matrix: DMatrix<C64>,
    /// Hilbert-space dimension n.
    pub dim: usize,
}

impl DecoherenceMatrix {
    /// Validate Hermiticity and size before wrapping an externally supplied
    /// matrix (e.g. one read from a sampled table).
    pub fn from_matrix(matrix: DMatrix<C64>, dim: usize) -> Result<Self, CoreError> {
        if dim < 2 {
            return Err(CoreError::DimensionTooSmall { n: dim });
        }
        let m = dim * dim - 1;
        if matrix.nrows() != m || matrix.ncols() != m {
            return Err(CoreError::BadTable {
                reason: format!(
                    "decoherence matrix for a {dim}-level system must be {m}x{m}, got {}x{}",
                    matrix.nrows(),
                    matrix.ncols()
                ),
            });
        }
        let mut defect: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for i in 0..m {
            for j in 0..m {
                defect = defect.max((matrix[(i, j)] - matrix[(j, i)].conj()).norm());
                scale = scale.max(matrix[(i, j)].norm());
            }
        }
        if defect > 1e-9 * scale.max(1.0) {
            return Err(CoreError::NotHermitian { defect });
        }
        Ok(Self { matrix, dim })
    }

    pub fn trace(&self) -> f64 {
        (0..self.matrix.nrows()).map(|i| self.matrix[(i, i)].re).sum()
    }

    /// Tr[d²] = Σ_ij |d_ij|² for Hermitian d.
    pub fn frobenius_sq(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Canonical rates of a decoherence matrix, ascending, along with the two
/// basis-free invariants used by the divisibility bounds.
#[derive(Debug, Clone)]
pub struct DecoherenceSpectrum {
    pub rates: Vec<f64>,
    pub trace: f64,
    pub frobenius_sq: f64,
}

/// Eigenvalues (canonical rates) of the decoherence matrix.
pub fn spectrum(d: &DecoherenceMatrix) -> DecoherenceSpectrum {
    let eig = hermitian_eigen(&d.matrix, false);
    DecoherenceSpectrum {
        rates: eig.values,
        trace: d.trace(),
        frobenius_sq: d.frobenius_sq(),
    }
}

/// Decoherence matrix of a qubit generator dλ/dt = v + D λ in the basis
/// (σ₁, σ₂, σ₃)/√2:
///
///   d = ½ (D + Dᵀ − Tr[D]·1) − (i/2) ε_{jkl} v_l  on entry (j, k).
///
/// The symmetric part of D and the inhomogeneity v carry all dissipation;
/// the antisymmetric part of D is unitary and lands in the effective
/// Hamiltonian instead.
pub fn decoherence_matrix_2level(v: &Vector3<f64>, damping: &Matrix3<f64>) -> DecoherenceMatrix {
    let a = damping + damping.transpose();
    let tr = damping.trace();
    let mut m = DMatrix::<C64>::zeros(3, 3);
    for i in 0..3 {
        for j in 0..3 {
            let sym = 0.5 * (a[(i, j)] - if i == j { tr } else { 0.0 });
            m[(i, j)] = C64::new(sym, 0.0);
        }
    }
    let mut add = |j: usize, k: usize, l: usize| {
        m[(j, k)].im -= 0.5 * v[l];
        m[(k, j)].im += 0.5 * v[l];
    };
    add(0, 1, 2);
    add(1, 2, 0);
    add(2, 0, 1);
    DecoherenceMatrix { matrix: m, dim: 2 }
}

/// Effective Hamiltonian of a qubit generator: the antisymmetric part of D
/// is a rotation ω × λ, realized by H = ½ ω·σ with
/// ω_l = −½ ε_{ljk} D_jk.
pub fn effective_hamiltonian(damping: &Matrix3<f64>) -> Matrix2<C64> {
    let [sx, sy, sz] = pauli();
    let cx = -0.25 * (damping[(1, 2)] - damping[(2, 1)]);
    let cy = -0.25 * (damping[(2, 0)] - damping[(0, 2)]);
    let cz = -0.25 * (damping[(0, 1)] - damping[(1, 0)]);
    sx * C64::new(cx, 0.0) + sy * C64::new(cy, 0.0) + sz * C64::new(cz, 0.0)
}

/// Diagonalized dissipator: rates γ_k (ascending) with Lindblad operators
/// L_k = Σ_i U_ik G_i, orthonormal under the Hilbert-Schmidt inner product.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    pub rates: Vec<f64>,
    pub operators: Vec<DMatrix<C64>>,
    pub basis: HermitianBasis,
}

pub fn canonical_decomposition(d: &DecoherenceMatrix) -> Result<CanonicalForm, CoreError> {
    let basis = generalized_basis(d.dim)?;
    let eig = hermitian_eigen(&d.matrix, true);
    let u = eig.vectors.expect("vectors requested");
    let m = d.matrix.nrows();
    let n = d.dim;
    let mut operators = Vec::with_capacity(m);
    for k in 0..m {
        let mut op = DMatrix::<C64>::zeros(n, n);
        for i in 0..m {
            op += &basis.matrices[i] * u[(i, k)];
        }
        operators.push(op);
    }
    Ok(CanonicalForm { rates: eig.values, operators, basis })
}
