//! Propagation of the affine dynamical map λ(t) = w(t) + N(t) λ(0) induced by
//! a Bloch-form master equation, plus map norms and the Choi/CP check.

use nalgebra::{Matrix2, Matrix3, Matrix4, SVector, Vector3};
use num_complex::Complex64;

use crate::bloch::BlochVector;
use crate::error::CoreError;
use crate::models::MasterEquation2L;
use crate::numerics::eig::{hermitian_eigen, sym3_eigenvalues};
use crate::numerics::ode::{solve_dp45, DenseSolution, OdeOptions};

type C64 = Complex64;

/// Joint state layout for the integrator: components 0..3 hold w, 3..12 hold
/// N row-major.
type State = SVector<f64, 12>;

fn pack(w: &Vector3<f64>, n: &Matrix3<f64>) -> State {
    let mut y = State::zeros();
    for i in 0..3 {
        y[i] = w[i];
        for j in 0..3 {
            y[3 + 3 * i + j] = n[(i, j)];
        }
    }
    y
}

fn unpack(y: &State) -> (Vector3<f64>, Matrix3<f64>) {
    let w = Vector3::new(y[0], y[1], y[2]);
    let n = Matrix3::from_fn(|i, j| y[3 + 3 * i + j]);
    (w, n)
}

/// Dense solution of dw/dt = v + D w (w(0) = 0) and dN/dt = D N (N(0) = 1),
/// integrated jointly and evaluable anywhere on [0, t_end].
#[derive(Debug, Clone)]
pub struct MapTrajectory {
    sol: DenseSolution<12>,
    pub t_end: f64,
}

impl MapTrajectory {
    /// Stored node times (integration steps, possibly thinned).
    pub fn grid(&self) -> &[f64] {
        &self.sol.t
    }

    pub fn cell_count(&self) -> usize {
        self.sol.t.len() - 1
    }

    pub fn cell_bounds(&self, k: usize) -> (f64, f64) {
        (self.sol.t[k], self.sol.t[k + 1])
    }

    /// Interpolated (w, N) inside cell `k`.
    pub fn eval_in_cell(&self, k: usize, t: f64) -> (Vector3<f64>, Matrix3<f64>) {
        let y = self.sol.eval_in_cell(k, t);
        unpack(&y)
    }

    /// Interpolated (w, N) at an arbitrary trajectory time.
    pub fn eval(&self, t: f64) -> (Vector3<f64>, Matrix3<f64>) {
        let y = self.sol.eval(t.clamp(0.0, self.t_end));
        unpack(&y)
    }

    /// Stored node state without interpolation.
    pub fn node(&self, k: usize) -> (f64, Vector3<f64>, Matrix3<f64>) {
        let (w, n) = unpack(&self.sol.y[k]);
        (self.sol.t[k], w, n)
    }
}

/// Integrate the dynamical map of `me` over [0, t_end].
pub fn propagate(
    me: &MasterEquation2L,
    t_end: f64,
    opts: &OdeOptions,
) -> Result<MapTrajectory, CoreError> {
    if t_end <= 0.0 {
        return Err(CoreError::NonPositiveSpan { t_end });
    }
    let rhs = |t: f64, y: &State| {
        let (w, n) = unpack(y);
        let v = me.drift(t);
        let d = me.damping(t);
        pack(&(v + d * w), &(d * n))
    };
    let y0 = pack(&Vector3::zeros(), &Matrix3::identity());
    let sol = solve_dp45(&rhs, 0.0, t_end, y0, opts)?;
    Ok(MapTrajectory { sol, t_end })
}

/// Evaluate the map at time `t` on an initial Bloch vector.
pub fn apply_map(
    traj: &MapTrajectory,
    t: f64,
    lambda0: BlochVector,
) -> Result<BlochVector, CoreError> {
    if !(0.0..=traj.t_end).contains(&t) {
        return Err(CoreError::TimeOutOfRange { t, t_end: traj.t_end });
    }
    let (w, n) = traj.eval(t);
    Ok(BlochVector(w + n * lambda0.0))
}

/// Spectral norm (largest singular value) of a real 3×3 matrix.
pub fn matrix_norm(n: &Matrix3<f64>) -> f64 {
    let gram = n.transpose() * n;
    let eigs = sym3_eigenvalues(&gram);
    eigs[2].max(0.0).sqrt()
}

/// Choi matrix of the qubit map, (Φ ⊗ id)|φ⁺⟩⟨φ⁺| with |φ⁺⟩ maximally
/// entangled; trace 1 by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiMatrix(pub Matrix4<C64>);

/// Assemble the Choi matrix of the affine map (w, N).
pub fn choi_of_affine(w: &Vector3<f64>, n: &Matrix3<f64>) -> ChoiMatrix {
    let paulis = crate::bloch::pauli();
    // Φ(E_bd) for the four matrix units, from Φ(I) = I + w·σ and
    // Φ(σ_k) = Σ_j N_jk σ_j.
    let phi_id = {
        let mut m = Matrix2::<C64>::identity();
        for j in 0..3 {
            m += paulis[j] * C64::new(w[j], 0.0);
        }
        m
    };
    let phi_sigma: [Matrix2<C64>; 3] = std::array::from_fn(|k| {
        let mut m = Matrix2::<C64>::zeros();
        for j in 0..3 {
            m += paulis[j] * C64::new(n[(j, k)], 0.0);
        }
        m
    });
    // E_00 = (I+σ3)/2, E_11 = (I-σ3)/2, E_01 = (σ1+iσ2)/2, E_10 = (σ1-iσ2)/2.
    let half = C64::new(0.5, 0.0);
    let i = C64::new(0.0, 1.0);
    let phi_e = |b: usize, d: usize| -> Matrix2<C64> {
        match (b, d) {
            (0, 0) => (phi_id + phi_sigma[2]) * half,
            (1, 1) => (phi_id - phi_sigma[2]) * half,
            (0, 1) => (phi_sigma[0] + phi_sigma[1] * i) * half,
            _ => (phi_sigma[0] - phi_sigma[1] * i) * half,
        }
    };
    let mut c = Matrix4::<C64>::zeros();
    for a in 0..2 {
        for b in 0..2 {
            for cc in 0..2 {
                for d in 0..2 {
                    c[(2 * a + b, 2 * cc + d)] = phi_e(b, d)[(a, cc)] * half;
                }
            }
        }
    }
    ChoiMatrix(c)
}

/// Smallest eigenvalue of a Choi matrix.
pub fn choi_min_eigenvalue(choi: &ChoiMatrix) -> f64 {
    let m = nalgebra::DMatrix::from_fn(4, 4, |i, j| choi.0[(i, j)]);
    let eig = hermitian_eigen(&m, false);
    eig.values[0]
}

/// Choi matrix, its smallest eigenvalue, and the CP verdict
/// (min eigenvalue ≥ -cp_tol) for the map at trajectory time `t`.
pub fn choi_and_cp_check(
    traj: &MapTrajectory,
    t: f64,
    cp_tol: f64,
) -> Result<(ChoiMatrix, f64, bool), CoreError> {
    if !(0.0..=traj.t_end).contains(&t) {
        return Err(CoreError::TimeOutOfRange { t, t_end: traj.t_end });
    }
    let (w, n) = traj.eval(t);
    let choi = choi_of_affine(&w, &n);
    let min_eig = choi_min_eigenvalue(&choi);
    let is_cp = min_eig >= -cp_tol;
    Ok((choi, min_eig, is_cp))
}
