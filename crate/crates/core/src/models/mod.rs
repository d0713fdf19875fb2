//! Master-equation models: the Bloch-form generator type plus the bundled
//! phase damping, amplitude damping, and spin-boson constructions.

mod spin_boson;

pub use spin_boson::{
    ohmic_lorentz_drude, spin_boson_coefficients, spin_boson_kernels, spin_boson_model,
    spin_boson_model_unital, spin_boson_ndst_ub_approx, BathKernels, KernelQuadratureSettings,
    SpectralDensity, SpinBosonCoefficients, SpinBosonParams,
};

use std::sync::Arc;

use nalgebra::{Matrix3, Vector3};

/// Scalar rate γ(t), shared and cheaply clonable.
#[derive(Clone)]
pub struct RateFunction(Arc<dyn Fn(f64) -> f64 + Send + Sync>);

impl RateFunction {
    pub fn constant(c: f64) -> Self {
        Self(Arc::new(move |_| c))
    }

    pub fn from_fn<F: Fn(f64) -> f64 + Send + Sync + 'static>(f: F) -> Self {
        Self(Arc::new(f))
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.0)(t)
    }
}

impl std::fmt::Debug for RateFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RateFunction(..)")
    }
}

/// Time-local qubit master equation in Bloch form, dλ/dt = v(t) + D(t) λ.
#[derive(Clone)]
pub struct MasterEquation2L {
    drift: Arc<dyn Fn(f64) -> Vector3<f64> + Send + Sync>,
    damping: Arc<dyn Fn(f64) -> Matrix3<f64> + Send + Sync>,
    pub label: String,
}

impl MasterEquation2L {
    pub fn new<V, D>(label: impl Into<String>, drift: V, damping: D) -> Self
    where
        V: Fn(f64) -> Vector3<f64> + Send + Sync + 'static,
        D: Fn(f64) -> Matrix3<f64> + Send + Sync + 'static,
    {
        Self { drift: Arc::new(drift), damping: Arc::new(damping), label: label.into() }
    }

    /// Inhomogeneous term v(t).
    pub fn drift(&self, t: f64) -> Vector3<f64> {
        (self.drift)(t)
    }

    /// Damping matrix D(t).
    pub fn damping(&self, t: f64) -> Matrix3<f64> {
        (self.damping)(t)
    }
}

impl std::fmt::Debug for MasterEquation2L {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MasterEquation2L").field("label", &self.label).finish()
    }
}

/// Pure dephasing at rate γ_p(t): contracts the equatorial plane, leaves the
/// poles untouched. v = 0, D = -2 γ_p diag(1, 1, 0).
pub fn phase_damping(rate: RateFunction) -> MasterEquation2L {
    MasterEquation2L::new(
        "phase_damping",
        |_| Vector3::zeros(),
        move |t| {
            let g = rate.eval(t);
            Matrix3::from_diagonal(&Vector3::new(-2.0 * g, -2.0 * g, 0.0))
        },
    )
}

/// Spontaneous decay toward the south pole at rate γ_a(t):
/// v = (0, 0, -γ_a), D = -diag(γ_a/2, γ_a/2, γ_a).
pub fn amplitude_damping(rate: RateFunction) -> MasterEquation2L {
    let rate2 = rate.clone();
    MasterEquation2L::new(
        "amplitude_damping",
        move |t| Vector3::new(0.0, 0.0, -rate2.eval(t)),
        move |t| {
            let g = rate.eval(t);
            Matrix3::from_diagonal(&Vector3::new(-0.5 * g, -0.5 * g, -g))
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn phase_damping_generator_structure() {
        let me = phase_damping(RateFunction::from_fn(|t| t.cos()));
        let d = me.damping(0.5);
        let g = 0.5f64.cos();
        assert_relative_eq!(d[(0, 0)], -2.0 * g);
        assert_relative_eq!(d[(1, 1)], -2.0 * g);
        assert_relative_eq!(d[(2, 2)], 0.0);
        assert_eq!(me.drift(0.5), Vector3::zeros());
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(d[(i, j)], 0.0);
                }
            }
        }
    }

    #[test]
    fn amplitude_damping_generator_structure() {
        let me = amplitude_damping(RateFunction::constant(1.3));
        let d = me.damping(2.0);
        assert_relative_eq!(d[(0, 0)], -0.65);
        assert_relative_eq!(d[(1, 1)], -0.65);
        assert_relative_eq!(d[(2, 2)], -1.3);
        assert_eq!(me.drift(2.0), Vector3::new(0.0, 0.0, -1.3));
    }

    #[test]
    fn rate_function_wraps_closures() {
        let r = RateFunction::from_fn(|t| 1.0 + 2.0 * (10.0 * t).cos());
        assert_relative_eq!(r.eval(0.0), 3.0);
        assert_relative_eq!(r.eval(0.5), 1.0 + 2.0 * 5.0f64.cos());
        assert_relative_eq!(RateFunction::constant(0.7).eval(123.0), 0.7);
    }
}
