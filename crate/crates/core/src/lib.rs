//! Non-Markovianity measures for open quantum systems.
//!
//! The library works with time-local master equations in Bloch form,
//! `dλ/dt = v(t) + D(t) λ`, propagates the induced affine map
//! `λ(t) = w(t) + N(t) λ(0)`, and computes two families of witnesses and
//! measures on top of the trajectory:
//!
//! * distinguishability: the trace-distance growth witness σ(t), its
//!   optimized time integral, a spectral upper bound, and a closed-form
//!   expression valid under commutativity/antisymmetry conditions;
//! * divisibility: canonical decoherence rates from the Hermitian
//!   decoherence matrix, their negative part g_div(t), an eigensolve-free
//!   lower bound, and integrated measures including a map-norm-weighted
//!   variant that stays finite for eternally recohering dynamics.
//!
//! Bundled models: phase damping, amplitude damping (arbitrary time-dependent
//! rates), and the weak-coupling spin-boson model with an ohmic
//! Lorentz-Drude bath.

pub mod bloch;
pub mod canonical;
pub mod error;
pub mod measures;
pub mod models;
pub mod numerics;
pub mod propagation;

pub use bloch::{BlochVector, DensityMatrix, HermitianBasis};
pub use canonical::{DecoherenceMatrix, DecoherenceSpectrum};
pub use error::CoreError;
pub use measures::{AnalyticConditions, MeasureReport, MeasureValue, SearchSettings, WitnessTrace};
pub use models::{MasterEquation2L, RateFunction};
pub use propagation::{ChoiMatrix, MapTrajectory};
