//! Non-Markovianity witnesses and the measures built on top of them.
//!
//! Two families are provided:
//!
//! * **Distinguishability** ([`distinguishability`]): the growth rate of the
//!   trace distance between a pair of evolving states, its optimization over
//!   initial antipodal pure pairs, an integrable upper bound, and a closed-form
//!   evaluation available when the generator satisfies certain structural
//!   conditions.
//! * **Divisibility** ([`divisibility`]): the instantaneous breakdown of
//!   CP-divisibility read off the canonical decoherence rates, a lower bound
//!   that needs only the decoherence matrix, and time-integrated measures
//!   (including a modified, often-finite variant weighted by the map norm).

mod distinguishability;
mod divisibility;

pub use distinguishability::{
    check_analytic_conditions, envelope_check, gamma_max_trace, n_dst_analytic, n_dst_optimized,
    n_dst_upper_bound, n_dst_upper_bound_unchecked, sigma_witness, sigma_witness_on_grid,
    AnalyticConditions, AnalyticDistinguishability, SearchSettings,
};
pub use divisibility::{
    gdiv_bound_value, gdiv_lb_two_level, gdiv_lower_bound, gdiv_lower_bound_2level,
    gdiv_norm_form, gdiv_witness, gdiv_witness_2level, n_div, n_div_modified,
    nondivisibility_sufficient,
};

use crate::bloch::BlochVector;
use crate::numerics::quad::cumulative_simpson;

/// Which witness a [`WitnessTrace`] samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// Trace-distance growth rate for a fixed initial pair.
    Sigma,
    /// Divisibility witness: summed negative part of the canonical rates.
    GDiv,
    /// Lower bound on the divisibility witness.
    GDivLb,
    /// Largest eigenvalue of the symmetrized damping matrix.
    GammaMax,
}

/// A scalar witness sampled on a time grid.
#[derive(Debug, Clone)]
pub struct WitnessTrace {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub kind: WitnessKind,
    /// Indices where the witness was undefined (the evolved difference vector
    /// collapsed below resolution) and the value was reported as zero.
    pub flagged: Vec<usize>,
}

impl WitnessTrace {
    pub fn new(times: Vec<f64>, values: Vec<f64>, kind: WitnessKind) -> Self {
        assert_eq!(times.len(), values.len(), "trace length mismatch");
        Self {
            times,
            values,
            kind,
            flagged: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    fn uniform_step(&self) -> Option<f64> {
        let n = self.times.len();
        if n < 3 {
            return None;
        }
        let dt = (self.times[n - 1] - self.times[0]) / (n - 1) as f64;
        if dt <= 0.0 {
            return None;
        }
        let ok = self
            .times
            .iter()
            .enumerate()
            .all(|(k, &t)| (t - (self.times[0] + k as f64 * dt)).abs() <= 1e-6 * dt);
        ok.then_some(dt)
    }

    /// Integral of the sampled values over the full grid: Simpson on uniform
    /// grids, trapezoid otherwise.
    pub fn integral(&self) -> f64 {
        self.integral_upto(self.times.len().saturating_sub(1))
    }

    /// Integral over `times[0..=last]`.
    pub fn integral_upto(&self, last: usize) -> f64 {
        if last == 0 || self.times.is_empty() {
            return 0.0;
        }
        let last = last.min(self.times.len() - 1);
        if let Some(dt) = self.uniform_step() {
            let cum = cumulative_simpson(&self.values[..=last], dt);
            return *cum.last().unwrap();
        }
        let mut total = 0.0;
        for k in 0..last {
            total += 0.5
                * (self.values[k] + self.values[k + 1])
                * (self.times[k + 1] - self.times[k]);
        }
        total
    }
}

/// A time-integrated measure that may fail to converge as the horizon grows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeasureValue {
    Finite(f64),
    /// The witness had not decayed by the end of the propagation window; the
    /// integral up to the horizon is reported as a partial value.
    Divergent { partial: f64 },
}

impl MeasureValue {
    pub fn is_divergent(&self) -> bool {
        matches!(self, MeasureValue::Divergent { .. })
    }

    /// The integral up to the horizon, whether or not it had converged.
    pub fn partial(&self) -> f64 {
        match *self {
            MeasureValue::Finite(v) => v,
            MeasureValue::Divergent { partial } => partial,
        }
    }
}

impl std::fmt::Display for MeasureValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            MeasureValue::Finite(v) => write!(f, "{v}"),
            MeasureValue::Divergent { .. } => write!(f, "inf"),
        }
    }
}

/// Aggregated results of a full analysis run over one model.
#[derive(Debug, Clone)]
pub struct MeasureReport {
    /// Optimized distinguishability measure (`None` if the search was skipped).
    pub n_dst: Option<f64>,
    /// Integrable upper bound on the distinguishability measure.
    pub n_dst_ub: f64,
    /// Closed-form value, when the structural conditions held.
    pub n_dst_analytic: Option<f64>,
    /// Divisibility measure over the propagation window.
    pub n_div: MeasureValue,
    /// Lower bound on the divisibility measure.
    pub n_div_lb: MeasureValue,
    /// Modified (map-norm weighted) divisibility measure.
    pub n_div_mod: f64,
    /// Lower-bound variant of the modified measure.
    pub n_div_mod_lb: f64,
    /// Initial pair difference that realized the optimized measure.
    pub optimal_pair: Option<BlochVector>,
}
