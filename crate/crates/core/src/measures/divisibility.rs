//! Divisibility witness from the canonical rates, lower bounds that need only
//! basis-free invariants, and the integrated (plain and map-norm-weighted)
//! measures.

use crate::canonical::{decoherence_matrix_2level, DecoherenceMatrix, DecoherenceSpectrum};
use crate::error::CoreError;
use crate::models::MasterEquation2L;
use crate::propagation::{matrix_norm, MapTrajectory};

use super::{MeasureValue, WitnessKind, WitnessTrace};

/// Witness values below this at every trailing sample count as decayed; a
/// tail entirely above it flags the integrated measure as divergent.
const TAIL_DECAY: f64 = 1e-8;

/// Products g·‖N‖ below this are treated as numerically zero when truncating
/// the weighted integral.
const PRODUCT_FLOOR: f64 = 1e-12;

/// Instantaneous divisibility witness from the canonical rates:
/// g = ½ Σ (|γ_i| − γ_i), the total weight of the negative rates. Zero iff
/// the generator is CP-divisible at that instant.
pub fn gdiv_norm_form(spec: &DecoherenceSpectrum) -> f64 {
    0.5 * (spec.rates.iter().map(|g| g.abs()).sum::<f64>() - spec.trace)
}

/// Lower bound on the witness from basis-free invariants alone:
/// max(0, ½(√Tr[d²] − Tr d)). Never exceeds the witness, and coincides with
/// it whenever at most one canonical rate is nonzero.
pub fn gdiv_bound_value(d: &DecoherenceMatrix) -> f64 {
    (0.5 * (d.frobenius_sq().sqrt() - d.trace())).max(0.0)
}

/// Sample the divisibility witness on `grid` from a canonical spectrum
/// provider.
pub fn gdiv_witness<F>(spectrum_at: F, grid: &[f64]) -> WitnessTrace
where
    F: Fn(f64) -> DecoherenceSpectrum,
{
    let values = grid.iter().map(|&t| gdiv_norm_form(&spectrum_at(t))).collect();
    WitnessTrace::new(grid.to_vec(), values, WitnessKind::GDiv)
}

/// Sample the invariant lower bound on `grid` from a decoherence-matrix
/// provider.
pub fn gdiv_lower_bound<F>(matrix_at: F, grid: &[f64]) -> WitnessTrace
where
    F: Fn(f64) -> DecoherenceMatrix,
{
    let values = grid.iter().map(|&t| gdiv_bound_value(&matrix_at(t))).collect();
    WitnessTrace::new(grid.to_vec(), values, WitnessKind::GDivLb)
}

/// The invariant lower bound for a qubit generator straight from Bloch data:
///
///   max(0, ¼ {√(2Tr[D²] + 2Tr[DDᵀ] − Tr[D]² + 2‖v‖²) + Tr[D]}),
///
/// equal to [`gdiv_bound_value`] of the generator's decoherence matrix.
pub fn gdiv_lb_two_level(me: &MasterEquation2L, t: f64) -> Result<f64, CoreError> {
    let d = me.damping(t);
    let v = me.drift(t);
    let tr = d.trace();
    let tr_sq = (d * d).trace();
    let tr_gram = (d * d.transpose()).trace();
    let radicand = 2.0 * tr_sq + 2.0 * tr_gram - tr * tr + 2.0 * v.norm_squared();
    if radicand < -1e-12 {
        return Err(CoreError::InternalConsistency {
            what: format!("two-level bound radicand is negative ({radicand:.3e})"),
        });
    }
    Ok((0.25 * (radicand.max(0.0).sqrt() + tr)).max(0.0))
}

/// Whether the invariant bound certifies a divisibility violation at `t`:
/// true exactly when `gdiv_lb_two_level` is strictly positive, i.e.
/// Tr[D] > 0 or ‖v‖² > Tr[D]² − Tr[D²] − Tr[DDᵀ].
pub fn nondivisibility_sufficient(me: &MasterEquation2L, t: f64) -> bool {
    let d = me.damping(t);
    let v = me.drift(t);
    let tr = d.trace();
    if tr > 0.0 {
        return true;
    }
    let tr_sq = (d * d).trace();
    let tr_gram = (d * d.transpose()).trace();
    v.norm_squared() > tr * tr - tr_sq - tr_gram
}

/// Integrate a divisibility witness over its grid. When the witness has not
/// decayed by the end of the window (every sample in the trailing stretch
/// still exceeds the decay floor) the measure is reported divergent, carrying
/// the integral up to the horizon as a partial value.
pub fn n_div(trace: &WitnessTrace) -> MeasureValue {
    let n = trace.len();
    if n < 2 {
        return MeasureValue::Finite(0.0);
    }
    let value = trace.integral();
    let window = (n / 50).max(5).min(n);
    let tail_live = trace.values[n - window..].iter().all(|&v| v > TAIL_DECAY);
    if tail_live {
        MeasureValue::Divergent { partial: value }
    } else {
        MeasureValue::Finite(value)
    }
}

/// Map-norm-weighted measure ∫ g(t) ‖N(t)‖ dt, which stays finite whenever
/// the map contracts faster than the witness persists. The integral is
/// truncated once the product has fallen below numerical resolution for good.
pub fn n_div_modified(trace: &WitnessTrace, traj: &MapTrajectory) -> Result<f64, CoreError> {
    if trace.is_empty() {
        return Ok(0.0);
    }
    let slack = 1e-9 * traj.t_end.max(1.0);
    for &t in &trace.times {
        if t < -slack || t > traj.t_end + slack {
            return Err(CoreError::TimeOutOfRange {
                t,
                t_end: traj.t_end,
            });
        }
    }
    let products: Vec<f64> = trace
        .times
        .iter()
        .zip(&trace.values)
        .map(|(&t, &g)| g * matrix_norm(&traj.eval(t).1))
        .collect();
    let Some(last) = products.iter().rposition(|&p| p >= PRODUCT_FLOOR) else {
        return Ok(0.0);
    };
    let weighted = WitnessTrace::new(trace.times.clone(), products, trace.kind);
    Ok(weighted.integral_upto(last))
}

/// Divisibility witness of a qubit generator on `grid`, via its canonical
/// spectrum.
pub fn gdiv_witness_2level(me: &MasterEquation2L, grid: &[f64]) -> WitnessTrace {
    gdiv_witness(
        |t| crate::canonical::spectrum(&decoherence_matrix_2level(&me.drift(t), &me.damping(t))),
        grid,
    )
}

/// Invariant lower-bound trace of a qubit generator on `grid`.
pub fn gdiv_lower_bound_2level(me: &MasterEquation2L, grid: &[f64]) -> WitnessTrace {
    let values: Vec<f64> = grid
        .iter()
        .map(|&t| gdiv_lb_two_level(me, t).unwrap_or(f64::NAN))
        .collect();
    WitnessTrace::new(grid.to_vec(), values, WitnessKind::GDivLb)
}
