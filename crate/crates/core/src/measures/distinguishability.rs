//! Trace-distance growth witness, its optimization over initial pairs, an
//! integrable upper bound, and a closed form for generators with commuting,
//! symmetric-diagonal damping.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{Matrix3, Vector3};

use crate::bloch::BlochVector;
use crate::error::CoreError;
use crate::models::MasterEquation2L;
use crate::numerics::eig::sym3_eigenvalues;
use crate::numerics::neldermead::minimize;
use crate::numerics::quad::{gk15, integrate};
use crate::numerics::root::bisect;
use crate::propagation::{matrix_norm, MapTrajectory};

use super::{WitnessKind, WitnessTrace};

/// Rates within this band around zero are treated as exactly zero when
/// classifying growth regions.
const RATE_DEADBAND: f64 = 1e-12;

/// Evolved pair differences shorter than this are treated as fully collapsed;
/// the witness is reported as zero there.
const COLLAPSE_NORM: f64 = 1e-14;

/// Controls for the initial-pair search and the quadratures behind it.
#[derive(Debug, Clone, Copy)]
pub struct SearchSettings {
    /// Polar subdivisions of the coarse half-sphere scan.
    pub coarse_theta: usize,
    /// Azimuthal subdivisions of the coarse half-sphere scan.
    pub coarse_phi: usize,
    /// Number of best coarse cells handed to the simplex refiner.
    pub refine_starts: usize,
    /// Iteration cap for each simplex refinement.
    pub nm_max_iter: usize,
    /// Length of the initial Bloch difference vector; 2 corresponds to an
    /// antipodal pair of pure states.
    pub pair_radius: f64,
    /// Largest allowed growth envelope in the trailing window before the
    /// horizon is declared too short.
    pub envelope_threshold: f64,
    /// Skip the trailing-window envelope check (for deliberately truncated
    /// horizons).
    pub skip_envelope_check: bool,
    /// Above this many trajectory cells the objective falls back from
    /// per-cell quadrature to trapezoid sums over stored nodes.
    pub exact_cell_cap: usize,
}

impl Default for SearchSettings {
    fn default() -> Self {
        Self {
            coarse_theta: 24,
            coarse_phi: 48,
            refine_starts: 3,
            nm_max_iter: 250,
            pair_radius: 2.0,
            envelope_threshold: 1e-10,
            skip_envelope_check: false,
            exact_cell_cap: 200_000,
        }
    }
}

/// Largest eigenvalue of D(t) + D(t)ᵀ.
fn gamma_max(me: &MasterEquation2L, t: f64) -> f64 {
    let d = me.damping(t);
    sym3_eigenvalues(&(d + d.transpose()))[2]
}

/// Trace-distance growth rate along the propagated trajectory for the initial
/// Bloch difference `dlam0`, sampled at the trajectory nodes.
///
/// σ(t) = δλᵀ (D + Dᵀ) δλ / (4 ‖δλ‖) with δλ(t) = N(t) δλ(0); positive values
/// signal distinguishability flowing back toward the pair. Nodes where the
/// difference has collapsed below resolution are flagged and reported as zero.
pub fn sigma_witness(
    me: &MasterEquation2L,
    traj: &MapTrajectory,
    dlam0: BlochVector,
) -> Result<WitnessTrace, CoreError> {
    let grid = traj.grid().to_vec();
    sigma_witness_on_grid(me, traj, dlam0, &grid)
}

/// [`sigma_witness`] sampled at caller-chosen times instead of the stored
/// solver nodes (interpolating the map where needed).
pub fn sigma_witness_on_grid(
    me: &MasterEquation2L,
    traj: &MapTrajectory,
    dlam0: BlochVector,
    grid: &[f64],
) -> Result<WitnessTrace, CoreError> {
    if !(dlam0.0.norm() > 0.0) {
        return Err(CoreError::ZeroInitialDifference);
    }
    let mut values = Vec::with_capacity(grid.len());
    let mut flagged = Vec::new();
    for (k, &t) in grid.iter().enumerate() {
        let (_, n) = traj.eval(t);
        let dl = n * dlam0.0;
        let nrm = dl.norm();
        if nrm < COLLAPSE_NORM {
            flagged.push(k);
            values.push(0.0);
        } else {
            let d = me.damping(t);
            let s = d + d.transpose();
            values.push(dl.dot(&(s * dl)) / (4.0 * nrm));
        }
    }
    let mut trace = WitnessTrace::new(grid.to_vec(), values, WitnessKind::Sigma);
    trace.flagged = flagged;
    Ok(trace)
}

/// The largest symmetrized damping eigenvalue sampled on `grid`.
pub fn gamma_max_trace(me: &MasterEquation2L, grid: &[f64]) -> WitnessTrace {
    let values = grid.iter().map(|&t| gamma_max(me, t)).collect();
    WitnessTrace::new(grid.to_vec(), values, WitnessKind::GammaMax)
}

/// Verify that the growth envelope (|γ_max| + γ_max)‖N‖ has decayed below
/// `threshold` throughout the trailing 5% of the propagation window, i.e.
/// that nothing the integrated measures would still pick up lies beyond the
/// horizon.
pub fn envelope_check(
    me: &MasterEquation2L,
    traj: &MapTrajectory,
    threshold: f64,
) -> Result<(), CoreError> {
    let grid = traj.grid();
    let t_end = traj.t_end;
    let window_start = t_end - 0.05 * (t_end - grid[0]);
    let mut worst = 0.0f64;
    let mut checked = 0usize;
    for k in (0..grid.len()).rev() {
        let (t, _, n) = traj.node(k);
        if t < window_start && checked >= 3 {
            break;
        }
        let g = gamma_max(me, t);
        worst = worst.max((g.abs() + g) * matrix_norm(&n));
        checked += 1;
    }
    if worst > threshold {
        Err(CoreError::PropagationTooShort {
            t_end,
            envelope: worst,
            threshold,
        })
    } else {
        Ok(())
    }
}

/// Split `[pts[0].0, pts[last].0]` into the maximal subintervals where `f`
/// exceeds `band`, using the supplied samples for sign classification and
/// bisection to localize the crossings.
fn positive_segments<F: Fn(f64) -> f64>(
    f: &F,
    pts: &[(f64, f64)],
    band: f64,
    xtol: f64,
) -> Vec<(f64, f64)> {
    let mut segs = Vec::new();
    let mut active = pts[0].1 > band;
    let mut start = pts[0].0;
    for w in pts.windows(2) {
        let (t0, f0) = w[0];
        let (t1, f1) = w[1];
        let now = f1 > band;
        if now != active {
            let root = if t1 - t0 > 0.0 {
                bisect(&|t| f(t) - band, t0, t1, f0 - band, f1 - band, xtol)
            } else {
                t0
            };
            if active {
                segs.push((start, root));
            } else {
                start = root;
            }
            active = now;
        }
    }
    if active {
        segs.push((start, pts[pts.len() - 1].0));
    }
    segs
}

/// Integrable upper bound on the optimized distinguishability measure:
/// ½ ∫ max(γ_max, 0) ‖N‖ dt over the propagation window.
///
/// Fails with [`CoreError::PropagationTooShort`] when the growth envelope has
/// not decayed by the end of the window; use
/// [`n_dst_upper_bound_unchecked`] to integrate over a deliberately truncated
/// horizon anyway.
pub fn n_dst_upper_bound(me: &MasterEquation2L, traj: &MapTrajectory) -> Result<f64, CoreError> {
    envelope_check(me, traj, SearchSettings::default().envelope_threshold)?;
    Ok(n_dst_upper_bound_unchecked(me, traj))
}

/// The upper-bound integral without the trailing-envelope safeguard.
pub fn n_dst_upper_bound_unchecked(me: &MasterEquation2L, traj: &MapTrajectory) -> f64 {
    let integrand = |t: f64| {
        let g = gamma_max(me, t);
        if g <= 0.0 {
            0.0
        } else {
            0.5 * g * matrix_norm(&traj.eval(t).1)
        }
    };
    let gfun = |t: f64| gamma_max(me, t);
    let mut total = 0.0;
    for k in 0..traj.cell_count() {
        let (a, b) = traj.cell_bounds(k);
        let mid = 0.5 * (a + b);
        let pts = [(a, gfun(a)), (mid, gfun(mid)), (b, gfun(b))];
        if pts.iter().all(|&(_, g)| g <= RATE_DEADBAND) {
            continue;
        }
        let xtol = 1e-12 * (b - a);
        for (lo, hi) in positive_segments(&gfun, &pts, RATE_DEADBAND, xtol) {
            if hi > lo {
                total += gk15(&integrand, lo, hi).value;
            }
        }
    }
    total
}

/// Quadratic-form tables at (possibly strided) trajectory nodes:
/// M = Nᵀ(D + Dᵀ)N and P = NᵀN, from which the witness for any direction u
/// is σ_u = (R/4) (uᵀMu)/√(uᵀPu).
struct NodeTables {
    times: Vec<f64>,
    m: Vec<Matrix3<f64>>,
    p: Vec<Matrix3<f64>>,
    radius: f64,
}

impl NodeTables {
    fn build(me: &MasterEquation2L, traj: &MapTrajectory, settings: &SearchSettings) -> Self {
        let n_nodes = traj.grid().len();
        let stride = if traj.cell_count() > settings.exact_cell_cap {
            (n_nodes / 100_000).max(1)
        } else {
            1
        };
        let mut times = Vec::new();
        let mut m = Vec::new();
        let mut p = Vec::new();
        let mut k = 0;
        loop {
            let idx = k.min(n_nodes - 1);
            let (t, _, n) = traj.node(idx);
            let d = me.damping(t);
            let s = d + d.transpose();
            times.push(t);
            m.push(n.transpose() * s * n);
            p.push(n.transpose() * n);
            if idx == n_nodes - 1 {
                break;
            }
            k += stride;
        }
        Self {
            times,
            m,
            p,
            radius: settings.pair_radius,
        }
    }

    fn sigma(&self, k: usize, u: &Vector3<f64>) -> f64 {
        let r = u.dot(&(self.p[k] * u));
        if r < COLLAPSE_NORM * COLLAPSE_NORM {
            return 0.0;
        }
        0.25 * self.radius * u.dot(&(self.m[k] * u)) / r.sqrt()
    }

    /// Trapezoid sum of max(σ_u, 0) over the stored nodes.
    fn trapezoid_objective(&self, u: &Vector3<f64>) -> f64 {
        let mut total = 0.0;
        let mut prev = self.sigma(0, u).max(0.0);
        for k in 1..self.times.len() {
            let cur = self.sigma(k, u).max(0.0);
            total += 0.5 * (prev + cur) * (self.times[k] - self.times[k - 1]);
            prev = cur;
        }
        total
    }
}

fn unit(theta: f64, phi: f64) -> Vector3<f64> {
    Vector3::new(
        theta.sin() * phi.cos(),
        theta.sin() * phi.sin(),
        theta.cos(),
    )
}

/// Continuous witness for direction `u` at time `t` inside trajectory cell `k`.
fn sigma_continuous(
    me: &MasterEquation2L,
    traj: &MapTrajectory,
    cell: usize,
    t: f64,
    u: &Vector3<f64>,
    radius: f64,
) -> f64 {
    let (_, n) = traj.eval_in_cell(cell, t);
    let dl = n * (radius * u);
    let nrm = dl.norm();
    if nrm < COLLAPSE_NORM {
        return 0.0;
    }
    let d = me.damping(t);
    let s = d + d.transpose();
    dl.dot(&(s * dl)) / (4.0 * nrm)
}

/// ∫ max(σ_u, 0) dt with per-cell quadrature and bisected sign crossings;
/// falls back to the node-trapezoid sum past the cell cap.
fn refined_objective(
    me: &MasterEquation2L,
    traj: &MapTrajectory,
    tables: &NodeTables,
    u: &Vector3<f64>,
    settings: &SearchSettings,
) -> f64 {
    if traj.cell_count() > settings.exact_cell_cap {
        return tables.trapezoid_objective(u);
    }
    let mut total = 0.0;
    for k in 0..traj.cell_count() {
        let (a, b) = traj.cell_bounds(k);
        let f = |t: f64| sigma_continuous(me, traj, k, t, u, settings.pair_radius);
        let sa = tables.sigma(k, u);
        let sb = tables.sigma(k + 1, u);
        let mid = 0.5 * (a + b);
        let sm = f(mid);
        if sa <= 0.0 && sb <= 0.0 && sm <= 0.0 {
            continue;
        }
        let pts = [(a, sa), (mid, sm), (b, sb)];
        let xtol = 1e-12 * (b - a);
        for (lo, hi) in positive_segments(&f, &pts, 0.0, xtol) {
            if hi > lo {
                total += gk15(&f, lo, hi).value;
            }
        }
    }
    total
}

/// Maximize the integrated positive witness over initial antipodal pairs.
///
/// Returns the measure value together with the initial Bloch difference vector
/// (of length `pair_radius`) that realized it. The search runs a coarse
/// half-sphere scan followed by simplex refinement from the best cells; the
/// witness is even in the direction, so the half sphere covers all pairs.
pub fn n_dst_optimized(
    me: &MasterEquation2L,
    traj: &MapTrajectory,
    settings: &SearchSettings,
) -> Result<(f64, BlochVector), CoreError> {
    if !settings.skip_envelope_check {
        envelope_check(me, traj, settings.envelope_threshold)?;
    }
    let tables = NodeTables::build(me, traj, settings);
    let nt = settings.coarse_theta.max(1);
    let np = settings.coarse_phi.max(1);
    // Coarse scan over cell midpoints, keeping the best starts.
    let mut ranked: Vec<(f64, f64, f64)> = Vec::with_capacity(nt * np);
    for i in 0..nt {
        let theta = (i as f64 + 0.5) * FRAC_PI_2 / nt as f64;
        for j in 0..np {
            let phi = (j as f64 + 0.5) * 2.0 * PI / np as f64;
            let value = tables.trapezoid_objective(&unit(theta, phi));
            ranked.push((value, theta, phi));
        }
    }
    ranked.sort_by(|a, b| b.0.total_cmp(&a.0));
    ranked.truncate(settings.refine_starts.max(1));

    let theta_cell = FRAC_PI_2 / nt as f64;
    let phi_cell = 2.0 * PI / np as f64;
    let scale = 0.5 * theta_cell.max(phi_cell);
    let mut best_value = f64::NEG_INFINITY;
    let mut best_u = Vector3::z();
    for &(_, theta, phi) in &ranked {
        let result = minimize(
            |x: &[f64]| -refined_objective(me, traj, &tables, &unit(x[0], x[1]), settings),
            &[theta, phi],
            scale,
            1e-9,
            1e-13,
            settings.nm_max_iter,
        );
        let value = -result.f;
        if value > best_value {
            best_value = value;
            best_u = unit(result.x[0], result.x[1]);
        }
    }
    if !best_value.is_finite() {
        return Err(CoreError::InternalConsistency {
            what: "initial-pair search produced no finite objective value".into(),
        });
    }
    let u = best_u.normalize();
    Ok((
        best_value.max(0.0),
        BlochVector(settings.pair_radius * u),
    ))
}

/// Outcome of testing the structural conditions under which the optimized
/// measure has a closed form.
///
/// The three conditions: (i) the damping matrices at different times commute
/// with each other and with each other's transposes; (ii) the symmetrized
/// damping matrix is diagonal at all times; (iii) a single diagonal rate
/// dominates every region of trace-distance growth, either by accumulating
/// the least decay or by strictly exceeding the other rates.
#[derive(Debug, Clone)]
pub struct AnalyticConditions {
    pub cond_i: bool,
    pub cond_ii: bool,
    pub cond_iii: bool,
    /// 1-based index of the dominating rate, when one was identified.
    pub k_index: Option<usize>,
    /// More than one rate qualified (ties pick the smallest index).
    pub degenerate: bool,
    /// No growth regions exist: the conditions hold trivially and the
    /// closed-form value is zero.
    pub vacuous: bool,
    me: MasterEquation2L,
}

impl AnalyticConditions {
    pub fn all_hold(&self) -> bool {
        self.cond_i && self.cond_ii && self.cond_iii
    }

    /// The i-th diagonal rate γ_i(t) = 2 D_ii(t), i ∈ {1, 2, 3}.
    pub fn gamma_rate(&self, i: usize, t: f64) -> f64 {
        assert!((1..=3).contains(&i), "rate index must be 1, 2, or 3");
        2.0 * self.me.damping(t)[(i - 1, i - 1)]
    }

    /// Accumulated decay exponent Γ_i(t) = -½ ∫₀ᵗ γ_i ds, so the i-th
    /// diagonal of the evolution map is e^{-Γ_i}.
    pub fn gamma_accumulated(&self, i: usize, t: f64) -> f64 {
        assert!(t >= 0.0, "accumulation time must be nonnegative");
        if t == 0.0 {
            return 0.0;
        }
        -0.5 * integrate(&|s| self.gamma_rate(i, s), 0.0, t, 1e-13, 1e-11, 4000).value
    }
}

/// Test the closed-form conditions on the sampled grid.
///
/// Condition (iii) is only meaningful once (i) and (ii) hold (the diagonal
/// entries are the symmetrized eigenvalues exactly then), so it is reported
/// false otherwise. When no growth regions exist at all, (iii) holds
/// trivially and `vacuous` is set with no rate index.
pub fn check_analytic_conditions(me: &MasterEquation2L, grid: &[f64]) -> AnalyticConditions {
    assert!(grid.len() >= 2, "condition check needs at least two samples");

    // (i): pairwise commutators over a subsample of the grid.
    let stride = (grid.len() / 200).max(1);
    let mut sample: Vec<Matrix3<f64>> = grid
        .iter()
        .step_by(stride)
        .map(|&t| me.damping(t))
        .collect();
    let last = me.damping(*grid.last().unwrap());
    sample.push(last);
    let max_f = sample
        .iter()
        .map(|d| d.norm())
        .fold(0.0f64, f64::max);
    let tol_i = 1e-9 * (max_f * max_f).max(1.0);
    let mut cond_i = true;
    'outer: for a in 0..sample.len() {
        for b in (a + 1)..sample.len() {
            let (da, db) = (&sample[a], &sample[b]);
            let c1 = da * db - db * da;
            let c2 = da * db.transpose() - db.transpose() * da;
            if c1.norm() > tol_i || c2.norm() > tol_i {
                cond_i = false;
                break 'outer;
            }
        }
    }

    // (ii): the symmetrized damping matrix is diagonal everywhere.
    let mut cond_ii = true;
    'grid: for &t in grid {
        let d = me.damping(t);
        let tol = 1e-9 * d.norm().max(1.0);
        for r in 0..3 {
            for c in 0..3 {
                if r != c && (d[(r, c)] + d[(c, r)]).abs() > tol {
                    cond_ii = false;
                    break 'grid;
                }
            }
        }
    }

    let mut out = AnalyticConditions {
        cond_i,
        cond_ii,
        cond_iii: false,
        k_index: None,
        degenerate: false,
        vacuous: false,
        me: me.clone(),
    };
    if !(cond_i && cond_ii) {
        return out;
    }

    // (iii): diagonal rates and their accumulated exponents on the grid.
    let n = grid.len();
    let mut gam = [vec![0.0; n], vec![0.0; n], vec![0.0; n]];
    for (k, &t) in grid.iter().enumerate() {
        let d = me.damping(t);
        for i in 0..3 {
            gam[i][k] = 2.0 * d[(i, i)];
        }
    }
    let growth: Vec<usize> = (0..n)
        .filter(|&k| (0..3).any(|i| gam[i][k] > RATE_DEADBAND))
        .collect();
    if growth.is_empty() {
        out.cond_iii = true;
        out.vacuous = true;
        return out;
    }

    let mut acc = [vec![0.0; n], vec![0.0; n], vec![0.0; n]];
    for i in 0..3 {
        for k in 1..n {
            acc[i][k] = acc[i][k - 1]
                - 0.25 * (gam[i][k - 1] + gam[i][k]) * (grid[k] - grid[k - 1]);
        }
    }
    let gam_scale = gam
        .iter()
        .flat_map(|g| g.iter())
        .fold(0.0f64, |m, &v| m.max(v.abs()))
        .max(1.0);
    let acc_scale = acc
        .iter()
        .flat_map(|g| g.iter())
        .fold(0.0f64, |m, &v| m.max(v.abs()))
        .max(1.0);
    let tol_gam = 1e-9 * gam_scale;
    let tol_acc = 1e-7 * acc_scale;

    let mut accepted = Vec::new();
    for cand in 0..3 {
        let attains = growth.iter().all(|&g| {
            let gmax = gam.iter().map(|v| v[g]).fold(f64::NEG_INFINITY, f64::max);
            gam[cand][g] >= gmax - tol_gam
        });
        if !attains {
            continue;
        }
        let least_decay = growth.iter().all(|&g| {
            let amin = acc.iter().map(|v| v[g]).fold(f64::INFINITY, f64::min);
            acc[cand][g] <= amin + tol_acc
        });
        let strictly_dominant = growth.iter().all(|&g| {
            (0..3)
                .filter(|&j| j != cand)
                .all(|j| gam[j][g] <= (1.0 - 1e-6) * gam[cand][g] + RATE_DEADBAND)
        });
        if least_decay || strictly_dominant {
            accepted.push(cand);
        }
    }
    out.cond_iii = !accepted.is_empty();
    out.k_index = accepted.first().map(|&c| c + 1);
    out.degenerate = accepted.len() > 1;
    out
}

/// Closed-form evaluation of the optimized measure.
#[derive(Debug, Clone)]
pub struct AnalyticDistinguishability {
    pub value: f64,
    /// Growth intervals of the dominating rate.
    pub intervals: Vec<(f64, f64)>,
    /// The optimal antipodal pair (unit Bloch vectors), absent when no growth
    /// exists.
    pub pair: Option<(BlochVector, BlochVector)>,
}

/// Evaluate the closed form: with a dominating rate γ_k, the measure equals
/// Σ [e^{-Γ_k(b)} - e^{-Γ_k(a)}] over the growth intervals (a, b) of γ_k, and
/// the optimal pair lies on the corresponding axis.
///
/// Fails with [`CoreError::ConditionsNotMet`] unless all three structural
/// conditions were found to hold.
pub fn n_dst_analytic(
    conds: &AnalyticConditions,
    grid: &[f64],
) -> Result<AnalyticDistinguishability, CoreError> {
    if !conds.all_hold() {
        return Err(CoreError::ConditionsNotMet);
    }
    if conds.vacuous {
        return Ok(AnalyticDistinguishability {
            value: 0.0,
            intervals: Vec::new(),
            pair: None,
        });
    }
    let k = conds.k_index.ok_or(CoreError::InternalConsistency {
        what: "conditions hold non-vacuously but no rate index was recorded".into(),
    })?;
    let f = |t: f64| conds.gamma_rate(k, t);
    let vals: Vec<f64> = grid.iter().map(|&t| f(t)).collect();
    let span = grid.last().unwrap() - grid[0];
    let xtol = 1e-13 * span.max(1.0);

    let mut intervals = Vec::new();
    let mut open: Option<f64> = None;
    for j in 0..grid.len() {
        let pos = vals[j] > RATE_DEADBAND;
        match (open, pos) {
            (None, true) => {
                open = Some(if j == 0 {
                    grid[0]
                } else {
                    bisect(
                        &|t| f(t) - RATE_DEADBAND,
                        grid[j - 1],
                        grid[j],
                        vals[j - 1] - RATE_DEADBAND,
                        vals[j] - RATE_DEADBAND,
                        xtol,
                    )
                });
            }
            (Some(a), false) => {
                let b = bisect(
                    &|t| f(t) - RATE_DEADBAND,
                    grid[j - 1],
                    grid[j],
                    vals[j - 1] - RATE_DEADBAND,
                    vals[j] - RATE_DEADBAND,
                    xtol,
                );
                intervals.push((a, b));
                open = None;
            }
            _ => {}
        }
    }
    if let Some(a) = open {
        intervals.push((a, *grid.last().unwrap()));
    }

    // Accumulate Γ_k incrementally across the sorted interval endpoints.
    let mut value = 0.0;
    let mut t_prev = grid[0];
    let mut acc_prev = 0.0;
    let advance = |to: f64, t_prev: &mut f64, acc_prev: &mut f64| -> f64 {
        if to > *t_prev {
            *acc_prev -= 0.5 * integrate(&f, *t_prev, to, 1e-13, 1e-11, 4000).value;
            *t_prev = to;
        }
        *acc_prev
    };
    for &(a, b) in &intervals {
        let acc_a = advance(a, &mut t_prev, &mut acc_prev);
        let start = (-acc_a).exp();
        let acc_b = advance(b, &mut t_prev, &mut acc_prev);
        value += (-acc_b).exp() - start;
    }

    let mut axis = Vector3::zeros();
    axis[k - 1] = 1.0;
    Ok(AnalyticDistinguishability {
        value,
        intervals,
        pair: Some((BlochVector(axis), BlochVector(-axis))),
    })
}
