use serde::Serialize;

use super::{integrate_trajectory, HamiltonianSystem, State, Trajectory, TrajectoryConfig};
use crate::error::Result;

pub const DEFAULT_CLOSURE_TOLERANCE: f64 = 1e-6;

/// Distance from the initial state must first exceed this multiple of the
/// tolerance before a return counts.
const DEPARTURE_FACTOR: f64 = 1e3;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClosureResult {
    pub closed: bool,
    /// Time of the first return, refined between samples.
    pub period: Option<f64>,
    /// Smallest distance to the initial state at that return.
    pub min_distance: f64,
}

/// `min_{s ∈ [−1, 1]} |Δ(s)|` for the quadratic through `Δ(−1) = a`,
/// `Δ(0) = b`, `Δ(1) = c`, with the minimizing `s`.
fn refine_minimum(a: &State, b: &State, c: &State) -> (f64, f64) {
    let at = |s: f64| -> f64 {
        (0..4)
            .map(|i| {
                let v = b[i] + 0.5 * s * (c[i] - a[i]) + 0.5 * s * s * (a[i] - 2.0 * b[i] + c[i]);
                v * v
            })
            .sum()
    };
    // golden-section search; |Δ(s)|² is unimodal near a return
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let (mut lo, mut hi) = (-1.0f64, 1.0f64);
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (at(x1), at(x2));
    while hi - lo > 1e-12 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = at(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = at(x2);
        }
    }
    let s = 0.5 * (lo + hi);
    (s, at(s).sqrt())
}

/// Looks for the first local minimum of `d(x(t), x(0))` after the orbit has
/// left the neighbourhood of its start, then refines it on the quadratic
/// interpolant of `x(t) − x(0)`.
pub fn detect_closure<S: HamiltonianSystem + ?Sized>(sys: &S, tr: &Trajectory, tolerance: f64) -> ClosureResult {
    let x0 = &tr.states[0];
    let delta: Vec<State> = tr.states.iter().map(|x| sys.difference(x, x0)).collect();
    let d: Vec<f64> = delta.iter().map(|v| v.iter().map(|c| c * c).sum::<f64>().sqrt()).collect();
    let leave = DEPARTURE_FACTOR * tolerance;
    let Some(start) = d.iter().position(|&v| v > leave) else {
        return ClosureResult {
            closed: false,
            period: None,
            min_distance: d.iter().cloned().fold(0.0, f64::max),
        };
    };
    let mut best = f64::INFINITY;
    for k in start.max(1)..d.len().saturating_sub(1) {
        best = best.min(d[k]);
        if !(d[k] <= d[k - 1] && d[k] <= d[k + 1]) || d[k] > leave {
            continue;
        }
        let (s, dist) = refine_minimum(&delta[k - 1], &delta[k], &delta[k + 1]);
        let h = tr.times[k + 1] - tr.times[k];
        return ClosureResult {
            closed: dist < tolerance,
            period: Some(tr.times[k] + s * h),
            min_distance: dist,
        };
    }
    ClosureResult {
        closed: false,
        period: None,
        min_distance: best,
    }
}

/// Integrates `cfg` and reports whether the orbit returns to its start.
pub fn closed_orbit_check<S: HamiltonianSystem + ?Sized>(
    sys: &S,
    cfg: &TrajectoryConfig,
    tolerance: f64,
) -> Result<ClosureResult> {
    let tr = integrate_trajectory(cfg, sys)?;
    Ok(detect_closure(sys, &tr, tolerance))
}
