//! States `(√p₂, …, √p₂, √p₁)` with `p₁ + (d-1)p₂ = 1`, evaluated against
//! the cyclic Fourier matrix.

use super::{pareto_lower_with_states, FrontierCurve};
use crate::entropy::{entropy_pair, EntropyPoint, RenyiOrder};
use crate::equality::overlap_data;
use crate::error::{Error, Result};
use crate::numerics::C64;
use crate::observables::fourier_cyclic;

/// Sweep points closer than this in the entropy plane count as one
/// equality point.
const MERGE_DIST: f64 = 1e-4;

/// Largest MU deficit counted as an equality point.
const EQUALITY_TOL: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct EnglertCurve {
    /// Pareto-cleaned sweep, witnesses attached.
    pub curve: FrontierCurve,
    /// Every sweep point, in order of increasing `p₁`.
    pub sweep: Vec<(f64, EntropyPoint)>,
    /// Distinct sweep points attaining the MU bound.
    pub equality_points: Vec<EntropyPoint>,
}

impl EnglertCurve {
    pub fn mu_equality_count(&self) -> usize {
        self.equality_points.len()
    }
}

/// `(√p₂, …, √p₂, √p₁)` with `p₂ = (1 - p₁)/(d - 1)`.
pub fn englert_state(d: usize, p1: f64) -> Result<Vec<C64>> {
    if d < 2 {
        return Err(Error::BadDimension(format!("candidate family needs d >= 2, got {d}")));
    }
    if !(0.0..=1.0).contains(&p1) {
        return Err(Error::BadState(format!("p1 = {p1} outside [0, 1]")));
    }
    let p2 = (1.0 - p1) / (d - 1) as f64;
    let mut psi = vec![C64::new(p2.sqrt(), 0.0); d];
    psi[d - 1] = C64::new(p1.sqrt(), 0.0);
    Ok(psi)
}

/// Sweeps `p₁` over `m` evenly spaced values in `[0, 1]` plus `1/d`.
pub fn englert_curve(d: usize, alpha: RenyiOrder, beta: RenyiOrder, m: usize) -> Result<EnglertCurve> {
    if m < 100 {
        return Err(Error::BadDimension(format!("candidate sweep needs at least 100 points, got {m}")));
    }
    let w = fourier_cyclic(d)?;
    let bound = overlap_data(&w).mu_bound_bits;
    let mut ps: Vec<f64> = (0..m).map(|k| k as f64 / (m - 1) as f64).collect();
    ps.push(1.0 / d as f64);
    ps.sort_by(f64::total_cmp);
    ps.dedup();

    let mut sweep = Vec::with_capacity(ps.len());
    let mut states = Vec::with_capacity(ps.len());
    for &p1 in &ps {
        let psi = englert_state(d, p1)?;
        sweep.push((p1, entropy_pair(&w, &psi, alpha, beta)?));
        states.push(psi);
    }

    let mut equality_points: Vec<EntropyPoint> = Vec::new();
    for &(_, p) in &sweep {
        if p.sum() - bound <= EQUALITY_TOL && equality_points.iter().all(|q| q.distance(&p) >= MERGE_DIST) {
            equality_points.push(p);
        }
    }
    equality_points.sort_by(|a, b| a.hx.total_cmp(&b.hx));

    let points: Vec<EntropyPoint> = sweep.iter().map(|&(_, p)| p).collect();
    Ok(EnglertCurve {
        curve: pareto_lower_with_states(&points, &states)?,
        sweep,
        equality_points,
    })
}
