//! Entropy diagrams: sampling, the lower-left (Pareto) boundary, curve
//! comparison and the numerical and exact curves of minimal entropies.

mod englert;
mod extremality;
mod optimize;
mod qubit;

use serde::Serialize;

pub use englert::{englert_curve, englert_state, EnglertCurve};
pub use extremality::{extremality_phase_gradient_fd, extremality_residual, ExtremalityResidual};
pub use optimize::{
    combined_frontier, dominating_pure, min_halpha_given_hbeta, optimized_frontier, ConstrainedMin, DominatingState, MinimizeOptions,
    Subspace,
};
pub use qubit::{d2_exact_curve, d2_gamma, d2_witness, qubit_arc, reduce_2x2_to_rotation, rotation, QUBIT_CURVE_POINTS};

use crate::entropy::{renyi_slice, EntropyPoint, RenyiOrder};
use crate::equality::{find_equality_supports, MAX_SCAN_DIM};
use crate::error::{Error, Result};
use crate::format::{round_sig, state_pairs};
use crate::numerics::{basis_vector, sample_state, SeededRng, Strategy, C64};
use crate::observables::ObservablePair;

/// States drawn per RNG stream. Chunk `k` of a sample uses stream `k + 1`,
/// so the output does not depend on how chunks are scheduled.
pub const CHUNK: usize = 1024;

/// Default comparison grid size for [`frontier_deviation`].
pub const DEVIATION_GRID: usize = 200;

/// Sorted by `hx` strictly increasing, `hy` strictly decreasing.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FrontierCurve {
    pub points: Vec<EntropyPoint>,
    pub witnesses: Option<Vec<Vec<C64>>>,
}

impl FrontierCurve {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Staircase value `min{hy : hx <= x}`; `None` left of the curve.
    pub fn gamma(&self, x: f64) -> Option<f64> {
        let n = self.points.partition_point(|p| p.hx <= x);
        (n > 0).then(|| self.points[n - 1].hy)
    }

    pub fn hx_range(&self) -> Option<(f64, f64)> {
        Some((self.points.first()?.hx, self.points.last()?.hx))
    }

    /// Frontier JSON: `{"alpha", "beta", "unitary", "points": [{"hx", "hy", "state"}]}`.
    pub fn to_json(&self, alpha: RenyiOrder, beta: RenyiOrder, unitary: &str) -> String {
        #[derive(Serialize)]
        struct Point {
            hx: f64,
            hy: f64,
            #[serde(skip_serializing_if = "Option::is_none")]
            state: Option<Vec<[f64; 2]>>,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            alpha: RenyiOrder,
            beta: RenyiOrder,
            unitary: &'a str,
            points: Vec<Point>,
        }
        let points = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| Point {
                hx: round_sig(p.hx),
                hy: round_sig(p.hy),
                state: self.witnesses.as_ref().map(|w| state_pairs(&w[i])),
            })
            .collect();
        crate::format::to_json(&Doc {
            alpha,
            beta,
            unitary,
            points,
        })
    }
}

/// Lower-left staircase of `points` under the coordinatewise order. Input
/// order is irrelevant; among equal `hx` the smallest `hy` is kept.
pub fn pareto_lower(points: &[EntropyPoint]) -> Result<FrontierCurve> {
    Ok(pareto_indices(points)?
        .into_iter()
        .map(|i| points[i])
        .collect::<Vec<_>>()
        .into())
}

/// As [`pareto_lower`], carrying the state that produced each point.
pub fn pareto_lower_with_states(points: &[EntropyPoint], states: &[Vec<C64>]) -> Result<FrontierCurve> {
    if points.len() != states.len() {
        return Err(Error::DimensionMismatch {
            expected: points.len(),
            got: states.len(),
        });
    }
    let keep = pareto_indices(points)?;
    Ok(FrontierCurve {
        points: keep.iter().map(|&i| points[i]).collect(),
        witnesses: Some(keep.iter().map(|&i| states[i].clone()).collect()),
    })
}

fn pareto_indices(points: &[EntropyPoint]) -> Result<Vec<usize>> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        points[a]
            .hx
            .total_cmp(&points[b].hx)
            .then(points[a].hy.total_cmp(&points[b].hy))
    });
    let mut keep = Vec::new();
    let mut best = f64::INFINITY;
    for i in order {
        if points[i].hy < best {
            best = points[i].hy;
            keep.push(i);
        }
    }
    Ok(keep)
}

impl From<Vec<EntropyPoint>> for FrontierCurve {
    fn from(points: Vec<EntropyPoint>) -> Self {
        Self {
            points,
            witnesses: None,
        }
    }
}

/// Maximum absolute and maximum signed (`A - B`) staircase difference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Deviation {
    pub max_abs: f64,
    pub signed_max: f64,
}

/// Compares the staircases of `a` and `b` on `grid_n` evenly spaced points
/// over the overlap of their `hx` ranges.
pub fn frontier_deviation(a: &FrontierCurve, b: &FrontierCurve, grid_n: usize) -> Result<Deviation> {
    let ((a_lo, a_hi), (b_lo, b_hi)) = match (a.hx_range(), b.hx_range()) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(Error::EmptyInput),
    };
    let (lo, hi) = (a_lo.max(b_lo), a_hi.min(b_hi));
    if lo > hi {
        return Err(Error::NoOverlap);
    }
    let n = grid_n.max(2);
    let mut dev = Deviation {
        max_abs: 0.0,
        signed_max: f64::NEG_INFINITY,
    };
    for i in 0..n {
        let x = match i {
            0 => lo,
            _ if i == n - 1 => hi,
            _ => lo + (hi - lo) * i as f64 / (n - 1) as f64,
        };
        let diff = a.gamma(x).expect("x >= lo") - b.gamma(x).expect("x >= lo");
        dev.max_abs = dev.max_abs.max(diff.abs());
        dev.signed_max = dev.signed_max.max(diff);
    }
    Ok(dev)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagramMeta {
    pub unitary: String,
    pub alpha: RenyiOrder,
    pub beta: RenyiOrder,
    pub strategy: String,
    pub n: usize,
    pub seed: u64,
    /// Leading points that come from anchor states rather than sampling.
    pub injected: usize,
    /// Set when real sampling was requested for a complex `W`.
    pub real_scope_warning: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagramSample {
    pub points: Vec<EntropyPoint>,
    pub states: Option<Vec<Vec<C64>>>,
    pub meta: DiagramMeta,
}

impl DiagramSample {
    pub fn frontier(&self) -> Result<FrontierCurve> {
        match &self.states {
            Some(s) => pareto_lower_with_states(&self.points, s),
            None => pareto_lower(&self.points),
        }
    }
}

/// Entropy pair of `psi` without validation; `scratch` receives `Wψ`.
pub(crate) fn point_of(
    w: &ObservablePair,
    psi: &[C64],
    alpha: RenyiOrder,
    beta: RenyiOrder,
    scratch: &mut Vec<C64>,
    probs: &mut Vec<f64>,
) -> EntropyPoint {
    scratch.resize(psi.len(), C64::new(0.0, 0.0));
    w.matrix().apply_into(psi, scratch);
    probs.clear();
    probs.extend(psi.iter().map(|z| z.norm_sqr()));
    let hx = renyi_slice(probs, alpha);
    probs.clear();
    probs.extend(scratch.iter().map(|z| z.norm_sqr()));
    EntropyPoint::new(hx, renyi_slice(probs, beta))
}

/// States always placed at the start of a diagram sample: both measurement
/// bases (the corners at `hx = 0` and `hy = 0`) and one witness per equality
/// support when the support search is affordable.
pub fn anchor_states(w: &ObservablePair) -> Vec<Vec<C64>> {
    let d = w.dim();
    let mut out: Vec<Vec<C64>> = (0..d).map(|k| basis_vector(d, k)).collect();
    out.extend((0..d).map(|k| w.matrix().apply_adjoint(&basis_vector(d, k))));
    if d <= MAX_SCAN_DIM {
        if let Ok(scan) = find_equality_supports(w, 1e-8) {
            out.extend(scan.hits().map(|h| h.witness.clone()));
        }
    }
    out
}

pub(crate) fn map_chunks<T: Send>(chunks: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..chunks).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..chunks).map(f).collect()
    }
}

/// Draws `n` states with `strategy` and evaluates them, keeping the states
/// when `keep_states` is set.
pub(crate) fn draw_points(
    w: &ObservablePair,
    alpha: RenyiOrder,
    beta: RenyiOrder,
    n: usize,
    strategy: Strategy,
    seed: u64,
    keep_states: bool,
) -> Result<(Vec<EntropyPoint>, Option<Vec<Vec<C64>>>)> {
    let d = w.dim();
    let chunks = n.div_ceil(CHUNK);
    let parts = map_chunks(chunks, |c| -> Result<(Vec<EntropyPoint>, Vec<Vec<C64>>)> {
        let mut rng = SeededRng::new(seed, c as u64 + 1);
        let count = CHUNK.min(n - c * CHUNK);
        let (mut pts, mut sts) = (Vec::with_capacity(count), Vec::new());
        let (mut scratch, mut probs) = (Vec::with_capacity(d), Vec::with_capacity(d));
        for _ in 0..count {
            let psi = sample_state(d, strategy, &mut rng)?;
            pts.push(point_of(w, &psi, alpha, beta, &mut scratch, &mut probs));
            if keep_states {
                sts.push(psi);
            }
        }
        Ok((pts, sts))
    });
    let mut points = Vec::with_capacity(n);
    let mut states = keep_states.then(|| Vec::with_capacity(n));
    for part in parts {
        let (p, s) = part?;
        points.extend(p);
        if let Some(all) = states.as_mut() {
            all.extend(s);
        }
    }
    Ok((points, states))
}

/// `n` entropy pairs: the anchor states first (at most `n` of them), then
/// states drawn with `strategy`. Deterministic in `seed` regardless of the
/// number of worker threads.
pub fn sample_diagram(
    w: &ObservablePair,
    alpha: RenyiOrder,
    beta: RenyiOrder,
    n: usize,
    strategy: Strategy,
    seed: u64,
) -> Result<DiagramSample> {
    sample_diagram_impl(w, alpha, beta, n, strategy, seed, false)
}

/// As [`sample_diagram`], also returning the states.
pub fn sample_diagram_with_states(
    w: &ObservablePair,
    alpha: RenyiOrder,
    beta: RenyiOrder,
    n: usize,
    strategy: Strategy,
    seed: u64,
) -> Result<DiagramSample> {
    sample_diagram_impl(w, alpha, beta, n, strategy, seed, true)
}

fn sample_diagram_impl(
    w: &ObservablePair,
    alpha: RenyiOrder,
    beta: RenyiOrder,
    n: usize,
    strategy: Strategy,
    seed: u64,
    keep_states: bool,
) -> Result<DiagramSample> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let mut anchors = anchor_states(w);
    anchors.truncate(n);
    let injected = anchors.len();
    let (mut scratch, mut probs) = (Vec::new(), Vec::new());
    let mut points: Vec<EntropyPoint> = anchors
        .iter()
        .map(|psi| point_of(w, psi, alpha, beta, &mut scratch, &mut probs))
        .collect();
    let (drawn, drawn_states) = draw_points(w, alpha, beta, n - injected, strategy, seed, keep_states)?;
    points.extend(drawn);
    let states = drawn_states.map(|s| {
        let mut all = anchors;
        all.extend(s);
        all
    });
    let real_request = matches!(strategy, Strategy::Real | Strategy::Rrs);
    Ok(DiagramSample {
        points,
        states,
        meta: DiagramMeta {
            unitary: w.label().to_string(),
            alpha,
            beta,
            strategy: strategy.to_string(),
            n,
            seed,
            injected,
            real_scope_warning: real_request && !w.is_real(),
        },
    })
}

/// Pareto frontier of a diagram sample, with witness states.
pub fn sampled_frontier(
    w: &ObservablePair,
    alpha: RenyiOrder,
    beta: RenyiOrder,
    n: usize,
    strategy: Strategy,
    seed: u64,
) -> Result<FrontierCurve> {
    sample_diagram_with_states(w, alpha, beta, n, strategy, seed)?.frontier()
}
