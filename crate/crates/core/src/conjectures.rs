//! Numerical probes of four conjectures about curves of minimal entropies.
//!
//! Each probe compares two frontiers and reports their staircase deviation.
//! A probe never proves or refutes anything; its verdict only says whether
//! the deviation stayed under a threshold.

use serde::{Serialize, Serializer};

use crate::entropy::{ensure_dual_pair, EntropyPoint, RenyiOrder};
use crate::error::{Error, Result};
use crate::format::round_sig;
use crate::frontier::{
    anchor_states, combined_frontier, frontier_deviation, map_chunks, optimized_frontier, pareto_lower, pareto_lower_with_states,
    point_of, sample_diagram, sample_diagram_with_states, Deviation, FrontierCurve, MinimizeOptions, Subspace, CHUNK,
    DEVIATION_GRID,
};
use crate::numerics::{sample_state, tensor_vec, SeededRng, Strategy, C64};
use crate::observables::{fourier_cyclic, ObservablePair};

/// Default verdict threshold in bits.
pub const DEFAULT_THRESHOLD: f64 = 0.05;

/// Largest dimension a probe accepts.
pub const MAX_PROBE_DIM: usize = 16;

/// Targets in the optimized sweeps used by probes 3 and 4.
const SWEEP_TARGETS: usize = 32;

/// Targets in the sweeps of probe 2, where sampling alone is too sparse.
const FRONTIER_TARGETS: usize = 64;

/// Restarts per target in those sweeps.
const SWEEP_RESTARTS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    Tension,
}

impl Verdict {
    pub fn from_deviation(max_abs: f64, threshold: f64) -> Self {
        if max_abs <= threshold {
            Verdict::Consistent
        } else {
            Verdict::Tension
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Consistent => "consistent",
            Verdict::Tension => "tension",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

fn rounded<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig(*x))
}

/// JSON keys: `conjecture, unitary, alpha, beta, n, seed, max_abs,
/// signed_max, threshold, verdict`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub conjecture: u8,
    pub unitary: String,
    pub alpha: RenyiOrder,
    pub beta: RenyiOrder,
    /// Samples per side of the comparison.
    pub n: usize,
    pub seed: u64,
    #[serde(serialize_with = "rounded")]
    pub max_abs: f64,
    #[serde(serialize_with = "rounded")]
    pub signed_max: f64,
    pub threshold: f64,
    pub verdict: Verdict,
}

impl ProbeReport {
    fn new(conjecture: u8, unitary: String, (alpha, beta): (RenyiOrder, RenyiOrder), n: usize, seed: u64, dev: Deviation, threshold: f64) -> Self {
        Self {
            conjecture,
            unitary,
            alpha,
            beta,
            n,
            seed,
            max_abs: dev.max_abs,
            signed_max: dev.signed_max,
            threshold,
            verdict: Verdict::from_deviation(dev.max_abs, threshold),
        }
    }

    pub fn to_json(&self) -> String {
        crate::format::to_json(self)
    }
}

fn check_threshold(threshold: f64) -> Result<()> {
    if !(threshold.is_finite() && threshold >= 0.0) {
        return Err(Error::BadState(format!("threshold {threshold} must be finite and >= 0")));
    }
    Ok(())
}

fn check_probe_dim(d: usize) -> Result<()> {
    if d > MAX_PROBE_DIM {
        return Err(Error::TooLarge(format!("probe dimension {d} exceeds {MAX_PROBE_DIM}")));
    }
    Ok(())
}

/// Frontier of the union of two point sets.
fn union_frontier(a: &[EntropyPoint], b: &[EntropyPoint]) -> Result<FrontierCurve> {
    let all: Vec<EntropyPoint> = a.iter().chain(b).copied().collect();
    pareto_lower(&all)
}

/// Entropy pairs of `n` product states `σ₁ ⊗ σ₂` under `W₁ ⊗ W₂`: every
/// pair of factor anchors first, then independent Haar factors.
pub fn product_state_points(
    w1: &ObservablePair,
    w2: &ObservablePair,
    alpha: RenyiOrder,
    beta: RenyiOrder,
    n: usize,
    seed: u64,
) -> Result<Vec<EntropyPoint>> {
    let w = w1.tensor(w2)?;
    let (d1, d2) = (w1.dim(), w2.dim());
    let (a1, a2) = (anchor_states(w1), anchor_states(w2));
    let (mut scratch, mut probs) = (Vec::new(), Vec::new());
    let mut points: Vec<EntropyPoint> = a1
        .iter()
        .flat_map(|s| a2.iter().map(move |t| tensor_vec(s, t)))
        .take(n)
        .map(|psi| point_of(&w, &psi, alpha, beta, &mut scratch, &mut probs))
        .collect();
    let rest = n - points.len();
    let parts = map_chunks(rest.div_ceil(CHUNK), |c| -> Result<Vec<EntropyPoint>> {
        let mut rng = SeededRng::new(seed, c as u64 + 1);
        let (mut scratch, mut probs) = (Vec::new(), Vec::new());
        (0..CHUNK.min(rest - c * CHUNK))
            .map(|_| {
                let s = sample_state(d1, Strategy::Haar, &mut rng)?;
                let t = sample_state(d2, Strategy::Haar, &mut rng)?;
                Ok(point_of(&w, &tensor_vec(&s, &t), alpha, beta, &mut scratch, &mut probs))
            })
            .collect()
    });
    for part in parts {
        points.extend(part?);
    }
    Ok(points)
}

/// Product-state frontier of `W₁ ⊗ W₂` against the general frontier.
///
/// The general side is `n` Haar states plus the product points, so the
/// restricted frontier can never lie below it and `signed_max >= 0`.
pub fn probe_product_states(
    w1: &ObservablePair,
    w2: &ObservablePair,
    alpha: RenyiOrder,
    beta: RenyiOrder,
    n: usize,
    seed: u64,
    threshold: f64,
) -> Result<ProbeReport> {
    check_threshold(threshold)?;
    ensure_dual_pair(alpha, beta)?;
    let w = w1.tensor(w2)?;
    check_probe_dim(w.dim())?;
    let products = product_state_points(w1, w2, alpha, beta, n, seed)?;
    let general = sample_diagram(&w, alpha, beta, n, Strategy::Haar, seed)?;
    let restricted = pareto_lower(&products)?;
    let union = union_frontier(&general.points, &products)?;
    let dev = frontier_deviation(&restricted, &union, DEVIATION_GRID)?;
    Ok(ProbeReport::new(1, w.label().to_string(), (alpha, beta), n, seed, dev, threshold))
}

/// Frontiers of `F_{d₁d₂}` against `F_{d₁} ⊗ F_{d₂}`, each from `n` Haar
/// samples joined with an optimized sweep over the same targets and seeds;
/// `signed_max` is (cyclic minus tensor).
pub fn probe_fourier_decomposition(
    d1: usize,
    d2: usize,
    alpha: RenyiOrder,
    beta: RenyiOrder,
    n: usize,
    seed: u64,
    threshold: f64,
) -> Result<ProbeReport> {
    check_threshold(threshold)?;
    ensure_dual_pair(alpha, beta)?;
    check_probe_dim(d1.saturating_mul(d2))?;
    let (cyclic, tensor) = fourier_pair(d1, d2)?;
    let opts = MinimizeOptions {
        restarts: SWEEP_RESTARTS,
        seed,
        cross_check_samples: 0,
        ..Default::default()
    };
    let sweep = (!(alpha.is_infinite() || beta.is_infinite())).then_some((FRONTIER_TARGETS, &opts));
    let a = combined_frontier(&cyclic, alpha, beta, n, Strategy::Haar, seed, sweep)?;
    let b = combined_frontier(&tensor, alpha, beta, n, Strategy::Haar, seed, sweep)?;
    let dev = frontier_deviation(&a, &b, DEVIATION_GRID)?;
    let label = format!("{} vs {}", cyclic.label(), tensor.label());
    Ok(ProbeReport::new(2, label, (alpha, beta), n, seed, dev, threshold))
}

/// `(F_{d₁d₂}, F_{d₁} ⊗ F_{d₂})`.
pub fn fourier_pair(d1: usize, d2: usize) -> Result<(ObservablePair, ObservablePair)> {
    let cyclic = fourier_cyclic(d1 * d2)?;
    let tensor = fourier_cyclic(d1)?.tensor(&fourier_cyclic(d2)?)?;
    Ok((cyclic, tensor))
}

fn check_open_orders(alpha: RenyiOrder, beta: RenyiOrder) -> Result<()> {
    ensure_dual_pair(alpha, beta)?;
    for o in [alpha, beta] {
        if o.is_infinite() || o == RenyiOrder::HALF {
            return Err(Error::UnsupportedOrder(o.value()));
        }
    }
    Ok(())
}

/// Witness states of the optimized `base` frontier (plus the corners),
/// evaluated at each pair of `others`.
///
/// For each other pair the reference is its own sampled frontier joined
/// with the evaluated witnesses; the deviation is the largest height of a
/// witness above that reference, so it is never negative.
pub fn probe_alpha_independence(
    w: &ObservablePair,
    base: (RenyiOrder, RenyiOrder),
    others: &[(RenyiOrder, RenyiOrder)],
    n: usize,
    seed: u64,
    threshold: f64,
) -> Result<ProbeReport> {
    check_threshold(threshold)?;
    check_open_orders(base.0, base.1)?;
    for &(a, b) in others {
        check_open_orders(a, b)?;
    }
    if others.is_empty() {
        return Err(Error::EmptyInput);
    }
    check_probe_dim(w.dim())?;
    let opts = MinimizeOptions {
        restarts: SWEEP_RESTARTS,
        seed,
        cross_check_samples: 0,
        ..Default::default()
    };
    let curve = optimized_frontier(w, base.0, base.1, SWEEP_TARGETS, &opts)?;
    let witnesses = curve.witnesses.unwrap_or_default();
    let heights = witness_heights(w, &witnesses, others, n, seed)?;
    let worst = heights.iter().copied().fold(0.0f64, f64::max);
    let dev = Deviation {
        max_abs: worst,
        signed_max: worst,
    };
    Ok(ProbeReport::new(3, w.label().to_string(), base, n, seed, dev, threshold))
}

/// Height of every witness above each other pair's reference frontier, in
/// pair-major order.
pub fn witness_heights(
    w: &ObservablePair,
    witnesses: &[Vec<C64>],
    others: &[(RenyiOrder, RenyiOrder)],
    n: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(witnesses.len() * others.len());
    let (mut scratch, mut probs) = (Vec::new(), Vec::new());
    for &(a, b) in others {
        let evaluated: Vec<EntropyPoint> =
            witnesses.iter().map(|psi| point_of(w, psi, a, b, &mut scratch, &mut probs)).collect();
        let sampled = sample_diagram(w, a, b, n, Strategy::Haar, seed)?;
        let reference = union_frontier(&sampled.points, &evaluated)?;
        for p in &evaluated {
            let floor = reference.gamma(p.hx).expect("witness belongs to the reference");
            out.push(p.hy - floor);
        }
    }
    Ok(out)
}

/// Real-real symmetric frontier of `F_d` (samples plus an rrs-restricted
/// sweep) against the Haar frontier joined with it, so `signed_max >= 0`.
pub fn probe_rrs_sufficiency(
    d: usize,
    alpha: RenyiOrder,
    beta: RenyiOrder,
    n: usize,
    seed: u64,
    threshold: f64,
) -> Result<ProbeReport> {
    check_threshold(threshold)?;
    ensure_dual_pair(alpha, beta)?;
    check_probe_dim(d)?;
    let w = fourier_cyclic(d)?;
    let rrs = rrs_frontier(&w, alpha, beta, n, seed)?;
    let haar = sample_diagram(&w, alpha, beta, n, Strategy::Haar, seed)?;
    let general = union_frontier(&haar.points, &rrs.points)?;
    let dev = frontier_deviation(&rrs, &general, DEVIATION_GRID)?;
    Ok(ProbeReport::new(4, w.label().to_string(), (alpha, beta), n, seed, dev, threshold))
}

/// Frontier of `n` rrs samples joined with an rrs-restricted optimized
/// sweep, with witnesses.
pub fn rrs_frontier(w: &ObservablePair, alpha: RenyiOrder, beta: RenyiOrder, n: usize, seed: u64) -> Result<FrontierCurve> {
    let sample = sample_diagram_with_states(w, alpha, beta, n, Strategy::Rrs, seed)?;
    let mut points = Vec::with_capacity(n);
    let mut states = Vec::with_capacity(n);
    // Anchors need not be rrs; keep only the sampled part and the real corners.
    for (p, s) in sample.points.iter().zip(sample.states.expect("states requested")) {
        if is_rrs(&s) {
            points.push(*p);
            states.push(s);
        }
    }
    if !(alpha.is_infinite() || beta.is_infinite()) {
        let opts = MinimizeOptions {
            restarts: SWEEP_RESTARTS,
            seed,
            subspace: Subspace::Rrs,
            cross_check_samples: 0,
            ..Default::default()
        };
        let sweep = optimized_frontier(w, alpha, beta, SWEEP_TARGETS, &opts)?;
        for (p, s) in sweep.points.iter().zip(sweep.witnesses.unwrap_or_default()) {
            if is_rrs(&s) {
                points.push(*p);
                states.push(s);
            }
        }
    }
    pareto_lower_with_states(&points, &states)
}

/// Real with `ψ_j = ψ_{d-j}` to within `1e-12`.
pub fn is_rrs(psi: &[C64]) -> bool {
    let d = psi.len();
    (0..d).all(|j| psi[j].im.abs() <= 1e-12 && (psi[j].re - psi[(d - j) % d].re).abs() <= 1e-12)
}
