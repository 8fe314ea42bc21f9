//! Local optimization over pure states.
//!
//! Objectives are smooth functions of `p_X = |ψ|²` and `p_Y = |Wψ|²`. A
//! point `x ∈ C^d \ {0}` stands for the state `x/|x|`, which turns the unit
//! sphere into an unconstrained problem for L-BFGS with Armijo backtracking.
//! Restricting to real or real-symmetric states is a linear projection of
//! the gradient.

use serde::Serialize;

use super::{anchor_states, draw_points, sampled_frontier, FrontierCurve};
use crate::entropy::{ensure_dual_pair, mixed_entropy_pair, renyi_gradient_into, renyi_slice, EntropyPoint, RenyiOrder};
use crate::error::{Error, Result};
use crate::numerics::{normalize, sample_state, MixedEnsemble, SeededRng, Strategy, C64};
use crate::observables::ObservablePair;

/// The family of states searched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Subspace {
    Full,
    /// Real amplitudes.
    Real,
    /// Real with `ψ_j = ψ_{d-j}`.
    Rrs,
}

impl Subspace {
    fn project(self, v: &mut [C64]) {
        match self {
            Subspace::Full => {}
            Subspace::Real => v.iter_mut().for_each(|z| z.im = 0.0),
            Subspace::Rrs => {
                let d = v.len();
                let orig: Vec<f64> = v.iter().map(|z| z.re).collect();
                for j in 0..d {
                    v[j] = C64::new(0.5 * (orig[j] + orig[(d - j) % d]), 0.0);
                }
            }
        }
    }

    fn strategies(self) -> &'static [Strategy] {
        match self {
            Subspace::Full => &[Strategy::Haar, Strategy::Real, Strategy::Rrs, Strategy::BasisMix(None)],
            Subspace::Real => &[Strategy::Real, Strategy::Rrs],
            Subspace::Rrs => &[Strategy::Rrs],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MinimizeOptions {
    /// Random restarts, cycling through the strategies of the subspace.
    pub restarts: usize,
    /// Constraint tolerance `|H_β - δ|` for a feasible witness.
    pub ctol: f64,
    /// Iteration cap per restart, shared by all penalty stages.
    pub max_iter: usize,
    /// Stop when the projected gradient norm falls below this.
    pub gtol: f64,
    pub seed: u64,
    pub subspace: Subspace,
    /// States sampled for seeding and for the cross-check; 0 disables both.
    pub cross_check_samples: usize,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        Self {
            restarts: 32,
            ctol: 1e-6,
            max_iter: 10_000,
            gtol: 1e-9,
            seed: 0,
            subspace: Subspace::Full,
            cross_check_samples: 2048,
        }
    }
}

/// Real inner product `Re <a, b>` on `C^d = R^{2d}`.
fn dot(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.re * y.re + x.im * y.im).sum()
}

/// Evaluates an objective at a unit vector, writing the real gradient
/// `∂F/∂Re ψ + i ∂F/∂Im ψ` of its extension to `C^d`.
trait Objective {
    fn eval(&mut self, psi: &[C64], grad: &mut [C64]) -> f64;
}

struct SphereResult {
    psi: Vec<C64>,
    iterations: usize,
}

/// L-BFGS on `x ↦ F(x/|x|)`.
fn minimize_on_sphere(
    start: &[C64],
    subspace: Subspace,
    max_iter: usize,
    gtol: f64,
    f: &mut impl Objective,
) -> SphereResult {
    const MEMORY: usize = 8;
    let d = start.len();
    let mut x = start.to_vec();
    subspace.project(&mut x);
    if normalize(&mut x).is_err() {
        x = start.to_vec();
        let _ = normalize(&mut x);
    }

    let mut g_raw = vec![C64::new(0.0, 0.0); d];
    let eval = |x: &[C64], f: &mut dyn FnMut(&[C64], &mut [C64]) -> f64, g_raw: &mut [C64]| -> (f64, Vec<C64>) {
        let n = dot(x, x).sqrt();
        let psi: Vec<C64> = x.iter().map(|z| z / n).collect();
        let val = f(&psi, g_raw);
        let radial = dot(&psi, g_raw);
        let mut g: Vec<C64> = g_raw.iter().zip(&psi).map(|(gi, pi)| (gi - pi * radial) / n).collect();
        subspace.project(&mut g);
        (val, g)
    };
    let mut call = |psi: &[C64], g: &mut [C64]| f.eval(psi, g);

    let (mut fx, mut gx) = eval(&x, &mut call, &mut g_raw);
    let mut s_hist: Vec<Vec<C64>> = Vec::with_capacity(MEMORY);
    let mut y_hist: Vec<Vec<C64>> = Vec::with_capacity(MEMORY);
    let mut iterations = 0;

    while iterations < max_iter {
        let gnorm = dot(&gx, &gx).sqrt();
        if !(gnorm > gtol) {
            break;
        }
        iterations += 1;

        // Two-loop recursion.
        let mut q = gx.clone();
        let mut alphas = Vec::with_capacity(s_hist.len());
        for (s, y) in s_hist.iter().zip(&y_hist).rev() {
            let rho = 1.0 / dot(y, s);
            let a = rho * dot(s, &q);
            for (qi, yi) in q.iter_mut().zip(y) {
                *qi -= yi * a;
            }
            alphas.push((a, rho));
        }
        let scale = match (s_hist.last(), y_hist.last()) {
            (Some(s), Some(y)) => dot(s, y) / dot(y, y),
            _ => 1.0 / gnorm.max(1.0),
        };
        for qi in q.iter_mut() {
            *qi *= scale;
        }
        for ((s, y), (a, rho)) in s_hist.iter().zip(&y_hist).zip(alphas.into_iter().rev()) {
            let b = rho * dot(y, &q);
            for (qi, si) in q.iter_mut().zip(s) {
                *qi += si * (a - b);
            }
        }
        let mut dir: Vec<C64> = q.iter().map(|z| -z).collect();
        let mut slope = dot(&gx, &dir);
        if !(slope < 0.0) {
            s_hist.clear();
            y_hist.clear();
            dir = gx.iter().map(|z| -z / gnorm.max(1.0)).collect();
            slope = dot(&gx, &dir);
        }

        // Armijo backtracking.
        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            let xn: Vec<C64> = x.iter().zip(&dir).map(|(xi, di)| xi + di * t).collect();
            let (fn_, gn) = eval(&xn, &mut call, &mut g_raw);
            let armijo = fn_ <= fx + 1e-4 * t * slope;
            // Near the optimum f stops resolving the decrease; fall back to
            // the approximate Wolfe test on the directional derivative.
            let dn = dot(&gn, &dir);
            let approx_wolfe = fn_ <= fx + 1e-14 * fx.abs().max(1.0) && dn >= 0.9 * slope && dn <= -(2.0 * 1e-4 - 1.0) * slope;
            if fn_.is_finite() && (armijo || approx_wolfe) {
                accepted = Some((xn, fn_, gn));
                break;
            }
            t *= 0.5;
        }
        let Some((xn, fn_, gn)) = accepted else {
            if s_hist.is_empty() {
                break;
            }
            // Retry from steepest descent before giving up.
            s_hist.clear();
            y_hist.clear();
            continue;
        };
        let s: Vec<C64> = xn.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<C64> = gn.iter().zip(&gx).map(|(a, b)| a - b).collect();
        let converged = fx - fn_ <= 1e-16 * fx.abs().max(1.0) && t < 1e-6;
        x = xn;
        fx = fn_;
        gx = gn;
        if dot(&s, &y) > 1e-300 {
            if s_hist.len() == MEMORY {
                s_hist.remove(0);
                y_hist.remove(0);
            }
            s_hist.push(s);
            y_hist.push(y);
        }
        // Keep |x| near one; the objective is scale invariant.
        let n = dot(&x, &x).sqrt();
        if !(0.5..=2.0).contains(&n) {
            x.iter_mut().for_each(|z| *z /= n);
            gx.iter_mut().for_each(|z| *z *= n);
            s_hist.clear();
            y_hist.clear();
        }
        if converged {
            break;
        }
    }
    let n = dot(&x, &x).sqrt();
    SphereResult {
        psi: x.iter().map(|z| z / n).collect(),
        iterations,
    }
}

/// Shared evaluation of both entropies and their gradients.
struct EntropyEval<'a> {
    w: &'a ObservablePair,
    alpha: RenyiOrder,
    beta: RenyiOrder,
    wpsi: Vec<C64>,
    px: Vec<f64>,
    py: Vec<f64>,
    gx: Vec<f64>,
    gy: Vec<f64>,
    tmp: Vec<C64>,
}

impl<'a> EntropyEval<'a> {
    fn new(w: &'a ObservablePair, alpha: RenyiOrder, beta: RenyiOrder) -> Self {
        let d = w.dim();
        Self {
            w,
            alpha,
            beta,
            wpsi: vec![C64::new(0.0, 0.0); d],
            px: vec![0.0; d],
            py: vec![0.0; d],
            gx: vec![0.0; d],
            gy: vec![0.0; d],
            tmp: vec![C64::new(0.0, 0.0); d],
        }
    }

    /// Entropies at `psi`; fills the probability and gradient buffers.
    fn entropies(&mut self, psi: &[C64]) -> (f64, f64) {
        self.w.matrix().apply_into(psi, &mut self.wpsi);
        for (p, z) in self.px.iter_mut().zip(psi) {
            *p = z.norm_sqr();
        }
        for (p, z) in self.py.iter_mut().zip(&self.wpsi) {
            *p = z.norm_sqr();
        }
        renyi_gradient_into(&self.px, self.alpha, &mut self.gx);
        renyi_gradient_into(&self.py, self.beta, &mut self.gy);
        (renyi_slice(&self.px, self.alpha), renyi_slice(&self.py, self.beta))
    }

    /// `grad = 2 a (g_X ⊙ ψ) + 2 b W†(g_Y ⊙ Wψ)`.
    fn combine(&mut self, psi: &[C64], a: f64, b: f64, grad: &mut [C64]) {
        for (t, (g, z)) in self.tmp.iter_mut().zip(self.gy.iter().zip(&self.wpsi)) {
            *t = z * *g;
        }
        let back = self.w.matrix().apply_adjoint(&self.tmp);
        for (j, out) in grad.iter_mut().enumerate() {
            *out = psi[j] * (2.0 * a * self.gx[j]) + back[j] * (2.0 * b);
        }
    }
}

/// `H_α(p_X) + λ (H_β(p_Y) - δ) + κ (H_β(p_Y) - δ)²`.
struct Penalty<'a> {
    e: EntropyEval<'a>,
    delta: f64,
    kappa: f64,
    lambda: f64,
}

impl Objective for Penalty<'_> {
    fn eval(&mut self, psi: &[C64], grad: &mut [C64]) -> f64 {
        let (hx, hy) = self.e.entropies(psi);
        let v = hy - self.delta;
        self.e.combine(psi, 1.0, self.lambda + 2.0 * self.kappa * v, grad);
        hx + self.lambda * v + self.kappa * v * v
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstrainedMin {
    /// `H_α(p_X)` at the witness.
    pub value: f64,
    /// `H_β(p_Y)` at the witness.
    pub hy: f64,
    pub delta: f64,
    #[serde(skip)]
    pub witness: Vec<C64>,
    /// Restarts that ended within `ctol` of the constraint.
    pub feasible_restarts: usize,
    pub restarts: usize,
}

fn entropy_point(w: &ObservablePair, psi: &[C64], alpha: RenyiOrder, beta: RenyiOrder) -> EntropyPoint {
    let (mut a, mut b) = (Vec::new(), Vec::new());
    super::point_of(w, psi, alpha, beta, &mut a, &mut b)
}

fn check_orders(alpha: RenyiOrder, beta: RenyiOrder) -> Result<()> {
    for o in [alpha, beta] {
        if o.is_infinite() {
            return Err(Error::UnsupportedOrder(o.value()));
        }
    }
    Ok(())
}

/// Runs the penalty continuation from `start`.
fn penalty_descent(
    w: &ObservablePair,
    alpha: RenyiOrder,
    beta: RenyiOrder,
    delta: f64,
    start: &[C64],
    opts: &MinimizeOptions,
) -> (Vec<C64>, EntropyPoint) {
    const KAPPAS: [f64; 3] = [10.0, 100.0, 1e3];
    const REFINEMENTS: usize = 12;
    let mut obj = Penalty {
        e: EntropyEval::new(w, alpha, beta),
        delta,
        kappa: KAPPAS[0],
        lambda: 0.0,
    };
    let stages = KAPPAS.len() + REFINEMENTS;
    let per_stage = (opts.max_iter / 4).max(50);
    let mut budget = opts.max_iter;
    let mut psi = start.to_vec();
    for stage in 0..stages {
        obj.kappa = KAPPAS[stage.min(KAPPAS.len() - 1)];
        let r = minimize_on_sphere(&psi, opts.subspace, per_stage.min(budget), opts.gtol, &mut obj);
        budget = budget.saturating_sub(r.iterations);
        psi = r.psi;
        let p = entropy_point(w, &psi, alpha, beta);
        let v = p.hy - delta;
        // Multiplier update (augmented Lagrangian) after each stage.
        obj.lambda += 2.0 * obj.kappa * v;
        if stage + 1 >= KAPPAS.len() && v.abs() <= 0.1 * opts.ctol {
            break;
        }
        if budget == 0 {
            break;
        }
    }
    let p = entropy_point(w, &psi, alpha, beta);
    (psi, p)
}

/// Starting points: random restarts, the given seeds, states with flat
/// `p_Y`, and the most promising sampled states. All but the random
/// restarts are slightly perturbed.
fn starting_points(
    w: &ObservablePair,
    alpha: RenyiOrder,
    beta: RenyiOrder,
    delta: f64,
    opts: &MinimizeOptions,
    seeds: &[Vec<C64>],
) -> Result<Vec<Vec<C64>>> {
    let d = w.dim();
    let mut rng = SeededRng::new(opts.seed, 0);
    let strategies = opts.subspace.strategies();
    let mut starts: Vec<Vec<C64>> = (0..opts.restarts)
        .map(|i| sample_state(d, strategies[i % strategies.len()], &mut rng))
        .collect::<Result<_>>()?;
    starts.extend(seeds.iter().cloned());
    for _ in 0..2 {
        let flat: Vec<C64> = (0..d)
            .map(|_| {
                let t: f64 = rand::Rng::random(&mut rng);
                C64::from_polar(1.0 / (d as f64).sqrt(), std::f64::consts::TAU * t)
            })
            .collect();
        starts.push(w.matrix().apply_adjoint(&flat));
    }
    if opts.cross_check_samples > 0 {
        let strategy = strategies[0];
        let (pts, states) = draw_points(w, alpha, beta, opts.cross_check_samples, strategy, opts.seed, true)?;
        let states = states.expect("states requested");
        let mut idx: Vec<usize> = (0..pts.len()).collect();
        let score = |i: usize| pts[i].hx + 10.0 * (pts[i].hy - delta).powi(2);
        idx.sort_by(|&a, &b| score(a).total_cmp(&score(b)));
        starts.extend(idx.iter().take(4).map(|&i| states[i].clone()));
    }
    // Anchors sit on the simplex boundary, where the penalty is stationary.
    for s in starts.iter_mut().skip(opts.restarts) {
        for z in s.iter_mut() {
            let (a, b): (f64, f64) = (rand::Rng::random(&mut rng), rand::Rng::random(&mut rng));
            *z += C64::new(a - 0.5, b - 0.5) * 1e-3;
        }
        opts.subspace.project(s);
    }
    Ok(starts)
}

/// `min H_α(p_X)` subject to `H_β(p_Y) = δ` over pure states of the chosen
/// subspace.
///
/// Each start is driven by a quadratic penalty with `κ` raised from 10 to
/// 10³, followed by multiplier updates until the constraint holds to
/// `ctol/10`. The best feasible result wins. When `δ` lies on the Pareto
/// part of the diagram, the result must not exceed the best sampled state
/// with `H_β <= δ` by more than `ctol`.
pub fn min_halpha_given_hbeta(
    w: &ObservablePair,
    alpha: RenyiOrder,
    beta: RenyiOrder,
    delta: f64,
    opts: &MinimizeOptions,
) -> Result<ConstrainedMin> {
    ensure_dual_pair(alpha, beta)?;
    check_orders(alpha, beta)?;
    constrained_min(w, alpha, beta, delta, opts, &anchor_states(w))
}

fn constrained_min(
    w: &ObservablePair,
    alpha: RenyiOrder,
    beta: RenyiOrder,
    delta: f64,
    opts: &MinimizeOptions,
    seeds: &[Vec<C64>],
) -> Result<ConstrainedMin> {
    let d = w.dim();
    let max = (d as f64).log2();
    if !(0.0..=max + 1e-12).contains(&delta) {
        return Err(Error::BadState(format!("target entropy {delta} outside [0, {max}]")));
    }
    let starts = starting_points(w, alpha, beta, delta, opts, seeds)?;
    let mut best: Option<(Vec<C64>, EntropyPoint)> = None;
    let mut best_violation = f64::INFINITY;
    let mut feasible = 0;
    for start in &starts {
        let (psi, p) = penalty_descent(w, alpha, beta, delta, start, opts);
        let viol = (p.hy - delta).abs();
        best_violation = best_violation.min(viol);
        if viol <= opts.ctol {
            feasible += 1;
            if best.as_ref().is_none_or(|(_, q)| p.hx < q.hx) {
                best = Some((psi, p));
            }
        }
    }
    let Some((witness, p)) = best else {
        return Err(Error::Infeasible(best_violation));
    };

    if opts.cross_check_samples > 0 {
        let (pts, _) = draw_points(w, alpha, beta, opts.cross_check_samples, opts.subspace.strategies()[0], opts.seed ^ 0x5eed, false)?;
        // The staircase below δ is only the curve of minima on its Pareto
        // part, which ends at the lowest hx = 0 corner.
        let corner = (0..d)
            .map(|k| {
                let mut e = vec![C64::new(0.0, 0.0); d];
                e[k] = C64::new(1.0, 0.0);
                entropy_point(w, &e, alpha, beta).hy
            })
            .fold(f64::INFINITY, f64::min);
        if delta <= corner {
            let sampled = pts.iter().filter(|q| q.hy <= delta).map(|q| q.hx).fold(f64::INFINITY, f64::min);
            if p.hx > sampled + opts.ctol {
                return Err(Error::SearchFailed(p.hx - sampled));
            }
        }
    }

    Ok(ConstrainedMin {
        value: p.hx,
        hy: p.hy,
        delta,
        witness,
        feasible_restarts: feasible,
        restarts: starts.len(),
    })
}

/// Optimized curve from `n` targets `δ_k = log₂d · k/(n+1)` plus both
/// corners, Pareto-cleaned with witnesses. Targets where no restart is
/// feasible are skipped.
pub fn optimized_frontier(
    w: &ObservablePair,
    alpha: RenyiOrder,
    beta: RenyiOrder,
    n: usize,
    opts: &MinimizeOptions,
) -> Result<FrontierCurve> {
    ensure_dual_pair(alpha, beta)?;
    check_orders(alpha, beta)?;
    let d = w.dim();
    let max = (d as f64).log2();
    let mut points = Vec::with_capacity(n + 2 * d);
    let mut states = Vec::with_capacity(n + 2 * d);
    for k in 0..d {
        let mut e = vec![C64::new(0.0, 0.0); d];
        e[k] = C64::new(1.0, 0.0);
        let f = w.matrix().apply_adjoint(&e);
        for s in [e, f] {
            if opts.subspace == Subspace::Full || s.iter().all(|z| z.im == 0.0) {
                points.push(entropy_point(w, &s, alpha, beta));
                states.push(s);
            }
        }
    }
    let mut seeds = anchor_states(w);
    let anchors = seeds.len();
    for k in 1..=n {
        let delta = max * k as f64 / (n + 1) as f64;
        let o = MinimizeOptions {
            seed: opts.seed.wrapping_add(k as u64),
            cross_check_samples: 0,
            ..*opts
        };
        match constrained_min(w, alpha, beta, delta, &o, &seeds) {
            Ok(m) => {
                // Warm start the next target from this witness.
                seeds.truncate(anchors);
                seeds.push(m.witness.clone());
                points.push(EntropyPoint::new(m.value, m.hy));
                states.push(m.witness);
            }
            Err(Error::Infeasible(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    super::pareto_lower_with_states(&points, &states)
}

/// `(1/s) log(e^{s a} + e^{s b})` and its weights on `a` and `b`.
fn soft_max(a: f64, b: f64, s: f64) -> (f64, f64, f64) {
    let m = a.max(b);
    let (ea, eb) = ((s * (a - m)).exp(), (s * (b - m)).exp());
    let z = ea + eb;
    (m + z.ln() / s, ea / z, eb / z)
}

struct Domination<'a> {
    e: EntropyEval<'a>,
    target: EntropyPoint,
    sharpness: f64,
}

impl Objective for Domination<'_> {
    fn eval(&mut self, psi: &[C64], grad: &mut [C64]) -> f64 {
        let (hx, hy) = self.e.entropies(psi);
        let (v, wa, wb) = soft_max(hx - self.target.hx, hy - self.target.hy, self.sharpness);
        self.e.combine(psi, wa, wb, grad);
        v
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DominatingState {
    pub state: Vec<C64>,
    pub point: EntropyPoint,
    /// Entropy pair of the mixed state.
    pub target: EntropyPoint,
    /// `max(hx - target.hx, hy - target.hy)`; at most `1e-6` on success.
    pub excess: f64,
}

/// A pure state whose entropy pair is coordinatewise at most that of `ρ`
/// (up to `1e-6`). Such a state always exists; `SearchFailed` only means
/// the restart budget ran out.
pub fn dominating_pure(
    w: &ObservablePair,
    alpha: RenyiOrder,
    beta: RenyiOrder,
    rho: &MixedEnsemble,
    restarts: usize,
    seed: u64,
) -> Result<DominatingState> {
    const SUCCESS: f64 = 1e-6;
    check_orders(alpha, beta)?;
    let target = mixed_entropy_pair(w, rho, alpha, beta)?;
    let d = w.dim();
    let excess = |p: &EntropyPoint| (p.hx - target.hx).max(p.hy - target.hy);

    let mut rng = SeededRng::new(seed, 0);
    let mut starts: Vec<Vec<C64>> = rho.components().iter().map(|(_, s)| s.clone()).collect();
    for i in 0..restarts {
        let strategy = [Strategy::Haar, Strategy::BasisMix(None), Strategy::Real][i % 3];
        starts.push(sample_state(d, strategy, &mut rng)?);
    }

    let mut best: Option<(Vec<C64>, EntropyPoint, f64)> = None;
    for start in starts {
        let mut psi = start;
        let mut p = entropy_point(w, &psi, alpha, beta);
        for sharpness in [10.0, 100.0, 1e3, 1e4] {
            if excess(&p) <= 0.0 {
                break;
            }
            let mut obj = Domination {
                e: EntropyEval::new(w, alpha, beta),
                target,
                sharpness,
            };
            psi = minimize_on_sphere(&psi, Subspace::Full, 2000, 1e-12, &mut obj).psi;
            p = entropy_point(w, &psi, alpha, beta);
        }
        let ex = excess(&p);
        if best.as_ref().is_none_or(|b| ex < b.2) {
            best = Some((psi, p, ex));
        }
        if ex <= SUCCESS {
            break;
        }
    }
    let (state, point, ex) = best.expect("at least one start");
    if ex > SUCCESS {
        return Err(Error::SearchFailed(ex));
    }
    Ok(DominatingState {
        state,
        point,
        target,
        excess: ex,
    })
}

/// Sampled frontier merged with an optimized sweep, with witnesses.
pub fn combined_frontier(
    w: &ObservablePair,
    alpha: RenyiOrder,
    beta: RenyiOrder,
    n: usize,
    strategy: Strategy,
    seed: u64,
    sweep: Option<(usize, &MinimizeOptions)>,
) -> Result<FrontierCurve> {
    let sampled = sampled_frontier(w, alpha, beta, n, strategy, seed)?;
    let Some((targets, opts)) = sweep else {
        return Ok(sampled);
    };
    let opt = optimized_frontier(w, alpha, beta, targets, opts)?;
    let mut points = sampled.points;
    let mut states = sampled.witnesses.unwrap_or_default();
    points.extend(opt.points);
    states.extend(opt.witnesses.unwrap_or_default());
    super::pareto_lower_with_states(&points, &states)
}
