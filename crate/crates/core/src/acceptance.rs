//! The acceptance suite: every criterion at its stated tolerance, with a
//! full and a reduced sampling budget.

use std::f64::consts::FRAC_PI_4;
use std::time::Instant;

use serde::Serialize;

use crate::conjectures::{
    probe_alpha_independence, probe_fourier_decomposition, probe_product_states, probe_rrs_sufficiency, ProbeReport,
    Verdict, DEFAULT_THRESHOLD,
};
use crate::entropy::{renyi_gradient, renyi_slice, ProbDist, RenyiOrder};
use crate::equality::{
    berta_slack, boundary_half_inf_deficit, check_equality_state, fourier_equality_points, fourier_equality_states,
    mu_deficit, overlap_data, scan_shape, find_equality_supports,
};
use crate::error::{Error, Result};
use crate::frontier::{
    d2_exact_curve, d2_gamma, dominating_pure, englert_curve, extremality_phase_gradient_fd, extremality_residual,
    frontier_deviation, reduce_2x2_to_rotation, rotation, sample_diagram, sampled_frontier, DEVIATION_GRID,
};
use crate::numerics::{inner, sample_state, CMatrix, MixedEnsemble, SeededRng, Strategy, C64};
use crate::observables::{
    builtin, c6_from_eta, c6_eta, dephase, fourier_cyclic, hadamard_defect, random_unitary, AbelianGroup,
    ObservablePair,
};

/// Points on the exact qubit curve used as the reference in criterion 4.
const EXACT_CURVE_POINTS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Budget {
    Full,
    Quick,
}

impl Budget {
    fn pick<T>(self, full: T, quick: T) -> T {
        match self {
            Budget::Full => full,
            Budget::Quick => quick,
        }
    }
}

#[derive(Debug, Clone)]
pub struct AcceptanceConfig {
    pub budget: Budget,
    /// The 6×6 Hadamard matrix under test; replaced by mutation tests.
    pub c6: CMatrix,
}

impl AcceptanceConfig {
    pub fn new(budget: Budget) -> Self {
        Self {
            budget,
            c6: c6_from_eta(c6_eta()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
    /// Raw data archived with the result, as JSON.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub archive: Option<String>,
}

impl CriterionResult {
    /// `[PASS] 3 Abelian Fourier enumeration (0.4 s): ...`
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {} ({:.1} s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            self.detail
        )
    }
}

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "MU invariant"),
    (2, "equality characterization"),
    (3, "Abelian Fourier enumeration"),
    (4, "qubit exactness"),
    (5, "candidate family refuted"),
    (6, "boundary case"),
    (7, "gradient correctness"),
    (8, "pure/real sufficiency"),
    (9, "Berta bound"),
    (10, "conjecture probes"),
];

struct Outcome {
    passed: bool,
    detail: String,
    archive: Option<String>,
}

impl Outcome {
    fn check(passed: bool, detail: String) -> Self {
        Self {
            passed,
            detail,
            archive: None,
        }
    }
}

/// Runs criterion `id` (1..=10).
pub fn run_criterion(id: u8, config: &AcceptanceConfig) -> Result<CriterionResult> {
    let name = CRITERIA
        .iter()
        .find(|(i, _)| *i == id)
        .map(|(_, n)| *n)
        .ok_or_else(|| Error::BadState(format!("no acceptance criterion {id}")))?;
    let start = Instant::now();
    let b = config.budget;
    let outcome = match id {
        1 => mu_invariant(b),
        2 => equality_characterization(&config.c6),
        3 => fourier_enumeration(),
        4 => qubit_exactness(b),
        5 => candidate_family_refuted(),
        6 => boundary_case(),
        7 => gradient_correctness(),
        8 => sufficiency(b),
        9 => berta(),
        _ => conjecture_probes(b),
    };
    let outcome = outcome.unwrap_or_else(|e| Outcome::check(false, format!("error: {e}")));
    Ok(CriterionResult {
        id,
        name,
        passed: outcome.passed,
        detail: outcome.detail,
        seconds: start.elapsed().as_secs_f64(),
        archive: outcome.archive,
    })
}

/// Runs every criterion in order.
pub fn run_all(config: &AcceptanceConfig) -> Vec<CriterionResult> {
    CRITERIA
        .iter()
        .map(|&(id, _)| run_criterion(id, config).expect("known criterion"))
        .collect()
}

fn order(a: f64) -> RenyiOrder {
    RenyiOrder::new(a).expect("valid order")
}

const S: RenyiOrder = RenyiOrder::SHANNON;

fn mu_invariant(budget: Budget) -> Result<Outcome> {
    let n = budget.pick(100_000, 10_000);
    let mut ws = vec![
        fourier_cyclic(2)?,
        fourier_cyclic(3)?,
        fourier_cyclic(4)?,
        fourier_cyclic(6)?,
        builtin("example3")?,
        builtin("c6")?,
    ];
    let mut rng = SeededRng::new(1, 0);
    for d in [4, 5, 8] {
        ws.push(random_unitary(d, &mut rng)?);
    }
    // (0.6, 1.5) is listed with the dual pairs but is not dual; the bound
    // still holds for it since H_1.5 >= H_3. The true duals are added.
    let pairs = [(1.0, 1.0), (0.6, 1.5), (2.0, 2.0 / 3.0), (0.6, 3.0), (0.75, 1.5)].map(|(a, b)| (order(a), order(b)));
    let mut worst = f64::INFINITY;
    for (i, w) in ws.iter().enumerate() {
        let d = w.dim();
        let bound = overlap_data(w).mu_bound_bits;
        let mut rng = SeededRng::new(100 + i as u64, 0);
        let mut wpsi = vec![C64::new(0.0, 0.0); d];
        for _ in 0..n {
            let psi = sample_state(d, Strategy::Haar, &mut rng)?;
            w.matrix().apply_into(&psi, &mut wpsi);
            let px: Vec<f64> = psi.iter().map(|z| z.norm_sqr()).collect();
            let py: Vec<f64> = wpsi.iter().map(|z| z.norm_sqr()).collect();
            for &(a, b) in &pairs {
                worst = worst.min(renyi_slice(&px, a) + renyi_slice(&py, b) - bound);
            }
        }
    }
    // The deficit helper itself, which enforces duality.
    let psi = sample_state(4, Strategy::Haar, &mut rng)?;
    let f4 = fourier_cyclic(4)?;
    let api = mu_deficit(&f4, &psi, order(0.75), order(1.5))?;
    let rejects = matches!(mu_deficit(&f4, &psi, order(0.6), order(1.5)), Err(Error::NotDualPair(..)));
    Ok(Outcome::check(
        worst >= -1e-9 && api >= -1e-9 && rejects,
        format!("min deficit {worst:.3e} over {} unitaries x {n} states x {} pairs", ws.len(), pairs.len()),
    ))
}

fn equality_characterization(c6: &CMatrix) -> Result<Outcome> {
    // Gate: the 6×6 matrix must be a complex Hadamard matrix.
    let unitarity = c6.unitarity_defect();
    let modulus = hadamard_defect(c6);
    if unitarity > 1e-10 || modulus > 1e-12 {
        return Ok(Outcome::check(
            false,
            format!("c6 Hadamard gate failed: unitarity defect {unitarity:.3e}, modulus defect {modulus:.3e}"),
        ));
    }
    let c6 = ObservablePair::new("c6", c6.clone())?;

    let e3 = builtin("example3")?;
    let scan = find_equality_supports(&e3, 1e-8)?;
    let e3_hits = scan.hit_count();
    let e3_ok = e3_hits == 2
        && scan
            .hits()
            .all(|h| check_equality_state(&e3, &h.witness, S, S, 1e-8).is_ok_and(|r| r.is_equality));

    let f4 = fourier_cyclic(4)?;
    let scan = find_equality_supports(&f4, 1e-8)?;
    let count = |shape| scan.shapes.iter().find(|s| s.shape == shape).map_or(0, |s| s.hits.len());
    let f4_ok = count((2, 2)) == 4 && count((1, 4)) == 4 && count((4, 1)) == 4 && scan.hit_count() == 12;

    let a = scan_shape(&c6, (3, 2), 1e-8)?;
    let b = scan_shape(&c6, (2, 3), 1e-8)?;
    let c6_ok = a.candidates == 300 && b.candidates == 300 && a.hits.is_empty() && b.hits.is_empty();
    Ok(Outcome::check(
        e3_ok && f4_ok && c6_ok,
        format!(
            "example3 {} pairs; F4 (2,2)/(1,4)/(4,1) = {}/{}/{}; c6 3x2 {} hits of {}, 2x3 {} hits of {}",
            e3_hits,
            count((2, 2)),
            count((1, 4)),
            count((4, 1)),
            a.hits.len(),
            a.candidates,
            b.hits.len(),
            b.candidates
        ),
    ))
}

fn fourier_enumeration() -> Result<Outcome> {
    let mut ok = true;
    let mut worst_gram = 0.0f64;
    let mut worst_deficit = 0.0f64;
    for d in [4usize, 6, 8, 12] {
        let g = AbelianGroup::cyclic(d)?;
        let w = fourier_cyclic(d)?;
        let mut expected: Vec<(f64, f64)> = (1..=d)
            .filter(|a| d % a == 0)
            .map(|a| ((a as f64).log2(), ((d / a) as f64).log2()))
            .collect();
        expected.sort_by(|x, y| x.0.total_cmp(&y.0));
        let got = fourier_equality_points(&g)?;
        ok &= got.len() == expected.len()
            && got.iter().zip(&expected).all(|(p, e)| (p.hx - e.0).abs() < 1e-12 && (p.hy - e.1).abs() < 1e-12);
        for class in fourier_equality_states(&g)? {
            let states = &class.states;
            for (i, a) in states.iter().enumerate() {
                for (j, b) in states.iter().enumerate() {
                    let target = if i == j { 1.0 } else { 0.0 };
                    worst_gram = worst_gram.max((inner(a, b) - target).norm());
                }
                for (x, y) in [(1.0, 1.0), (0.75, 1.5)] {
                    worst_deficit = worst_deficit.max(mu_deficit(&w, a, order(x), order(y))?.abs());
                }
            }
        }
    }
    Ok(Outcome::check(
        ok && worst_gram <= 1e-9 && worst_deficit <= 1e-8,
        format!("divisor points match: {ok}; Gram defect {worst_gram:.3e}; max deficit {worst_deficit:.3e}"),
    ))
}

fn qubit_exactness(budget: Budget) -> Result<Outcome> {
    let n = 100_000;
    let mut ws = vec![fourier_cyclic(2)?];
    let mut rng = SeededRng::new(2024, 0);
    for _ in 0..budget.pick(5, 2) {
        ws.push(random_unitary(2, &mut rng)?);
    }
    let (mut worst_dev, mut worst_below, mut haar_dev) = (0.0f64, f64::NEG_INFINITY, 0.0f64);
    for (i, w) in ws.iter().enumerate() {
        let phi = reduce_2x2_to_rotation(w)?;
        let exact = d2_exact_curve(w, S, S, EXACT_CURVE_POINTS)?;
        // Diagonal phases change neither distribution, and real states
        // suffice for a real matrix.
        let reduced = if w.is_real() { w.clone() } else { rotation(phi) };
        let seed = 40 + i as u64;
        let sampled = sampled_frontier(&reduced, S, S, n, Strategy::Real, seed)?;
        worst_dev = worst_dev.max(frontier_deviation(&sampled, &exact, DEVIATION_GRID)?.max_abs);
        let haar = sample_diagram(w, S, S, n, Strategy::Haar, seed)?;
        haar_dev = haar_dev.max(frontier_deviation(&haar.frontier()?, &exact, DEVIATION_GRID)?.max_abs);
        for p in sampled.points.iter().chain(&haar.points) {
            worst_below = worst_below.max(d2_gamma(phi, S, S, p.hx) - p.hy);
        }
    }
    Ok(Outcome::check(
        worst_dev <= 2e-3 && worst_below <= 1e-9,
        format!(
            "{} unitaries: max deviation {worst_dev:.3e} (real samples of the reduced rotation; Haar {haar_dev:.3e}), max depth below curve {worst_below:.3e}",
            ws.len()
        ),
    ))
}

fn candidate_family_refuted() -> Result<Outcome> {
    let e = englert_curve(4, S, S, 1001)?;
    let fourier = fourier_equality_points(&AbelianGroup::cyclic(4)?)?;
    Ok(Outcome::check(
        e.mu_equality_count() == 2 && fourier.len() == 3,
        format!("candidate family: {} equality points; Fourier Z4: {}", e.mu_equality_count(), fourier.len()),
    ))
}

fn boundary_case() -> Result<Outcome> {
    let mut worst = 0.0f64;
    let mut rng = SeededRng::new(6, 0);
    for d in [2, 3, 4, 6] {
        let w = dephase(&fourier_cyclic(d)?)?;
        for _ in 0..1000 {
            let psi: Vec<C64> = sample_state(d, Strategy::Real, &mut rng)?.iter().map(|z| C64::new(z.re.abs(), 0.0)).collect();
            worst = worst.max(boundary_half_inf_deficit(&w, &psi)?.abs());
        }
    }
    Ok(Outcome::check(worst <= 1e-9, format!("max |H_1/2 + H_inf - log d| = {worst:.3e}")))
}

fn gradient_correctness() -> Result<Outcome> {
    let mut rng = SeededRng::new(7, 0);
    let mut renyi_err = 0.0f64;
    for case in 0..100 {
        let d = 2 + case % 6;
        let psi = sample_state(d, Strategy::Haar, &mut rng)?;
        let p: Vec<f64> = psi.iter().map(|z| 0.9 * z.norm_sqr() + 0.1 / d as f64).collect();
        let alpha = order([0.6, 1.0, 2.0, 0.75, 1.5][case % 5]);
        let g = renyi_gradient(&ProbDist::new(p.clone())?, alpha)?;
        let h = 1e-6;
        for j in 0..d {
            let (mut up, mut dn) = (p.clone(), p.clone());
            up[j] += h;
            dn[j] -= h;
            let fd = (renyi_slice(&up, alpha) - renyi_slice(&dn, alpha)) / (2.0 * h);
            renyi_err = renyi_err.max((g[j] - fd).abs() / fd.abs().max(1.0));
        }
    }
    let mut extremality_err = 0.0f64;
    let mut case = 0;
    while case < 100 {
        let d = 2 + case % 7;
        let psi = sample_state(d, Strategy::Haar, &mut rng)?;
        let alpha = order([0.6, 1.0, 2.0][case % 3]);
        let Ok(r) = extremality_residual(&psi, alpha) else {
            continue;
        };
        let fd = extremality_phase_gradient_fd(&psi, alpha, 1e-5)?;
        let scale = fd.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        for (x, y) in r.phase_gradient().iter().zip(&fd) {
            extremality_err = extremality_err.max((x - y).abs() / scale);
        }
        case += 1;
    }
    Ok(Outcome::check(
        renyi_err <= 1e-6 && extremality_err <= 1e-5,
        format!("Renyi gradient rel. error {renyi_err:.3e}; extremality rel. error {extremality_err:.3e}"),
    ))
}

fn sufficiency(budget: Budget) -> Result<Outcome> {
    let ensembles = budget.pick(100, 20);
    let mut rng = SeededRng::new(8, 0);
    let mut successes = 0;
    let mut worst_excess = f64::NEG_INFINITY;
    for case in 0..ensembles {
        let d = 2 + case % 5;
        let w = random_unitary(d, &mut rng)?;
        let rho = MixedEnsemble::random(d, 2 + case % 3, &mut rng)?;
        let (a, b) = [(1.0, 1.0), (0.75, 1.5), (2.0, 2.0 / 3.0)][case % 3];
        match dominating_pure(&w, order(a), order(b), &rho, 16, case as u64) {
            Ok(r) => {
                successes += 1;
                worst_excess = worst_excess.max(r.excess);
            }
            Err(Error::SearchFailed(x)) => worst_excess = worst_excess.max(x),
            Err(e) => return Err(e),
        }
    }
    let n = 1_000_000;
    let phis: &[f64] = budget.pick(&[FRAC_PI_4, 0.3, 0.6, 1.1], &[FRAC_PI_4]);
    let mut worst_dev = 0.0f64;
    for (i, &phi) in phis.iter().enumerate() {
        let r = rotation(phi);
        let real = sampled_frontier(&r, S, S, n, Strategy::Real, 80 + i as u64)?;
        let haar = sampled_frontier(&r, S, S, n, Strategy::Haar, 80 + i as u64)?;
        worst_dev = worst_dev.max(frontier_deviation(&real, &haar, DEVIATION_GRID)?.max_abs);
    }
    Ok(Outcome::check(
        successes == ensembles && worst_dev <= 2e-3,
        format!(
            "dominating pure state found for {successes}/{ensembles} ensembles (max excess {worst_excess:.3e}); real vs Haar frontier over {} rotations at n = {n}: {worst_dev:.3e}",
            phis.len()
        ),
    ))
}

fn berta() -> Result<Outcome> {
    let mut rng = SeededRng::new(9, 0);
    let mut worst = f64::INFINITY;
    for w in [fourier_cyclic(4)?, builtin("example3")?] {
        for case in 0..100 {
            let rho = MixedEnsemble::random(w.dim(), 1 + case % 4, &mut rng)?;
            worst = worst.min(berta_slack(&w, &rho)?);
        }
    }
    let mut mixed_err = 0.0f64;
    for d in [2, 3, 4, 6] {
        let basis = (0..d).map(|k| (1.0 / d as f64, crate::numerics::basis_vector(d, k))).collect();
        let rho = MixedEnsemble::new(basis)?;
        mixed_err = mixed_err.max(berta_slack(&fourier_cyclic(d)?, &rho)?.abs());
    }
    Ok(Outcome::check(
        worst >= -1e-9 && mixed_err <= 1e-9,
        format!("min slack {worst:.3e}; |slack| at I/d with Fourier {mixed_err:.3e}"),
    ))
}

fn conjecture_probes(budget: Budget) -> Result<Outcome> {
    let t = DEFAULT_THRESHOLD;
    let n = budget.pick(100_000, 10_000);
    let f2 = fourier_cyclic(2)?;
    let f3 = fourier_cyclic(3)?;
    let reports: Vec<ProbeReport> = vec![
        probe_product_states(&f2, &f2, S, S, n, 1, t)?,
        probe_fourier_decomposition(2, 2, S, S, n, 1, t)?,
        probe_fourier_decomposition(2, 3, S, S, n, 1, t)?,
        probe_alpha_independence(&f3, (S, S), &[(order(0.75), order(1.5))], n, 1, t)?,
        probe_rrs_sufficiency(3, S, S, budget.pick(1_000_000, 100_000), 1, t)?,
        probe_rrs_sufficiency(4, S, S, n, 1, t)?,
    ];
    let passed = reports.iter().all(|r| r.verdict == Verdict::Consistent);
    let detail = reports
        .iter()
        .map(|r| format!("#{} {} {:.2e}", r.conjecture, r.verdict, r.max_abs))
        .collect::<Vec<_>>()
        .join(", ");
    Ok(Outcome {
        passed,
        detail,
        archive: Some(crate::format::to_json(&reports)),
    })
}
