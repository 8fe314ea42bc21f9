//! The Maassen–Uffink bound and its equality cases.
//!
//! A state attains `H_α(p_X) + H_β(p_Y) = -log₂ c²` (with `α, β > 1/2`
//! dual) exactly when it is flat on supports `s_X`, `s_Y` with
//! `|s_X|·|s_Y| = 1/c²`, every entry of the block `W[s_Y × s_X]` has
//! modulus `c`, and the block can be made constant by row and column
//! phases. The support search below enumerates such blocks.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::entropy::{
    born_distributions, ensure_dual_pair, mixed_entropy_pair, renyi, von_neumann, EntropyPoint, ProbDist,
    RenyiOrder,
};
use crate::error::{Error, Result};
use crate::numerics::{check_state, tensor_vec, MixedEnsemble, C64};
use crate::observables::{equality_family, subgroups, AbelianGroup, ObservablePair, Subgroup};

/// Largest dimension accepted by the support search.
pub const MAX_SCAN_DIM: usize = 12;

/// Largest number of candidate blocks the support search will examine.
pub const MAX_CANDIDATES: u64 = 10_000_000;

/// Probabilities at or below this count as outside the support.
const SUPPORT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OverlapData {
    pub c: f64,
    pub mu_bound_bits: f64,
    pub inv_c2: f64,
    pub inv_c2_is_integer: bool,
}

impl OverlapData {
    /// `round(1/c²)` when it is an integer.
    pub fn support_product(&self) -> Option<usize> {
        self.inv_c2_is_integer.then(|| self.inv_c2.round() as usize)
    }
}

pub fn overlap_data(w: &ObservablePair) -> OverlapData {
    let c = w.matrix().max_modulus();
    let inv_c2 = 1.0 / (c * c);
    OverlapData {
        c,
        mu_bound_bits: -(c * c).log2(),
        inv_c2,
        inv_c2_is_integer: (inv_c2 - inv_c2.round()).abs() <= 1e-6 * inv_c2,
    }
}

/// `H_α(p_X) + H_β(p_Y) + log₂ c²`; nonnegative for every state.
pub fn mu_deficit(w: &ObservablePair, psi: &[C64], alpha: RenyiOrder, beta: RenyiOrder) -> Result<f64> {
    ensure_dual_pair(alpha, beta)?;
    let (px, py) = born_distributions(w, psi)?;
    Ok(renyi(&px, alpha) + renyi(&py, beta) - overlap_data(w).mu_bound_bits)
}

/// Supports, 0-indexed: `sx` in the first basis, `sy` in the second.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SupportPair {
    #[serde(rename = "sX")]
    pub sx: Vec<usize>,
    #[serde(rename = "sY")]
    pub sy: Vec<usize>,
}

impl SupportPair {
    pub fn shape(&self) -> (usize, usize) {
        (self.sx.len(), self.sy.len())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EqualityReport {
    pub is_equality: bool,
    pub entropy_point: EntropyPoint,
    pub entropy_sum_bits: f64,
    pub deficit: f64,
    pub supports: SupportPair,
    /// Flat distributions, block moduli equal to `c`, trivial minor
    /// phases and `|s_X|·|s_Y|·c² = 1`.
    pub structural_ok: bool,
    pub alpha: RenyiOrder,
    pub beta: RenyiOrder,
}

impl Serialize for EqualityReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use crate::format::round_sig;
        let mut st = s.serialize_struct("EqualityReport", 7)?;
        st.serialize_field("verdict", if self.is_equality { "equality" } else { "no-equality" })?;
        st.serialize_field("deficit", &round_sig(self.deficit))?;
        st.serialize_field("sX", &self.supports.sx)?;
        st.serialize_field("sY", &self.supports.sy)?;
        st.serialize_field(
            "entropy_point",
            &[round_sig(self.entropy_point.hx), round_sig(self.entropy_point.hy)],
        )?;
        st.serialize_field("alpha", &self.alpha)?;
        st.serialize_field("beta", &self.beta)?;
        st.end()
    }
}

fn is_flat(p: &ProbDist, support: &[usize]) -> bool {
    let vals: Vec<f64> = support.iter().map(|&i| p.as_slice()[i]).collect();
    let max = vals.iter().copied().fold(0.0, f64::max);
    let min = vals.iter().copied().fold(f64::INFINITY, f64::min);
    !vals.is_empty() && max / min - 1.0 <= 1e-6
}

/// The block `W[sy × sx]`, rows indexed by `sy`.
fn block(w: &ObservablePair, sp: &SupportPair) -> Vec<Vec<C64>> {
    sp.sy
        .iter()
        .map(|&j| sp.sx.iter().map(|&i| w.matrix()[(j, i)]).collect())
        .collect()
}

/// Equality verdict plus the structural evidence of the characterization.
/// The boundary pair `(1/2, ∞)` is excluded; see
/// [`boundary_half_inf_deficit`].
pub fn check_equality_state(
    w: &ObservablePair,
    psi: &[C64],
    alpha: RenyiOrder,
    beta: RenyiOrder,
    tol: f64,
) -> Result<EqualityReport> {
    ensure_dual_pair(alpha, beta)?;
    if alpha.is_infinite() || beta.is_infinite() {
        return Err(Error::BoundaryOrder(alpha.value(), beta.value()));
    }
    let (px, py) = born_distributions(w, psi)?;
    let point = EntropyPoint::new(renyi(&px, alpha), renyi(&py, beta));
    let od = overlap_data(w);
    let deficit = point.sum() - od.mu_bound_bits;
    let supports = SupportPair {
        sx: px.support(SUPPORT_TOL),
        sy: py.support(SUPPORT_TOL),
    };
    let blk = block(w, &supports);
    let moduli_ok = blk.iter().flatten().all(|z| (z.norm() - od.c).abs() <= 1e-8);
    let size_ok = ((supports.sx.len() * supports.sy.len()) as f64 * od.c * od.c - 1.0).abs() <= 1e-6;
    let structural_ok = is_flat(&px, &supports.sx)
        && is_flat(&py, &supports.sy)
        && moduli_ok
        && phase_equalizable(&blk, 1e-6)
        && size_ok;
    Ok(EqualityReport {
        is_equality: deficit <= tol && structural_ok,
        entropy_point: point,
        entropy_sum_bits: point.sum(),
        deficit,
        supports,
        structural_ok,
        alpha,
        beta,
    })
}

/// Phase of `m_ij m_kl conj(m_il) conj(m_kj)`.
fn minor_phase(m: &[Vec<C64>], i: usize, j: usize, k: usize, l: usize) -> f64 {
    (m[i][j] * m[k][l] * m[i][l].conj() * m[k][j].conj()).arg()
}

/// True iff all moduli agree within `tol` and every 2×2 minor has phase
/// within `tol` of zero, i.e. the block becomes constant after multiplying
/// rows and columns by phases.
pub fn phase_equalizable(m: &[Vec<C64>], tol: f64) -> bool {
    let moduli = m.iter().flatten().map(|z| z.norm());
    let (lo, hi) = moduli.fold((f64::INFINITY, 0.0f64), |(lo, hi), x| (lo.min(x), hi.max(x)));
    if m.is_empty() || hi - lo > tol {
        return false;
    }
    let (rows, cols) = (m.len(), m[0].len());
    for i in 0..rows {
        for k in i + 1..rows {
            for j in 0..cols {
                for l in j + 1..cols {
                    if minor_phase(m, i, j, k, l).abs() > tol {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// An equality support with its witness state and verification report.
#[derive(Debug, Clone, Serialize)]
pub struct EqualitySupport {
    pub supports: SupportPair,
    #[serde(serialize_with = "serialize_state")]
    pub witness: Vec<C64>,
    pub report: EqualityReport,
}

fn serialize_state<S: Serializer>(psi: &[C64], s: S) -> std::result::Result<S::Ok, S::Error> {
    crate::format::state_pairs(psi).serialize(s)
}

/// Results of scanning one shape `(|s_X|, |s_Y|)`.
#[derive(Debug, Clone, Serialize)]
pub struct ShapeScan {
    pub shape: (usize, usize),
    pub candidates: u64,
    pub hits: Vec<EqualitySupport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SupportScan {
    pub overlap: OverlapData,
    pub shapes: Vec<ShapeScan>,
}

impl SupportScan {
    pub fn candidates(&self) -> u64 {
        self.shapes.iter().map(|s| s.candidates).sum()
    }

    pub fn hits(&self) -> impl Iterator<Item = &EqualitySupport> {
        self.shapes.iter().flat_map(|s| s.hits.iter())
    }

    pub fn hit_count(&self) -> usize {
        self.shapes.iter().map(|s| s.hits.len()).sum()
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(pos) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[pos] += 1;
        for i in pos + 1..k {
            cur[i] = cur[i - 1] + 1;
        }
    }
}

fn check_scan_size(w: &ObservablePair) -> Result<()> {
    if w.dim() > MAX_SCAN_DIM {
        return Err(Error::TooLarge(format!(
            "support search is limited to d <= {MAX_SCAN_DIM}, got {}",
            w.dim()
        )));
    }
    Ok(())
}

/// Scans every block of shape `(|s_X|, |s_Y|) = shape`. The candidate count
/// is reported even when `1/c²` rules the shape out.
pub fn scan_shape(w: &ObservablePair, shape: (usize, usize), tol: f64) -> Result<ShapeScan> {
    check_scan_size(w)?;
    let d = w.dim();
    let (a, b) = shape;
    if a == 0 || b == 0 || a > d || b > d {
        return Err(Error::BadDimension(format!("shape {a}x{b} does not fit d = {d}")));
    }
    let candidates = binomial(d, a) * binomial(d, b);
    if candidates > MAX_CANDIDATES {
        return Err(Error::TooLarge(format!("{candidates} candidate blocks")));
    }
    let od = overlap_data(w);
    let mut hits = Vec::new();
    if od.support_product() != Some(a * b) {
        return Ok(ShapeScan { shape, candidates, hits });
    }
    let m = w.matrix();
    let col_sets = subsets(d, a);
    for sy in subsets(d, b) {
        for sx in &col_sets {
            // Prune on moduli before any phase arithmetic.
            let moduli_ok = sy
                .iter()
                .all(|&j| sx.iter().all(|&i| (m[(j, i)].norm() - od.c).abs() <= tol));
            if !moduli_ok {
                continue;
            }
            let sp = SupportPair {
                sx: sx.clone(),
                sy: sy.clone(),
            };
            let blk = block(w, &sp);
            if !phase_equalizable(&blk, tol) {
                continue;
            }
            let witness = witness_state(d, &sp, &blk);
            let report = check_equality_state(w, &witness, RenyiOrder::SHANNON, RenyiOrder::SHANNON, 1e-8)?;
            hits.push(EqualitySupport {
                supports: sp,
                witness,
                report,
            });
        }
    }
    hits.sort_by(|x, y| x.supports.cmp(&y.supports));
    Ok(ShapeScan { shape, candidates, hits })
}

/// `ψ_i = conj(u_i)/√|s_X|` on `s_X`, with `u_i` the phases of the block's
/// first row.
fn witness_state(d: usize, sp: &SupportPair, blk: &[Vec<C64>]) -> Vec<C64> {
    let amp = 1.0 / (sp.sx.len() as f64).sqrt();
    let mut psi = vec![C64::new(0.0, 0.0); d];
    for (c, &i) in sp.sx.iter().enumerate() {
        let z = blk[0][c];
        psi[i] = (z / z.norm()).conj() * amp;
    }
    psi
}

/// Every equality support of `w`, grouped by shape. Empty when `1/c²` is
/// not an integer.
pub fn find_equality_supports(w: &ObservablePair, tol: f64) -> Result<SupportScan> {
    check_scan_size(w)?;
    let od = overlap_data(w);
    let d = w.dim();
    let mut shapes = Vec::new();
    if let Some(n) = od.support_product() {
        let total: u64 = (1..=d)
            .filter(|a| n % a == 0 && n / a <= d)
            .map(|a| binomial(d, a) * binomial(d, n / a))
            .sum();
        if total > MAX_CANDIDATES {
            return Err(Error::TooLarge(format!("{total} candidate blocks")));
        }
        for a in (1..=d).filter(|a| n % a == 0 && n / a <= d) {
            shapes.push(scan_shape(w, (a, n / a), tol)?);
        }
    }
    Ok(SupportScan { overlap: od, shapes })
}

/// One subgroup's worth of Fourier equality states.
#[derive(Debug, Clone)]
pub struct FourierEqualityClass {
    pub subgroup: Subgroup,
    pub point: EntropyPoint,
    /// Orthonormal basis of equality states `χ'` for this subgroup.
    pub states: Vec<Vec<C64>>,
}

/// For `W = F(G)`: per subgroup `L`, the point `(log₂|L|, log₂(d/|L|))`
/// and the translated, modulated indicators of `L`.
pub fn fourier_equality_states(g: &AbelianGroup) -> Result<Vec<FourierEqualityClass>> {
    let d = g.order() as f64;
    subgroups(g)
        .into_iter()
        .map(|l| {
            let size = l.len() as f64;
            Ok(FourierEqualityClass {
                point: EntropyPoint::new(size.log2(), (d / size).log2()),
                states: equality_family(g, &l)?,
                subgroup: l,
            })
        })
        .collect()
}

/// Distinct points of [`fourier_equality_states`], sorted by `h_x`.
pub fn fourier_equality_points(g: &AbelianGroup) -> Result<Vec<EntropyPoint>> {
    let mut pts: Vec<EntropyPoint> = fourier_equality_states(g)?.iter().map(|c| c.point).collect();
    pts.sort_by(|a, b| a.hx.total_cmp(&b.hx));
    pts.dedup_by(|a, b| a.distance(b) < 1e-12);
    Ok(pts)
}

/// Equality report for `(W1 ⊗ W2, ψ1 ⊗ ψ2)`.
pub fn tensor_equality(
    w1: &ObservablePair,
    psi1: &[C64],
    w2: &ObservablePair,
    psi2: &[C64],
    alpha: RenyiOrder,
    beta: RenyiOrder,
) -> Result<EqualityReport> {
    check_state(psi1, w1.dim(), 1e-9)?;
    check_state(psi2, w2.dim(), 1e-9)?;
    let w = w1.tensor(w2)?;
    check_equality_state(&w, &tensor_vec(psi1, psi2), alpha, beta, 1e-8)
}

/// `H_{1/2}(p_X) + H_∞(p_Y) + log₂ c²`. Zero for entrywise nonnegative
/// states of a dephased Hadamard matrix.
pub fn boundary_half_inf_deficit(w: &ObservablePair, psi: &[C64]) -> Result<f64> {
    let (px, py) = born_distributions(w, psi)?;
    Ok(renyi(&px, RenyiOrder::HALF) + renyi(&py, RenyiOrder::INFINITY) - overlap_data(w).mu_bound_bits)
}

/// `H(p_X) + H(p_Y) + log₂ c² - S(ρ)` (Shannon entropies).
pub fn berta_slack(w: &ObservablePair, rho: &MixedEnsemble) -> Result<f64> {
    let s = RenyiOrder::SHANNON;
    let p = mixed_entropy_pair(w, rho, s, s)?;
    Ok(p.sum() - overlap_data(w).mu_bound_bits - von_neumann(rho)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::dual_order;
    use crate::numerics::{basis_vector, inner, real_vector, sample_state, CMatrix, SeededRng, Strategy};
    use crate::observables::{builtin, dephase, fourier_cyclic, fourier_group, random_unitary, Subgroup};
    use rand::Rng;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    const S: RenyiOrder = RenyiOrder::SHANNON;

    fn order(a: f64) -> RenyiOrder {
        RenyiOrder::new(a).unwrap()
    }

    fn pi8() -> Vec<C64> {
        real_vector(&[(PI / 8.0).cos(), (PI / 8.0).sin()])
    }

    fn chi_02() -> Vec<C64> {
        real_vector(&[FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2, 0.0])
    }

    #[test]
    fn overlap_examples() {
        let od = overlap_data(&fourier_cyclic(4).unwrap());
        assert!((od.c - 0.5).abs() < 1e-15 && (od.mu_bound_bits - 2.0).abs() < 1e-14);
        let od = overlap_data(&ObservablePair::new("id", CMatrix::identity(3)).unwrap());
        assert_eq!((od.c, od.mu_bound_bits), (1.0, 0.0));
        let od = overlap_data(&builtin("example3").unwrap());
        assert!((od.c - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((od.mu_bound_bits - 1.0).abs() < 1e-14);
        assert!(od.inv_c2_is_integer && od.support_product() == Some(2));
        let od = overlap_data(&random_unitary(3, &mut SeededRng::new(1, 0)).unwrap());
        assert!(!od.inv_c2_is_integer);
    }

    #[test]
    fn mu_deficit_examples() {
        let f2 = fourier_cyclic(2).unwrap();
        assert!(mu_deficit(&f2, &basis_vector(2, 0), S, S).unwrap().abs() < 1e-15);
        // 2 h((1 + cos π/4)/2) - 1
        let d = mu_deficit(&f2, &pi8(), S, S).unwrap();
        assert!((d - 0.201_752_073_385_712).abs() < 1e-12);
        assert!(matches!(
            mu_deficit(&f2, &pi8(), order(0.6), order(1.5)),
            Err(Error::NotDualPair(..))
        ));
    }

    #[test]
    fn mu_bound_holds_on_random_states() {
        let mut rng = SeededRng::new(17, 0);
        for case in 0..2000 {
            let d = 2 + case % 7;
            let w = random_unitary(d, &mut rng).unwrap();
            let psi = sample_state(d, Strategy::Haar, &mut rng).unwrap();
            for a in [0.6, 1.0, 2.0] {
                let a = order(a);
                assert!(mu_deficit(&w, &psi, a, dual_order(a)).unwrap() >= -1e-9);
            }
        }
    }

    #[test]
    fn equality_state_examples() {
        let e3 = builtin("example3").unwrap();
        let r = check_equality_state(&e3, &basis_vector(3, 0), S, S, 1e-9).unwrap();
        assert!(r.is_equality && r.structural_ok);
        assert_eq!(r.supports, SupportPair { sx: vec![0], sy: vec![0, 1] });

        let f2 = fourier_cyclic(2).unwrap();
        let r = check_equality_state(&f2, &pi8(), S, S, 1e-9).unwrap();
        assert!(!r.is_equality && (r.deficit - 0.2018).abs() < 1e-4);

        let f4 = fourier_cyclic(4).unwrap();
        let r = check_equality_state(&f4, &chi_02(), S, S, 1e-9).unwrap();
        assert!(r.is_equality);
        assert!((r.entropy_point.hx - 1.0).abs() < 1e-12 && (r.entropy_point.hy - 1.0).abs() < 1e-12);

        assert!(matches!(
            check_equality_state(&f2, &pi8(), RenyiOrder::HALF, RenyiOrder::INFINITY, 1e-9),
            Err(Error::BoundaryOrder(..))
        ));
        assert!(check_equality_state(&f2, &pi8(), order(2.0), order(2.0), 1e-9).is_err());
    }

    #[test]
    fn equality_report_json_keys() {
        let f4 = fourier_cyclic(4).unwrap();
        let r = check_equality_state(&f4, &chi_02(), S, S, 1e-9).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(keys, ["alpha", "beta", "deficit", "entropy_point", "sX", "sY", "verdict"]);
        assert_eq!(v["verdict"], "equality");
        assert_eq!(v["sX"], serde_json::json!([0, 2]));
    }

    #[test]
    fn phase_equalizable_examples() {
        let a = C64::new(0.5, 0.0);
        assert!(phase_equalizable(&[vec![a, a], vec![a, a]], 1e-9));
        let s = C64::new(FRAC_1_SQRT_2, 0.0);
        assert!(!phase_equalizable(&[vec![s, s], vec![s, -s]], 1e-9));
        let row = vec![a, a * C64::i(), -a, a * C64::from_polar(1.0, 0.3)];
        assert!(phase_equalizable(&[row], 1e-9));
        assert!(!phase_equalizable(&[vec![a, C64::new(0.4, 0.0)]], 1e-9));
        // Rank-one blocks with arbitrary row and column phases qualify.
        let u = [0.2, 1.1, -0.7];
        let v = [0.4, 2.0];
        let blk: Vec<Vec<C64>> = v
            .iter()
            .map(|&r| u.iter().map(|&c| C64::from_polar(0.3, r + c)).collect())
            .collect();
        assert!(phase_equalizable(&blk, 1e-9));
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(6, 3).len() as u64, binomial(6, 3));
        assert_eq!(subsets(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(binomial(12, 6), 924);
    }

    #[test]
    fn example3_scan() {
        let scan = find_equality_supports(&builtin("example3").unwrap(), 1e-8).unwrap();
        let pairs: Vec<SupportPair> = scan.hits().map(|h| h.supports.clone()).collect();
        assert_eq!(
            pairs,
            vec![
                SupportPair { sx: vec![0], sy: vec![0, 1] },
                SupportPair { sx: vec![1, 2], sy: vec![2] },
            ]
        );
        assert!(scan.hits().all(|h| h.report.is_equality));
    }

    #[test]
    fn fourier4_scan() {
        let f4 = fourier_cyclic(4).unwrap();
        let two = scan_shape(&f4, (2, 2), 1e-8).unwrap();
        assert_eq!(two.candidates, 36);
        let pairs: Vec<(Vec<usize>, Vec<usize>)> =
            two.hits.iter().map(|h| (h.supports.sx.clone(), h.supports.sy.clone())).collect();
        assert_eq!(
            pairs,
            vec![
                (vec![0, 2], vec![0, 2]),
                (vec![0, 2], vec![1, 3]),
                (vec![1, 3], vec![0, 2]),
                (vec![1, 3], vec![1, 3]),
            ]
        );
        let all = find_equality_supports(&f4, 1e-8).unwrap();
        assert_eq!(all.hit_count(), 12);
        assert!(all.hits().all(|h| h.report.is_equality));
    }

    #[test]
    fn c6_has_no_three_by_two_supports() {
        let c6 = builtin("c6").unwrap();
        for shape in [(3, 2), (2, 3)] {
            let scan = scan_shape(&c6, shape, 1e-8).unwrap();
            assert_eq!(scan.candidates, 300);
            assert!(scan.hits.is_empty());
        }
        let all = find_equality_supports(&c6, 1e-8).unwrap();
        assert_eq!(all.hit_count(), 12);
    }

    #[test]
    fn f6_does_have_three_by_two_supports() {
        let scan = scan_shape(&fourier_cyclic(6).unwrap(), (3, 2), 1e-8).unwrap();
        assert_eq!(scan.candidates, 300);
        assert!(!scan.hits.is_empty());
        assert!(scan.hits.iter().all(|h| h.report.is_equality));
    }

    #[test]
    fn scan_guards() {
        let r = random_unitary(3, &mut SeededRng::new(2, 0)).unwrap();
        assert!(find_equality_supports(&r, 1e-8).unwrap().shapes.is_empty());
        assert!(matches!(
            find_equality_supports(&fourier_cyclic(13).unwrap(), 1e-8),
            Err(Error::TooLarge(_))
        ));
        assert!(scan_shape(&fourier_cyclic(4).unwrap(), (5, 1), 1e-8).is_err());
    }

    #[test]
    fn fourier_equality_examples() {
        let z6 = AbelianGroup::cyclic(6).unwrap();
        let pts = fourier_equality_points(&z6).unwrap();
        let l3 = 3f64.log2();
        let expected = [(0.0, 6f64.log2()), (1.0, l3), (l3, 1.0), (6f64.log2(), 0.0)];
        assert_eq!(pts.len(), 4);
        for (p, e) in pts.iter().zip(expected) {
            assert!((p.hx - e.0).abs() < 1e-12 && (p.hy - e.1).abs() < 1e-12);
        }

        let z4 = AbelianGroup::cyclic(4).unwrap();
        let classes = fourier_equality_states(&z4).unwrap();
        let mid = classes.iter().find(|c| c.subgroup.len() == 2).unwrap();
        let f4 = fourier_cyclic(4).unwrap();
        assert_eq!(mid.states.len(), 4);
        for psi in &mid.states {
            let r = check_equality_state(&f4, psi, S, S, 1e-9).unwrap();
            assert!(r.is_equality);
        }
        assert_eq!(fourier_equality_points(&z4).unwrap().len(), 3);
    }

    #[test]
    fn klein_group_has_an_entangled_equality_state() {
        let g = AbelianGroup::new(vec![2, 2]).unwrap();
        let diag = Subgroup::from_elements(&g, &[0, 3]).unwrap();
        let classes = fourier_equality_states(&g).unwrap();
        let class = classes.iter().find(|c| c.subgroup == diag).unwrap();
        let w = fourier_group(&g);
        let psi = &class.states[0];
        assert!(check_equality_state(&w, psi, S, S, 1e-9).unwrap().is_equality);
        // A product state a⊗b has psi[0]·psi[3] = psi[1]·psi[2].
        assert!((psi[0] * psi[3] - psi[1] * psi[2]).norm() > 0.1);
    }

    #[test]
    fn every_fourier_equality_state_passes_for_other_dual_pairs() {
        for orders in [vec![4], vec![6], vec![2, 2], vec![8], vec![2, 3]] {
            let g = AbelianGroup::new(orders).unwrap();
            let w = fourier_group(&g);
            for class in fourier_equality_states(&g).unwrap() {
                for psi in &class.states {
                    for (a, b) in [(1.0, 1.0), (0.6, 3.0), (0.75, 1.5), (2.0, 2.0 / 3.0)] {
                        let r = check_equality_state(&w, psi, order(a), order(b), 1e-8).unwrap();
                        assert!(r.is_equality && r.deficit.abs() <= 1e-8);
                    }
                }
            }
        }
    }

    #[test]
    fn no_false_equality_verdicts() {
        let mut rng = SeededRng::new(5, 0);
        for w in [builtin("example3").unwrap(), fourier_cyclic(4).unwrap()] {
            for _ in 0..10_000 {
                let psi = sample_state(w.dim(), Strategy::Haar, &mut rng).unwrap();
                assert!(!check_equality_state(&w, &psi, S, S, 1e-9).unwrap().is_equality);
            }
        }
    }

    #[test]
    fn tensor_equality_examples() {
        let e3 = builtin("example3").unwrap();
        let f2 = fourier_cyclic(2).unwrap();
        let r = tensor_equality(&e3, &basis_vector(3, 0), &f2, &basis_vector(2, 0), S, S).unwrap();
        assert!(r.is_equality);
        let p1 = crate::entropy::entropy_pair(&e3, &basis_vector(3, 0), S, S).unwrap();
        let p2 = crate::entropy::entropy_pair(&f2, &basis_vector(2, 0), S, S).unwrap();
        assert!(r.entropy_point.distance(&(p1 + p2)) < 1e-12);
        let r = tensor_equality(&f2, &basis_vector(2, 0), &f2, &basis_vector(2, 0), S, S).unwrap();
        assert!(r.is_equality);
        assert!(r.entropy_point.hx.abs() < 1e-12 && (r.entropy_point.hy - 2.0).abs() < 1e-12);
    }

    #[test]
    fn boundary_examples() {
        let f4 = dephase(&fourier_cyclic(4).unwrap()).unwrap();
        let uniform = real_vector(&[0.5; 4]);
        assert!(boundary_half_inf_deficit(&f4, &uniform).unwrap().abs() < 1e-12);

        let f2 = dephase(&fourier_cyclic(2).unwrap()).unwrap();
        for k in 0..50 {
            let xi = PI / 2.0 * k as f64 / 49.0;
            let psi = real_vector(&[xi.cos(), xi.sin()]);
            assert!(boundary_half_inf_deficit(&f2, &psi).unwrap().abs() <= 1e-9);
        }

        let psi = vec![C64::new(FRAC_1_SQRT_2, 0.0), C64::new(0.0, FRAC_1_SQRT_2)];
        let d = boundary_half_inf_deficit(&fourier_cyclic(2).unwrap(), &psi).unwrap();
        assert!((d - 1.0).abs() < 1e-12);
    }

    #[test]
    fn boundary_deficit_is_nonnegative() {
        let mut rng = SeededRng::new(8, 0);
        for case in 0..500 {
            let d = 2 + case % 5;
            let w = random_unitary(d, &mut rng).unwrap();
            let psi = sample_state(d, Strategy::Haar, &mut rng).unwrap();
            assert!(boundary_half_inf_deficit(&w, &psi).unwrap() >= -1e-9);
        }
    }

    #[test]
    fn berta_examples() {
        let f2 = fourier_cyclic(2).unwrap();
        let pure = MixedEnsemble::pure(pi8()).unwrap();
        let slack = berta_slack(&f2, &pure).unwrap();
        assert!((slack - mu_deficit(&f2, &pi8(), S, S).unwrap()).abs() < 1e-12);

        let d = 4;
        let mixed = MixedEnsemble::new((0..d).map(|k| (0.25, basis_vector(d, k))).collect()).unwrap();
        assert!(berta_slack(&fourier_cyclic(4).unwrap(), &mixed).unwrap().abs() < 1e-9);

        let mut rng = SeededRng::new(12, 0);
        let f4 = fourier_cyclic(4).unwrap();
        for _ in 0..100 {
            let k = rng.random_range(1..6);
            let rho = MixedEnsemble::random(4, k, &mut rng).unwrap();
            assert!(berta_slack(&f4, &rho).unwrap() >= -1e-9);
        }
    }

    #[test]
    fn witness_states_are_orthogonal_across_cosets() {
        let f4 = fourier_cyclic(4).unwrap();
        let two = scan_shape(&f4, (2, 2), 1e-8).unwrap();
        let a = &two.hits[0].witness;
        let b = &two.hits[1].witness;
        assert!(inner(a, b).norm() < 1e-12);
    }
}
