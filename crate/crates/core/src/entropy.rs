//! Rényi entropies in bits, the order duality `1/α + 1/β = 2`, analytic
//! entropy gradients, Born-rule distributions and von Neumann entropy.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{check_state, hermitian_eigen, MixedEnsemble, C64};
use crate::observables::ObservablePair;

const LN2: f64 = std::f64::consts::LN_2;

/// Smallest probability at which the entropy gradient is considered defined.
pub const GRADIENT_FLOOR: f64 = 1e-12;

/// Tolerance used when checking `1/α + 1/β = 2`.
pub const DUALITY_TOL: f64 = 1e-9;

/// A Rényi order `α ∈ [1/2, ∞]`. Orders within `1e-6` of one are snapped to
/// exactly one so the Shannon branch is used instead of a near-singular
/// quotient.
///
/// Serializes as a JSON number, or as the string `"inf"` for `α = ∞`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct RenyiOrder(f64);

impl RenyiOrder {
    pub const HALF: RenyiOrder = RenyiOrder(0.5);
    pub const SHANNON: RenyiOrder = RenyiOrder(1.0);
    pub const INFINITY: RenyiOrder = RenyiOrder(f64::INFINITY);

    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_nan() || alpha < 0.5 {
            return Err(Error::BadOrder(alpha));
        }
        if (alpha - 1.0).abs() < 1e-6 {
            return Ok(Self(1.0));
        }
        Ok(Self(alpha))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    pub fn is_shannon(self) -> bool {
        self.0 == 1.0
    }

    /// The dual order `β` with `1/α + 1/β = 2`.
    pub fn dual(self) -> RenyiOrder {
        dual_order(self)
    }
}

impl TryFrom<f64> for RenyiOrder {
    type Error = Error;

    fn try_from(v: f64) -> Result<Self> {
        Self::new(v)
    }
}

impl Serialize for RenyiOrder {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for RenyiOrder {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => RenyiOrder::new(v),
            Raw::Text(t) => t.parse(),
        }
        .map_err(serde::de::Error::custom)
    }
}

impl From<RenyiOrder> for f64 {
    fn from(o: RenyiOrder) -> f64 {
        o.0
    }
}

impl fmt::Display for RenyiOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl FromStr for RenyiOrder {
    type Err = Error;

    /// Accepts decimals, `a/b` fractions and `inf`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let v = match s {
            "inf" | "infinity" | "∞" => f64::INFINITY,
            _ => match s.split_once('/') {
                Some((a, b)) => {
                    let a: f64 = a.trim().parse().map_err(|_| Error::Parse(format!("bad order `{s}`")))?;
                    let b: f64 = b.trim().parse().map_err(|_| Error::Parse(format!("bad order `{s}`")))?;
                    a / b
                }
                None => s.parse().map_err(|_| Error::Parse(format!("bad order `{s}`")))?,
            },
        };
        Self::new(v)
    }
}

/// `β = α / (2α - 1)`, with `dual(1/2) = ∞` and `dual(∞) = 1/2`.
pub fn dual_order(alpha: RenyiOrder) -> RenyiOrder {
    let a = alpha.0;
    if a.is_infinite() {
        RenyiOrder(0.5)
    } else if a == 0.5 {
        RenyiOrder(f64::INFINITY)
    } else if a == 1.0 {
        RenyiOrder(1.0)
    } else {
        RenyiOrder::new(a / (2.0 * a - 1.0)).expect("dual of an order >= 1/2 is >= 1/2")
    }
}

fn recip(o: RenyiOrder) -> f64 {
    if o.0.is_infinite() {
        0.0
    } else {
        1.0 / o.0
    }
}

pub fn is_dual_pair(alpha: RenyiOrder, beta: RenyiOrder) -> bool {
    (recip(alpha) + recip(beta) - 2.0).abs() <= DUALITY_TOL
}

pub fn ensure_dual_pair(alpha: RenyiOrder, beta: RenyiOrder) -> Result<()> {
    if is_dual_pair(alpha, beta) {
        Ok(())
    } else {
        Err(Error::NotDualPair(alpha.0, beta.0))
    }
}

/// A probability vector. Entries down to `-1e-14` are clamped to zero; the
/// total must be one within `1e-10`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbDist(Vec<f64>);

impl ProbDist {
    pub fn new(mut p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::EmptyInput);
        }
        for (i, x) in p.iter_mut().enumerate() {
            if !x.is_finite() || *x < -1e-14 || *x > 1.0 + 1e-10 {
                return Err(Error::BadDistribution(format!("p[{i}] = {x}")));
            }
            if *x < 0.0 {
                *x = 0.0;
            }
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::BadDistribution(format!("sums to {total}")));
        }
        Ok(Self(p))
    }

    /// `|v_i|²` without validation; callers guarantee `v` is a unit vector.
    pub(crate) fn from_amplitudes(v: &[C64]) -> Self {
        Self(v.iter().map(|z| z.norm_sqr()).collect())
    }

    pub fn uniform(d: usize) -> Self {
        Self(vec![1.0 / d as f64; d])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(0.0, f64::max)
    }

    /// Product distribution, index `(i, j) -> i * other.len() + j`.
    pub fn product(&self, other: &ProbDist) -> ProbDist {
        ProbDist(
            self.0
                .iter()
                .flat_map(|&a| other.0.iter().map(move |&b| a * b))
                .collect(),
        )
    }

    /// Indices with probability above `tol`.
    pub fn support(&self, tol: f64) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > tol)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Rényi entropy in bits. Zero entries are skipped (`0 log 0 = 0`).
pub fn renyi(p: &ProbDist, alpha: RenyiOrder) -> f64 {
    renyi_slice(p.as_slice(), alpha)
}

pub(crate) fn renyi_slice(p: &[f64], alpha: RenyiOrder) -> f64 {
    let a = alpha.0;
    let h = if a.is_infinite() {
        -p.iter().copied().fold(0.0, f64::max).log2()
    } else if a == 1.0 {
        -p.iter()
            .filter(|&&x| x > 0.0)
            .map(|&x| x * x.log2())
            .sum::<f64>()
    } else {
        let s: f64 = p.iter().filter(|&&x| x > 0.0).map(|&x| x.powf(a)).sum();
        s.log2() / (1.0 - a)
    };
    // -0.0 and tiny negative rounding on deterministic inputs.
    h.max(0.0)
}

/// `1 - max_j p_j`, the discrete variance; equals `1 - 2^{-H_∞(p)}`.
pub fn discrete_variance(p: &ProbDist) -> f64 {
    1.0 - p.max()
}

/// `∂H_α/∂p_j` in bits, treating the `p_j` as independent coordinates.
pub fn renyi_gradient(p: &ProbDist, alpha: RenyiOrder) -> Result<Vec<f64>> {
    if alpha.is_infinite() {
        return Err(Error::UnsupportedOrder(alpha.0));
    }
    if let Some((index, &value)) = p
        .as_slice()
        .iter()
        .enumerate()
        .find(|(_, &x)| x <= GRADIENT_FLOOR)
    {
        return Err(Error::BoundaryDistribution { index, value });
    }
    let mut g = vec![0.0; p.len()];
    renyi_gradient_into(p.as_slice(), alpha, &mut g);
    Ok(g)
}

/// Gradient without boundary checks. Probabilities are floored at `1e-300`
/// so the result stays finite; optimizers rely on this near the simplex
/// boundary. `alpha` must be finite.
pub(crate) fn renyi_gradient_into(p: &[f64], alpha: RenyiOrder, out: &mut [f64]) {
    const FLOOR: f64 = 1e-300;
    let a = alpha.0;
    debug_assert!(a.is_finite());
    if a == 1.0 {
        for (o, &x) in out.iter_mut().zip(p) {
            *o = -(x.max(FLOOR).log2() + 1.0 / LN2);
        }
    } else {
        let s: f64 = p.iter().filter(|&&x| x > 0.0).map(|&x| x.powf(a)).sum();
        let scale = a / (1.0 - a) / s / LN2;
        for (o, &x) in out.iter_mut().zip(p) {
            *o = scale * x.max(FLOOR).powf(a - 1.0);
        }
    }
}

/// A point `(H_α(p_X), H_β(p_Y))` of the entropy plane, in bits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyPoint {
    pub hx: f64,
    pub hy: f64,
}

impl EntropyPoint {
    pub fn new(hx: f64, hy: f64) -> Self {
        Self { hx, hy }
    }

    pub fn sum(&self) -> f64 {
        self.hx + self.hy
    }

    /// Coordinatewise `self <= other + slack`.
    pub fn dominated_by(&self, other: &EntropyPoint, slack: f64) -> bool {
        self.hx <= other.hx + slack && self.hy <= other.hy + slack
    }

    pub fn distance(&self, other: &EntropyPoint) -> f64 {
        (self.hx - other.hx).hypot(self.hy - other.hy)
    }
}

impl std::ops::Add for EntropyPoint {
    type Output = EntropyPoint;

    fn add(self, o: EntropyPoint) -> EntropyPoint {
        EntropyPoint::new(self.hx + o.hx, self.hy + o.hy)
    }
}

/// `p_X = |ψ|²` and `p_Y = |Wψ|²`.
pub fn born_distributions(w: &ObservablePair, psi: &[C64]) -> Result<(ProbDist, ProbDist)> {
    check_state(psi, w.dim(), 1e-9)?;
    let px = ProbDist::from_amplitudes(psi);
    let py = ProbDist::from_amplitudes(&w.matrix().apply(psi));
    Ok((px, py))
}

pub fn entropy_pair(
    w: &ObservablePair,
    psi: &[C64],
    alpha: RenyiOrder,
    beta: RenyiOrder,
) -> Result<EntropyPoint> {
    let (px, py) = born_distributions(w, psi)?;
    Ok(EntropyPoint::new(renyi(&px, alpha), renyi(&py, beta)))
}

/// Born distributions of a mixed state: `Σ λ_i |ψ_i|²` and `Σ λ_i |Wψ_i|²`.
pub fn mixed_distributions(w: &ObservablePair, rho: &MixedEnsemble) -> Result<(ProbDist, ProbDist)> {
    let d = w.dim();
    if rho.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: rho.dim(),
        });
    }
    let mut px = vec![0.0; d];
    let mut py = vec![0.0; d];
    for (lambda, psi) in rho.components() {
        let (a, b) = born_distributions(w, psi)?;
        for i in 0..d {
            px[i] += lambda * a.as_slice()[i];
            py[i] += lambda * b.as_slice()[i];
        }
    }
    Ok((ProbDist::new(px)?, ProbDist::new(py)?))
}

pub fn mixed_entropy_pair(
    w: &ObservablePair,
    rho: &MixedEnsemble,
    alpha: RenyiOrder,
    beta: RenyiOrder,
) -> Result<EntropyPoint> {
    let (px, py) = mixed_distributions(w, rho)?;
    Ok(EntropyPoint::new(renyi(&px, alpha), renyi(&py, beta)))
}

/// Von Neumann entropy (bits) of `Σ λ_i |ψ_i><ψ_i|`.
pub fn von_neumann(rho: &MixedEnsemble) -> Result<f64> {
    let e = hermitian_eigen(&rho.density_matrix())?;
    let mut spectrum: Vec<f64> = e.values.iter().map(|&x| x.max(0.0)).collect();
    let total: f64 = spectrum.iter().sum();
    for x in spectrum.iter_mut() {
        *x /= total;
    }
    Ok(renyi_slice(&spectrum, RenyiOrder::SHANNON))
}
