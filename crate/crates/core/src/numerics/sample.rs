use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::{basis_vector, check_state, normalize, CMatrix, SeededRng, C64, MAX_DIM};
use crate::error::{Error, Result};

/// How pure states are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Unitarily invariant: i.i.d. complex Gaussian amplitudes, normalized.
    Haar,
    /// Uniform on the real unit sphere.
    Real,
    /// Real with `psi[j] == psi[d - j]`; these have a real Fourier transform.
    Rrs,
    /// `(1 - t) psi_haar + t e_k` normalized, `k` uniform. `None` draws `t`
    /// uniformly from `[0, 1]` for every state.
    BasisMix(Option<f64>),
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Haar => f.write_str("haar"),
            Strategy::Real => f.write_str("real"),
            Strategy::Rrs => f.write_str("rrs"),
            Strategy::BasisMix(None) => f.write_str("basis-mix"),
            Strategy::BasisMix(Some(t)) => write!(f, "basis-mix:{t}"),
        }
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "haar" => Ok(Strategy::Haar),
            "real" => Ok(Strategy::Real),
            "rrs" => Ok(Strategy::Rrs),
            "basis-mix" | "basis_mix" => Ok(Strategy::BasisMix(None)),
            other => {
                let t = other
                    .strip_prefix("basis-mix:")
                    .or_else(|| other.strip_prefix("basis_mix:"))
                    .ok_or_else(|| Error::Parse(format!("unknown strategy `{other}`")))?;
                let t: f64 = t
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad basis-mix weight `{t}`")))?;
                if !(0.0..=1.0).contains(&t) {
                    return Err(Error::Parse(format!("basis-mix weight {t} outside [0, 1]")));
                }
                Ok(Strategy::BasisMix(Some(t)))
            }
        }
    }
}

fn gaussian(rng: &mut SeededRng) -> f64 {
    StandardNormal.sample(rng)
}

fn haar(d: usize, rng: &mut SeededRng) -> Vec<C64> {
    (0..d).map(|_| C64::new(gaussian(rng), gaussian(rng))).collect()
}

/// Draws a unit vector in `C^d` according to `strategy`.
pub fn sample_state(d: usize, strategy: Strategy, rng: &mut SeededRng) -> Result<Vec<C64>> {
    if !(2..=MAX_DIM).contains(&d) {
        return Err(Error::BadDimension(format!("state dimension must be in 2..={MAX_DIM}, got {d}")));
    }
    let mut v = match strategy {
        Strategy::Haar => haar(d, rng),
        Strategy::Real => (0..d).map(|_| C64::new(gaussian(rng), 0.0)).collect(),
        Strategy::Rrs => {
            let free: Vec<f64> = (0..=d / 2).map(|_| gaussian(rng)).collect();
            (0..d)
                .map(|j| C64::new(free[j.min(d - j)], 0.0))
                .collect()
        }
        Strategy::BasisMix(t) => {
            let t = t.unwrap_or_else(|| rng.random::<f64>());
            let mut h = haar(d, rng);
            normalize(&mut h)?;
            let k = rng.random_range(0..d);
            for z in h.iter_mut() {
                *z *= 1.0 - t;
            }
            h[k] += t;
            h
        }
    };
    // A degenerate draw (all zeros) has probability zero but is cheap to guard.
    if super::norm(&v) == 0.0 {
        v = basis_vector(d, 0);
    }
    normalize(&mut v)?;
    Ok(v)
}

/// Haar-random unitary: complex Gaussian matrix orthonormalized column by
/// column (modified Gram-Schmidt), which leaves `R` with a positive diagonal.
pub fn random_unitary_matrix(d: usize, rng: &mut SeededRng) -> Result<CMatrix> {
    if !(2..=MAX_DIM).contains(&d) {
        return Err(Error::BadDimension(format!("unitary dimension must be in 2..={MAX_DIM}, got {d}")));
    }
    let mut cols: Vec<Vec<C64>> = (0..d).map(|_| haar(d, rng)).collect();
    for k in 0..d {
        let (done, rest) = cols.split_at_mut(k);
        let col = &mut rest[0];
        for q in done.iter() {
            let proj = super::inner(q, col);
            for (c, qi) in col.iter_mut().zip(q) {
                *c -= proj * qi;
            }
        }
        normalize(col)?;
    }
    Ok(CMatrix::from_fn(d, |i, j| cols[j][i]))
}

/// Finite convex combination of pure states, `ρ = Σ λ_i |ψ_i><ψ_i|`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixedEnsemble {
    components: Vec<(f64, Vec<C64>)>,
}

impl MixedEnsemble {
    pub fn new(components: Vec<(f64, Vec<C64>)>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::EmptyInput);
        };
        let d = first.1.len();
        let mut total = 0.0;
        for (w, psi) in &components {
            if !(*w > 0.0 && *w <= 1.0) {
                return Err(Error::BadState(format!("ensemble weight {w} outside (0, 1]")));
            }
            check_state(psi, d, 1e-12)?;
            total += w;
        }
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::BadState(format!("ensemble weights sum to {total}")));
        }
        Ok(Self { components })
    }

    pub fn pure(psi: Vec<C64>) -> Result<Self> {
        Self::new(vec![(1.0, psi)])
    }

    /// `k` Haar-random components with Dirichlet(1, ..., 1) weights.
    pub fn random(d: usize, k: usize, rng: &mut SeededRng) -> Result<Self> {
        if k == 0 {
            return Err(Error::EmptyInput);
        }
        let raw: Vec<f64> = (0..k).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
        let sum: f64 = raw.iter().sum();
        let mut comps = Vec::with_capacity(k);
        let mut acc = 0.0;
        for (i, r) in raw.iter().enumerate() {
            let w = if i + 1 == k { 1.0 - acc } else { r / sum };
            acc += w;
            comps.push((w, sample_state(d, Strategy::Haar, rng)?));
        }
        Self::new(comps)
    }

    pub fn dim(&self) -> usize {
        self.components[0].1.len()
    }

    pub fn components(&self) -> &[(f64, Vec<C64>)] {
        &self.components
    }

    pub fn density_matrix(&self) -> CMatrix {
        let d = self.dim();
        let mut rho = CMatrix::zeros(d);
        for (w, psi) in &self.components {
            for i in 0..d {
                for j in 0..d {
                    rho[(i, j)] += psi[i] * psi[j].conj() * *w;
                }
            }
        }
        rho
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{dft, norm};

    const ALL: [Strategy; 5] = [
        Strategy::Haar,
        Strategy::Real,
        Strategy::Rrs,
        Strategy::BasisMix(None),
        Strategy::BasisMix(Some(0.4)),
    ];

    #[test]
    fn every_strategy_yields_unit_vectors() {
        let mut rng = SeededRng::new(1, 0);
        for s in ALL {
            for d in 2..9 {
                for _ in 0..50 {
                    let v = sample_state(d, s, &mut rng).unwrap();
                    assert!((norm(&v) - 1.0).abs() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn same_seed_same_state() {
        for s in ALL {
            let a = sample_state(5, s, &mut SeededRng::new(9, 4)).unwrap();
            let b = sample_state(5, s, &mut SeededRng::new(9, 4)).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn rrs_is_real_and_symmetric() {
        let mut rng = SeededRng::new(2, 0);
        let v = sample_state(4, Strategy::Rrs, &mut rng).unwrap();
        assert_eq!(v[1], v[3]);
        assert!(v.iter().all(|z| z.im == 0.0));
        for d in 2..12 {
            for _ in 0..20 {
                let v = sample_state(d, Strategy::Rrs, &mut rng).unwrap();
                let f = dft(&v);
                assert!(f.iter().all(|z| z.im.abs() <= 1e-10), "d={d}");
            }
        }
    }

    #[test]
    fn real_strategy_has_no_imaginary_part() {
        let mut rng = SeededRng::new(3, 0);
        let v = sample_state(6, Strategy::Real, &mut rng).unwrap();
        assert!(v.iter().all(|z| z.im == 0.0));
    }

    #[test]
    fn haar_marginal_mean_is_one_over_d() {
        let mut rng = SeededRng::new(4, 0);
        let n = 100_000;
        let mean: f64 = (0..n)
            .map(|_| sample_state(3, Strategy::Haar, &mut rng).unwrap()[0].norm_sqr())
            .sum::<f64>()
            / n as f64;
        assert!((mean - 1.0 / 3.0).abs() < 0.01, "mean {mean}");
    }

    #[test]
    fn rejects_dimension_one() {
        let mut rng = SeededRng::new(0, 0);
        assert!(matches!(
            sample_state(1, Strategy::Haar, &mut rng),
            Err(Error::BadDimension(_))
        ));
    }

    #[test]
    fn random_unitaries_are_unitary_and_reproducible() {
        for seed in 0..100 {
            let u = random_unitary_matrix(2 + (seed as usize % 7), &mut SeededRng::new(seed, 0)).unwrap();
            assert!(u.unitarity_defect() <= 1e-10);
        }
        let a = random_unitary_matrix(4, &mut SeededRng::new(7, 0)).unwrap();
        let b = random_unitary_matrix(4, &mut SeededRng::new(7, 0)).unwrap();
        assert_eq!(a, b);
        let q = random_unitary_matrix(2, &mut SeededRng::new(8, 0)).unwrap();
        assert!((q.determinant().norm() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn strategy_round_trips_through_text() {
        for s in ALL {
            assert_eq!(s.to_string().parse::<Strategy>().unwrap(), s);
        }
        assert!("nope".parse::<Strategy>().is_err());
        assert!("basis-mix:1.5".parse::<Strategy>().is_err());
    }

    #[test]
    fn ensemble_validation() {
        let e0 = basis_vector(2, 0);
        assert!(MixedEnsemble::new(vec![(0.5, e0.clone())]).is_err());
        assert!(MixedEnsemble::new(vec![]).is_err());
        let rho = MixedEnsemble::new(vec![(0.5, e0.clone()), (0.5, basis_vector(2, 1))]).unwrap();
        let m = rho.density_matrix();
        assert!((m[(0, 0)].re - 0.5).abs() < 1e-15);
        let mut rng = SeededRng::new(5, 0);
        let r = MixedEnsemble::random(4, 3, &mut rng).unwrap();
        assert_eq!(r.components().len(), 3);
    }
}
