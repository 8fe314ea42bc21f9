//! Phase stationarity of `H_α(|Fψ|²)` with `F` the cyclic Fourier matrix.
//!
//! Rotating the phase of a single amplitude, `ψ_k → e^{iθ_k} ψ_k`, keeps
//! `|ψ|²` fixed, so an optimal state must make `H_α(|Fψ|²)` stationary in
//! every `θ_k`. With `g = ∇_p H_α` at `p = |ψ̂|²`,
//!
//! `∂H_α/∂θ_k = -(2/√d) r_k`, `r_k = Im(ψ_k Σ_j g_j conj(ψ̂_j) e^{2πi jk/d})`.

use crate::entropy::{renyi_gradient, renyi_slice, ProbDist, RenyiOrder};
use crate::error::Result;
use crate::numerics::{check_state, dft, root_of_unity, C64};

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalityResidual {
    pub r: Vec<f64>,
    pub max_abs: f64,
}

impl ExtremalityResidual {
    /// `∂H_α/∂θ_k` implied by the residual.
    pub fn phase_gradient(&self) -> Vec<f64> {
        let scale = -2.0 / (self.r.len() as f64).sqrt();
        self.r.iter().map(|&x| scale * x).collect()
    }
}

/// The residual vector `r` for `ψ` in the cyclic Fourier setting.
pub fn extremality_residual(psi: &[C64], alpha: RenyiOrder) -> Result<ExtremalityResidual> {
    let d = psi.len();
    check_state(psi, d, 1e-9)?;
    let hat = dft(psi);
    let p = ProbDist::new(hat.iter().map(|z| z.norm_sqr()).collect())?;
    let g = renyi_gradient(&p, alpha)?;
    let r: Vec<f64> = (0..d)
        .map(|k| {
            let s: C64 = (0..d)
                .map(|j| hat[j].conj() * g[j] * root_of_unity(j * k % d, d))
                .sum();
            (psi[k] * s).im
        })
        .collect();
    let max_abs = r.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    Ok(ExtremalityResidual { r, max_abs })
}

/// Central differences of `θ ↦ H_α(|F(e^{iθ_k} ψ_k)|²)` with step `h`.
pub fn extremality_phase_gradient_fd(psi: &[C64], alpha: RenyiOrder, h: f64) -> Result<Vec<f64>> {
    let d = psi.len();
    check_state(psi, d, 1e-9)?;
    let entropy = |v: &[C64]| {
        let p: Vec<f64> = dft(v).iter().map(|z| z.norm_sqr()).collect();
        renyi_slice(&p, alpha)
    };
    Ok((0..d)
        .map(|k| {
            let mut up = psi.to_vec();
            let mut dn = psi.to_vec();
            up[k] *= C64::from_polar(1.0, h);
            dn[k] *= C64::from_polar(1.0, -h);
            (entropy(&up) - entropy(&dn)) / (2.0 * h)
        })
        .collect())
}
