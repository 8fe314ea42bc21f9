//! The exact curve of minimal entropies for `d = 2`.
//!
//! Every 2×2 unitary equals `D1 R(φ) D2` with diagonal unitaries `D1`, `D2`
//! and the real rotation `R(φ) = [[cos φ, sin φ], [-sin φ, cos φ]]`,
//! `φ = arccos|W_00|`. The diagonal factors do not change either
//! distribution, and the optimal states of `R(φ)` are the real states
//! `(cos ξ, sin ξ)` on the shorter of the two arcs joining the corners
//! `ξ = 0` and `ξ = φ` (or `ξ = φ` and `ξ = π/2`).

use std::f64::consts::FRAC_PI_2;

use super::{pareto_lower_with_states, FrontierCurve};
use crate::entropy::{renyi_slice, EntropyPoint, RenyiOrder};
use crate::error::{Error, Result};
use crate::numerics::{CMatrix, C64};
use crate::observables::ObservablePair;

/// Default number of `ξ` samples on the exact curve.
pub const QUBIT_CURVE_POINTS: usize = 512;

fn check_qubit(w: &ObservablePair) -> Result<()> {
    if w.dim() != 2 {
        return Err(Error::BadDimension(format!("qubit curve needs d = 2, got {}", w.dim())));
    }
    Ok(())
}

/// `φ = arccos|W_00| ∈ [0, π/2]`.
pub fn reduce_2x2_to_rotation(w: &ObservablePair) -> Result<f64> {
    check_qubit(w)?;
    Ok(w.matrix()[(0, 0)].norm().min(1.0).acos())
}

/// `R(φ) = [[cos φ, sin φ], [-sin φ, cos φ]]`, labelled `rotation:<φ>`.
pub fn rotation(phi: f64) -> ObservablePair {
    let (s, c) = phi.sin_cos();
    let m = CMatrix::from_real_rows(&[vec![c, s], vec![-s, c]]).expect("finite rotation");
    ObservablePair::new(format!("rotation:{phi}"), m).expect("rotations are unitary")
}

/// `(ξ_start, ξ_end)` of the optimal arc.
pub fn qubit_arc(phi: f64) -> (f64, f64) {
    if phi <= std::f64::consts::FRAC_PI_4 {
        (0.0, phi)
    } else {
        (phi, FRAC_PI_2)
    }
}

fn binary(p: f64, order: RenyiOrder) -> f64 {
    renyi_slice(&[p, 1.0 - p], order)
}

/// Entropy pair of `(cos ξ, sin ξ)` under `R(φ)`.
fn arc_point(phi: f64, xi: f64, alpha: RenyiOrder, beta: RenyiOrder) -> EntropyPoint {
    EntropyPoint::new(binary(xi.cos().powi(2), alpha), binary((xi - phi).cos().powi(2), beta))
}

/// State of `W` with the same distributions as `(cos ξ, sin ξ)` under `R(φ)`.
pub fn d2_witness(w: &ObservablePair, xi: f64) -> Vec<C64> {
    let m = w.matrix();
    let (a, b) = (m[(0, 0)], m[(0, 1)]);
    // Align the phases of the two terms of (Wψ)_0.
    let rel = if a.norm() > 1e-15 && b.norm() > 1e-15 {
        (a / a.norm()) * (b / b.norm()).conj()
    } else {
        C64::new(1.0, 0.0)
    };
    vec![C64::new(xi.cos(), 0.0), rel * xi.sin()]
}

/// The curve of minimal `(H_α, H_β)` pairs for a 2×2 unitary, sampled at
/// `m` values of `ξ` (endpoints included) and Pareto-cleaned. Witnesses are
/// states of `W` itself.
pub fn d2_exact_curve(w: &ObservablePair, alpha: RenyiOrder, beta: RenyiOrder, m: usize) -> Result<FrontierCurve> {
    let phi = reduce_2x2_to_rotation(w)?;
    let (lo, hi) = qubit_arc(phi);
    let m = m.max(2);
    let xis: Vec<f64> = (0..m).map(|k| lo + (hi - lo) * k as f64 / (m - 1) as f64).collect();
    let points: Vec<EntropyPoint> = xis.iter().map(|&xi| arc_point(phi, xi, alpha, beta)).collect();
    let states: Vec<Vec<C64>> = xis.iter().map(|&xi| d2_witness(w, xi)).collect();
    pareto_lower_with_states(&points, &states)
}

/// Exact staircase value `min{H_β : H_α <= x}` of the qubit curve for
/// rotation angle `phi`, found by bisection on `ξ`.
pub fn d2_gamma(phi: f64, alpha: RenyiOrder, beta: RenyiOrder, x: f64) -> f64 {
    let (lo, hi) = qubit_arc(phi);
    // hx runs from 0 at the hx = 0 corner to its maximum at ξ = φ.
    let (start, end) = if lo == 0.0 { (lo, hi) } else { (hi, lo) };
    let corner = arc_point(phi, start, alpha, beta);
    let far = arc_point(phi, end, alpha, beta);
    if x < 0.0 {
        return f64::INFINITY;
    }
    if x >= far.hx {
        return far.hy;
    }
    if x <= corner.hx {
        return corner.hy;
    }
    let (mut a, mut b) = (start, end);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if arc_point(phi, mid, alpha, beta).hx <= x {
            a = mid;
        } else {
            b = mid;
        }
        if (a - b).abs() <= f64::EPSILON {
            break;
        }
    }
    arc_point(phi, a, alpha, beta).hy
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::entropy_pair;
    use crate::frontier::pareto_lower;
    use crate::numerics::SeededRng;
    use crate::observables::{dephase, fourier_cyclic, random_unitary};
    use std::f64::consts::FRAC_PI_4;

    const S: RenyiOrder = RenyiOrder::SHANNON;
    const BINARY_PI8: f64 = 0.600_876_036_692_856_1;

    fn order(a: f64) -> RenyiOrder {
        RenyiOrder::new(a).unwrap()
    }

    #[test]
    fn rotation_angle_examples() {
        let id = ObservablePair::new("id", CMatrix::identity(2)).unwrap();
        assert_eq!(reduce_2x2_to_rotation(&id).unwrap(), 0.0);
        let f2 = fourier_cyclic(2).unwrap();
        assert!((reduce_2x2_to_rotation(&f2).unwrap() - FRAC_PI_4).abs() < 1e-12);
        let w = random_unitary(2, &mut SeededRng::new(4, 0)).unwrap();
        let phased = ObservablePair::new(
            "p",
            CMatrix::from_fn(2, |i, k| w.matrix()[(i, k)] * C64::from_polar(1.0, 0.7 * i as f64 - 0.2 * k as f64)),
        )
        .unwrap();
        let a = reduce_2x2_to_rotation(&phased).unwrap();
        assert!((a - reduce_2x2_to_rotation(&dephase(&w).unwrap()).unwrap()).abs() < 1e-12);
        assert!(reduce_2x2_to_rotation(&fourier_cyclic(3).unwrap()).is_err());
    }

    #[test]
    fn f2_curve_examples() {
        let f2 = fourier_cyclic(2).unwrap();
        let c = d2_exact_curve(&f2, S, S, 513).unwrap();
        let first = c.points[0];
        let last = *c.points.last().unwrap();
        assert!(first.hx.abs() < 1e-12 && (first.hy - 1.0).abs() < 1e-12);
        assert!((last.hx - 1.0).abs() < 1e-12 && last.hy.abs() < 1e-12);
        // ξ = π/8 is the midpoint of the arc (0, π/4).
        let mid = c.points.iter().find(|p| (p.hx - p.hy).abs() < 1e-9).unwrap();
        assert!((mid.hx - BINARY_PI8).abs() < 1e-12);
        assert!(c.points.windows(2).all(|w| w[0].hx < w[1].hx && w[0].hy > w[1].hy));
    }

    #[test]
    fn identity_curve_is_degenerate() {
        let id = ObservablePair::new("id", CMatrix::identity(2)).unwrap();
        let c = d2_exact_curve(&id, S, S, 64).unwrap();
        assert_eq!(c.points, vec![EntropyPoint::new(0.0, 0.0)]);
        let flip = ObservablePair::new("x", CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap()).unwrap();
        let c = d2_exact_curve(&flip, S, S, 64).unwrap();
        assert!(c.points.len() == 1 && c.points[0].sum() < 1e-12);
    }

    #[test]
    fn shorter_arc_is_the_pareto_front_of_both() {
        for phi in [0.2, 0.6, FRAC_PI_4, 1.0, 1.4] {
            for (a, b) in [(1.0, 1.0), (0.6, 3.0), (2.0, 2.0 / 3.0)] {
                let (a, b) = (order(a), order(b));
                let n = 2000;
                let both: Vec<EntropyPoint> = (0..n)
                    .map(|k| arc_point(phi, FRAC_PI_2 * k as f64 / (n - 1) as f64, a, b))
                    .collect();
                let full = pareto_lower(&both).unwrap();
                for p in &full.points {
                    // Nothing on the quarter circle beats the chosen arc.
                    let g = d2_gamma(phi, a, b, p.hx);
                    assert!(p.hy >= g - 1e-9 && p.hy <= g + 2e-3);
                }
            }
        }
    }

    #[test]
    fn witnesses_reproduce_curve_points() {
        let w = random_unitary(2, &mut SeededRng::new(11, 0)).unwrap();
        let (a, b) = (order(0.75), order(1.5));
        let c = d2_exact_curve(&w, a, b, 64).unwrap();
        for (p, psi) in c.points.iter().zip(c.witnesses.as_ref().unwrap()) {
            let q = entropy_pair(&w, psi, a, b).unwrap();
            assert!(p.distance(&q) < 1e-12);
        }
    }

    #[test]
    fn gamma_matches_curve_points() {
        let f2 = fourier_cyclic(2).unwrap();
        let c = d2_exact_curve(&f2, S, S, 101).unwrap();
        for p in &c.points {
            assert!((d2_gamma(FRAC_PI_4, S, S, p.hx) - p.hy).abs() < 1e-9);
        }
        assert_eq!(d2_gamma(FRAC_PI_4, S, S, 5.0), c.points.last().unwrap().hy);
        assert!((d2_gamma(FRAC_PI_4, S, S, 0.0) - 1.0).abs() < 1e-12);
        // φ > π/4: the arc (φ, π/2) is traversed backwards.
        let phi = 1.2;
        let r = rotation(phi);
        let c = d2_exact_curve(&r, S, S, 101).unwrap();
        for p in &c.points {
            assert!((d2_gamma(phi, S, S, p.hx) - p.hy).abs() < 1e-9);
        }
    }
}
