//! wasm-bindgen exports for the static demo page in `www/`.
//!
//! Every export returns a JSON string. The `*_json` functions hold the
//! logic and are plain Rust so they can be tested natively.

use serde_json::json;
use wasm_bindgen::prelude::*;

use entropic::entropy::RenyiOrder;
use entropic::equality::{check_equality_state, overlap_data};
use entropic::format::round_sig;
use entropic::frontier::{d2_exact_curve, rotation, sample_diagram, sampled_frontier};
use entropic::numerics::{Strategy, C64};
use entropic::observables::{ObservablePair, UnitarySpec};

fn orders(alpha: f64) -> entropic::Result<(RenyiOrder, RenyiOrder)> {
    let a = if alpha.is_infinite() { RenyiOrder::INFINITY } else { RenyiOrder::new(alpha)? };
    Ok((a, a.dual()))
}

fn builtin(spec: &str) -> entropic::Result<ObservablePair> {
    let spec: UnitarySpec = spec.parse()?;
    if matches!(spec, UnitarySpec::File(_)) {
        return Err(entropic::Error::Parse("files are not available in the browser".into()));
    }
    spec.resolve(false)
}

fn pairs(points: impl Iterator<Item = (f64, f64)>) -> Vec<[f64; 2]> {
    points.map(|(x, y)| [round_sig(x), round_sig(y)]).collect()
}

/// Sampled diagram, its lower frontier and the Maassen-Uffink line.
pub fn diagram_json(unitary: &str, alpha: f64, samples: usize, strategy: &str, seed: u64) -> entropic::Result<String> {
    let w = builtin(unitary)?;
    let (a, b) = orders(alpha)?;
    let strategy: Strategy = strategy.parse()?;
    let s = sample_diagram(&w, a, b, samples, strategy, seed)?;
    let f = sampled_frontier(&w, a, b, samples, strategy, seed)?;
    let o = overlap_data(&w);
    Ok(json!({
        "unitary": w.label(),
        "d": w.dim(),
        "alpha": a,
        "beta": b,
        "log_d": (w.dim() as f64).log2(),
        "bound_bits": round_sig(o.mu_bound_bits),
        "points": pairs(s.points.iter().map(|p| (p.hx, p.hy))),
        "frontier": pairs(f.points.iter().map(|p| (p.hx, p.hy))),
    })
    .to_string())
}

/// Exact minimal-entropy curve of the rotation by `phi`.
pub fn d2_curve_json(phi: f64, alpha: f64, points: usize) -> entropic::Result<String> {
    let w = rotation(phi);
    let (a, b) = orders(alpha)?;
    let curve = d2_exact_curve(&w, a, b, points)?;
    let o = overlap_data(&w);
    Ok(json!({
        "phi": phi,
        "alpha": a,
        "beta": b,
        "bound_bits": round_sig(o.mu_bound_bits),
        "curve": pairs(curve.points.iter().map(|p| (p.hx, p.hy))),
    })
    .to_string())
}

/// Whether `state` (JSON `[[re, im], ...]`) attains the Maassen-Uffink bound.
pub fn check_state_json(unitary: &str, state: &str, alpha: f64) -> entropic::Result<String> {
    let w = builtin(unitary)?;
    let (a, b) = orders(alpha)?;
    let amps: Vec<[f64; 2]> = serde_json::from_str(state).map_err(|e| entropic::Error::Parse(e.to_string()))?;
    let psi: Vec<C64> = amps.into_iter().map(|[re, im]| C64::new(re, im)).collect();
    let report = check_equality_state(&w, &psi, a, b, 1e-8)?;
    Ok(serde_json::to_string(&report).expect("plain data serializes"))
}

fn js(r: entropic::Result<String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn diagram(unitary: &str, alpha: f64, samples: usize, strategy: &str, seed: u64) -> Result<String, JsError> {
    js(diagram_json(unitary, alpha, samples, strategy, seed))
}

#[wasm_bindgen]
pub fn d2_curve(phi: f64, alpha: f64, points: usize) -> Result<String, JsError> {
    js(d2_curve_json(phi, alpha, points))
}

#[wasm_bindgen]
pub fn check_state(unitary: &str, state: &str, alpha: f64) -> Result<String, JsError> {
    js(check_state_json(unitary, state, alpha))
}
