//! Number formatting and the CSV/JSON point-set outputs.

use serde::Serialize;

use crate::entropy::EntropyPoint;
use crate::numerics::C64;

/// Significant digits used for every emitted number.
pub const SIG_DIGITS: usize = 12;

/// `x` rounded to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let s = format!("{:.*e}", SIG_DIGITS - 1, x);
    let r: f64 = s.parse().expect("formatted float parses");
    // Normalize -0.0 so outputs never show a sign on zero.
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// `x` rendered with at most 12 significant digits.
pub fn fmt_sig(x: f64) -> String {
    format!("{}", round_sig(x))
}

/// Diagram CSV with header `h_x,h_y`.
pub fn points_csv(points: &[EntropyPoint]) -> String {
    let mut out = String::with_capacity(32 * (points.len() + 1));
    out.push_str("h_x,h_y\n");
    for p in points {
        out.push_str(&fmt_sig(p.hx));
        out.push(',');
        out.push_str(&fmt_sig(p.hy));
        out.push('\n');
    }
    out
}

/// A state as `[[re, im], ...]` rounded to 12 significant digits.
pub fn state_pairs(psi: &[C64]) -> Vec<[f64; 2]> {
    psi.iter().map(|z| [round_sig(z.re), round_sig(z.im)]).collect()
}

/// Pretty JSON of any serializable value.
pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round_sig(0.600_876_036_692_856_1), 0.600_876_036_693);
        assert_eq!(round_sig(1.0), 1.0);
        assert_eq!(round_sig(-0.0), 0.0);
        assert_eq!(round_sig(-1e-300 * 1e-30), 0.0);
        assert_eq!(fmt_sig(2.584_962_500_721_156), "2.58496250072");
        assert_eq!(fmt_sig(123_456_789_012_345.0), "123456789012000");
    }

    #[test]
    fn csv_layout() {
        let csv = points_csv(&[EntropyPoint::new(0.0, 1.0), EntropyPoint::new(0.5, 0.25)]);
        assert_eq!(csv, "h_x,h_y\n0,1\n0.5,0.25\n");
    }
}
